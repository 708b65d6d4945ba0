#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rover/abel.hpp"
#include "rover/affine.hpp"
#include "rover/formats.hpp"
#include "rover/pipeline.hpp"
#include "rover/smith.hpp"
#include "rover/topo.hpp"
#include "rover/tree.hpp"

namespace py = pybind11;
using namespace rover;

namespace {

py::int_ to_python(Integer const& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

Integer to_integer(py::handle value) {
  return Integer(py::str(value).cast<std::string>());
}

// Accepts ints, "a/b" strings and fractions.Fraction.
Rational to_rational(py::handle value) {
  return parse_rational(py::str(value).cast<std::string>());
}

RationalMatrix to_matrix(std::vector<std::vector<py::object>> const& rows) {
  std::size_t const cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw DomainError("ragged matrix");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      M(i, j) = to_rational(rows[i][j]);
    }
  }
  return M;
}

std::vector<std::string> to_strings(std::vector<Rational> const& v) {
  std::vector<std::string> out;
  for (Rational const& x : v) {
    out.push_back(to_string(x));
  }
  return out;
}

topo::Graph to_graph(int vertices, std::vector<std::pair<int, int>> const& edges) {
  topo::Graph g{vertices, edges};
  g.validate();
  return g;
}

py::dict group_dict(AbelianGroup const& g) {
  py::dict out;
  out["free_rank"] = g.free_rank;
  py::list torsion;
  for (Integer const& t : g.torsion) {
    torsion.append(to_python(t));
  }
  out["torsion"] = torsion;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Self-similar groups, almost automorphisms and finiteness certificates";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ParseDomainError>(m, "ParseDomainError", domain.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<tree::Automaton>(m, "Automaton")
      .def_static("adding_machine", &tree::Automaton::adding_machine, py::arg("d") = 2)
      .def_static("identity", &tree::Automaton::identity, py::arg("d"))
      .def_static("rooted",
                  [](std::vector<int> images) { return tree::Automaton::rooted(tree::Permutation(images)); })
      .def_static("parse",
                  [](std::string const& text) {
                    std::istringstream in(text);
                    return formats::parse_automaton(in, "<string>").automaton;
                  })
      .def_static("load",
                  [](std::string const& path) { return formats::parse_automaton_file(path).automaton; })
      .def_property_readonly("degree", &tree::Automaton::degree)
      .def("__len__", &tree::Automaton::size)
      .def("act", [](tree::Automaton const& f, tree::Word const& w) { return tree::act(f, w); })
      .def("state", [](tree::Automaton const& f, tree::Word const& u) { return tree::state_at(f, u); })
      .def("root_permutation",
           [](tree::Automaton const& f) { return f.initial_state().perm.images(); })
      .def("inverse", &tree::invert)
      .def("is_identity", &tree::is_identity)
      .def("doubled", &abel::doubling, py::arg("m"))
      .def("__mul__", &tree::compose)
      .def("__eq__", &tree::equals)
      .def("__str__", &formats::emit_automaton);

  m.def(
      "affine_state",
      [](std::vector<std::vector<py::object>> const& A, std::vector<py::object> const& b,
         std::vector<int> const& x, int p) {
        affine::AffineMap g{to_matrix(A), {}};
        for (auto const& v : b) {
          g.b.push_back(to_rational(v));
        }
        affine::AffineState const s = affine::affine_state(g, x, p);
        return py::make_tuple(s.image, to_strings(s.state.b));
      },
      py::arg("A"), py::arg("b"), py::arg("x"), py::arg("p"),
      "Image digit vector x' and translation b' with Ax + b = x' + p b'.");

  m.def(
      "smith_normal_form",
      [](std::vector<std::vector<py::object>> const& rows) {
        std::size_t const cols = rows.empty() ? 0 : rows.front().size();
        IntegerMatrix M(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          for (std::size_t j = 0; j < cols; ++j) {
            M(i, j) = to_integer(rows[i].at(j));
          }
        }
        py::list out;
        for (Integer const& f : smith_normal_form(M).factors) {
          out.append(to_python(f));
        }
        return out;
      },
      py::arg("matrix"));

  m.def(
      "reduced_homology",
      [](int vertices, std::vector<std::pair<int, int>> const& edges, std::string const& ring) {
        topo::HomologyProfile const h = topo::reduced_homology(
            topo::flag_complex(to_graph(vertices, edges)), topo::RingSpec::parse(ring));
        py::dict out;
        for (topo::DegreeHomology const& k : h.degrees) {
          out[py::int_(k.degree)] = group_dict(k.group);
        }
        return out;
      },
      py::arg("vertices"), py::arg("edges"), py::arg("ring") = "Z",
      "Reduced homology of the flag complex, keyed by degree.");

  m.def(
      "finiteness_profile",
      [](int vertices, std::vector<std::pair<int, int>> const& edges,
         std::vector<std::string> const& rings) {
        std::vector<topo::RingSpec> specs;
        for (std::string const& r : rings) {
          specs.push_back(topo::RingSpec::parse(r));
        }
        return to_string(topo::finiteness_profile(to_graph(vertices, edges), specs));
      },
      py::arg("vertices"), py::arg("edges"), py::arg("rings") = std::vector<std::string>{"Z"});

  m.def("matching_connectivity", [](int d, int n) { return topo::matching_connectivity_check(d, n).passed; },
        py::arg("d"), py::arg("n"));

  m.def(
      "pipeline",
      [](std::vector<std::vector<std::vector<py::object>>> const& generators, bool doubling) {
        std::vector<affine::NamedMatrix> q;
        std::size_t n = 0;
        for (auto const& rows : generators) {
          q.push_back({"g" + std::to_string(q.size() + 1), to_matrix(rows)});
          n = q.back().matrix.rows();
        }
        if (q.empty()) {
          throw DomainError("at least one generator is needed to fix the dimension");
        }
        pipeline::Options options;
        options.doubling = doubling;
        pipeline::Report const r = pipeline::run_pipeline(q, n, options);
        py::dict out;
        out["N"] = to_python(r.gamma.N);
        out["p"] = r.gamma.p;
        out["d"] = r.gamma.degree();
        out["r"] = r.gamma.generators.size();
        out["m"] = r.m;
        out["det"] = to_python(r.det);
        out["bound"] = to_string(r.bound.group);
        out["persistence_passed"] = r.persistence.passed();
        out["report"] = pipeline::emit_report(r);
        return out;
      },
      py::arg("generators"), py::arg("doubling") = true,
      "Runs the certificate pipeline on generators of Q, given as square matrices.");
}
