#include "rover/pipeline.hpp"

#include <sstream>

#include "rover/aaut.hpp"

namespace rover::pipeline {

namespace {

// Runs one stage, prefixing errors with its name. Error types are kept so
// that callers can still tell domain errors from exhausted caps.
template <typename F>
auto stage(std::string const& name, F&& body) {
  try {
    return body();
  } catch (CapExceeded const& e) {
    throw CapExceeded("stage '" + name + "': " + e.what());
  } catch (DomainError const& e) {
    throw DomainError("stage '" + name + "': " + e.what());
  }
}

template <typename T>
std::string inline_matrix(Matrix<T> const& M) {
  std::string out = "[";
  for (std::size_t i = 0; i < M.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < M.cols(); ++j) {
      out += (j ? ", " : "") + to_string(M(i, j));
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace

PersistenceCheck check_persistence(affine::AffineGroupSpec const& spec, std::size_t cap) {
  affine::TreeShape const shape = spec.shape();
  PersistenceCheck out;
  out.generators = spec.generators.size();
  out.letters = static_cast<std::size_t>(shape.degree());
  for (affine::NamedMap const& g : spec.generators) {
    for (int x = 1; x <= shape.degree(); ++x) {
      affine::AffineState const s = affine::affine_state(g.map, affine::letter_tuple(shape, x), spec.p);
      ++out.checks;
      if (!(affine::persistent_retract(s.state) == affine::persistent_retract(g.map))) {
        out.failures.push_back(g.name + " at letter " + std::to_string(x));
      }
    }
    std::vector<affine::AffineMap> const closure = affine::state_closure(g.map, shape, cap);
    out.closure_sizes.push_back(closure.size());
    for (affine::AffineMap const& s : closure) {
      ++out.checks;
      if (!(s.A == g.map.A)) {
        out.failures.push_back(g.name + " has the state " + affine::to_string(s));
      }
    }
  }
  return out;
}

Report run_pipeline(std::vector<affine::NamedMatrix> const& q_generators, std::size_t n,
                    Options const& options) {
  Report report;
  report.input_dimension = n;
  report.input = q_generators;
  affine::Embedding const embedding = stage("embedding", [&] {
    std::vector<RationalMatrix> matrices;
    for (affine::NamedMatrix const& q : q_generators) {
      matrices.push_back(q.matrix);
    }
    return affine::j_embed_odd(matrices, n);
  });
  for (std::size_t i = 0; i < q_generators.size(); ++i) {
    report.embedded.push_back({q_generators[i].name, embedding.matrices[i]});
  }
  affine::RingChoice ring = stage("ring", [&] { return affine::choose_N_p(embedding.matrices); });
  report.chosen_N = ring.N;
  if (ring.N == 1) {
    // diag(N) needs N >= 2; 2 is the smallest prime and p moves past it.
    ring.N = 2;
    ring.p = 3;
  }
  report.gamma = stage("gamma", [&] {
    return affine::build_gamma(report.embedded, static_cast<int>(embedding.dimension), ring.N,
                               ring.p);
  });
  report.persistence = stage("persistence", [&] {
    return check_persistence(report.gamma, options.state_cap);
  });
  report.presentation = stage("class sums", [&] { return abel::presentation_of(report.gamma); });
  report.class_sums = abel::class_sum_matrix(report.presentation);
  report.doubled = options.doubling;
  if (options.doubling) {
    abel::MinimalM const found = stage("doubling", [&] {
      return abel::find_minimal_m(report.presentation);
    });
    report.m = found.m;
    report.det = found.det;
    report.bound = found.bound;
  } else {
    report.m = 1;
    report.det = determinant(abel::relation_matrix(report.class_sums, 1));
    report.bound = abel::v_ab_presentation(report.presentation, 1);
  }
  stage("generators", [&] {
    affine::TreeShape const shape = report.gamma.shape();
    for (affine::NamedMap const& g : report.gamma.generators) {
      affine::AffineAutomaton const a = affine::to_automaton(g.map, shape, options.state_cap);
      tree::Automaton const lifted = abel::doubling(a.automaton, report.m);
      aaut::Triple const x = aaut::iota1(aaut::Label(lifted));
      x.validate();
      report.lifted.push_back({g.name, lifted.size()});
    }
    std::vector<aaut::Triple> const family =
        aaut::v_generator_family(report.alphabet(), options.family_limit);
    report.family_size = family.size();
    for (aaut::Triple const& x : family) {
      if (x.plus.carets() <= 1 && x.minus.carets() <= 1) {
        report.family_small.push_back("[" + to_string(x.minus) + ", (" + tree::to_string(x.sigma) +
                                      "), " + to_string(x.plus) + "]");
      }
    }
    return 0;
  });
  return report;
}

std::string emit_report(Report const& r) {
  std::ostringstream out;
  affine::AffineGroupSpec const& g = r.gamma;
  int const d = g.degree();
  out << "rover-forge report v1\n\n";
  out << "input: " << r.input.size() << " generator(s) of Q in GL_" << r.input_dimension
      << "(Q)\n";
  for (affine::NamedMatrix const& q : r.input) {
    out << "  " << q.name << " = " << inline_matrix(q.matrix) << "\n";
  }
  out << "\nembedding: A -> diag(A, 1/det A) applied "
      << (g.n == static_cast<int>(r.input_dimension) + 1 ? "once" : "twice") << ", dimension "
      << g.n << "\n";
  for (affine::NamedMatrix const& q : r.embedded) {
    out << "  " << q.name << " = " << inline_matrix(q.matrix)
        << "  det " << to_string(determinant(q.matrix)) << "\n";
  }
  out << "\nring: Z[1/N] with N = " << g.N.get_str();
  if (r.chosen_N != g.N) {
    out << " (prime scan gave N = " << r.chosen_N.get_str() << ", raised so that diag(N) is not trivial)";
  }
  out << "\nprime: p = " << g.p << " (smallest prime not dividing N)\n";
  out << "tree: d = p^n = " << g.p << "^" << g.n << " = " << d << " letters\n";
  out << "\ngamma: r = " << g.generators.size() << " generators\n";
  for (affine::NamedMap const& gen : g.generators) {
    out << "  " << gen.name << ": A = " << inline_matrix(gen.map.A) << ", b = (";
    for (std::size_t i = 0; i < gen.map.b.size(); ++i) {
      out << (i ? ", " : "") << to_string(gen.map.b[i]);
    }
    out << ")\n";
  }
  out << "retraction target:";
  for (std::string const& name : g.retraction_target) {
    out << ' ' << name;
  }
  out << (g.retraction_target.empty() ? " (trivial Q)\n" : "\n");
  PersistenceCheck const& p = r.persistence;
  out << "\npersistence: " << (p.passed() ? "passed" : "FAILED") << " (" << p.generators
      << " generators x " << p.letters << " letters, " << p.checks << " checks)\n";
  out << "  state closure sizes:";
  for (std::size_t i = 0; i < p.closure_sizes.size(); ++i) {
    out << ' ' << g.generators[i].name << "=" << p.closure_sizes[i];
  }
  out << "\n";
  for (std::string const& f : p.failures) {
    out << "  failure: " << f << "\n";
  }
  out << "\nclass-sum matrix A (column i sums the level-one state classes of generator i):\n";
  out << "  " << inline_matrix(r.class_sums) << "\n";
  if (r.doubled) {
    out << "\ndoubling: m = " << r.m << " (smallest even m with det(I - mA) != 0)\n";
  } else {
    out << "\ndoubling: disabled, m = 1\n";
  }
  out << "det(I - mA) = " << r.det.get_str() << "\n";
  out << "alphabet: m * d = " << r.m << " * " << d << " = " << r.alphabet() << "\n";
  if (r.bound.odd_case) {
    out << "odd alphabet: the bound adds a generator z with 2z = 0 and the signs of the root "
           "permutations\n";
  }
  out << "\nabelianization bound: V_" << r.alphabet() << "(G)_ab is a quotient of "
      << to_string(r.bound.group) << "\n";
  if (r.bound.group.finite()) {
    out << "certified finite, order <= " << r.bound.group.order().get_str() << "\n";
  } else {
    out << "not certified finite\n";
  }
  out << "\ngenerators of V_" << r.alphabet() << "(G):\n";
  for (LiftedGenerator const& l : r.lifted) {
    out << "  iota1(" << l.name << "^(" << r.m << ")) = [C, id(" << l.name << "^(" << r.m
        << "), 1, ..., 1), C]  automaton with " << l.states << " state(s) over "
        << r.alphabet() << " letters\n";
  }
  out << "  V_" << r.alphabet() << ": " << r.family_size
      << " triples [T, sigma, T'] with at most two carets per tree; those with at most one:\n";
  for (std::string const& x : r.family_small) {
    out << "    " << x << "\n";
  }
  out << "\ncited facts (not re-proved here):\n";
  out << "  V_d(G) is generated by iota1(G) and V_d\n";
  out << "  the commutator subgroup of V_d(G) is simple\n";
  if (r.bound.group.finite()) {
    out << "  so it has index at most " << r.bound.group.order().get_str()
        << " and is finitely presented whenever V_d(G) is\n";
  }
  return out.str();
}

}  // namespace rover::pipeline
