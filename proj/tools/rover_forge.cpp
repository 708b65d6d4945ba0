// Command line front end. Exit codes: 0 ok, 1 usage, 2 parse error,
// 3 domain error, 4 resource cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rover/aaut.hpp"
#include "rover/abel.hpp"
#include "rover/affine.hpp"
#include "rover/formats.hpp"
#include "rover/pipeline.hpp"
#include "rover/text.hpp"
#include "rover/topo.hpp"
#include "rover/tree.hpp"

namespace {

using namespace rover;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The first meaningful keyword of a file.
std::string header_of(std::string const& path) {
  for (text::Line const& line : text::read_file(path)) {
    return line.tokens.front();
  }
  throw ParseError(path, 0, "empty file");
}

// An automaton or affine file, reduced to the element selected by --gen.
struct Element {
  std::optional<formats::AutomatonFile> automata;
  std::optional<affine::AffineGroupSpec> spec;
  std::string name;

  int degree() const { return automata ? automata->automaton.degree() : spec->degree(); }

  tree::Automaton automaton(std::size_t cap) const {
    if (automata) {
      if (name.empty()) {
        return automata->automaton;
      }
      for (auto const& [n, f] : automata->states) {
        if (n == name) {
          return f;
        }
      }
      throw DomainError("no state named '" + name + "'");
    }
    return affine::to_automaton(map(), spec->shape(), cap).automaton;
  }

  affine::AffineMap const& map() const { return spec->generator(name); }
};

Element load_element(std::string const& path, std::string const& gen) {
  Element e;
  std::string const head = header_of(path);
  if (head == "automaton") {
    e.automata = formats::parse_automaton_file(path);
    e.name = gen;
  } else if (head == "affine") {
    e.spec = formats::parse_affine_spec_file(path);
    if (gen.empty()) {
      if (e.spec->generators.size() != 1) {
        throw UsageError("affine spec has several generators; choose one with --gen");
      }
      e.name = e.spec->generators.front().name;
    } else {
      e.name = gen;
      e.spec->generator(gen);
    }
  } else {
    throw ParseError(path, 0, "expected an 'automaton' or 'affine' file");
  }
  return e;
}

bool compact_style(std::string const& word) { return word.find(',') == std::string::npos; }

std::string show_word(tree::Word const& w, bool compact) {
  bool const fits = std::all_of(w.begin(), w.end(), [](int x) { return x <= 9; });
  return w.empty() ? "-" : formats::format_word(w, compact && fits);
}

std::vector<topo::RingSpec> parse_rings(std::string const& list) {
  std::vector<topo::RingSpec> rings;
  for (std::string const& token : text::split(list, ',')) {
    rings.push_back(topo::RingSpec::parse(token));
  }
  return rings;
}

std::string format_profile(topo::HomologyProfile const& h, std::string const& what) {
  std::ostringstream out;
  for (topo::DegreeHomology const& k : h.degrees) {
    out << "H~_" << k.degree << "(" << what << "; " << topo::to_string(h.ring)
        << ") = " << topo::to_string(h.ring, k.group) << "\n";
  }
  return out.str();
}

std::string format_counts(std::vector<std::size_t> const& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? " " : "") + std::to_string(v[i]);
  }
  return out.empty() ? "(empty)" : out;
}

void write_output(std::string const& path, std::string const& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
}

// Generators for the abelianization bound from any supported file.
abel::WreathPresentation load_presentation(std::string const& path) {
  std::string const head = header_of(path);
  if (head == "wreath") {
    return formats::parse_wreath_file(path);
  }
  if (head == "affine") {
    return abel::presentation_of(formats::parse_affine_spec_file(path));
  }
  if (head == "automaton") {
    formats::AutomatonFile const file = formats::parse_automaton_file(path);
    std::vector<std::pair<std::string, tree::Automaton>> gens;
    for (auto const& [name, f] : file.states) {
      if (!tree::is_identity(f)) {
        gens.emplace_back(name, f);
      }
    }
    return abel::presentation_of(gens);
  }
  throw ParseError(path, 0, "expected a 'wreath', 'affine' or 'automaton' file");
}

std::string describe_bound(abel::VAbBound const& b) {
  std::ostringstream out;
  out << "m " << b.m << "\nalphabet " << b.alphabet << "\n";
  if (b.odd_case) {
    out << "odd alphabet: extra generator z with 2z = 0\n";
  }
  out << "bound " << to_string(b.group) << "\n";
  if (b.group.finite()) {
    out << "finite yes, order <= " << b.group.order().get_str() << "\n";
  } else {
    out << "finite no\n";
  }
  return out.str();
}

// Closure of the listed automata under composition, for finite label groups.
std::vector<aaut::Label> finite_group(std::vector<tree::Automaton> const& generators, int d) {
  std::vector<tree::Automaton> elements{tree::Automaton::identity(d)};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (tree::Automaton const& g : generators) {
      tree::Automaton const h = tree::compose(g, elements[i]);
      bool const known = std::any_of(elements.begin(), elements.end(),
                                     [&](tree::Automaton const& e) { return tree::equals(e, h); });
      if (!known) {
        if (elements.size() == topo::kDescendingLinkMaxGroup) {
          throw CapExceeded("label group has more than " +
                            std::to_string(topo::kDescendingLinkMaxGroup) + " elements");
        }
        elements.push_back(h);
      }
    }
  }
  std::vector<aaut::Label> out;
  for (tree::Automaton const& e : elements) {
    out.push_back(tree::is_identity(e) ? aaut::Label(d) : aaut::Label(e));
  }
  return out;
}

std::string emit_or_show(aaut::Triple const& x, formats::LabelContext const& context) {
  try {
    return formats::emit_triple(x, context);
  } catch (DomainError const&) {
    return "# labels are not short words in the group file\n" + aaut::to_string(x) + "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"rover-forge: self-similar groups, tree pair triples and finiteness certificates"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::size_t cap = affine::kDefaultStateCap;
  app.add_option("--seed", seed, "Seed for randomised checks");
  app.add_option("--cap", cap, "Cap on state closures");

  std::string file, word, gen;

  auto* act = app.add_subcommand("act", "Image of a word under an automaton or affine generator");
  act->add_option("file", file, "Automaton or affine spec")->required();
  act->add_option("word", word, "Word, e.g. 111 or 1,1,1 (letters 1..d)")->required();
  act->add_option("--gen", gen, "State or generator name");

  auto* state = app.add_subcommand("state", "State of an element at a word");
  state->add_option("file", file)->required();
  state->add_option("word", word)->required();
  state->add_option("--gen", gen);

  auto* closure = app.add_subcommand("closure", "All states of an element");
  closure->add_option("file", file)->required();
  closure->add_option("--gen", gen);

  int m = 2;
  auto* dbl = app.add_subcommand("double", "Doubling to m*d letters");
  dbl->add_option("file", file)->required();
  dbl->add_option("--m", m, "Doubling factor")->required();
  dbl->add_option("--gen", gen);

  std::optional<int> ab_m;
  bool find_m = false;
  auto* abelianize = app.add_subcommand("abelianize", "Abelianization bound for V_md(G)");
  abelianize->add_option("file", file, "Wreath presentation, automaton or affine spec")->required();
  auto* ab_m_opt = abelianize->add_option("--m", ab_m, "Doubling factor (default 1)");
  abelianize->add_flag("--find-m", find_m, "Search the smallest even m with det(I - mA) != 0")
      ->excludes(ab_m_opt);

  std::string group_file, x_file, y_file;
  auto* aaut_cmd = app.add_subcommand("aaut", "Tree pair triple calculus");
  aaut_cmd->require_subcommand(1);
  aaut_cmd->add_option("--group", group_file, "Automaton or affine file naming the labels");
  auto* mul = aaut_cmd->add_subcommand("mul", "Product x y (y acts first)");
  mul->add_option("x", x_file, "Triple file")->required();
  mul->add_option("y", y_file, "Triple file")->required();
  auto* inv = aaut_cmd->add_subcommand("inv", "Inverse");
  inv->add_option("x", x_file)->required();
  auto* eq = aaut_cmd->add_subcommand("eq", "Equality of two elements");
  eq->add_option("x", x_file)->required();
  eq->add_option("y", y_file)->required();
  auto* aact = aaut_cmd->add_subcommand("act", "Action on a boundary word");
  aact->add_option("x", x_file)->required();
  aact->add_option("word", word)->required();

  std::string triple_file;
  bool check = false;
  aaut::RhoCheckOptions rho_options;
  auto* qr = app.add_subcommand("quasiretract", "The quasi-retraction rho onto Q");
  qr->add_option("spec", file, "Affine spec with retraction targets")->required();
  qr->add_option("triple", triple_file, "Triple whose image to compute");
  qr->add_flag("--check", check, "Randomised checks of the retraction properties");
  qr->add_option("--samples", rho_options.samples, "Samples per property");
  qr->add_option("--chains", rho_options.chains, "Expansion chains");
  qr->add_option("--chain-length", rho_options.chain_length, "Expansions per chain");

  std::string rings = "Z,Q";
  std::string dump;
  auto* flag = app.add_subcommand("flag-profile", "Finiteness profile of a graph's flag complex");
  flag->add_option("graph", file, "Graph file")->required();
  flag->add_option("--rings", rings, "Comma separated rings: Z, Q, Z/m");
  flag->add_option("--dump", dump, "Write the flag complex to this file");

  int d = 2, n = 4;
  bool homology = false, grounded = false, connectivity = false;
  std::optional<int> link;
  auto* matching = app.add_subcommand("matching", "Matching complexes M_{d,n}");
  matching->add_option("--d", d)->required();
  matching->add_option("--n", n)->required();
  auto* h_opt = matching->add_flag("--homology", homology, "Reduced homology");
  auto* g_opt = matching->add_flag("--grounded", grounded, "Groundedness check");
  auto* c_opt = matching->add_flag("--connectivity", connectivity, "Connectivity bound check");
  auto* l_opt = matching->add_option("--link", link, "Link of the first k-simplex");
  matching->add_option("--rings", rings, "Rings for --homology");
  h_opt->excludes(g_opt)->excludes(c_opt)->excludes(l_opt);
  g_opt->excludes(c_opt)->excludes(l_opt);
  c_opt->excludes(l_opt);

  std::string group = "trivial";
  auto* desclink = app.add_subcommand("desclink", "Descending links over a finite label group");
  desclink->add_option("--d", d)->required();
  desclink->add_option("--n", n)->required();
  desclink->add_option("--group", group, "trivial, Z2, or an automaton file of generators");

  std::string in_path, out_path, gamma_path;
  bool no_doubling = false;
  auto* pipe = app.add_subcommand("pipeline", "Certificate bundle from generators of Q");
  pipe->add_option("--in", in_path, "Matrix file")->required();
  pipe->add_option("--out", out_path, "Report path (default stdout)");
  pipe->add_flag("--no-doubling", no_doubling, "Force m = 1");
  pipe->add_option("--gamma", gamma_path, "Also write the affine spec of Gamma here");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  rho_options.seed = seed;

  if (act->parsed()) {
    Element const e = load_element(file, gen);
    tree::Word const w = formats::parse_word(word);
    tree::check_word(tree::Alphabet{e.degree()}, w);
    tree::Word out;
    if (e.spec) {
      std::vector<affine::Digits> digits;
      for (int x : w) {
        digits.push_back(affine::letter_tuple(e.spec->shape(), x));
      }
      for (affine::Digits const& x : affine::affine_act(e.map(), digits, e.spec->p)) {
        out.push_back(affine::letter_index(e.spec->shape(), x));
      }
    } else {
      out = tree::act(e.automaton(cap), w);
    }
    std::cout << show_word(out, compact_style(word)) << "\n";
  } else if (state->parsed()) {
    Element const e = load_element(file, gen);
    tree::Word const w = formats::parse_word(word);
    tree::check_word(tree::Alphabet{e.degree()}, w);
    if (e.spec) {
      affine::AffineMap g = e.map();
      for (int x : w) {
        g = affine::affine_state(g, affine::letter_tuple(e.spec->shape(), x), e.spec->p).state;
      }
      std::cout << affine::to_string(g) << "\n";
    } else {
      std::cout << formats::emit_automaton(tree::state_at(e.automaton(cap), w));
    }
  } else if (closure->parsed()) {
    Element const e = load_element(file, gen);
    if (e.spec) {
      auto const states = affine::state_closure(e.map(), e.spec->shape(), cap);
      std::cout << "closure size " << states.size() << "\n";
      for (std::size_t i = 0; i < states.size(); ++i) {
        std::cout << "s" << i << " " << affine::to_string(states[i]) << "\n";
      }
    } else {
      tree::Automaton const f = e.automaton(cap);
      std::cout << "closure size " << f.size() << "\n" << formats::emit_automaton(f);
    }
  } else if (dbl->parsed()) {
    Element const e = load_element(file, gen);
    std::cout << formats::emit_automaton(abel::doubling(e.automaton(cap), m));
  } else if (abelianize->parsed()) {
    abel::WreathPresentation const w = load_presentation(file);
    IntegerMatrix const A = abel::class_sum_matrix(w);
    std::cout << "d " << w.d << "\nr " << w.r() << "\ngenerators";
    for (auto const& g : w.generators) {
      std::cout << ' ' << g.name;
    }
    std::cout << "\nclass-sum matrix\n" << to_string(A);
    if (find_m) {
      abel::MinimalM const found = abel::find_minimal_m(w);
      std::cout << "det(I - mA) " << found.det.get_str() << "\n" << describe_bound(found.bound);
    } else {
      int const mm = ab_m.value_or(1);
      abel::VAbBound const b = abel::v_ab_presentation(w, mm);
      std::cout << "det(I - mA) " << determinant(abel::relation_matrix(A, mm)).get_str() << "\n"
                << describe_bound(b);
    }
  } else if (aaut_cmd->parsed()) {
    formats::LabelContext const context =
        group_file.empty() ? formats::LabelContext() : formats::load_label_context(group_file);
    std::vector<aaut::Triple> xs{formats::parse_triple_file(x_file, context)};
    if (!y_file.empty()) {
      xs.push_back(formats::parse_triple_file(y_file, context));
    }
    formats::LabelContext const shown =
        group_file.empty() ? formats::LabelContext(xs.front().degree()) : context;
    if (mul->parsed()) {
      std::cout << emit_or_show(aaut::multiply(xs[0], xs[1]), shown);
    } else if (inv->parsed()) {
      std::cout << emit_or_show(aaut::invert_triple(xs[0]), shown);
    } else if (eq->parsed()) {
      std::cout << (aaut::equals_triple(xs[0], xs[1]) ? "true" : "false") << "\n";
    } else {
      tree::Word const w = formats::parse_word(word);
      tree::check_word(tree::Alphabet{xs[0].degree()}, w);
      std::cout << show_word(aaut::act_boundary(xs[0], w), compact_style(word)) << "\n";
    }
  } else if (qr->parsed()) {
    affine::AffineGroupSpec const spec = formats::parse_affine_spec_file(file);
    if (triple_file.empty() && !check) {
      throw UsageError("quasiretract needs a triple file, --check, or both");
    }
    if (!triple_file.empty()) {
      aaut::Triple const x = formats::parse_triple_file(triple_file, formats::LabelContext(spec));
      affine::QuotientProjection const projection(spec);
      std::cout << "rho\n" << to_string(aaut::rho_quasiretract(x, projection, spec.n));
    }
    if (check) {
      aaut::RhoCheckReport const r = aaut::rho_property_check(spec, rho_options);
      std::cout << "seed " << seed << "\nexpansion checks " << r.expansion_checks
                << "\nproperty 1 checks " << r.property1_checks << "\nproperty 2 checks "
                << r.property2_checks << "\n";
      for (std::string const& f : r.failures) {
        std::cout << "failure " << f << "\n";
      }
      std::cout << (r.passed() ? "passed" : "FAILED") << "\n";
    }
  } else if (flag->parsed()) {
    topo::Graph const g = formats::parse_graph_file(file);
    topo::FinitenessReport const report = topo::finiteness_profile(g, parse_rings(rings));
    if (!dump.empty()) {
      write_output(dump, formats::emit_complex(topo::flag_complex(g)));
    }
    std::cout << topo::to_string(report);
  } else if (matching->parsed()) {
    if (n < d) {
      std::cerr << "warning: n < d, M_{" << d << "," << n << "} is empty\n";
    }
    if (grounded) {
      std::cout << "grounded " << (topo::grounded_check(d, n) ? "yes" : "no") << "\n";
    } else if (connectivity) {
      topo::ConnectivityReport const r = topo::matching_connectivity_check(d, n);
      std::cout << "bound " << r.bound << "\n"
                << format_profile(r.profile, "M") << "connected-to-bound "
                << (r.passed ? "yes" : "no") << "\n";
    } else if (link) {
      topo::LinkReport const r = topo::link_check(d, n, *link);
      std::cout << "simplex";
      for (auto const& s : r.simplex) {
        std::cout << " {" << formats::format_word(s, false) << "}";
      }
      std::cout << "\nlink f-vector " << format_counts(r.link_f_vector) << "\n"
                << "isomorphic to M_{" << d << "," << n - d * (*link + 1) << "} "
                << (r.matches_vertex_count_convention ? "yes" : "no") << "\n"
                << "isomorphic to M_{" << d << "," << n - d * *link << "} "
                << (r.matches_dk_convention ? "yes" : "no") << "\n";
    } else {
      topo::MatchingComplex const M = topo::matching_complex(d, n);
      std::cout << "vertices " << M.subsets.size() << "\nf-vector "
                << format_counts(M.complex.f_vector()) << "\n";
      if (homology) {
        for (topo::RingSpec const& ring : parse_rings(rings)) {
          std::cout << format_profile(topo::reduced_homology(M.complex, ring), "M");
        }
      }
    }
  } else if (desclink->parsed()) {
    std::vector<aaut::Label> labels;
    if (group == "trivial") {
      labels = finite_group({}, d);
    } else if (group == "Z2") {
      std::vector<int> swap(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        swap[static_cast<std::size_t>(i)] = i + 1;
      }
      std::swap(swap[0], swap[1]);
      labels = finite_group({tree::rooted(tree::Permutation(swap))}, d);
    } else {
      formats::AutomatonFile const f = formats::parse_automaton_file(group);
      std::vector<tree::Automaton> gens;
      for (auto const& s : f.states) {
        gens.push_back(s.second);
      }
      labels = finite_group(gens, f.automaton.degree());
    }
    topo::DescendingLinkReport const r = topo::descending_link(d, n, labels);
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "d " << r.d << "\nn " << r.n << "\ngroup order " << r.group_order
              << "\nsimplices by dimension " << format_counts(r.simplex_counts)
              << "\nfiber sizes " << r.min_fiber << ".." << r.max_fiber
              << "\nwell defined " << yes(r.well_defined) << "\ndisjoint images "
              << yes(r.disjoint_images) << "\ninjective on simplices "
              << yes(r.injective_on_simplices) << "\nsurjective " << yes(r.surjective)
              << "\ncomplete join " << yes(r.complete_join) << "\n";
    for (std::string const& f : r.failures) {
      std::cout << "failure " << f << "\n";
    }
  } else if (pipe->parsed()) {
    formats::MatrixFile const q = formats::parse_matrices_file(in_path);
    pipeline::Options options;
    options.doubling = !no_doubling;
    options.state_cap = cap;
    pipeline::Report const report = pipeline::run_pipeline(q.generators, q.n, options);
    if (!gamma_path.empty()) {
      write_output(gamma_path, formats::emit_affine_spec(report.gamma));
    }
    write_output(out_path, pipeline::emit_report(report));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (UsageError const& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (rover::ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (rover::CapExceeded const& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 4;
  } catch (rover::DomainError const& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
