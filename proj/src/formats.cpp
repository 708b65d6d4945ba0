#include "rover/formats.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "rover/text.hpp"

namespace rover::formats {

namespace {

using text::Line;

class Reader {
 public:
  Reader(std::istream& in, std::string file) : file_(std::move(file)), lines_(text::read_lines(in)) {}

  std::string const& file() const noexcept { return file_; }
  std::vector<Line> const& lines() const noexcept { return lines_; }

  [[noreturn]] void fail(Line const& line, std::string const& message) const {
    throw ParseError(file_, line.number, message);
  }
  [[noreturn]] void domain(std::size_t line, std::string const& message) const {
    throw ParseDomainError(file_, line, message);
  }

  Line const& header(std::string const& keyword) const {
    if (lines_.empty()) {
      throw ParseError(file_, 0, "empty input, expected '" + keyword + "' header");
    }
    if (lines_.front().tokens.front() != keyword) {
      fail(lines_.front(), "expected '" + keyword + "' header, got '" +
                               lines_.front().tokens.front() + "'");
    }
    return lines_.front();
  }

  void arity(Line const& line, std::size_t count) const {
    if (line.tokens.size() != count) {
      fail(line, "'" + line.tokens.front() + "' takes " + std::to_string(count - 1) +
                     " argument(s), got " + std::to_string(line.tokens.size() - 1));
    }
  }

  long long integer(Line const& line, std::string const& token) const {
    return text::to_int(file_, line, token);
  }

  long long positive(Line const& line, std::string const& token) const {
    long long const v = integer(line, token);
    if (v < 1) {
      fail(line, "expected a positive integer, got '" + token + "'");
    }
    return v;
  }

  Integer big(Line const& line, std::string const& token) const {
    try {
      return parse_integer(token);
    } catch (std::invalid_argument const&) {
      fail(line, "expected an integer, got '" + token + "'");
    }
  }

  Rational rational(Line const& line, std::string const& token) const {
    try {
      return parse_rational(token);
    } catch (std::invalid_argument const&) {
      fail(line, "expected a rational a or a/b, got '" + token + "'");
    } catch (DomainError const& e) {
      domain(line.number, e.what());
    }
  }

  tree::Permutation permutation(Line const& line, std::size_t first, std::size_t count) const {
    if (line.tokens.size() < first + count) {
      fail(line, "expected " + std::to_string(count) + " permutation images");
    }
    std::vector<int> images;
    for (std::size_t i = 0; i < count; ++i) {
      images.push_back(static_cast<int>(integer(line, line.tokens[first + i])));
    }
    try {
      return tree::Permutation(std::move(images));
    } catch (DomainError const&) {
      fail(line, "not a permutation");
    }
  }

 private:
  std::string file_;
  std::vector<Line> lines_;
};

template <typename Parse>
auto from_path(std::string const& path, Parse parse) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open file");
  }
  return parse(in, path);
}

std::string join(std::vector<std::string> const& parts, char separator = ' ') {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) {
      out += separator;
    }
    out += parts[i];
  }
  return out;
}

std::string images(tree::Permutation const& p) {
  std::vector<std::string> parts;
  for (int x : p.images()) {
    parts.push_back(std::to_string(x));
  }
  return join(parts);
}

}  // namespace

// --- automata ---------------------------------------------------------------

AutomatonFile parse_automaton(std::istream& in, std::string const& file) {
  Reader const r(in, file);
  Line const& head = r.header("automaton");
  r.arity(head, 2);
  int const d = static_cast<int>(r.positive(head, text::key_value(file, head, 1, "d")));
  if (d < 2) {
    r.domain(head.number, "alphabet size must be at least 2");
  }
  struct Raw {
    std::string name;
    tree::Permutation perm;
    std::vector<std::string> trans;
    Line const* line;
  };
  std::vector<Raw> raw;
  std::map<std::string, std::size_t> index;
  std::optional<std::pair<std::string, Line const*>> initial;
  auto const D = static_cast<std::size_t>(d);
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    Line const& line = r.lines()[i];
    std::string const& kw = line.tokens.front();
    if (kw == "state") {
      r.arity(line, 2 * D + 4);
      if (line.tokens[2] != "perm" || line.tokens[3 + D] != "trans") {
        r.fail(line, "expected 'state <name> perm <images> trans <names>'");
      }
      std::string const& name = line.tokens[1];
      if (!index.emplace(name, raw.size()).second) {
        r.fail(line, "state '" + name + "' declared twice");
      }
      raw.push_back({name, r.permutation(line, 3, D),
                     std::vector<std::string>(line.tokens.begin() + static_cast<std::ptrdiff_t>(4 + D),
                                              line.tokens.end()),
                     &line});
    } else if (kw == "initial") {
      r.arity(line, 2);
      if (initial) {
        r.fail(line, "initial state given twice");
      }
      initial = std::make_pair(line.tokens[1], &line);
    } else {
      r.fail(line, "unknown keyword '" + kw + "'");
    }
  }
  if (raw.empty()) {
    throw ParseError(file, 0, "no states declared");
  }
  if (!initial) {
    throw ParseError(file, 0, "missing 'initial' line");
  }
  std::vector<tree::State> states;
  for (Raw const& s : raw) {
    tree::State state{s.name, s.perm, {}};
    for (std::string const& t : s.trans) {
      auto it = index.find(t);
      if (it == index.end()) {
        r.fail(*s.line, "unknown state '" + t + "'");
      }
      state.next.push_back(it->second);
    }
    states.push_back(std::move(state));
  }
  auto it = index.find(initial->first);
  if (it == index.end()) {
    r.fail(*initial->second, "unknown state '" + initial->first + "'");
  }
  AutomatonFile out{tree::Automaton(d, states, it->second), {}};
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.states.emplace_back(states[i].name, tree::Automaton(d, states, i));
  }
  return out;
}

AutomatonFile parse_automaton_file(std::string const& path) {
  return from_path(path, [](std::istream& in, std::string const& f) { return parse_automaton(in, f); });
}

std::string emit_automaton(tree::Automaton const& f) {
  std::ostringstream out;
  out << "automaton d=" << f.degree() << "\n";
  for (tree::State const& s : f.states()) {
    out << "state " << s.name << " perm " << images(s.perm) << " trans";
    for (std::size_t t : s.next) {
      out << ' ' << f.states()[t].name;
    }
    out << "\n";
  }
  out << "initial " << f.initial_state().name << "\n";
  return out.str();
}

// --- affine specs -----------------------------------------------------------

affine::AffineGroupSpec parse_affine_spec(std::istream& in, std::string const& file) {
  Reader const r(in, file);
  Line const& head = r.header("affine");
  r.arity(head, 1);
  affine::AffineGroupSpec spec;
  std::size_t n_line = 0, N_line = 0, p_line = 0;
  std::vector<Line const*> gens;
  std::vector<Line const*> retracts;
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    Line const& line = r.lines()[i];
    std::string const& kw = line.tokens.front();
    auto once = [&](std::size_t& seen) {
      if (seen) {
        r.fail(line, "'" + kw + "' given twice");
      }
      seen = line.number;
      r.arity(line, 2);
    };
    if (kw == "n") {
      once(n_line);
      spec.n = static_cast<int>(r.positive(line, line.tokens[1]));
    } else if (kw == "N") {
      once(N_line);
      spec.N = r.big(line, line.tokens[1]);
      if (spec.N < 1) {
        r.domain(line.number, "N must be positive");
      }
    } else if (kw == "p") {
      once(p_line);
      spec.p = static_cast<int>(r.positive(line, line.tokens[1]));
    } else if (kw == "gen") {
      gens.push_back(&line);
    } else if (kw == "retract") {
      retracts.push_back(&line);
    } else {
      r.fail(line, "unknown keyword '" + kw + "'");
    }
  }
  if (!n_line || !N_line || !p_line) {
    throw ParseError(file, 0, "affine spec needs 'n', 'N' and 'p' lines");
  }
  if (!is_prime(Integer(spec.p))) {
    r.domain(p_line, "p = " + std::to_string(spec.p) + " is not prime");
  }
  if (spec.N % spec.p == 0) {
    r.domain(std::max(p_line, N_line),
             "p = " + std::to_string(spec.p) + " divides N = " + spec.N.get_str());
  }
  auto const n = static_cast<std::size_t>(spec.n);
  for (Line const* lp : gens) {
    Line const& line = *lp;
    if (line.tokens.size() < 3) {
      r.fail(line, "expected 'gen <name> translation|linear|affine ...'");
    }
    std::string const& name = line.tokens[1];
    std::string const& kind = line.tokens[2];
    auto values = [&](std::size_t from, std::size_t count) {
      std::vector<Rational> out;
      for (std::size_t k = 0; k < count; ++k) {
        out.push_back(r.rational(line, line.tokens[from + k]));
      }
      return out;
    };
    auto matrix = [&](std::vector<Rational> const& entries) {
      RationalMatrix A(n, n);
      for (std::size_t k = 0; k < n * n; ++k) {
        A(k / n, k % n) = entries[k];
      }
      return A;
    };
    affine::AffineMap g;
    if (kind == "translation") {
      r.arity(line, 3 + n);
      g = affine::AffineMap::translation(values(3, n));
    } else if (kind == "linear") {
      r.arity(line, 3 + n * n);
      g = affine::AffineMap::linear(matrix(values(3, n * n)));
    } else if (kind == "affine") {
      r.arity(line, 4 + n * n + n);
      if (line.tokens[3 + n * n] != "|") {
        r.fail(line, "expected '|' between the matrix and the translation");
      }
      g = affine::AffineMap{matrix(values(3, n * n)), values(4 + n * n, n)};
    } else {
      r.fail(line, "unknown generator kind '" + kind + "'");
    }
    spec.generators.push_back({name, g});
    try {
      affine::AffineGroupSpec single = spec;
      single.generators = {spec.generators.back()};
      single.retraction_target.clear();
      single.validate();
    } catch (DomainError const& e) {
      r.domain(line.number, e.what());
    }
    for (std::size_t k = 0; k + 1 < spec.generators.size(); ++k) {
      if (spec.generators[k].name == name) {
        r.domain(line.number, "duplicate generator '" + name + "'");
      }
    }
  }
  for (Line const* lp : retracts) {
    for (std::size_t k = 1; k < lp->tokens.size(); ++k) {
      std::string const& name = lp->tokens[k];
      if (std::none_of(spec.generators.begin(), spec.generators.end(),
                       [&](affine::NamedMap const& g) { return g.name == name; })) {
        r.domain(lp->number, "retraction target '" + name + "' is not a generator");
      }
      spec.retraction_target.push_back(name);
    }
  }
  return spec;
}

affine::AffineGroupSpec parse_affine_spec_file(std::string const& path) {
  return from_path(path, [](std::istream& in, std::string const& f) { return parse_affine_spec(in, f); });
}

std::string emit_affine_spec(affine::AffineGroupSpec const& spec) {
  std::ostringstream out;
  out << "affine\nn " << spec.n << "\nN " << spec.N.get_str() << "\np " << spec.p << "\n";
  for (affine::NamedMap const& g : spec.generators) {
    std::vector<std::string> A, b;
    for (Rational const& x : g.map.A.data()) {
      A.push_back(to_string(x));
    }
    bool zero_b = true;
    for (Rational const& x : g.map.b) {
      b.push_back(to_string(x));
      zero_b = zero_b && x == 0;
    }
    out << "gen " << g.name;
    if (g.map.A.is_identity()) {
      out << " translation " << join(b);
    } else if (zero_b) {
      out << " linear " << join(A);
    } else {
      out << " affine " << join(A) << " | " << join(b);
    }
    out << "\n";
  }
  if (!spec.retraction_target.empty()) {
    out << "retract " << join(spec.retraction_target) << "\n";
  }
  return out.str();
}

// --- wreath presentations ---------------------------------------------------

abel::WreathPresentation parse_wreath(std::istream& in, std::string const& file) {
  Reader const r(in, file);
  Line const& head = r.header("wreath");
  r.arity(head, 3);
  abel::WreathPresentation w;
  w.d = static_cast<int>(r.positive(head, text::key_value(file, head, 1, "d")));
  long long const rr = r.integer(head, text::key_value(file, head, 2, "r"));
  if (rr < 0) {
    r.fail(head, "r must be non-negative");
  }
  auto const R = static_cast<std::size_t>(rr);
  auto const D = static_cast<std::size_t>(w.d);
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    Line const& line = r.lines()[i];
    std::string const& kw = line.tokens.front();
    if (kw == "gen") {
      r.arity(line, 3 + D);
      if (line.tokens[2] != "perm") {
        r.fail(line, "expected 'gen <name> perm <images>'");
      }
      if (!w.generators.empty() && w.generators.back().state_classes.size() != D) {
        r.fail(line, "previous generator has " +
                         std::to_string(w.generators.back().state_classes.size()) +
                         " stateclass lines, expected " + std::to_string(D));
      }
      w.generators.push_back({line.tokens[1], r.permutation(line, 3, D), {}});
    } else if (kw == "stateclass") {
      if (w.generators.empty()) {
        r.fail(line, "'stateclass' before any 'gen'");
      }
      r.arity(line, 2 + R);
      auto& classes = w.generators.back().state_classes;
      long long const letter = r.integer(line, line.tokens[1]);
      if (letter != static_cast<long long>(classes.size()) + 1) {
        r.fail(line, "expected stateclass for letter " + std::to_string(classes.size() + 1));
      }
      std::vector<Integer> c;
      for (std::size_t k = 0; k < R; ++k) {
        c.push_back(r.big(line, line.tokens[2 + k]));
      }
      classes.push_back(std::move(c));
    } else {
      r.fail(line, "unknown keyword '" + kw + "'");
    }
  }
  if (w.generators.size() != R) {
    throw ParseError(file, head.number,
                     "header says r=" + std::to_string(R) + " but " +
                         std::to_string(w.generators.size()) + " generators follow");
  }
  if (!w.generators.empty() && w.generators.back().state_classes.size() != D) {
    throw ParseError(file, 0, "last generator is missing stateclass lines");
  }
  return w;
}

abel::WreathPresentation parse_wreath_file(std::string const& path) {
  return from_path(path, [](std::istream& in, std::string const& f) { return parse_wreath(in, f); });
}

std::string emit_wreath(abel::WreathPresentation const& w) {
  std::ostringstream out;
  out << "wreath d=" << w.d << " r=" << w.r() << "\n";
  for (abel::WreathGenerator const& g : w.generators) {
    out << "gen " << g.name << " perm " << images(g.perm) << "\n";
    for (std::size_t x = 0; x < g.state_classes.size(); ++x) {
      out << "stateclass " << x + 1;
      for (Integer const& c : g.state_classes[x]) {
        out << ' ' << c.get_str();
      }
      out << "\n";
    }
  }
  return out.str();
}

// --- matrices ---------------------------------------------------------------

MatrixFile parse_matrices(std::istream& in, std::string const& file) {
  Reader const r(in, file);
  Line const& head = r.header("matrices");
  r.arity(head, 2);
  auto const n = static_cast<std::size_t>(r.positive(head, text::key_value(file, head, 1, "n")));
  std::vector<affine::NamedMatrix> out;
  std::size_t row = n;
  Line const* gen_line = nullptr;
  auto finish = [&]() {
    if (gen_line && row != n) {
      r.fail(*gen_line, "generator '" + out.back().name + "' has " + std::to_string(row) +
                            " rows, expected " + std::to_string(n));
    }
    if (gen_line && determinant(out.back().matrix) == 0) {
      r.domain(gen_line->number, "generator '" + out.back().name + "' is singular");
    }
  };
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    Line const& line = r.lines()[i];
    if (line.tokens.front() == "gen") {
      finish();
      r.arity(line, 2);
      for (auto const& g : out) {
        if (g.name == line.tokens[1]) {
          r.fail(line, "duplicate generator '" + g.name + "'");
        }
      }
      out.push_back({line.tokens[1], RationalMatrix(n, n)});
      gen_line = &line;
      row = 0;
      continue;
    }
    if (!gen_line || row == n) {
      r.fail(line, "matrix row outside a 'gen' block");
    }
    if (line.tokens.size() != n) {
      r.fail(line, "expected " + std::to_string(n) + " entries per row");
    }
    for (std::size_t j = 0; j < n; ++j) {
      out.back().matrix(row, j) = r.rational(line, line.tokens[j]);
    }
    ++row;
  }
  finish();
  return MatrixFile{n, std::move(out)};
}

MatrixFile parse_matrices_file(std::string const& path) {
  return from_path(path, [](std::istream& in, std::string const& f) { return parse_matrices(in, f); });
}

std::string emit_matrices(MatrixFile const& m) {
  std::ostringstream out;
  out << "matrices n=" << m.n << "\n";
  for (affine::NamedMatrix const& g : m.generators) {
    out << "gen " << g.name << "\n";
    for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
      for (std::size_t j = 0; j < g.matrix.cols(); ++j) {
        out << (j ? " " : "") << to_string(g.matrix(i, j));
      }
      out << "\n";
    }
  }
  return out.str();
}

// --- graphs and complexes ---------------------------------------------------

topo::Graph parse_graph(std::istream& in, std::string const& file) {
  Reader const r(in, file);
  Line const& head = r.header("graph");
  r.arity(head, 2);
  long long const V = r.integer(head, head.tokens[1]);
  if (V < 0) {
    r.fail(head, "vertex count must be non-negative");
  }
  topo::Graph g{static_cast<int>(V), {}};
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    Line const& line = r.lines()[i];
    if (line.tokens.front() != "edge") {
      r.fail(line, "unknown keyword '" + line.tokens.front() + "'");
    }
    r.arity(line, 3);
    int u = static_cast<int>(r.integer(line, line.tokens[1]));
    int v = static_cast<int>(r.integer(line, line.tokens[2]));
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices) {
      r.domain(line.number, "endpoint out of range 0.." + std::to_string(g.vertices - 1));
    }
    if (u == v) {
      r.domain(line.number, "loop at vertex " + std::to_string(u));
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      r.domain(line.number, "duplicate edge");
    }
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return g;
}

topo::Graph parse_graph_file(std::string const& path) {
  return from_path(path, [](std::istream& in, std::string const& f) { return parse_graph(in, f); });
}

std::string emit_graph(topo::Graph const& g) {
  std::ostringstream out;
  out << "graph " << g.vertices << "\n";
  for (auto const& [u, v] : g.edges) {
    out << "edge " << u << ' ' << v << "\n";
  }
  return out.str();
}

topo::SimplicialComplex parse_complex(std::istream& in, std::string const& file) {
  Reader const r(in, file);
  std::vector<topo::Simplex> simplices;
  for (Line const& line : r.lines()) {
    if (line.tokens.front() != "simplex" || line.tokens.size() < 2) {
      r.fail(line, "expected 'simplex <v0> <v1> ...'");
    }
    topo::Simplex s;
    for (std::size_t k = 1; k < line.tokens.size(); ++k) {
      long long const v = r.integer(line, line.tokens[k]);
      if (v < 0) {
        r.fail(line, "vertices are non-negative");
      }
      s.push_back(static_cast<int>(v));
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      r.domain(line.number, "simplex with a repeated vertex");
    }
    simplices.push_back(std::move(s));
  }
  return topo::SimplicialComplex::closure_of(std::move(simplices));
}

std::string emit_complex(topo::SimplicialComplex const& K) {
  std::ostringstream out;
  for (int k = 0; k <= K.dimension(); ++k) {
    for (topo::Simplex const& s : K.simplices(k)) {
      out << "simplex";
      for (int v : s) {
        out << ' ' << v;
      }
      out << "\n";
    }
  }
  return out.str();
}

// --- labels and triples -----------------------------------------------------

LabelContext::LabelContext(int d) : d_(d) {}

LabelContext::LabelContext(AutomatonFile const& automata) : d_(automata.automaton.degree()) {
  for (auto const& [name, f] : automata.states) {
    names_.push_back(name);
    labels_.emplace(name, aaut::Label(f));
  }
}

LabelContext::LabelContext(affine::AffineGroupSpec const& spec) : d_(spec.degree()) {
  for (affine::NamedMap const& g : spec.generators) {
    names_.push_back(g.name);
    labels_.emplace(g.name, aaut::Label(g.map, spec.shape()));
  }
}

aaut::Label const& LabelContext::operator[](std::string const& name) const {
  auto it = labels_.find(name);
  if (it == labels_.end()) {
    throw DomainError("unknown label '" + name + "'");
  }
  return it->second;
}

aaut::Label LabelContext::resolve(std::string const& token) const {
  if (token == "id" || token == "1") {
    return aaut::Label(d_);
  }
  if (token.rfind("w:", 0) != 0) {
    return (*this)[token];
  }
  aaut::Label out(d_);
  for (std::string const& factor : text::split(token.substr(2), ',')) {
    std::string name = factor;
    bool inverse = false;
    if (name.size() > 3 && name.compare(name.size() - 3, 3, "^-1") == 0) {
      name.resize(name.size() - 3);
      inverse = true;
    }
    if (name.empty()) {
      throw DomainError("empty factor in '" + token + "'");
    }
    aaut::Label const f = name == "id" ? aaut::Label(d_) : (*this)[name];
    out = out.compose(inverse ? f.inverse() : f);
  }
  return out;
}

std::string LabelContext::name_of(aaut::Label const& f) const {
  if (f.is_identity()) {
    return "id";
  }
  tree::Automaton const a = f.to_automaton();
  std::vector<std::pair<std::string, tree::Automaton>> letters;
  for (std::string const& name : names_) {
    aaut::Label const& g = labels_.at(name);
    if (g.is_identity()) {
      continue;
    }
    letters.emplace_back(name, g.to_automaton());
    letters.emplace_back(name + "^-1", tree::invert(letters.back().second));
  }
  for (auto const& [name, g] : letters) {
    if (tree::equals(a, g)) {
      return name.find('^') == std::string::npos ? name : "w:" + name;
    }
  }
  for (auto const& [x, gx] : letters) {
    for (auto const& [y, gy] : letters) {
      if (tree::equals(a, tree::compose(gx, gy))) {
        return "w:" + x + "," + y;
      }
    }
  }
  throw DomainError("label " + to_string(f) + " is not a short word in the named labels");
}

aaut::Triple parse_triple(std::istream& in, std::string const& file, LabelContext const& context) {
  Reader const r(in, file);
  Line const& head = r.header("triple");
  r.arity(head, 2);
  int const d = static_cast<int>(r.positive(head, text::key_value(file, head, 1, "d")));
  if (d != context.degree() && !context.names().empty()) {
    r.domain(head.number, "triple over " + std::to_string(d) + " letters, labels over " +
                              std::to_string(context.degree()));
  }
  LabelContext const trivial(d);
  LabelContext const& labels_from = context.names().empty() ? trivial : context;
  std::map<std::string, Line const*> seen;
  for (std::size_t i = 1; i < r.lines().size(); ++i) {
    Line const& line = r.lines()[i];
    std::string const& kw = line.tokens.front();
    if (kw != "minus" && kw != "perm" && kw != "labels" && kw != "plus") {
      r.fail(line, "unknown keyword '" + kw + "'");
    }
    if (!seen.emplace(kw, &line).second) {
      r.fail(line, "'" + kw + "' given twice");
    }
  }
  for (char const* kw : {"minus", "perm", "labels", "plus"}) {
    if (!seen.count(kw)) {
      throw ParseError(file, 0, std::string("missing '") + kw + "' line");
    }
  }
  auto forest = [&](Line const& line) {
    r.arity(line, 2);
    try {
      return aaut::Forest::parse(d, line.tokens[1]);
    } catch (DomainError const& e) {
      r.fail(line, e.what());
    }
  };
  aaut::Triple x;
  x.minus = forest(*seen["minus"]);
  x.plus = forest(*seen["plus"]);
  Line const& perm = *seen["perm"];
  x.sigma = r.permutation(perm, 1, perm.tokens.size() - 1);
  Line const& labels = *seen["labels"];
  for (std::size_t k = 1; k < labels.tokens.size(); ++k) {
    try {
      x.labels.push_back(labels_from.resolve(labels.tokens[k]));
    } catch (DomainError const& e) {
      r.domain(labels.number, e.what());
    }
  }
  try {
    x.validate();
  } catch (DomainError const& e) {
    r.domain(labels.number, e.what());
  }
  return x;
}

aaut::Triple parse_triple_file(std::string const& path, LabelContext const& context) {
  return from_path(path, [&](std::istream& in, std::string const& f) {
    return parse_triple(in, f, context);
  });
}

std::string emit_triple(aaut::Triple const& x, LabelContext const& context) {
  std::ostringstream out;
  out << "triple d=" << x.degree() << "\n";
  out << "minus " << to_string(x.minus) << "\n";
  out << "perm " << images(x.sigma) << "\n";
  out << "labels";
  for (aaut::Label const& f : x.labels) {
    out << ' ' << context.name_of(f);
  }
  out << "\n";
  out << "plus " << to_string(x.plus) << "\n";
  return out.str();
}

LabelContext load_label_context(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open file");
  }
  std::string first;
  std::stringstream buffer;
  buffer << in.rdbuf();
  for (text::Line const& line : text::read_lines(buffer)) {
    first = line.tokens.front();
    break;
  }
  buffer.clear();
  buffer.seekg(0);
  if (first == "automaton") {
    return LabelContext(parse_automaton(buffer, path));
  }
  if (first == "affine") {
    return LabelContext(parse_affine_spec(buffer, path));
  }
  throw ParseError(path, 0, "expected an 'automaton' or 'affine' file");
}

// --- words ------------------------------------------------------------------

tree::Word parse_word(std::string const& text) {
  tree::Word w;
  if (text.empty() || text == "-") {
    return w;
  }
  auto letter = [&](std::string const& token) {
    try {
      std::size_t used = 0;
      int const x = std::stoi(token, &used);
      if (used != token.size()) {
        throw std::invalid_argument(token);
      }
      return x;
    } catch (std::exception const&) {
      throw DomainError("bad letter '" + token + "' in word '" + text + "'");
    }
  };
  if (text.find(',') != std::string::npos) {
    for (std::string const& token : text::split(text, ',')) {
      w.push_back(letter(token));
    }
  } else {
    for (char c : text) {
      w.push_back(letter(std::string(1, c)));
    }
  }
  return w;
}

std::string format_word(tree::Word const& w, bool compact) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) {
      out += ',';
    }
    out += std::to_string(w[i]);
  }
  return out;
}

}  // namespace rover::formats
