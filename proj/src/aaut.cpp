#include "rover/aaut.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace rover::aaut {

// --- forests ----------------------------------------------------------------

namespace {

// Walks one preorder tree starting at `pos`, reporting leaves and internal
// vertices with their paths. Returns false on a malformed encoding.
bool walk(std::string const& s, std::size_t& pos, int d, tree::Word& path,
          std::function<void(tree::Word const&)> const& on_leaf,
          std::function<void(tree::Word const&)> const& on_internal) {
  if (pos >= s.size()) {
    return false;
  }
  char const c = s[pos++];
  if (c == 'L') {
    if (on_leaf) {
      on_leaf(path);
    }
    return true;
  }
  if (c != 'C') {
    return false;
  }
  if (on_internal) {
    on_internal(path);
  }
  for (int x = 1; x <= d; ++x) {
    path.push_back(x);
    bool ok = walk(s, pos, d, path, on_leaf, on_internal);
    path.pop_back();
    if (!ok) {
      return false;
    }
  }
  return true;
}

std::string caret_string(int d) { return "C" + std::string(static_cast<std::size_t>(d), 'L'); }

}  // namespace

Forest::Forest(int d, std::vector<std::string> trees) : d_(d), trees_(std::move(trees)) {
  if (d_ < 2) {
    throw DomainError("forests need d >= 2");
  }
  for (std::string const& t : trees_) {
    std::size_t pos = 0;
    tree::Word path;
    if (!walk(t, pos, d_, path, nullptr, nullptr) || pos != t.size()) {
      throw DomainError("'" + t + "' is not a preorder encoding of a complete " +
                        std::to_string(d_) + "-ary tree");
    }
  }
}

Forest Forest::trivial(int d, std::size_t roots) {
  return Forest(d, std::vector<std::string>(roots, "L"));
}

Forest Forest::caret(int d) { return Forest(d, {caret_string(d)}); }

Forest Forest::parse(int d, std::string const& text) {
  std::vector<std::string> trees;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find('+', start);
    trees.push_back(text.substr(start, end - start));
    if (end == std::string::npos) {
      break;
    }
    start = end + 1;
  }
  return Forest(d, std::move(trees));
}

std::size_t Forest::leaves() const {
  std::size_t count = 0;
  for (std::string const& t : trees_) {
    count += static_cast<std::size_t>(std::count(t.begin(), t.end(), 'L'));
  }
  return count;
}

std::size_t Forest::carets() const {
  std::size_t count = 0;
  for (std::string const& t : trees_) {
    count += static_cast<std::size_t>(std::count(t.begin(), t.end(), 'C'));
  }
  return count;
}

std::vector<LeafAddress> Forest::leaf_addresses() const {
  std::vector<LeafAddress> out;
  for (std::size_t r = 0; r < trees_.size(); ++r) {
    std::size_t pos = 0;
    tree::Word path;
    walk(trees_[r], pos, d_, path, [&](tree::Word const& w) { out.push_back({r, w}); }, nullptr);
  }
  return out;
}

std::vector<LeafAddress> Forest::internal_addresses() const {
  std::vector<LeafAddress> out;
  for (std::size_t r = 0; r < trees_.size(); ++r) {
    std::size_t pos = 0;
    tree::Word path;
    walk(trees_[r], pos, d_, path, nullptr, [&](tree::Word const& w) { out.push_back({r, w}); });
  }
  return out;
}

std::size_t Forest::depth() const {
  std::size_t depth = 0;
  for (LeafAddress const& leaf : leaf_addresses()) {
    depth = std::max(depth, leaf.path.size());
  }
  return depth;
}

Forest Forest::expanded(std::size_t i) const {
  std::size_t seen = 0;
  Forest out = *this;
  for (std::string& t : out.trees_) {
    for (std::size_t pos = 0; pos < t.size(); ++pos) {
      if (t[pos] == 'L' && ++seen == i) {
        t.replace(pos, 1, caret_string(d_));
        return out;
      }
    }
  }
  throw DomainError("leaf " + std::to_string(i) + " out of range 1.." + std::to_string(seen));
}

std::string to_string(Forest const& f) {
  std::string out;
  for (std::size_t i = 0; i < f.trees().size(); ++i) {
    out += (i ? "+" : "") + f.trees()[i];
  }
  return out;
}

// --- labels -----------------------------------------------------------------

Label::Label(int d) : d_(d) {}

Label::Label(tree::Automaton automaton) : d_(automaton.degree()), value_(std::move(automaton)) {}

Label::Label(affine::AffineMap map, affine::TreeShape shape) : d_(shape.degree()) {
  if (map.dimension() != static_cast<std::size_t>(shape.n)) {
    throw DomainError("affine label has the wrong dimension");
  }
  value_ = AffineLabel{std::move(map), shape};
}

AffineLabel const& Label::affine() const {
  if (!is_affine()) {
    throw DomainError("label is not affine");
  }
  return std::get<AffineLabel>(value_);
}

bool Label::is_identity() const {
  if (is_trivial()) {
    return true;
  }
  if (is_affine()) {
    return std::get<AffineLabel>(value_).map.is_identity();
  }
  return tree::is_identity(std::get<tree::Automaton>(value_));
}

Label Label::compose(Label const& other) const {
  if (d_ != other.d_) {
    throw DomainError("composing labels over different alphabets");
  }
  if (is_trivial()) {
    return other;
  }
  if (other.is_trivial()) {
    return *this;
  }
  if (is_affine() && other.is_affine() && affine().shape == other.affine().shape) {
    return Label(affine().map * other.affine().map, affine().shape);
  }
  return Label(tree::compose(to_automaton(), other.to_automaton()));
}

Label Label::inverse() const {
  if (is_trivial()) {
    return *this;
  }
  if (is_affine()) {
    return Label(affine().map.inverse(), affine().shape);
  }
  return Label(tree::invert(std::get<tree::Automaton>(value_)));
}

std::pair<tree::Permutation, std::vector<Label>> Label::wreath() const {
  if (is_trivial()) {
    return {tree::Permutation::identity(d_), std::vector<Label>(static_cast<std::size_t>(d_), *this)};
  }
  if (is_affine()) {
    AffineLabel const& a = affine();
    std::vector<int> images(static_cast<std::size_t>(d_));
    std::vector<Label> states;
    states.reserve(static_cast<std::size_t>(d_));
    for (int x = 1; x <= d_; ++x) {
      affine::AffineState s = affine::affine_state(a.map, affine::letter_tuple(a.shape, x), a.shape.p);
      images[static_cast<std::size_t>(x - 1)] = affine::letter_index(a.shape, s.image);
      states.emplace_back(std::move(s.state), a.shape);
    }
    return {tree::Permutation(std::move(images)), std::move(states)};
  }
  auto [perm, level] = tree::wreath_decompose(std::get<tree::Automaton>(value_));
  std::vector<Label> states;
  states.reserve(level.size());
  for (tree::Automaton& f : level) {
    states.emplace_back(std::move(f));
  }
  return {std::move(perm), std::move(states)};
}

tree::Word Label::act(tree::Word const& w) const {
  tree::check_word(tree::Alphabet{d_}, w);
  if (is_trivial()) {
    return w;
  }
  if (is_affine()) {
    AffineLabel const& a = affine();
    std::vector<affine::Digits> digits;
    digits.reserve(w.size());
    for (tree::Letter x : w) {
      digits.push_back(affine::letter_tuple(a.shape, x));
    }
    tree::Word out;
    out.reserve(w.size());
    for (affine::Digits const& y : affine::affine_act(a.map, digits, a.shape.p)) {
      out.push_back(affine::letter_index(a.shape, y));
    }
    return out;
  }
  return tree::act(std::get<tree::Automaton>(value_), w);
}

tree::Automaton Label::to_automaton() const {
  if (is_trivial()) {
    return tree::Automaton::identity(d_);
  }
  if (is_affine()) {
    return affine::to_automaton(affine().map, affine().shape).automaton;
  }
  return std::get<tree::Automaton>(value_);
}

std::string to_string(Label const& f) {
  if (f.is_trivial()) {
    return "1";
  }
  if (f.is_affine()) {
    return affine::to_string(f.affine().map);
  }
  tree::Automaton a = f.to_automaton();
  return tree::is_identity(a) ? "1" : "automaton(" + std::to_string(a.size()) + " states)";
}

// --- triples ----------------------------------------------------------------

void Triple::validate() const {
  int const d = plus.degree();
  if (minus.degree() != d) {
    throw DomainError("forests over different alphabets");
  }
  std::size_t const n = plus.leaves();
  if (minus.leaves() != n) {
    throw DomainError("forests have " + std::to_string(minus.leaves()) + " and " +
                      std::to_string(n) + " leaves");
  }
  if (static_cast<std::size_t>(sigma.size()) != n) {
    throw DomainError("permutation degree does not match the leaf count");
  }
  if (labels.size() != n) {
    throw DomainError("need one label per leaf");
  }
  for (Label const& f : labels) {
    if (f.degree() != d) {
      throw DomainError("label over a different alphabet");
    }
  }
}

std::string to_string(Triple const& x) {
  std::ostringstream out;
  out << '[' << to_string(x.minus) << ", (" << tree::to_string(x.sigma) << ")(";
  for (std::size_t i = 0; i < x.labels.size(); ++i) {
    out << (i ? ", " : "") << to_string(x.labels[i]);
  }
  out << "), " << to_string(x.plus) << ']';
  return out.str();
}

Triple identity_triple(int d, std::size_t roots) {
  return plain_triple(Forest::trivial(d, roots), tree::Permutation::identity(static_cast<int>(roots)),
                      Forest::trivial(d, roots));
}

Triple plain_triple(Forest minus, tree::Permutation sigma, Forest plus) {
  int const d = plus.degree();
  Triple x{std::move(minus), std::move(sigma), {}, std::move(plus)};
  x.labels.assign(x.plus.leaves(), Label(d));
  x.validate();
  return x;
}

Triple iota1(Label const& g) {
  int const d = g.degree();
  Triple x = plain_triple(Forest::caret(d), tree::Permutation::identity(d), Forest::caret(d));
  x.labels[0] = g;
  return x;
}

Triple simple_expand(Triple const& x, std::size_t i) {
  std::size_t const n = x.size();
  if (i < 1 || i > n) {
    throw DomainError("leaf " + std::to_string(i) + " out of range 1.." + std::to_string(n));
  }
  int const d = x.degree();
  auto const D = static_cast<std::size_t>(d);
  auto [rho, states] = x.labels[i - 1].wreath();
  auto const s = static_cast<std::size_t>(x.sigma(static_cast<int>(i)));
  auto shift_minus = [&](std::size_t j) { return j < s ? j : j + D - 1; };
  std::vector<int> images(n + D - 1);
  std::vector<Label> labels;
  labels.reserve(n + D - 1);
  for (std::size_t j = 1; j <= n; ++j) {
    if (j == i) {
      for (std::size_t k = 1; k <= D; ++k) {
        images[i + k - 2] = static_cast<int>(s + static_cast<std::size_t>(rho(static_cast<int>(k))) - 1);
        labels.push_back(states[k - 1]);
      }
    } else {
      std::size_t const target = j < i ? j : j + D - 1;
      images[target - 1] =
          static_cast<int>(shift_minus(static_cast<std::size_t>(x.sigma(static_cast<int>(j)))));
      labels.push_back(x.labels[j - 1]);
    }
  }
  return Triple{x.minus.expanded(s), tree::Permutation(std::move(images)), std::move(labels),
                x.plus.expanded(i)};
}

std::pair<Triple, Triple> expand_to_common(Triple x, Triple y) {
  if (x.degree() != y.degree()) {
    throw DomainError("triples over different alphabets");
  }
  if (x.plus.roots() != y.minus.roots()) {
    throw DomainError("root counts do not match: " + std::to_string(x.plus.roots()) + " and " +
                      std::to_string(y.minus.roots()));
  }
  while (true) {
    auto const x_leaves = x.plus.leaf_addresses();
    auto const y_internal = y.minus.internal_addresses();
    std::set<LeafAddress> const y_inner(y_internal.begin(), y_internal.end());
    bool changed = false;
    // Expanding from the last leaf backwards keeps earlier indices valid.
    for (std::size_t i = x_leaves.size(); i-- > 0;) {
      if (y_inner.count(x_leaves[i])) {
        x = simple_expand(x, i + 1);
        changed = true;
      }
    }
    auto const y_leaves = y.minus.leaf_addresses();
    auto const x_internal = x.plus.internal_addresses();
    std::set<LeafAddress> const x_inner(x_internal.begin(), x_internal.end());
    std::vector<std::size_t> targets;
    for (std::size_t j = 0; j < y_leaves.size(); ++j) {
      if (x_inner.count(y_leaves[j])) {
        targets.push_back(static_cast<std::size_t>(y.sigma.inverse()(static_cast<int>(j + 1))));
      }
    }
    std::sort(targets.rbegin(), targets.rend());
    for (std::size_t i : targets) {
      y = simple_expand(y, i);
      changed = true;
    }
    if (!changed) {
      break;
    }
  }
  return {std::move(x), std::move(y)};
}

Triple multiply(Triple const& x, Triple const& y) {
  auto [a, b] = expand_to_common(x, y);
  std::size_t const n = b.size();
  std::vector<Label> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    auto const nu = static_cast<std::size_t>(b.sigma(static_cast<int>(i)));
    labels.push_back(a.labels[nu - 1].compose(b.labels[i - 1]));
  }
  return Triple{std::move(a.minus), a.sigma * b.sigma, std::move(labels), std::move(b.plus)};
}

Triple invert_triple(Triple const& x) {
  tree::Permutation const inv = x.sigma.inverse();
  std::vector<Label> labels;
  labels.reserve(x.size());
  for (std::size_t j = 1; j <= x.size(); ++j) {
    labels.push_back(x.labels[static_cast<std::size_t>(inv(static_cast<int>(j))) - 1].inverse());
  }
  return Triple{x.plus, inv, std::move(labels), x.minus};
}

bool is_identity_triple(Triple const& x) {
  if (!x.plus.is_tree() || !x.minus.is_tree()) {
    throw DomainError("identity test needs a tree pair, not a forest pair");
  }
  return x.minus == x.plus && x.sigma.is_identity() &&
         std::all_of(x.labels.begin(), x.labels.end(), [](Label const& f) { return f.is_identity(); });
}

bool equals_triple(Triple const& x, Triple const& y) {
  return is_identity_triple(multiply(x, invert_triple(y)));
}

tree::Word act_boundary(Triple const& x, tree::Word const& w) {
  if (!x.plus.is_tree() || !x.minus.is_tree()) {
    throw DomainError("boundary action needs a tree pair, not a forest pair");
  }
  tree::check_word(tree::Alphabet{x.degree()}, w);
  auto const plus = x.plus.leaf_addresses();
  for (std::size_t i = 0; i < plus.size(); ++i) {
    tree::Word const& v = plus[i].path;
    if (v.size() <= w.size() && std::equal(v.begin(), v.end(), w.begin())) {
      auto const minus = x.minus.leaf_addresses();
      tree::Word out = minus[static_cast<std::size_t>(x.sigma(static_cast<int>(i + 1))) - 1].path;
      tree::Word const suffix(w.begin() + static_cast<std::ptrdiff_t>(v.size()), w.end());
      tree::Word const image = x.labels[i].act(suffix);
      out.insert(out.end(), image.begin(), image.end());
      return out;
    }
  }
  throw DomainError("word " + tree::to_string(w) + " is shorter than the leaf it lies under");
}

std::vector<Forest> small_trees(int d) {
  std::vector<Forest> out{Forest::trivial(d, 1), Forest::caret(d)};
  for (int j = 1; j <= d; ++j) {
    out.push_back(Forest::caret(d).expanded(static_cast<std::size_t>(j)));
  }
  return out;
}

std::vector<Triple> v_generator_family(int d, std::size_t limit) {
  std::vector<Forest> const trees = small_trees(d);
  // Family size 1 + d! + d^2 (2d - 1)!, computed exactly.
  Integer total = 1 + factorial(static_cast<unsigned>(d)) +
                  Integer(d) * d * factorial(static_cast<unsigned>(2 * d - 1));
  bool const everything = total <= Integer(static_cast<unsigned long>(limit));
  std::vector<Triple> out;
  for (Forest const& minus : trees) {
    for (Forest const& plus : trees) {
      if (minus.leaves() != plus.leaves()) {
        continue;
      }
      int const n = static_cast<int>(plus.leaves());
      std::vector<tree::Permutation> perms;
      if (everything || n == 1) {
        std::vector<int> images = tree::Permutation::identity(n).images();
        do {
          perms.emplace_back(images);
        } while (std::next_permutation(images.begin(), images.end()));
      } else {
        perms.push_back(tree::Permutation::cycle(n, {1, 2}));
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
          all[static_cast<std::size_t>(k)] = k + 1;
        }
        perms.push_back(tree::Permutation::cycle(n, all));
      }
      for (tree::Permutation const& sigma : perms) {
        out.push_back(plain_triple(minus, sigma, plus));
      }
    }
  }
  return out;
}

Triple random_element(std::vector<Label> const& generators, int d, std::size_t length,
                      std::mt19937_64& rng) {
  std::vector<int> all(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    all[static_cast<std::size_t>(k)] = k + 1;
  }
  Forest const caret = Forest::caret(d);
  Forest const first = caret.expanded(1);
  Forest const last = caret.expanded(static_cast<std::size_t>(d));
  std::vector<Triple> factors{
      plain_triple(caret, tree::Permutation::cycle(d, {1, 2}), caret),
      plain_triple(caret, tree::Permutation::cycle(d, all), caret),
      plain_triple(first, tree::Permutation::identity(2 * d - 1), last),
      plain_triple(last, tree::Permutation::identity(2 * d - 1), first),
  };
  for (Label const& g : generators) {
    factors.push_back(iota1(g));
    factors.push_back(iota1(g.inverse()));
  }
  std::size_t const count = std::uniform_int_distribution<std::size_t>(0, length)(rng);
  Triple x = identity_triple(d);
  std::uniform_int_distribution<std::size_t> pick(0, factors.size() - 1);
  for (std::size_t k = 0; k < count; ++k) {
    x = multiply(factors[pick(rng)], x);
  }
  return x;
}

// --- quasi-retraction -------------------------------------------------------

RationalMatrix rho_quasiretract(Triple const& x, affine::QuotientProjection const& projection,
                                int n) {
  if (x.labels.empty()) {
    throw DomainError("triple has no labels");
  }
  Label const& first = x.labels.front();
  if (first.is_trivial()) {
    return RationalMatrix::identity(static_cast<std::size_t>(n));
  }
  if (!first.is_affine()) {
    throw DomainError("quasi-retraction needs affine labels");
  }
  return projection(affine::persistent_retract(first.affine().map));
}

RhoCheckReport rho_property_check(affine::AffineGroupSpec const& spec,
                                  RhoCheckOptions const& options) {
  spec.validate();
  affine::TreeShape const shape = spec.shape();
  int const d = shape.degree();
  affine::QuotientProjection const projection(spec);
  std::vector<Label> generators;
  std::vector<Label> letters;  // generators and their inverses
  std::vector<RationalMatrix> retracts;
  std::vector<std::string> names;
  for (affine::NamedMap const& g : spec.generators) {
    generators.emplace_back(g.map, shape);
    letters.emplace_back(g.map, shape);
    retracts.push_back(projection(g.map.A));
    names.push_back(g.name);
    letters.emplace_back(g.map.inverse(), shape);
    retracts.push_back(projection(inverse(g.map.A)));
    names.push_back(g.name + "^-1");
  }
  auto rho = [&](Triple const& x) { return rho_quasiretract(x, projection, spec.n); };
  std::mt19937_64 rng(options.seed);
  RhoCheckReport report;

  for (std::size_t c = 0; c < options.chains; ++c) {
    Triple x = random_element(generators, d, options.word_length, rng);
    RationalMatrix const expected = rho(x);
    for (std::size_t step = 0; step < options.chain_length; ++step) {
      std::size_t const i = std::uniform_int_distribution<std::size_t>(1, x.size())(rng);
      x = simple_expand(x, i);
      ++report.expansion_checks;
      if (!(rho(x) == expected)) {
        report.failures.push_back("expansion chain " + std::to_string(c) + " step " +
                                  std::to_string(step) + " at leaf " + std::to_string(i));
        break;
      }
    }
  }

  for (std::size_t s = 0; s < options.samples && !letters.empty(); ++s) {
    Triple const x = random_element(generators, d, options.word_length, rng);
    std::size_t const k = std::uniform_int_distribution<std::size_t>(0, letters.size() - 1)(rng);
    RationalMatrix const before = rho(x);
    RationalMatrix const after = rho(multiply(iota1(letters[k]), x));
    ++report.property1_checks;
    if (!(after == before) && !(after == retracts[k] * before)) {
      report.failures.push_back("property (1) fails for iota1(" + names[k] + ") x with x = " +
                                to_string(x));
    }
  }

  for (std::size_t s = 0; s < options.samples; ++s) {
    Triple const x = random_element(generators, d, options.word_length, rng);
    Triple const y = random_element({}, d, options.word_length, rng);
    ++report.property2_checks;
    if (!(rho(multiply(y, x)) == rho(x))) {
      report.failures.push_back("property (2) fails for y = " + to_string(y) + ", x = " +
                                to_string(x));
    }
  }
  return report;
}

}  // namespace rover::aaut
