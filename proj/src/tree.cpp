#include "rover/tree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace rover::tree {

void check_word(Alphabet alphabet, Word const& w) {
  for (Letter x : w) {
    if (!alphabet.contains(x)) {
      throw DomainError("letter " + std::to_string(x) + " out of range 1.." +
                        std::to_string(alphabet.d));
    }
  }
}

// --- Permutation ----------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 1 || x > size() || seen[static_cast<std::size_t>(x - 1)]) {
      throw DomainError("not a permutation: " + to_string(*this));
    }
    seen[static_cast<std::size_t>(x - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    images[static_cast<std::size_t>(i)] = i + 1;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::cycle(int n, std::vector<int> const& points) {
  std::vector<int> images = identity(n).images();
  for (std::size_t i = 0; i < points.size(); ++i) {
    int from = points[i];
    int to = points[(i + 1) % points.size()];
    if (from < 1 || from > n) {
      throw DomainError("cycle point out of range");
    }
    images[static_cast<std::size_t>(from - 1)] = to;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::operator*(Permutation const& other) const {
  if (size() != other.size()) {
    throw DomainError("composing permutations of different degrees");
  }
  std::vector<int> images(images_.size());
  for (int i = 1; i <= size(); ++i) {
    images[static_cast<std::size_t>(i - 1)] = (*this)(other(i));
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> images(images_.size());
  for (int i = 1; i <= size(); ++i) {
    images[static_cast<std::size_t>((*this)(i) - 1)] = i;
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (int i = 1; i <= size(); ++i) {
    if ((*this)(i) != i) {
      return false;
    }
  }
  return true;
}

int Permutation::sign() const {
  std::vector<bool> seen(images_.size(), false);
  int transpositions = 0;
  for (int start = 1; start <= size(); ++start) {
    int length = 0;
    for (int x = start; !seen[static_cast<std::size_t>(x - 1)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x - 1)] = true;
      ++length;
    }
    if (length > 0) {
      transpositions += length - 1;
    }
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

Permutation Permutation::repeated(int m) const {
  int const d = size();
  std::vector<int> images(static_cast<std::size_t>(m * d));
  for (int k = 0; k < m; ++k) {
    for (int i = 1; i <= d; ++i) {
      images[static_cast<std::size_t>(k * d + i - 1)] = k * d + (*this)(i);
    }
  }
  return Permutation(std::move(images));
}

std::string to_string(Permutation const& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.images().size(); ++i) {
    out << (i ? " " : "") << p.images()[i];
  }
  return out.str();
}

std::string to_string(Word const& w) {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << (i ? "," : "") << w[i];
  }
  return out.str();
}

// --- Automaton ------------------------------------------------------------

Automaton::Automaton(int d, std::vector<State> states, std::size_t initial) : d_(d), initial_(0) {
  if (d < 1) {
    throw DomainError("alphabet size must be positive");
  }
  if (initial >= states.size()) {
    throw DomainError("initial state out of range");
  }
  for (State const& s : states) {
    if (s.perm.size() != d) {
      throw DomainError("state '" + s.name + "' has a permutation on " +
                        std::to_string(s.perm.size()) + " points, expected " + std::to_string(d));
    }
    if (s.next.size() != static_cast<std::size_t>(d)) {
      throw DomainError("state '" + s.name + "' does not have a transition for every letter");
    }
    for (std::size_t t : s.next) {
      if (t >= states.size()) {
        throw DomainError("state '" + s.name + "' has a transition to an unknown state");
      }
    }
  }
  // Breadth-first renumbering keeps only the reachable part.
  std::vector<std::size_t> order;
  std::vector<std::size_t> index(states.size(), states.size());
  order.push_back(initial);
  index[initial] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t t : states[order[head]].next) {
      if (index[t] == states.size()) {
        index[t] = order.size();
        order.push_back(t);
      }
    }
  }
  states_.reserve(order.size());
  for (std::size_t old : order) {
    State s = states[old];
    for (auto& t : s.next) {
      t = index[t];
    }
    states_.push_back(std::move(s));
  }
}

Automaton Automaton::identity(int d) {
  return Automaton(d, {State{"e", Permutation::identity(d), std::vector<std::size_t>(d, 0)}}, 0);
}

Automaton Automaton::rooted(Permutation const& sigma) {
  int const d = sigma.size();
  if (sigma.is_identity()) {
    return identity(d);
  }
  return Automaton(d,
                   {State{"r", sigma, std::vector<std::size_t>(d, 1)},
                    State{"e", Permutation::identity(d), std::vector<std::size_t>(d, 1)}},
                   0);
}

Automaton Automaton::adding_machine(int d) {
  std::vector<int> shift(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) {
    shift[static_cast<std::size_t>(i - 1)] = i % d + 1;
  }
  std::vector<std::size_t> next(static_cast<std::size_t>(d), 1);
  next.back() = 0;  // carry on the top digit
  return Automaton(d,
                   {State{"a", Permutation(shift), next},
                    State{"e", Permutation::identity(d), std::vector<std::size_t>(d, 1)}},
                   0);
}

Automaton Automaton::with_initial(std::size_t state) const {
  return Automaton(d_, states_, state);
}

Automaton Automaton::renamed(std::vector<std::string> names) const {
  if (names.size() != states_.size()) {
    throw DomainError("renaming needs one name per state");
  }
  std::vector<State> states = states_;
  for (std::size_t i = 0; i < states.size(); ++i) {
    states[i].name = std::move(names[i]);
  }
  return Automaton(d_, std::move(states), initial_);
}

// --- operations -----------------------------------------------------------

std::pair<Permutation, std::vector<Automaton>> wreath_decompose(Automaton const& f) {
  std::vector<Automaton> level;
  level.reserve(static_cast<std::size_t>(f.degree()));
  for (std::size_t t : f.initial_state().next) {
    level.push_back(f.with_initial(t));
  }
  return {f.initial_state().perm, std::move(level)};
}

Automaton state_at(Automaton const& f, Word const& u) {
  check_word(f.alphabet(), u);
  std::size_t s = f.initial();
  for (Letter x : u) {
    s = f.states()[s].next[static_cast<std::size_t>(x - 1)];
  }
  return f.with_initial(s);
}

Word act(Automaton const& f, Word const& w) {
  check_word(f.alphabet(), w);
  Word out;
  out.reserve(w.size());
  std::size_t s = f.initial();
  for (Letter x : w) {
    State const& state = f.states()[s];
    out.push_back(state.perm(x));
    s = state.next[static_cast<std::size_t>(x - 1)];
  }
  return out;
}

Automaton compose(Automaton const& f, Automaton const& g) {
  if (f.degree() != g.degree()) {
    throw DomainError("composing automata over different alphabets");
  }
  int const d = f.degree();
  using Pair = std::pair<std::size_t, std::size_t>;
  std::map<Pair, std::size_t> index;
  std::vector<Pair> order{{f.initial(), g.initial()}};
  index[order[0]] = 0;
  std::vector<State> states;
  for (std::size_t head = 0; head < order.size(); ++head) {
    auto [sf, sg] = order[head];
    State const& a = f.states()[sf];
    State const& b = g.states()[sg];
    State s{"p" + std::to_string(head), a.perm * b.perm, std::vector<std::size_t>(d)};
    for (Letter x = 1; x <= d; ++x) {
      // g reads x and emits b.perm(x), which f then reads.
      Pair target{a.next[static_cast<std::size_t>(b.perm(x) - 1)],
                  b.next[static_cast<std::size_t>(x - 1)]};
      auto [it, inserted] = index.try_emplace(target, order.size());
      if (inserted) {
        order.push_back(target);
      }
      s.next[static_cast<std::size_t>(x - 1)] = it->second;
    }
    states.push_back(std::move(s));
  }
  return Automaton(d, std::move(states), 0);
}

Automaton invert(Automaton const& f) {
  int const d = f.degree();
  std::vector<State> states;
  states.reserve(f.size());
  for (State const& s : f.states()) {
    Permutation inv = s.perm.inverse();
    State t{s.name, inv, std::vector<std::size_t>(d)};
    for (Letter y = 1; y <= d; ++y) {
      t.next[static_cast<std::size_t>(y - 1)] = s.next[static_cast<std::size_t>(inv(y) - 1)];
    }
    if (t.name.size() > 3 && t.name.ends_with("^-1")) {
      t.name.resize(t.name.size() - 3);
    } else {
      t.name += "^-1";
    }
    states.push_back(std::move(t));
  }
  return Automaton(d, std::move(states), f.initial());
}

bool is_identity(Automaton const& f) {
  return std::all_of(f.states().begin(), f.states().end(),
                     [](State const& s) { return s.perm.is_identity(); });
}

bool equals(Automaton const& f, Automaton const& g) { return is_identity(compose(f, invert(g))); }

Automaton rooted(Permutation const& sigma) { return Automaton::rooted(sigma); }

Automaton iota(Word const& u, Automaton const& f) {
  check_word(f.alphabet(), u);
  if (u.empty()) {
    return f;
  }
  int const d = f.degree();
  std::size_t const path = u.size();
  // States: path_0 .. path_{|u|-1}, then the identity, then f's states.
  std::size_t const trivial = path;
  std::size_t const offset = path + 1;
  std::vector<State> states;
  for (std::size_t i = 0; i < path; ++i) {
    State s{"u" + std::to_string(i), Permutation::identity(d), std::vector<std::size_t>(d, trivial)};
    s.next[static_cast<std::size_t>(u[i] - 1)] = i + 1 < path ? i + 1 : offset + f.initial();
    states.push_back(std::move(s));
  }
  states.push_back(State{"e", Permutation::identity(d), std::vector<std::size_t>(d, trivial)});
  for (State s : f.states()) {
    for (auto& t : s.next) {
      t += offset;
    }
    s.name = "f." + s.name;
    states.push_back(std::move(s));
  }
  return Automaton(d, std::move(states), 0);
}

}  // namespace rover::tree
