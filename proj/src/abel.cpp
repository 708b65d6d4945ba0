#include "rover/abel.hpp"

#include <algorithm>

namespace rover::abel {

tree::Automaton doubling(tree::Automaton const& g, int m) {
  if (m < 1) {
    throw DomainError("doubling factor must be positive");
  }
  int const d = g.degree();
  std::vector<tree::State> states;
  states.reserve(g.size());
  for (tree::State const& s : g.states()) {
    tree::State t{s.name, s.perm.repeated(m), {}};
    t.next.reserve(static_cast<std::size_t>(m * d));
    for (int k = 0; k < m; ++k) {
      t.next.insert(t.next.end(), s.next.begin(), s.next.end());
    }
    states.push_back(std::move(t));
  }
  return tree::Automaton(m * d, std::move(states), g.initial());
}

tree::Automaton restrict_letters(tree::Automaton const& g, int d) {
  if (d < 1 || d > g.degree()) {
    throw DomainError("restriction alphabet out of range");
  }
  std::vector<tree::State> states;
  states.reserve(g.size());
  for (tree::State const& s : g.states()) {
    std::vector<int> images(s.perm.images().begin(), s.perm.images().begin() + d);
    if (std::any_of(images.begin(), images.end(), [d](int x) { return x > d; })) {
      throw DomainError("state '" + s.name + "' does not preserve letters 1.." + std::to_string(d));
    }
    states.push_back(tree::State{s.name, tree::Permutation(std::move(images)),
                                 std::vector<std::size_t>(s.next.begin(), s.next.begin() + d)});
  }
  return tree::Automaton(d, std::move(states), g.initial());
}

void WreathPresentation::validate() const {
  if (d < 1) {
    throw DomainError("alphabet size must be positive");
  }
  for (WreathGenerator const& g : generators) {
    if (g.perm.size() != d) {
      throw DomainError("generator '" + g.name + "' has a permutation of the wrong degree");
    }
    if (g.state_classes.size() != static_cast<std::size_t>(d)) {
      throw DomainError("generator '" + g.name + "' needs one state class per letter");
    }
    for (auto const& c : g.state_classes) {
      if (c.size() != r()) {
        throw DomainError("generator '" + g.name + "' has a class vector of the wrong length");
      }
    }
  }
}

WreathPresentation presentation_of(
    std::vector<std::pair<std::string, tree::Automaton>> const& gens) {
  WreathPresentation out;
  if (gens.empty()) {
    return out;
  }
  out.d = gens.front().second.degree();
  std::size_t const r = gens.size();
  std::vector<tree::Automaton> inverses;
  for (auto const& [name, f] : gens) {
    if (f.degree() != out.d) {
      throw DomainError("generator '" + name + "' is over a different alphabet");
    }
    inverses.push_back(tree::invert(f));
  }
  for (auto const& [name, f] : gens) {
    auto [perm, level] = tree::wreath_decompose(f);
    WreathGenerator g{name, perm, {}};
    for (std::size_t x = 0; x < level.size(); ++x) {
      std::vector<Integer> c(r);
      tree::Automaton const& s = level[x];
      if (!tree::is_identity(s)) {
        bool found = false;
        for (std::size_t j = 0; j < r && !found; ++j) {
          if (tree::equals(s, gens[j].second)) {
            c[j] = 1;
            found = true;
          } else if (tree::equals(s, inverses[j])) {
            c[j] = -1;
            found = true;
          }
        }
        if (!found) {
          throw DomainError("state of '" + name + "' at letter " + std::to_string(x + 1) +
                            " is not a generator, an inverse or trivial");
        }
      }
      g.state_classes.push_back(std::move(c));
    }
    out.generators.push_back(std::move(g));
  }
  return out;
}

WreathPresentation presentation_of(affine::AffineGroupSpec const& spec) {
  spec.validate();
  affine::TreeShape const shape = spec.shape();
  affine::RingZN const ring = spec.ring();
  std::size_t const r = spec.generators.size();
  // Unit translation generators e_1..e_n, if present.
  std::vector<std::size_t> unit(static_cast<std::size_t>(spec.n), r);
  for (std::size_t j = 0; j < r; ++j) {
    affine::AffineMap const& g = spec.generators[j].map;
    if (!g.A.is_identity()) {
      continue;
    }
    auto nonzero = std::count_if(g.b.begin(), g.b.end(), [](Rational const& x) { return x != 0; });
    for (std::size_t i = 0; i < g.b.size(); ++i) {
      if (nonzero == 1 && g.b[i] == 1 && unit[i] == r) {
        unit[i] = j;
      }
    }
  }
  WreathPresentation out;
  out.d = shape.degree();
  for (std::size_t j = 0; j < r; ++j) {
    affine::NamedMap const& g = spec.generators[j];
    std::vector<int> images(static_cast<std::size_t>(out.d));
    WreathGenerator w{g.name, {}, {}};
    for (int x = 1; x <= out.d; ++x) {
      affine::AffineState s = affine::affine_state(g.map, affine::letter_tuple(shape, x), spec.p);
      images[static_cast<std::size_t>(x - 1)] = affine::letter_index(shape, s.image);
      std::vector<Rational> delta(g.map.b.size());
      for (std::size_t i = 0; i < delta.size(); ++i) {
        delta[i] = s.state.b[i] - g.map.b[i];
      }
      auto scaled = ring.decompose(delta);
      std::vector<Integer> c(r);
      c[j] += 1;
      for (std::size_t i = 0; i < delta.size(); ++i) {
        if (scaled.numerators[i] == 0) {
          continue;
        }
        if (unit[i] == r) {
          throw DomainError("state of '" + g.name +
                            "' needs a translation generator for coordinate " +
                            std::to_string(i + 1));
        }
        c[unit[i]] += scaled.numerators[i];
      }
      w.state_classes.push_back(std::move(c));
    }
    w.perm = tree::Permutation(std::move(images));
    out.generators.push_back(std::move(w));
  }
  return out;
}

IntegerMatrix class_sum_matrix(WreathPresentation const& presentation) {
  presentation.validate();
  std::size_t const r = presentation.r();
  IntegerMatrix A(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (auto const& c : presentation.generators[i].state_classes) {
      for (std::size_t k = 0; k < r; ++k) {
        A(k, i) += c[k];
      }
    }
  }
  return A;
}

IntegerMatrix relation_matrix(IntegerMatrix const& A, int m) {
  return IntegerMatrix::identity(A.rows()) - A.scaled(Integer(m));
}

VAbBound v_ab_presentation(WreathPresentation const& presentation, int m) {
  if (m < 1) {
    throw DomainError("m must be positive");
  }
  IntegerMatrix const A = class_sum_matrix(presentation);
  std::size_t const r = presentation.r();
  VAbBound out;
  out.m = m;
  out.alphabet = m * presentation.d;
  out.odd_case = out.alphabet % 2 == 1;
  IntegerMatrix const base = relation_matrix(A, m);
  if (!out.odd_case) {
    out.relations = base;
  } else {
    out.relations = IntegerMatrix(r + 1, r + 1);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) {
        out.relations(k, i) = base(k, i);
      }
      // rho^{(+)m} is odd exactly when m and rho are.
      int const odd = presentation.generators[i].perm.sign() < 0 && m % 2 == 1 ? 1 : 0;
      out.relations(r, i) = odd;
    }
    out.relations(r, r) = 2;
  }
  out.group = cokernel(out.relations);
  return out;
}

MinimalM find_minimal_m(WreathPresentation const& presentation) {
  IntegerMatrix const A = class_sum_matrix(presentation);
  // At most r eigenvalues 1/m can vanish the determinant, so the loop stops.
  for (int m = 2;; m += 2) {
    Integer det = determinant(relation_matrix(A, m));
    if (det != 0) {
      return MinimalM{m, det, v_ab_presentation(presentation, m)};
    }
  }
}

}  // namespace rover::abel
