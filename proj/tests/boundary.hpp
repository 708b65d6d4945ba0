#pragma once

// Deciding equality of two almost automorphisms by comparing their action
// on boundary words. Images of a truncated word may have different lengths,
// so agreement means one image is a prefix of the other.

#include <algorithm>
#include <random>

#include "rover/aaut.hpp"
#include "support.hpp"

namespace support {

inline bool prefix_compatible(rover::tree::Word const& a, rover::tree::Word const& b) {
  std::size_t const k = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k), b.begin());
}

inline std::size_t comparison_length(rover::aaut::Triple const& x, rover::aaut::Triple const& y,
                                     std::size_t depth) {
  return std::max({depth, x.plus.depth() + 1, y.plus.depth() + 1});
}

// Every word of the given length (or longer when a plus tree is deeper).
inline bool boundary_agree_exhaustive(rover::aaut::Triple const& x, rover::aaut::Triple const& y,
                                      std::size_t depth) {
  int const d = x.degree();
  std::size_t const length = comparison_length(x, y, depth);
  for (auto const& w : all_words(d, static_cast<int>(length))) {
    if (!prefix_compatible(rover::aaut::act_boundary(x, w), rover::aaut::act_boundary(y, w))) {
      return false;
    }
  }
  return true;
}

// Random words, plus every word that ends in a block of one repeated letter
// below each leaf of both plus trees, so that every cone is visited.
inline bool boundary_agree_sampled(rover::aaut::Triple const& x, rover::aaut::Triple const& y,
                                   std::size_t depth, std::size_t samples, std::mt19937_64& rng) {
  int const d = x.degree();
  std::size_t const length = comparison_length(x, y, depth);
  auto agree = [&](rover::tree::Word const& w) {
    return prefix_compatible(rover::aaut::act_boundary(x, w), rover::aaut::act_boundary(y, w));
  };
  for (rover::aaut::Triple const* t : {&x, &y}) {
    for (auto const& leaf : t->plus.leaf_addresses()) {
      for (int letter = 1; letter <= d; ++letter) {
        rover::tree::Word w = leaf.path;
        w.resize(length, letter);
        if (!agree(w)) {
          return false;
        }
      }
    }
  }
  for (std::size_t k = 0; k < samples; ++k) {
    if (!agree(random_word(d, length, rng))) {
      return false;
    }
  }
  return true;
}

inline bool boundary_agree(rover::aaut::Triple const& x, rover::aaut::Triple const& y,
                           std::size_t depth, std::mt19937_64& rng) {
  if (x.degree() == 2) {
    return boundary_agree_exhaustive(x, y, depth);
  }
  return boundary_agree_sampled(x, y, depth, 3000, rng);
}

}  // namespace support
