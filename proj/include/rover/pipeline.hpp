#pragma once

// From generators of Q <= GL_n(Q) to a finitely presented simple group:
// embed Q with determinant one in odd dimension, realise it as the linear
// part of a self-similar affine group over Z[1/N], double the alphabet
// until the abelianization bound is finite, and list generators.

#include <cstddef>
#include <string>
#include <vector>

#include "rover/abel.hpp"
#include "rover/affine.hpp"

namespace rover::pipeline {

struct Options {
  bool doubling = true;  // false forces m = 1
  std::size_t state_cap = affine::kDefaultStateCap;
  std::size_t family_limit = 4096;
};

struct PersistenceCheck {
  std::size_t generators = 0;
  std::size_t letters = 0;
  std::size_t checks = 0;
  std::vector<std::size_t> closure_sizes;  // per generator
  std::vector<std::string> failures;
  bool passed() const noexcept { return failures.empty(); }
};

struct LiftedGenerator {
  std::string name;
  std::size_t states = 0;  // of the doubled automaton
};

struct Report {
  std::size_t input_dimension = 0;
  std::vector<affine::NamedMatrix> input;
  std::vector<affine::NamedMatrix> embedded;
  Integer chosen_N;  // before raising N = 1 to 2
  affine::AffineGroupSpec gamma;
  PersistenceCheck persistence;
  abel::WreathPresentation presentation;
  IntegerMatrix class_sums;
  bool doubled = true;
  int m = 1;
  Integer det;  // det(I - mA)
  abel::VAbBound bound;
  std::vector<LiftedGenerator> lifted;
  std::size_t family_size = 0;
  std::vector<std::string> family_small;  // members with at most one caret

  int alphabet() const noexcept { return bound.alphabet; }
};

Report run_pipeline(std::vector<affine::NamedMatrix> const& q_generators, std::size_t n,
                    Options const& options = {});

// Checks that every level-one state, and every member of the state closure,
// of every generator keeps the generator's linear part.
PersistenceCheck check_persistence(affine::AffineGroupSpec const& spec,
                                   std::size_t cap = affine::kDefaultStateCap);

std::string emit_report(Report const& report);

}  // namespace rover::pipeline
