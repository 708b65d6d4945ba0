#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rover/pipeline.hpp"

using namespace rover;
using namespace rover::pipeline;

namespace {

std::vector<affine::NamedMatrix> q2() {
  return {{"g", RationalMatrix{{2}}}};
}

}  // namespace

TEST_CASE("Q generated by 2") {
  Report const r = run_pipeline(q2(), 1);
  CHECK(r.gamma.n == 3);
  CHECK(r.gamma.N == 2);
  CHECK(r.gamma.p == 3);
  CHECK(r.gamma.degree() == 27);
  CHECK(r.gamma.generators.size() == 5);
  CHECK(r.persistence.passed());
  CHECK(r.persistence.letters == 27);
  CHECK(r.persistence.generators == 5);
  CHECK(r.m == 2);
  CHECK(r.det == -13800617);
  CHECK(r.det == determinant(abel::relation_matrix(r.class_sums, r.m)));
  CHECK(r.alphabet() == 54);
  CHECK(r.bound.group.finite());
  CHECK(r.bound.group.order() == abs(r.det));
  CHECK(r.lifted.size() == 5);
  CHECK(r.family_size > 0);
}

TEST_CASE("reports are deterministic") {
  std::string const a = emit_report(run_pipeline(q2(), 1));
  std::string const b = emit_report(run_pipeline(q2(), 1));
  CHECK(a == b);
  CHECK(a.rfind("rover-forge report v1\n", 0) == 0);
  CHECK(a.find("det(I - mA) = -13800617") != std::string::npos);
  CHECK(a.find("alphabet: m * d = 2 * 27 = 54") != std::string::npos);
}

TEST_CASE("without doubling the odd alphabet is reported") {
  Options options;
  options.doubling = false;
  Report const r = run_pipeline(q2(), 1, options);
  CHECK(r.m == 1);
  CHECK(r.bound.odd_case);
  std::string const text = emit_report(r);
  CHECK(text.find("doubling: disabled") != std::string::npos);
  CHECK(text.find("odd alphabet") != std::string::npos);
}

TEST_CASE("degenerate Q") {
  Report const r = run_pipeline({{"e", RationalMatrix::identity(2)}}, 2);
  CHECK(r.chosen_N == 1);
  CHECK(r.gamma.N == 2);
  CHECK(r.gamma.n == 3);
  CHECK(r.persistence.passed());
  CHECK(r.det != 0);
  CHECK(emit_report(r).find("raised") != std::string::npos);
}

TEST_CASE("stage failures name the stage") {
  try {
    run_pipeline({{"z", RationalMatrix{{0}}}}, 1);
    FAIL("singular input accepted");
  } catch (DomainError const& e) {
    CHECK(std::string(e.what()).find("stage 'embedding'") != std::string::npos);
  }
  Options tiny;
  tiny.state_cap = 1;
  try {
    run_pipeline(q2(), 1, tiny);
    FAIL("cap ignored");
  } catch (CapExceeded const& e) {
    CHECK(std::string(e.what()).find("stage 'persistence'") != std::string::npos);
  }
}

TEST_CASE("persistence check on a built spec") {
  affine::AffineGroupSpec const spec = affine::build_gamma({}, 1, 2, 3);
  PersistenceCheck const p = check_persistence(spec);
  CHECK(p.passed());
  CHECK(p.checks == 2 * 3 + 2 + 2);
  CHECK(p.closure_sizes == std::vector<std::size_t>{2, 2});
}
