#include <cmath>
#include <random>

#include "doctest.h"
#include "lemmaforge/pagerank.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace lemmaforge;
using namespace lemmaforge::test;

namespace {

double l1_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) s += v[i];
  return s;
}

}  // namespace

TEST_CASE("flow graph mirrors deps with multiplicity") {
  const ProofGraph g = build_graph(
      {{'R', 1, {}}, {'R', 1, {}}, {'C', 1, {1, 1, 2}}});
  const FlowGraph flow = FlowGraph::deps_of(g);
  CHECK(flow.node_count() == 3);
  CHECK(flow.out(1).empty());
  REQUIRE(flow.out(3).size() == 3);
  CHECK(flow.out(3)[0] == 1);
  CHECK(flow.out(3)[1] == 1);
  CHECK(flow.out(3)[2] == 2);

  const FlowGraph t = flow.transposed();
  REQUIRE(t.out(1).size() == 2);
  CHECK(t.out(1)[0] == 3);
  CHECK(t.out(1)[1] == 3);
  CHECK(t.out(2).size() == 1);
  CHECK(t.out(3).empty());
}

TEST_CASE("transposing twice restores the flow graph") {
  std::mt19937_64 rng(90210);
  for (int iter = 0; iter < 10; ++iter) {
    const FlowGraph flow = FlowGraph::deps_of(random_graph(rng, 100));
    const FlowGraph back = flow.transposed().transposed();
    CHECK(back.off == flow.off);
    // Transposition sorts each adjacency list by target, so compare as
    // multisets per node.
    for (Serial i = 1; i <= flow.node_count(); ++i) {
      std::vector<Serial> a(flow.out(i).begin(), flow.out(i).end());
      std::vector<Serial> b(back.out(i).begin(), back.out(i).end());
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }
}

TEST_CASE("the two-node fixture converges to the known fixed point") {
  // a = 0.075 + 0.85(b + a/2), b = 0.075 + 0.85 a/2 solves to
  // a = 0.13875 / 0.21375.
  const double a = 0.13875 / 0.21375;
  const PageRankResult r = pagerank(g2(), PageRankConfig{});
  REQUIRE(r.value.size() == 3);
  CHECK(r.converged);
  CHECK(r.value[1] == doctest::Approx(a).epsilon(1e-9));
  CHECK(r.value[2] == doctest::Approx(1.0 - a).epsilon(1e-9));
  CHECK(r.value[1] == doctest::Approx(0.6491228).epsilon(1e-6));
  CHECK(r.value[2] == doctest::Approx(0.3508771).epsilon(1e-6));
  CHECK(l1_sum(r.value) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("two isolated nodes split the mass evenly") {
  const ProofGraph g = build_graph({{'R', 1, {}}, {'R', 1, {}}});
  const PageRankResult r = pagerank(g, PageRankConfig{});
  CHECK(r.value[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.value[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reverse direction swaps the two-node values") {
  PageRankConfig rev;
  rev.direction = PrDirection::Reverse;
  const PageRankResult fwd = pagerank(g2(), PageRankConfig{});
  const PageRankResult bwd = pagerank(g2(), rev);
  CHECK(bwd.value[1] == fwd.value[2]);
  CHECK(bwd.value[2] == fwd.value[1]);
}

TEST_CASE("reverse equals forward on the transposed graph exactly") {
  std::mt19937_64 rng(90211);
  for (int iter = 0; iter < 10; ++iter) {
    const ProofGraph g = random_graph(rng, 200);
    PageRankConfig cfg;
    cfg.direction = PrDirection::Reverse;
    const auto rev = pagerank(g, cfg);

    const FlowGraph t = FlowGraph::deps_of(g).transposed();
    const auto fwd_t = pagerank(t, PageRankConfig{});
    REQUIRE(rev.value.size() == fwd_t.value.size());
    for (std::size_t i = 0; i < rev.value.size(); ++i) {
      CHECK(rev.value[i] == fwd_t.value[i]);
    }
  }
}

TEST_CASE("pagerank sums to one and satisfies its fixed-point equation") {
  std::mt19937_64 rng(90212);
  for (int iter = 0; iter < 20; ++iter) {
    const FlowGraph flow = FlowGraph::deps_of(random_graph(rng, 300));
    PageRankConfig cfg;
    cfg.tolerance = 1e-12;
    const PageRankResult r = pagerank(flow, cfg);
    CHECK(r.converged);
    CHECK(l1_sum(r.value) == doctest::Approx(1.0).epsilon(1e-9));

    const auto applied = oracle::pr_apply(flow, cfg.damping, r.value);
    double residual = 0.0;
    for (std::size_t i = 1; i < r.value.size(); ++i) {
      residual += std::abs(applied[i] - r.value[i]);
    }
    CHECK(residual < 10 * cfg.tolerance);
  }
}

TEST_CASE("iteration deltas shrink monotonically after the first step") {
  std::mt19937_64 rng(90213);
  for (int iter = 0; iter < 10; ++iter) {
    const ProofGraph g = random_graph(rng, 400);
    const PageRankResult r = pagerank(g, PageRankConfig{});
    for (std::size_t k = 1; k + 1 < r.l1_deltas.size(); ++k) {
      CHECK(r.l1_deltas[k + 1] <= r.l1_deltas[k] + 1e-15);
    }
  }
}

TEST_CASE("thread count does not change the result") {
  // One graph wide enough to span several work blocks, plus a random one.
  GraphBuilder b1500;
  b1500.add_node('F', 3, {});
  for (Serial s = 2; s <= 1500; ++s) b1500.add_node('C', 5, {s - 1, s / 2});
  const ProofGraph wide = b1500.finish();

  std::mt19937_64 rng(90214);
  const ProofGraph small = random_graph(rng, 500);

  for (const ProofGraph* g : {&wide, &small}) {
    PageRankConfig one;
    PageRankConfig four;
    four.threads = 4;
    const auto a = pagerank(*g, one);
    const auto b = pagerank(*g, four);
    REQUIRE(a.value.size() == b.value.size());
    for (std::size_t i = 0; i < a.value.size(); ++i) {
      CHECK(a.value[i] == b.value[i]);
    }
  }
}

TEST_CASE("an empty graph yields an empty converged result") {
  const PageRankResult r = pagerank(GraphBuilder().finish(),
                                    PageRankConfig{});
  CHECK(r.value.size() <= 1);
  CHECK(r.converged);
}

TEST_CASE("configuration is validated") {
  const ProofGraph g = g2();
  PageRankConfig bad;
  bad.damping = 0.0;
  CHECK_THROWS_AS(pagerank(g, bad), InputError);
  bad.damping = 1.0;
  CHECK_THROWS_AS(pagerank(g, bad), InputError);
  bad.damping = -0.2;
  CHECK_THROWS_AS(pagerank(g, bad), InputError);

  PageRankConfig bad_tol;
  bad_tol.tolerance = 0.0;
  CHECK_THROWS_AS(pagerank(g, bad_tol), InputError);

  PageRankConfig bad_iters;
  bad_iters.max_iterations = 0;
  CHECK_THROWS_AS(pagerank(g, bad_iters), InputError);
}

TEST_CASE("hitting the iteration cap reports non-convergence") {
  std::mt19937_64 rng(90215);
  const ProofGraph g = random_graph(rng, 100);
  PageRankConfig cfg;
  cfg.max_iterations = 1;
  cfg.tolerance = 1e-15;
  const PageRankResult r = pagerank(g, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
}

TEST_CASE("variants combine the two directions per their formulas") {
  const ProofGraph g = g2();  // S(1) = 10, S(2) = 5
  const auto fwd = pagerank(g, PageRankConfig{}).value;
  PageRankConfig rc;
  rc.direction = PrDirection::Reverse;
  const auto rev = pagerank(g, rc).value;

  const auto v1 = pr_variant(fwd, rev, g, PrVariant::PR1);
  CHECK(v1 == fwd);

  const auto v2 = pr_variant(fwd, rev, g, PrVariant::PR2);
  CHECK(v2[1] == doctest::Approx(fwd[1] / 10).epsilon(1e-15));
  CHECK(v2[2] == doctest::Approx(fwd[2] / 5).epsilon(1e-15));

  const auto v3 = pr_variant(fwd, rev, g, PrVariant::PR3);
  CHECK(v3 == rev);

  const auto v4 = pr_variant(fwd, rev, g, PrVariant::PR4);
  CHECK(v4[1] == doctest::Approx(rev[1] / 10).epsilon(1e-15));

  // Swap symmetry makes forward + reverse exactly 1 at both nodes.
  const auto v5 = pr_variant(fwd, rev, g, PrVariant::PR5);
  CHECK(v5[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(v5[2] == doctest::Approx(1.0).epsilon(1e-9));

  const auto v6 = pr_variant(fwd, rev, g, PrVariant::PR6);
  CHECK(v6[1] == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(v6[2] == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("variant direction requirements") {
  CHECK(pr_needs_forward(PrVariant::PR1));
  CHECK(pr_needs_forward(PrVariant::PR2));
  CHECK_FALSE(pr_needs_forward(PrVariant::PR3));
  CHECK_FALSE(pr_needs_forward(PrVariant::PR4));
  CHECK(pr_needs_forward(PrVariant::PR5));
  CHECK(pr_needs_forward(PrVariant::PR6));

  CHECK_FALSE(pr_needs_reverse(PrVariant::PR1));
  CHECK_FALSE(pr_needs_reverse(PrVariant::PR2));
  CHECK(pr_needs_reverse(PrVariant::PR3));
  CHECK(pr_needs_reverse(PrVariant::PR4));
  CHECK(pr_needs_reverse(PrVariant::PR5));
  CHECK(pr_needs_reverse(PrVariant::PR6));
}
