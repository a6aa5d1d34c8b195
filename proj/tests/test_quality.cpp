#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "lemmaforge/quality.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace lemmaforge;
using namespace lemmaforge::test;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Each node doubles the count of the one before it: D(k) = 2^(k-1) until
// saturation, L(k) = k exactly.
ProofGraph doubling_chain(std::size_t depth) {
  GraphBuilder b;
  b.add_node('F', 1, {});
  for (std::size_t k = 2; k <= depth + 1; ++k) {
    const Serial prev = static_cast<Serial>(k - 1);
    const std::vector<Serial> deps{prev, prev};
    b.add_node('C', 1, deps);
  }
  return b.finish();
}

}  // namespace

TEST_CASE("D counts recursive dependencies stopping at named and axioms") {
  const ProofGraph g = g7();

  const auto d_empty = compute_D(g, NamedSet{});
  const std::vector<double> want{0, 1, 0, 0, 0, 1, 1, 1};
  CHECK(d_empty == want);

  const auto d5 = compute_D(g, named_of({5}));
  CHECK(d5[5] == 1.0);
  CHECK(d5[6] == 1.0);  // D(5) + D(3) with the named node as base case
  CHECK(d5[7] == 1.0);
}

TEST_CASE("U counts recursive uses stopping at named nodes") {
  const ProofGraph g = g7();

  const auto u7 = compute_U(g, named_of({7}));
  const std::vector<double> want{0, 1, 0, 2, 1, 1, 1, 1};
  CHECK(u7 == want);

  const auto u_empty = compute_U(g, NamedSet{});
  for (std::size_t i = 1; i <= 7; ++i) CHECK(u_empty[i] == 0.0);

  const auto u2 = compute_U(g2(), named_of({2}));
  CHECK(u2[1] == 1.0);
  CHECK(u2[2] == 1.0);
}

TEST_CASE("L is the longest inference chain") {
  const auto l7 = compute_L(g7(), NamedSet{});
  const std::vector<std::int64_t> want{0, 1, 0, 0, 0, 2, 3, 4};
  CHECK(l7 == want);

  CHECK(compute_L(g2(), NamedSet{})[2] == 2);
  CHECK(compute_L(g7(), named_of({6}))[7] == 2);
}

TEST_CASE("D and U saturate to infinity instead of overflowing") {
  const ProofGraph g = doubling_chain(400);
  const auto D = compute_D(g, NamedSet{});
  CHECK(D[401] == kInf);
  CHECK(D[53] == std::ldexp(1.0, 52));  // last exact value
  CHECK(D[54] == kInf);                 // first past the threshold

  const auto L = compute_L(g, NamedSet{});
  CHECK(L[401] == 401);

  // The same blow-up upward: name the top node and count uses of the root.
  const auto U = compute_U(g, named_of({401}));
  CHECK(U[1] == kInf);
  CHECK(U[400] == 2.0);
}

TEST_CASE("pass-based counts equal the memoized recursion oracle") {
  std::mt19937_64 rng(77001);
  for (int iter = 0; iter < 40; ++iter) {
    const AxiomRules rules =
        (iter % 3 == 0) ? AxiomRules::none()
                        : (iter % 3 == 1 ? AxiomRules{} : AxiomRules::of("FR"));
    const ProofGraph g = random_graph(rng, 200, rules);
    const NamedSet named = random_named(rng, g.node_count(), 0.15);

    CHECK(compute_D(g, named) == oracle::ref_D(g, named));
    CHECK(compute_U(g, named) == oracle::ref_U(g, named));
    CHECK(compute_L(g, named) == oracle::ref_L(g, named));
  }
}

TEST_CASE("naming a positive-count node never increases downstream D") {
  // Naming k replaces D(k) by 1, and sums are monotone in their terms, so
  // no other node's D can grow as long as D(k) was at least 1 before. A
  // dep-less non-axiom has D = 0 and naming it genuinely raises downstream
  // counts, so those candidates are excluded here.
  std::mt19937_64 rng(77002);
  for (int iter = 0; iter < 15; ++iter) {
    const ProofGraph g = random_graph(rng, 80);
    const std::size_t n = g.node_count();
    NamedSet named = random_named(rng, n, 0.1);
    const auto before = compute_D(g, named);

    std::vector<Serial> candidates;
    for (std::size_t i = 1; i <= n; ++i) {
      if (before[i] >= 1.0) candidates.push_back(static_cast<Serial>(i));
    }
    if (candidates.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const Serial k = candidates[pick(rng)];
    const bool was_unit = before[k] == 1.0;
    named.add(k, "K");
    const auto after = compute_D(g, named);
    for (std::size_t i = 1; i <= n; ++i) {
      if (i == k) continue;
      CHECK(after[i] <= before[i]);
      if (was_unit) CHECK(after[i] == before[i]);
    }
    CHECK(after[k] == 1.0);
  }
}

TEST_CASE("quality scores match hand-computed values on the worked graph") {
  const ProofGraph g = g7();
  const NamedSet named = named_of({7});

  const QualityScores q1 = score(g, named, MetricConfig::q1());
  CHECK(q1.score[5] == doctest::Approx(1.0 / 17).epsilon(1e-12));
  CHECK(q1.score[6] == doctest::Approx(1.0 / 21).epsilon(1e-12));

  const QualityScores eq2 = score(g, named, MetricConfig::eq2());
  CHECK(eq2.score[6] == doctest::Approx(3.0 / 21).epsilon(1e-12));

  // Named and axiom nodes are never re-selectable.
  CHECK(q1.score[7] == -kInf);
  CHECK(q1.score[1] == -kInf);
}

TEST_CASE("the u-exponent families follow their formulas") {
  // One derived node with D = 3 (three axiom deps), U = 0 (nothing above).
  const ProofGraph g = build_graph(
      {{'F', 1, {}}, {'F', 1, {}}, {'F', 1, {}}, {'C', 6, {1, 2, 3}}});

  // r = 0: score = U^0 * D^2 / S with 0^0 = 1.
  const QualityScores r0 = score(g, NamedSet{}, MetricConfig::qr(0.0));
  CHECK(r0.score[4] == doctest::Approx(9.0 / 6).epsilon(1e-12));

  // r = 2: score = U^2 * D^0 / S = 0 here.
  const QualityScores r2 = score(g, NamedSet{}, MetricConfig::qr(2.0));
  CHECK(r2.score[4] == 0.0);

  // q2 divides by S^2.
  const QualityScores q2 = score(g, NamedSet{}, MetricConfig::q2());
  CHECK(q2.score[4] == 0.0);
}

TEST_CASE("the exponential family divides by base to the size") {
  // U = D = 1: a single axiom dep and a named user.
  const ProofGraph g =
      build_graph({{'F', 1, {}}, {'C', 10, {1}}, {'E', 2, {2}}});
  const QualityScores q3 = score(g, named_of({3}), MetricConfig::q3(1.1));
  CHECK(q3.score[2] ==
        doctest::Approx(1.0 / std::pow(1.1, 10)).epsilon(1e-12));
  CHECK(q3.score[2] == doctest::Approx(0.38554).epsilon(1e-4));
}

TEST_CASE("saturated counts never produce NaN scores") {
  ProofGraph g = doubling_chain(120);
  // A named top plus huge D below gives inf * finite and inf * inf cases.
  const NamedSet named = named_of({121});
  for (const MetricConfig& cfg :
       {MetricConfig::q1(), MetricConfig::q2(), MetricConfig::qr(0.5),
        MetricConfig::q3(1.1), MetricConfig::eq1(), MetricConfig::eq2()}) {
    const QualityScores qs = score(g, named, cfg);
    for (std::size_t i = 1; i <= g.node_count(); ++i) {
      CHECK_FALSE(std::isnan(qs.score[i]));
    }
  }
}

TEST_CASE("scaling all sizes rescales q1 without moving the argmax") {
  std::mt19937_64 rng(77003);
  const ProofGraph g = random_graph(rng, 60);
  const NamedSet named = random_named(rng, g.node_count(), 0.2);

  GraphBuilder b(AxiomRules{});
  for (std::size_t i = 1; i <= g.node_count(); ++i) {
    const Serial s = static_cast<Serial>(i);
    std::vector<Serial> deps(g.deps(s).begin(), g.deps(s).end());
    b.add_node(g.rule(s), g.size_of(s) * 3, deps);
  }
  const ProofGraph scaled = b.finish();

  const auto base = score(g, named, MetricConfig::q1()).score;
  const auto tri = score(scaled, named, MetricConfig::q1()).score;
  std::size_t best_base = 0;
  std::size_t best_tri = 0;
  for (std::size_t i = 1; i <= g.node_count(); ++i) {
    if (base[i] > -kInf) {
      CHECK(tri[i] == doctest::Approx(base[i] / 3).epsilon(1e-12));
    }
    if (best_base == 0 || base[i] > base[best_base]) best_base = i;
    if (best_tri == 0 || tri[i] > tri[best_tri]) best_tri = i;
  }
  CHECK(best_base == best_tri);
}

TEST_CASE("rank_nodes sorts by score then serial and is total") {
  const ProofGraph g = g7();
  const QualityScores qs = score(g, named_of({7}), MetricConfig::q1());
  const auto ranked = rank_nodes(g, qs);
  REQUIRE(ranked.size() == 7);
  CHECK(ranked[0].serial == 5);
  CHECK(ranked[1].serial == 6);
  // Scores 0 for the dep-less derived nodes, tie broken by serial.
  CHECK(ranked[2].serial == 2);
  CHECK(ranked[3].serial == 3);
  CHECK(ranked[4].serial == 4);
  // The -inf entries (axiom 1, named 7) trail, again by serial.
  CHECK(ranked[5].serial == 1);
  CHECK(ranked[6].serial == 7);
  CHECK(ranked[0].D == 1.0);
  CHECK(ranked[0].S == 17);
}
