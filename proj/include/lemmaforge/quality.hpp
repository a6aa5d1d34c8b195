#pragma once
// Recursive dependency/use counts D and U, longest inference chain L, and
// the size-weighted lemma quality scores built from them.
//
//   D(i) = 1 if i is named or an axiom, else sum of D over deps(i)
//   U(i) = 1 if i is named,             else sum of U over users(i)
//   L(i) = 1 if i is named or an axiom, else max over deps of 1+L; 0 if no deps
//
// Sums count dep multiplicity. D and U explode combinatorially on real
// traces, so they saturate (see kCountSaturation) instead of overflowing.

#include <cstdint>
#include <vector>

#include "lemmaforge/proof_graph.hpp"
#include "lemmaforge/types.hpp"

namespace lemmaforge {

// Any partial sum exceeding 2^52 saturates to +inf. Below that bound every
// addition of two in-range integers is exact in a double, so all finite D/U
// values are exact integers; +inf never becomes NaN downstream because the
// score arithmetic defines 0 * inf = 0.
inline constexpr double kCountSaturation = 4503599627370496.0;  // 2^52

// Per-node vectors are indexed by serial; slot 0 is unused.
std::vector<double> compute_D(const ProofGraph& g, const NamedSet& named);
std::vector<double> compute_U(const ProofGraph& g, const NamedSet& named);
std::vector<std::int64_t> compute_L(const ProofGraph& g,
                                    const NamedSet& named);

enum class MetricFamily {
  QPoly,  // U^r * D^(2-r) / S^p
  QExp,   // U * D / b^S
  EqDep,  // D / S
  EqLen,  // L / S
};

struct MetricConfig {
  MetricFamily family = MetricFamily::QPoly;
  double u_exponent = 1.0;  // r, QPoly only
  double size_power = 1.0;  // p, QPoly only
  double exp_base = 1.1;    // b, QExp only; must be > 1

  static MetricConfig q1() { return {}; }
  static MetricConfig q2() { return {MetricFamily::QPoly, 1.0, 2.0, 1.1}; }
  static MetricConfig q3(double base) {
    return {MetricFamily::QExp, 1.0, 1.0, base};
  }
  static MetricConfig qr(double r) {
    return {MetricFamily::QPoly, r, 1.0, 1.1};
  }
  static MetricConfig eq1() { return {MetricFamily::EqDep, 1.0, 1.0, 1.1}; }
  static MetricConfig eq2() { return {MetricFamily::EqLen, 1.0, 1.0, 1.1}; }
};

struct QualityScores {
  std::vector<double> D;
  std::vector<double> U;
  std::vector<std::int64_t> L;
  std::vector<double> score;  // -inf for named and axiom nodes
};

// 0^0 counts as 1; no value is ever NaN.
QualityScores score(const ProofGraph& g, const NamedSet& named,
                    const MetricConfig& cfg);

struct RankedNode {
  Serial serial;
  double score;
  double D;
  double U;
  std::int64_t L;
  std::uint32_t S;
};

// Descending score, ties broken by ascending serial. Total: named and axiom
// nodes trail the list with score -inf.
std::vector<RankedNode> rank_nodes(const ProofGraph& g,
                                   const QualityScores& qs);

}  // namespace lemmaforge
