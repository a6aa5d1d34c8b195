#include "lemmaforge/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lemmaforge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double saturate(double v) { return v > kCountSaturation ? kInf : v; }

// The counts are non-negative, so 0 * inf is the only NaN source here.
inline double mul0(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace

std::vector<double> compute_D(const ProofGraph& g, const NamedSet& named) {
  const std::size_t n = g.node_count();
  const auto mask = named.mask(n);
  std::vector<double> D(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const Serial s = static_cast<Serial>(i);
    if (mask[i] || g.is_axiom(s)) {
      D[i] = 1.0;
      continue;
    }
    double sum = 0.0;
    for (Serial d : g.deps(s)) sum += D[d];
    D[i] = saturate(sum);
  }
  return D;
}

std::vector<double> compute_U(const ProofGraph& g, const NamedSet& named) {
  const std::size_t n = g.node_count();
  const auto mask = named.mask(n);
  std::vector<double> U(n + 1, 0.0);
  for (std::size_t i = n; i >= 1; --i) {
    const Serial s = static_cast<Serial>(i);
    if (mask[i]) {
      U[i] = 1.0;
      continue;
    }
    double sum = 0.0;
    for (Serial j : g.uses(s)) sum += U[j];
    U[i] = saturate(sum);
  }
  return U;
}

std::vector<std::int64_t> compute_L(const ProofGraph& g,
                                    const NamedSet& named) {
  const std::size_t n = g.node_count();
  const auto mask = named.mask(n);
  std::vector<std::int64_t> L(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    const Serial s = static_cast<Serial>(i);
    if (mask[i] || g.is_axiom(s)) {
      L[i] = 1;
      continue;
    }
    std::int64_t best = 0;  // dep-less unnamed non-axiom stays at 0
    for (Serial d : g.deps(s)) best = std::max(best, 1 + L[d]);
    L[i] = best;
  }
  return L;
}

QualityScores score(const ProofGraph& g, const NamedSet& named,
                    const MetricConfig& cfg) {
  QualityScores out;
  out.D = compute_D(g, named);
  out.U = compute_U(g, named);
  out.L = compute_L(g, named);
  const std::size_t n = g.node_count();
  const auto mask = named.mask(n);
  out.score.assign(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const Serial s = static_cast<Serial>(i);
    if (mask[i] || g.is_axiom(s)) {
      out.score[i] = -kInf;
      continue;
    }
    const double S = static_cast<double>(g.size_of(s));
    double v = 0.0;
    switch (cfg.family) {
      case MetricFamily::QPoly:
        // std::pow(0, 0) and pow(inf, 0) are both 1, as wanted.
        v = mul0(std::pow(out.U[i], cfg.u_exponent),
                 std::pow(out.D[i], 2.0 - cfg.u_exponent)) /
            std::pow(S, cfg.size_power);
        break;
      case MetricFamily::QExp:
        v = mul0(out.U[i], out.D[i]) / std::pow(cfg.exp_base, S);
        break;
      case MetricFamily::EqDep:
        v = out.D[i] / S;
        break;
      case MetricFamily::EqLen:
        v = static_cast<double>(out.L[i]) / S;
        break;
    }
    out.score[i] = std::isnan(v) ? 0.0 : v;
  }
  return out;
}

std::vector<RankedNode> rank_nodes(const ProofGraph& g,
                                   const QualityScores& qs) {
  const std::size_t n = g.node_count();
  std::vector<RankedNode> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const Serial s = static_cast<Serial>(i);
    out.push_back({s, qs.score[i], qs.D[i], qs.U[i], qs.L[i], g.size_of(s)});
  }
  std::sort(out.begin(), out.end(), [](const RankedNode& a,
                                       const RankedNode& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.serial < b.serial;
  });
  return out;
}

}  // namespace lemmaforge
