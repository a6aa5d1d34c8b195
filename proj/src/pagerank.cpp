#include "lemmaforge/pagerank.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "lemmaforge/util.hpp"

namespace lemmaforge {

FlowGraph FlowGraph::deps_of(const ProofGraph& g) {
  FlowGraph f;
  const std::size_t n = g.node_count();
  f.off.resize(n + 2);
  f.off[0] = 0;
  const auto& d = g.dep_offsets();
  for (std::size_t i = 0; i <= n; ++i) f.off[i + 1] = d[i];
  f.to = g.dep_arena();
  return f;
}

FlowGraph FlowGraph::transposed() const {
  FlowGraph t;
  const std::size_t n = node_count();
  t.off.assign(n + 2, 0);
  for (Serial v : to) ++t.off[v + 1];
  for (std::size_t i = 1; i < t.off.size(); ++i) t.off[i] += t.off[i - 1];
  t.to.resize(to.size());
  std::vector<std::uint64_t> next(t.off.begin(), t.off.end() - 1);
  for (std::size_t u = 1; u <= n; ++u) {
    for (Serial v : out(static_cast<Serial>(u))) {
      t.to[next[v]++] = static_cast<Serial>(u);
    }
  }
  return t;
}

static void validate(const PageRankConfig& cfg) {
  if (!(cfg.damping > 0.0) || !(cfg.damping < 1.0)) {
    throw InputError("damping must lie strictly inside (0,1)");
  }
  if (!(cfg.tolerance > 0.0)) {
    throw InputError("tolerance must be positive");
  }
  if (cfg.max_iterations < 1) {
    throw InputError("max_iterations must be at least 1");
  }
}

PageRankResult pagerank(const FlowGraph& flow, const PageRankConfig& cfg) {
  validate(cfg);
  PageRankResult res;
  const std::size_t n = flow.node_count();
  res.value.assign(n + 1, 0.0);
  if (n == 0) {
    res.converged = true;
    return res;
  }

  const FlowGraph in = flow.transposed();
  const double f = cfg.damping;
  const double invN = 1.0 / static_cast<double>(n);
  const int threads = cfg.threads > 0 ? cfg.threads : 1;
  const int chunks = chunk_count(n);

  std::vector<double> x(n + 1, invN);
  std::vector<double> xn(n + 1, 0.0);
  // share[u] is u's per-edge contribution; dangling mass is summed apart
  // and spread uniformly so the vector keeps summing to 1.
  std::vector<double> share(n + 1, 0.0);
  std::vector<double> partial(chunks, 0.0);

  for (int it = 0; it < cfg.max_iterations; ++it) {
    parallel_for(n, threads, [&](std::uint64_t b, std::uint64_t e, int c) {
      double dangling = 0.0;
      for (std::uint64_t u = b; u < e; ++u) {
        const std::uint64_t deg = flow.off[u + 1] - flow.off[u];
        if (deg == 0) {
          dangling += x[u];
          share[u] = 0.0;
        } else {
          share[u] = x[u] / static_cast<double>(deg);
        }
      }
      partial[c] = dangling;
    });
    double dangling = 0.0;
    for (int c = 0; c < chunks; ++c) dangling += partial[c];

    const double base = (1.0 - f) * invN + f * dangling * invN;
    parallel_for(n, threads, [&](std::uint64_t b, std::uint64_t e, int c) {
      double delta = 0.0;
      for (std::uint64_t v = b; v < e; ++v) {
        double s = 0.0;
        for (Serial u : in.out(static_cast<Serial>(v))) s += share[u];
        const double nv = base + f * s;
        xn[v] = nv;
        delta += std::abs(nv - x[v]);
      }
      partial[c] = delta;
    });
    double delta = 0.0;
    for (int c = 0; c < chunks; ++c) delta += partial[c];

    x.swap(xn);
    ++res.iterations;
    res.l1_deltas.push_back(delta);
    if (delta < cfg.tolerance) {
      res.converged = true;
      break;
    }
  }
  res.value = std::move(x);
  return res;
}

PageRankResult pagerank(const ProofGraph& g, const PageRankConfig& cfg) {
  FlowGraph flow = FlowGraph::deps_of(g);
  if (cfg.direction == PrDirection::Reverse) flow = flow.transposed();
  return pagerank(flow, cfg);
}

bool pr_needs_forward(PrVariant v) {
  return v == PrVariant::PR1 || v == PrVariant::PR2 ||
         v == PrVariant::PR5 || v == PrVariant::PR6;
}

bool pr_needs_reverse(PrVariant v) {
  return v == PrVariant::PR3 || v == PrVariant::PR4 ||
         v == PrVariant::PR5 || v == PrVariant::PR6;
}

std::vector<double> pr_variant(const std::vector<double>& fwd,
                               const std::vector<double>& rev,
                               const ProofGraph& g, PrVariant v) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double S = static_cast<double>(g.size_of(static_cast<Serial>(i)));
    switch (v) {
      case PrVariant::PR1: out[i] = fwd[i]; break;
      case PrVariant::PR2: out[i] = fwd[i] / S; break;
      case PrVariant::PR3: out[i] = rev[i]; break;
      case PrVariant::PR4: out[i] = rev[i] / S; break;
      case PrVariant::PR5: out[i] = fwd[i] + rev[i]; break;
      case PrVariant::PR6: out[i] = (fwd[i] + rev[i]) / S; break;
    }
  }
  return out;
}

}  // namespace lemmaforge
