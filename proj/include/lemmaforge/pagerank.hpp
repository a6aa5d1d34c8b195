#pragma once
// Damped power iteration over the proof graph, run either along dependency
// edges (mass flows from a node to its premises) or against them. The
// reverse direction is implemented as the forward iteration on the
// transposed flow graph, so the two are bitwise duals by construction.

#include <cstdint>
#include <vector>

#include "lemmaforge/proof_graph.hpp"
#include "lemmaforge/types.hpp"

namespace lemmaforge {

// Out-edge adjacency in CSR form, 1-based like ProofGraph. Multiplicities
// are preserved: a dep listed twice receives twice the share.
struct FlowGraph {
  std::vector<std::uint64_t> off;  // size node_count()+2, off[1]..off[n+1]
  std::vector<Serial> to;

  Serial node_count() const {
    return off.size() < 2 ? 0 : static_cast<Serial>(off.size() - 2);
  }
  std::span<const Serial> out(Serial i) const {
    return {to.data() + off[i], to.data() + off[i + 1]};
  }

  static FlowGraph deps_of(const ProofGraph& g);
  FlowGraph transposed() const;  // stable: preserves source order per target
};

enum class PrDirection { Forward, Reverse };

struct PageRankConfig {
  double damping = 0.85;
  double tolerance = 1e-9;  // L1 distance between successive vectors
  int max_iterations = 200;
  PrDirection direction = PrDirection::Forward;
  int threads = 1;
};

struct PageRankResult {
  std::vector<double> value;  // indexed by serial, slot 0 unused; sums to 1
  int iterations = 0;
  bool converged = false;
  std::vector<double> l1_deltas;  // one entry per iteration
};

// Nodes with no out-edges spread their mass uniformly so the vector stays a
// probability distribution. Throws InputError for damping outside (0,1),
// non-positive tolerance, or max_iterations < 1.
PageRankResult pagerank(const FlowGraph& flow, const PageRankConfig& cfg);
PageRankResult pagerank(const ProofGraph& g, const PageRankConfig& cfg);

// Score variants combining the two directions. fwd/rev may be empty when the
// variant does not need that direction (see pr_needs_*).
enum class PrVariant { PR1 = 1, PR2, PR3, PR4, PR5, PR6 };

bool pr_needs_forward(PrVariant v);
bool pr_needs_reverse(PrVariant v);

// PR1 = fwd, PR2 = fwd/S, PR3 = rev, PR4 = rev/S,
// PR5 = fwd+rev, PR6 = (fwd+rev)/S.
std::vector<double> pr_variant(const std::vector<double>& fwd,
                               const std::vector<double>& rev,
                               const ProofGraph& g, PrVariant v);

}  // namespace lemmaforge
