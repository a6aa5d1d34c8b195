#pragma once
// Frontier sets and the graph-cut lemma scores built from them.
//
// The dependency frontier of n walks deps(n) transitively and stops at named
// nodes and axioms; those stopping nodes form the set. The use frontier
// walks uses(n) and stops at named nodes only. Scoring a candidate as a new
// shared definition: mc1 = |FD|*|FU| - |FD| - |FU| (edges saved when every
// frontier use could cite n instead of n's whole frontier), mc2 divides by
// the statement size S(n).

#include <cstdint>
#include <vector>

#include "lemmaforge/proof_graph.hpp"
#include "lemmaforge/types.hpp"

namespace lemmaforge {

// Memoizes per-node frontiers across queries; cheap to query repeatedly for
// the same graph and named set.
class FrontierComputer {
 public:
  FrontierComputer(const ProofGraph& g, const NamedSet& named);

  // Sorted, duplicate-free. Valid for any node, named or not.
  const std::vector<Serial>& frontier_deps(Serial n);
  const std::vector<Serial>& frontier_uses(Serial n);

 private:
  const ProofGraph& g_;
  std::vector<std::uint8_t> named_mask_;
  std::vector<std::vector<Serial>> deps_memo_;
  std::vector<std::vector<Serial>> uses_memo_;
  std::vector<std::uint8_t> deps_done_;
  std::vector<std::uint8_t> uses_done_;

  void ensure_deps(Serial n);
  void ensure_uses(Serial n);
};

struct FrontierSets {
  std::vector<Serial> deps_frontier;
  std::vector<Serial> uses_frontier;
};

// Throws std::invalid_argument when n is already named.
FrontierSets frontiers(const ProofGraph& g, const NamedSet& named, Serial n);

std::int64_t mc1(const FrontierSets& fs);

double mc_score(const ProofGraph& g, const NamedSet& named, Serial n,
                bool normalized);

// Indexed by serial, slot 0 unused; named and axiom nodes get -inf.
std::vector<double> mc_scores(const ProofGraph& g, const NamedSet& named,
                              bool normalized);

}  // namespace lemmaforge
