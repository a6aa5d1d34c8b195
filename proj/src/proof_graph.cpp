#include "lemmaforge/proof_graph.hpp"

#include <stdexcept>
#include <string>

namespace lemmaforge {

ProofGraph::ProofGraph() : uses_(std::make_unique<UsesCache>()) {
  dep_off_.push_back(0);
}

Serial ProofGraph::check(Serial i) const {
  if (i == kNoSerial || static_cast<std::size_t>(i) > node_count()) {
    throw std::out_of_range("node serial " + std::to_string(i) +
                            " out of range 1.." +
                            std::to_string(node_count()));
  }
  return i;
}

void ProofGraph::ensure_uses() const {
  std::call_once(uses_->once, [this] {
    const std::size_t n = node_count();
    auto& off = uses_->off;
    auto& arena = uses_->arena;
    // Same offset convention as deps: node i's slice is [off[i-1], off[i]).
    // Filling in source order keeps each slice sorted ascending.
    off.assign(n + 1, 0);
    for (Serial d : dep_arena_) ++off[d];
    for (std::size_t i = 1; i <= n; ++i) off[i] += off[i - 1];
    arena.resize(dep_arena_.size());
    std::vector<std::uint64_t> next(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) next[i] = off[i - 1];
    for (std::size_t j = 1; j <= n; ++j) {
      for (Serial d : deps(static_cast<Serial>(j))) {
        arena[next[d]++] = static_cast<Serial>(j);
      }
    }
  });
}

std::span<const Serial> ProofGraph::uses(Serial i) const {
  check(i);
  ensure_uses();
  const auto& off = uses_->off;
  const auto& arena = uses_->arena;
  return {arena.data() + off[i - 1], arena.data() + off[i]};
}

bool ProofGraph::same_nodes(const ProofGraph& other) const {
  return rule_ == other.rule_ && size_ == other.size_ &&
         dep_off_ == other.dep_off_ && dep_arena_ == other.dep_arena_;
}

GraphStats graph_stats(const ProofGraph& g) {
  GraphStats st;
  const std::size_t n = g.node_count();
  st.nodes = n;
  st.edges = g.edge_count();
  st.roots = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (g.deps(static_cast<Serial>(i)).empty()) ++st.roots;
  }
  return st;
}

GraphBuilder::GraphBuilder(AxiomRules rules) {
  g_.axiom_rules_ = rules;
}

void GraphBuilder::reserve(std::size_t nodes, std::uint64_t edges) {
  g_.rule_.reserve(nodes);
  g_.size_.reserve(nodes);
  g_.dep_off_.reserve(nodes + 1);
  g_.dep_arena_.reserve(edges);
}

Serial GraphBuilder::add_node(char rule, std::uint32_t size,
                              std::span<const Serial> deps) {
  const Serial serial = static_cast<Serial>(g_.rule_.size() + 1);
  for (Serial d : deps) {
    if (d == kNoSerial || d >= serial) {
      throw std::invalid_argument("dep " + std::to_string(d) + " of node " +
                                  std::to_string(serial) +
                                  " is not an earlier node");
    }
  }
  g_.rule_.push_back(rule);
  g_.size_.push_back(size);
  g_.dep_arena_.insert(g_.dep_arena_.end(), deps.begin(), deps.end());
  g_.dep_off_.push_back(g_.dep_arena_.size());
  return serial;
}

ProofGraph GraphBuilder::finish() {
  ProofGraph out = std::move(g_);
  g_ = ProofGraph();
  return out;
}

}  // namespace lemmaforge
