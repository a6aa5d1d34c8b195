#pragma once
// Append-only inference DAG. Nodes are dense 1-based serials; each carries a
// rule code, a symbol-size weight and its dependency serials (all strictly
// smaller, so the trace order is a topological order). Dependencies live in
// one flat arena addressed by per-node offsets: traces run to hundreds of
// millions of edges, so per-node heap allocations are out of the question.

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "lemmaforge/types.hpp"

namespace lemmaforge {

struct GraphStats {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;  // dependency references, multiplicity counted
  std::uint64_t roots = 0;  // nodes with no dependencies
};

class ProofGraph {
 public:
  ProofGraph();
  ProofGraph(ProofGraph&&) noexcept = default;
  ProofGraph& operator=(ProofGraph&&) noexcept = default;

  std::size_t node_count() const { return rule_.size(); }
  std::uint64_t edge_count() const { return dep_arena_.size(); }

  char rule(Serial i) const { return rule_[check(i) - 1]; }
  std::uint32_t size_of(Serial i) const { return size_[check(i) - 1]; }
  std::span<const Serial> deps(Serial i) const {
    check(i);
    return {dep_arena_.data() + dep_off_[i - 1],
            dep_arena_.data() + dep_off_[i]};
  }

  bool is_axiom(Serial i) const { return axiom_rules_.contains(rule(i)); }
  const AxiomRules& axiom_rules() const { return axiom_rules_; }

  // Direct users {j : i in d(j)}, ascending, multiplicity preserved. The
  // reverse arena is built on first use (thread-safe) and then shared.
  std::span<const Serial> uses(Serial i) const;

  // Structural equality: rules, sizes and dep lists node for node. The
  // axiom-rule configuration is deliberately not part of it.
  bool same_nodes(const ProofGraph& other) const;

  // Raw views for linear passes; deps of node i occupy
  // dep_arena()[dep_offsets()[i-1] .. dep_offsets()[i]).
  const std::vector<std::uint64_t>& dep_offsets() const { return dep_off_; }
  const std::vector<Serial>& dep_arena() const { return dep_arena_; }

 private:
  friend class GraphBuilder;

  Serial check(Serial i) const;  // throws std::out_of_range

  std::vector<char> rule_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint64_t> dep_off_;  // node_count()+1 entries
  std::vector<Serial> dep_arena_;
  AxiomRules axiom_rules_;

  struct UsesCache {
    std::once_flag once;
    std::vector<std::uint64_t> off;
    std::vector<Serial> arena;
  };
  void ensure_uses() const;
  std::unique_ptr<UsesCache> uses_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(AxiomRules rules = AxiomRules{});

  void reserve(std::size_t nodes, std::uint64_t edges);

  // Deps must reference existing nodes (they are < the new serial by
  // construction). Returns the serial just assigned.
  Serial add_node(char rule, std::uint32_t size, std::span<const Serial> deps);
  Serial add_node(char rule, std::uint32_t size,
                  std::initializer_list<Serial> deps) {
    return add_node(rule, size,
                    std::span<const Serial>(deps.begin(), deps.size()));
  }

  std::size_t node_count() const { return g_.rule_.size(); }

  ProofGraph finish();

 private:
  ProofGraph g_;
};

GraphStats graph_stats(const ProofGraph& g);

// Alias for the transpose slice of one node, per the metric definitions.
inline std::span<const Serial> direct_uses(const ProofGraph& g, Serial i) {
  return g.uses(i);
}

}  // namespace lemmaforge
