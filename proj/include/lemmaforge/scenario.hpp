#pragma once
// Derived graphs (named theorems over their named/axiom frontiers), the
// three premise-export scenarios, problem files, and chain-level
// bookkeeping for iterated solving rounds.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lemmaforge/graph_cut.hpp"
#include "lemmaforge/proof_graph.hpp"
#include "lemmaforge/selection.hpp"
#include "lemmaforge/trace_io.hpp"
#include "lemmaforge/types.hpp"

namespace lemmaforge {

// One row per named theorem: its dependency frontier against the named set
// plus axioms. Theorems ascend; each premise list is a sorted set.
struct DerivedGraph {
  std::vector<Serial> theorems;
  std::vector<std::vector<Serial>> premises;

  std::uint64_t edge_count() const;
  // nullptr when t is not a theorem of this graph.
  const std::vector<Serial>* premises_of(Serial t) const;
};

// Throws std::invalid_argument when named is empty.
DerivedGraph derive(const ProofGraph& g, const NamedSet& named);

// Premise lists for the theorems of `next` that are fresh relative to
// `orig`, with any premise that is itself a fresh lemma from the same
// segment replaced by that lemma's own frontier against orig + axioms.
// Pre-existing theorems keep their `next` rows. Segments come from `orig`.
DerivedGraph almost_honest(const ProofGraph& g, const NamedSet& orig,
                           const NamedSet& next);
DerivedGraph almost_honest(const ProofGraph& g, const NamedSet& orig,
                           const NamedSet& next, const Segmentation& seg);

struct Problem {
  Serial conjecture = kNoSerial;
  std::vector<Serial> premises;
  int slice = -1;  // >= 0 only for sliced chronological exports
};

// One problem per derived-graph row.
std::vector<Problem> export_parents(const DerivedGraph& dg);

// Problem from a premise-advice list: keeps the advised order, drops
// duplicates, rejects advice at or after the conjecture.
Problem export_advised(Serial conjecture, std::span<const Serial> advised,
                       int slice);

struct FullyHonestEntry {
  Serial theorem = kNoSerial;
  SelectionRun run;  // lemmas mined from the strict prefix
  Problem problem;
};

// Walk the sorted original theorems with the given stride; for each stop,
// mine M lemmas from the subgraph strictly before it and emit its frontier
// against originals + mined + axioms.
std::vector<FullyHonestEntry> fully_honest_schedule(
    const ProofGraph& g, const NamedSet& orig, const Metric& metric,
    std::size_t M, std::size_t stride, const PageRankConfig& prcfg = {});

// Text formats. Names are optional annotations on both line kinds.
void write_problem(const Problem& p, const NamedSet* names, std::ostream& os);
Problem parse_problem(std::istream& is, std::string_view source);

void write_derived_graph(const DerivedGraph& dg, std::ostream& os);
DerivedGraph parse_derived_graph(std::istream& is, std::string_view source);

// One serial per line; comments and blanks skipped.
std::vector<Serial> parse_solved_set(std::istream& is,
                                     std::string_view source);

// Chain level of a theorem: the earliest round whose solved set contains
// it. Premises that never appear as conjectures count as level 0.
struct ChainTable {
  static constexpr std::uint32_t kUnsolved = 0xffffffffu;

  std::vector<std::pair<Serial, std::uint32_t>> levels;  // ascending serial
  std::vector<std::string> warnings;

  // histogram[k] = number of theorems first solved in round k; unsolved
  // conjectures are not counted.
  std::vector<std::uint64_t> histogram() const;
};

// problems_per_round[k] and solved_per_round[k] describe round k (0-based).
// A warning is recorded when a round-k problem cites a premise that is a
// known conjecture not yet solved before round k.
ChainTable chain_levels(
    const std::vector<std::vector<Problem>>& problems_per_round,
    const std::vector<std::vector<Serial>>& solved_per_round);

}  // namespace lemmaforge
