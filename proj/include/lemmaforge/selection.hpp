#pragma once
// Metric designators, unified scoring, and greedy best-M lemma selection.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lemmaforge/pagerank.hpp"
#include "lemmaforge/proof_graph.hpp"
#include "lemmaforge/quality.hpp"
#include "lemmaforge/types.hpp"

namespace lemmaforge {

struct Metric {
  enum class Kind { Direct, PageRank, Cut };

  Kind kind = Kind::Direct;
  MetricConfig direct;        // Kind::Direct
  PrVariant pr = PrVariant::PR1;  // Kind::PageRank
  bool cut_normalized = false;    // Kind::Cut
  std::string designator;
};

// Accepts: q1, q2, q3:<base>, qr:<r>, eq1, eq2, pr1..pr6, mc1, mc2.
// Throws InputError on anything else (including q3/qr without a parameter).
Metric parse_metric(std::string_view text);

// One masking point for all families: named and axiom nodes score -inf,
// everything else per the metric. Indexed by serial, slot 0 unused.
std::vector<double> metric_scores(const ProofGraph& g, const NamedSet& named,
                                  const Metric& metric,
                                  const PageRankConfig& prcfg = {});

struct SelectionRun {
  Metric metric;
  std::size_t requested = 0;
  // In pick order; .second is the score at the moment of picking.
  std::vector<std::pair<Serial, double>> chosen;
  bool truncated = false;  // ran out of eligible nodes before M
};

// Greedy: pick the argmax (ties by ascending serial), name it, rescore,
// repeat. PageRank metrics do not depend on the named set, so they take the
// top M of a single scoring pass instead. Eligible means score > -inf.
SelectionRun select_best(const ProofGraph& g, const Metric& metric,
                         const NamedSet& named0, std::size_t M,
                         const PageRankConfig& prcfg = {});

}  // namespace lemmaforge
