#pragma once
// TF-IDF cosine k-nearest-neighbour premise advice over statement texts,
// and the chronological evaluation that replays a derived graph in serial
// order, advising each theorem before training on it.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lemmaforge/scenario.hpp"
#include "lemmaforge/trace_io.hpp"
#include "lemmaforge/types.hpp"

namespace lemmaforge {

// Token -> count. Tokens are whitespace-separated words except that each
// parenthesis is always its own token.
using FeatureBag = std::map<std::string, std::uint32_t>;

FeatureBag featurize(std::string_view statement);

class Advisor {
 public:
  // Labels are the premises credited to this theorem.
  void add_theorem(Serial serial, FeatureBag features,
                   std::vector<Serial> labels);

  // Ranked (premise, score) pairs, best first, at most n_premises. Only
  // theorems with serial < query_serial participate; document frequencies
  // and the IDF corpus size are recomputed over that subset, so the answer
  // never leaks anything from the query's future.
  std::vector<std::pair<Serial, double>> advise(const FeatureBag& query,
                                                Serial query_serial,
                                                std::size_t k,
                                                std::size_t n_premises) const;

  std::size_t size() const { return docs_.size(); }

 private:
  struct Doc {
    Serial serial;
    FeatureBag features;
    std::vector<Serial> labels;
  };
  std::vector<Doc> docs_;  // ascending serial
};

struct ChronoProblems {
  std::vector<Serial> theorems;
  // problems[i] holds one problem per slice for theorems[i].
  std::vector<std::vector<Problem>> problems;
  std::uint64_t skipped_missing_statement = 0;
};

// Replay the derived graph's theorems in ascending order: advise each from
// what came strictly before, emit one problem per requested premise-count
// slice, then add the theorem (features + its true premises) to the
// training set. Theorems lacking a statement are skipped and counted.
ChronoProblems chrono_eval(const StatementMap& statements,
                           const DerivedGraph& dg, std::size_t k,
                           std::span<const std::size_t> slices);

}  // namespace lemmaforge
