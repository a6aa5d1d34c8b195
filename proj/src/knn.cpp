#include "lemmaforge/knn.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

namespace lemmaforge {

FeatureBag featurize(std::string_view statement) {
  FeatureBag bag;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      ++bag[cur];
      cur.clear();
    }
  };
  for (char c : statement) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '(' || c == ')') {
      flush();
      ++bag[std::string(1, c)];
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return bag;
}

void Advisor::add_theorem(Serial serial, FeatureBag features,
                          std::vector<Serial> labels) {
  auto it = std::lower_bound(
      docs_.begin(), docs_.end(), serial,
      [](const Doc& d, Serial s) { return d.serial < s; });
  if (it != docs_.end() && it->serial == serial) {
    it->features = std::move(features);
    it->labels = std::move(labels);
  } else {
    docs_.insert(it, Doc{serial, std::move(features), std::move(labels)});
  }
}

std::vector<std::pair<Serial, double>> Advisor::advise(
    const FeatureBag& query, Serial query_serial, std::size_t k,
    std::size_t n_premises) const {
  const auto end_it = std::lower_bound(
      docs_.begin(), docs_.end(), query_serial,
      [](const Doc& d, Serial s) { return d.serial < s; });
  const std::size_t T = static_cast<std::size_t>(end_it - docs_.begin());
  if (T == 0 || k == 0 || n_premises == 0) return {};

  // Document frequencies over the admissible prefix only; the weights must
  // not change when later theorems are added.
  std::unordered_map<std::string_view, std::uint32_t> df;
  for (std::size_t i = 0; i < T; ++i) {
    for (const auto& [tok, cnt] : docs_[i].features) ++df[tok];
  }
  auto weight = [&](const std::string& tok) -> double {
    auto it = df.find(tok);
    if (it == df.end()) return 0.0;  // unseen feature, carries no signal
    return std::log(1.0 + static_cast<double>(T) /
                              static_cast<double>(it->second));
  };

  double qnorm2 = 0.0;
  for (const auto& [tok, cnt] : query) {
    const double wq = weight(tok) * cnt;
    qnorm2 += wq * wq;
  }

  std::vector<std::pair<double, Serial>> sims;
  sims.reserve(T);
  for (std::size_t i = 0; i < T; ++i) {
    const Doc& doc = docs_[i];
    double dot = 0.0;
    double dnorm2 = 0.0;
    for (const auto& [tok, cnt] : doc.features) {
      const double w = weight(tok);
      const double wd = w * cnt;
      dnorm2 += wd * wd;
      auto qit = query.find(tok);
      if (qit != query.end()) dot += wd * w * qit->second;
    }
    const double denom = std::sqrt(qnorm2) * std::sqrt(dnorm2);
    sims.emplace_back(denom > 0.0 ? dot / denom : 0.0, doc.serial);
  }
  std::sort(sims.begin(), sims.end(),
            [](const std::pair<double, Serial>& a,
               const std::pair<double, Serial>& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  sims.resize(std::min(sims.size(), k));

  std::unordered_map<Serial, double> premise_score;
  for (const auto& [sim, serial] : sims) {
    const auto doc_it = std::lower_bound(
        docs_.begin(), docs_.end(), serial,
        [](const Doc& d, Serial s) { return d.serial < s; });
    for (Serial p : doc_it->labels) {
      if (p >= query_serial) continue;
      premise_score[p] += sim;
    }
  }
  std::vector<std::pair<Serial, double>> out(premise_score.begin(),
                                             premise_score.end());
  std::sort(out.begin(), out.end(),
            [](const std::pair<Serial, double>& a,
               const std::pair<Serial, double>& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  out.resize(std::min(out.size(), n_premises));
  return out;
}

ChronoProblems chrono_eval(const StatementMap& statements,
                           const DerivedGraph& dg, std::size_t k,
                           std::span<const std::size_t> slices) {
  ChronoProblems out;
  Advisor advisor;
  std::size_t max_slice = 0;
  for (std::size_t s : slices) max_slice = std::max(max_slice, s);

  for (std::size_t i = 0; i < dg.theorems.size(); ++i) {
    const Serial t = dg.theorems[i];
    const auto st = statements.find(t);
    if (st == statements.end()) {
      ++out.skipped_missing_statement;
      continue;
    }
    FeatureBag features = featurize(st->second);
    const auto advice = advisor.advise(features, t, k, max_slice);
    std::vector<Serial> advised;
    advised.reserve(advice.size());
    for (const auto& [p, sc] : advice) advised.push_back(p);

    std::vector<Problem> per_slice;
    per_slice.reserve(slices.size());
    for (std::size_t s : slices) {
      const std::size_t take = std::min(s, advised.size());
      per_slice.push_back(export_advised(
          t, std::span<const Serial>(advised.data(), take),
          static_cast<int>(s)));
    }
    out.theorems.push_back(t);
    out.problems.push_back(std::move(per_slice));

    advisor.add_theorem(t, std::move(features), dg.premises[i]);
  }
  return out;
}

}  // namespace lemmaforge
