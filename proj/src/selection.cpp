#include "lemmaforge/selection.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "lemmaforge/graph_cut.hpp"

namespace lemmaforge {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double parse_param(std::string_view text, std::string_view designator) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [p, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || p != end) {
    throw InputError("bad numeric parameter in metric '" +
                     std::string(designator) + "'");
  }
  return v;
}

}  // namespace

Metric parse_metric(std::string_view text) {
  Metric m;
  m.designator = std::string(text);
  if (text == "q1") {
    m.direct = MetricConfig::q1();
  } else if (text == "q2") {
    m.direct = MetricConfig::q2();
  } else if (text.starts_with("q3:")) {
    const double base = parse_param(text.substr(3), text);
    if (!(base > 1.0)) {
      throw InputError("q3 base must be greater than 1");
    }
    m.direct = MetricConfig::q3(base);
  } else if (text.starts_with("qr:")) {
    m.direct = MetricConfig::qr(parse_param(text.substr(3), text));
  } else if (text == "eq1") {
    m.direct = MetricConfig::eq1();
  } else if (text == "eq2") {
    m.direct = MetricConfig::eq2();
  } else if (text.size() == 3 && text.starts_with("pr") && text[2] >= '1' &&
             text[2] <= '6') {
    m.kind = Metric::Kind::PageRank;
    m.pr = static_cast<PrVariant>(text[2] - '0');
  } else if (text == "mc1") {
    m.kind = Metric::Kind::Cut;
    m.cut_normalized = false;
  } else if (text == "mc2") {
    m.kind = Metric::Kind::Cut;
    m.cut_normalized = true;
  } else {
    throw InputError("unknown metric '" + std::string(text) +
                     "' (expected q1, q2, q3:<base>, qr:<r>, eq1, eq2, "
                     "pr1..pr6, mc1 or mc2)");
  }
  return m;
}

std::vector<double> metric_scores(const ProofGraph& g, const NamedSet& named,
                                  const Metric& metric,
                                  const PageRankConfig& prcfg) {
  switch (metric.kind) {
    case Metric::Kind::Direct:
      return score(g, named, metric.direct).score;
    case Metric::Kind::Cut:
      return mc_scores(g, named, metric.cut_normalized);
    case Metric::Kind::PageRank:
      break;
  }
  std::vector<double> fwd, rev;
  if (pr_needs_forward(metric.pr)) {
    PageRankConfig cfg = prcfg;
    cfg.direction = PrDirection::Forward;
    fwd = pagerank(g, cfg).value;
  }
  if (pr_needs_reverse(metric.pr)) {
    PageRankConfig cfg = prcfg;
    cfg.direction = PrDirection::Reverse;
    rev = pagerank(g, cfg).value;
  }
  std::vector<double> out = pr_variant(fwd, rev, g, metric.pr);
  const auto mask = named.mask(g.node_count());
  for (std::size_t i = 1; i <= g.node_count(); ++i) {
    if (mask[i] || g.is_axiom(static_cast<Serial>(i))) out[i] = kNegInf;
  }
  return out;
}

SelectionRun select_best(const ProofGraph& g, const Metric& metric,
                         const NamedSet& named0, std::size_t M,
                         const PageRankConfig& prcfg) {
  SelectionRun run;
  run.metric = metric;
  run.requested = M;
  const std::size_t n = g.node_count();

  if (metric.kind == Metric::Kind::PageRank) {
    // One scoring pass; the values do not depend on the named set.
    const auto sc = metric_scores(g, named0, metric, prcfg);
    std::vector<Serial> order;
    for (std::size_t i = 1; i <= n; ++i) {
      if (sc[i] > kNegInf) order.push_back(static_cast<Serial>(i));
    }
    std::sort(order.begin(), order.end(), [&](Serial a, Serial b) {
      if (sc[a] != sc[b]) return sc[a] > sc[b];
      return a < b;
    });
    run.truncated = order.size() < M;
    order.resize(std::min(order.size(), M));
    for (Serial s : order) run.chosen.emplace_back(s, sc[s]);
    return run;
  }

  NamedSet named = named0;
  for (std::size_t step = 0; step < M; ++step) {
    const auto sc = metric_scores(g, named, metric, prcfg);
    Serial best = kNoSerial;
    for (std::size_t i = 1; i <= n; ++i) {
      if (sc[i] == kNegInf) continue;
      if (best == kNoSerial || sc[i] > sc[best]) {
        best = static_cast<Serial>(i);
      }
    }
    if (best == kNoSerial) {
      run.truncated = true;
      break;
    }
    run.chosen.emplace_back(best, sc[best]);
    named.add(best, "NEWDEP" + std::to_string(best));
  }
  return run;
}

}  // namespace lemmaforge
