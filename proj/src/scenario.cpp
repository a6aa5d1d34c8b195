#include "lemmaforge/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace lemmaforge {
namespace {

[[noreturn]] void fail(std::string_view source, std::uint64_t line,
                       const std::string& msg) {
  throw InputError(std::string(source) + ":" + std::to_string(line) + ": " +
                   msg);
}

void strip_line(std::string& line) {
  if (auto hash = line.find('#'); hash != std::string::npos) {
    line.resize(hash);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Whitespace-separated tokens of an already stripped line.
std::vector<std::string_view> tokens_of(const std::string& line) {
  std::vector<std::string_view> out;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p != end) {
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
    const char* start = p;
    while (p != end && *p != ' ' && *p != '\t') ++p;
    if (p != start) out.emplace_back(start, p - start);
  }
  return out;
}

Serial parse_serial_token(std::string_view tok, std::string_view source,
                          std::uint64_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || v == 0 ||
      v > std::numeric_limits<Serial>::max()) {
    fail(source, line, "bad serial '" + std::string(tok) + "'");
  }
  return static_cast<Serial>(v);
}

}  // namespace

std::uint64_t DerivedGraph::edge_count() const {
  std::uint64_t total = 0;
  for (const auto& ps : premises) total += ps.size();
  return total;
}

const std::vector<Serial>* DerivedGraph::premises_of(Serial t) const {
  auto it = std::lower_bound(theorems.begin(), theorems.end(), t);
  if (it == theorems.end() || *it != t) return nullptr;
  return &premises[static_cast<std::size_t>(it - theorems.begin())];
}

DerivedGraph derive(const ProofGraph& g, const NamedSet& named) {
  if (named.empty()) {
    throw std::invalid_argument("derive requires a nonempty named set");
  }
  DerivedGraph dg;
  FrontierComputer fc(g, named);
  dg.theorems = named.serials();
  dg.premises.reserve(dg.theorems.size());
  for (Serial t : dg.theorems) dg.premises.push_back(fc.frontier_deps(t));
  return dg;
}

DerivedGraph almost_honest(const ProofGraph& g, const NamedSet& orig,
                           const NamedSet& next) {
  return almost_honest(g, orig, next, Segmentation(orig));
}

DerivedGraph almost_honest(const ProofGraph& g, const NamedSet& orig,
                           const NamedSet& next, const Segmentation& seg) {
  for (Serial t : orig.serials()) {
    if (!next.contains(t)) {
      throw std::invalid_argument(
          "the new named set must contain the original one");
    }
  }
  DerivedGraph dg = derive(g, next);
  FrontierComputer against_orig(g, orig);

  for (std::size_t row = 0; row < dg.theorems.size(); ++row) {
    const Serial t = dg.theorems[row];
    const Serial prev = seg.prev_bound(t);
    auto& prems = dg.premises[row];
    // A directly preceding premise is a fresh lemma from t's own segment;
    // it gets replaced by its frontier against the original set, which by
    // construction contains only original theorems and axioms.
    auto preceding = [&](Serial p) {
      return p > prev && !orig.contains(p) && next.contains(p);
    };
    if (std::none_of(prems.begin(), prems.end(), preceding)) continue;
    std::vector<Serial> rebuilt;
    for (Serial p : prems) {
      if (preceding(p)) {
        const auto& repl = against_orig.frontier_deps(p);
        rebuilt.insert(rebuilt.end(), repl.begin(), repl.end());
      } else {
        rebuilt.push_back(p);
      }
    }
    std::sort(rebuilt.begin(), rebuilt.end());
    rebuilt.erase(std::unique(rebuilt.begin(), rebuilt.end()),
                  rebuilt.end());
    prems = std::move(rebuilt);
  }
  return dg;
}

std::vector<Problem> export_parents(const DerivedGraph& dg) {
  std::vector<Problem> out;
  out.reserve(dg.theorems.size());
  for (std::size_t i = 0; i < dg.theorems.size(); ++i) {
    out.push_back({dg.theorems[i], dg.premises[i], -1});
  }
  return out;
}

Problem export_advised(Serial conjecture, std::span<const Serial> advised,
                       int slice) {
  Problem p;
  p.conjecture = conjecture;
  p.slice = slice;
  std::unordered_set<Serial> seen;
  for (Serial a : advised) {
    if (a == kNoSerial || a >= conjecture) {
      throw InputError("advised premise " + std::to_string(a) +
                       " does not precede conjecture " +
                       std::to_string(conjecture));
    }
    if (seen.insert(a).second) p.premises.push_back(a);
  }
  return p;
}

std::vector<FullyHonestEntry> fully_honest_schedule(
    const ProofGraph& g, const NamedSet& orig, const Metric& metric,
    std::size_t M, std::size_t stride, const PageRankConfig& prcfg) {
  if (stride < 1) {
    throw std::invalid_argument("stride must be at least 1");
  }
  std::vector<FullyHonestEntry> out;
  const auto& ts = orig.serials();
  std::vector<Serial> deps;
  for (std::size_t idx = 0; idx < ts.size(); idx += stride) {
    const Serial j = ts[idx];

    // Everything the selection sees lives strictly before j.
    GraphBuilder builder(g.axiom_rules());
    builder.reserve(j - 1, g.dep_offsets()[j - 1]);
    for (Serial i = 1; i < j; ++i) {
      builder.add_node(g.rule(i), g.size_of(i), g.deps(i));
    }
    const ProofGraph prefix = builder.finish();
    NamedSet named0;
    for (Serial t : ts) {
      if (t >= j) break;
      named0.add(t, *orig.name_of(t));
    }

    FullyHonestEntry entry;
    entry.theorem = j;
    entry.run = select_best(prefix, metric, named0, M, prcfg);

    NamedSet with_mined = orig;
    for (const auto& [s, sc] : entry.run.chosen) {
      with_mined.add(s, "NEWDEP" + std::to_string(s));
    }
    FrontierComputer fc(g, with_mined);
    entry.problem.conjecture = j;
    entry.problem.premises = fc.frontier_deps(j);
    out.push_back(std::move(entry));
  }
  return out;
}

void write_problem(const Problem& p, const NamedSet* names,
                   std::ostream& os) {
  auto line = [&](const char* kind, Serial s) {
    os << kind << ' ' << s;
    if (names != nullptr) {
      if (const std::string* name = names->name_of(s)) os << ' ' << *name;
    }
    os << '\n';
  };
  line("conjecture", p.conjecture);
  for (Serial prem : p.premises) line("premise", prem);
}

Problem parse_problem(std::istream& is, std::string_view source) {
  Problem p;
  std::string line;
  std::uint64_t lineno = 0;
  bool have_conjecture = false;
  while (std::getline(is, line)) {
    ++lineno;
    strip_line(line);
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] == "conjecture") {
      if (have_conjecture) fail(source, lineno, "second conjecture line");
      if (toks.size() < 2) fail(source, lineno, "conjecture without serial");
      p.conjecture = parse_serial_token(toks[1], source, lineno);
      have_conjecture = true;
    } else if (toks[0] == "premise") {
      if (!have_conjecture) {
        fail(source, lineno, "premise before the conjecture line");
      }
      if (toks.size() < 2) fail(source, lineno, "premise without serial");
      p.premises.push_back(parse_serial_token(toks[1], source, lineno));
    } else {
      fail(source, lineno,
           "expected 'conjecture' or 'premise', got '" + std::string(toks[0]) +
               "'");
    }
  }
  if (!have_conjecture) {
    throw InputError(std::string(source) + ": no conjecture line");
  }
  return p;
}

void write_derived_graph(const DerivedGraph& dg, std::ostream& os) {
  for (std::size_t i = 0; i < dg.theorems.size(); ++i) {
    os << dg.theorems[i];
    for (Serial p : dg.premises[i]) os << ' ' << p;
    os << '\n';
  }
}

DerivedGraph parse_derived_graph(std::istream& is, std::string_view source) {
  std::vector<std::pair<Serial, std::vector<Serial>>> rows;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    strip_line(line);
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    const Serial t = parse_serial_token(toks[0], source, lineno);
    std::vector<Serial> prems;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const Serial p = parse_serial_token(toks[i], source, lineno);
      if (p >= t) {
        fail(source, lineno,
             "premise " + std::to_string(p) + " does not precede theorem " +
                 std::to_string(t));
      }
      prems.push_back(p);
    }
    std::sort(prems.begin(), prems.end());
    prems.erase(std::unique(prems.begin(), prems.end()), prems.end());
    rows.emplace_back(t, std::move(prems));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  DerivedGraph dg;
  for (auto& [t, prems] : rows) {
    if (!dg.theorems.empty() && dg.theorems.back() == t) {
      throw InputError(std::string(source) + ": duplicate theorem " +
                       std::to_string(t));
    }
    dg.theorems.push_back(t);
    dg.premises.push_back(std::move(prems));
  }
  return dg;
}

std::vector<Serial> parse_solved_set(std::istream& is,
                                     std::string_view source) {
  std::vector<Serial> out;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    strip_line(line);
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks.size() > 1) fail(source, lineno, "expected one serial per line");
    out.push_back(parse_serial_token(toks[0], source, lineno));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint64_t> ChainTable::histogram() const {
  std::uint32_t top = 0;
  bool any = false;
  for (const auto& [t, lvl] : levels) {
    if (lvl != kUnsolved) {
      top = std::max(top, lvl);
      any = true;
    }
  }
  std::vector<std::uint64_t> hist(any ? top + 1 : 0, 0);
  for (const auto& [t, lvl] : levels) {
    if (lvl != kUnsolved) ++hist[lvl];
  }
  return hist;
}

ChainTable chain_levels(
    const std::vector<std::vector<Problem>>& problems_per_round,
    const std::vector<std::vector<Serial>>& solved_per_round) {
  if (problems_per_round.size() != solved_per_round.size()) {
    throw InputError("problems and solved sets disagree on round count");
  }
  ChainTable table;
  std::unordered_map<Serial, std::uint32_t> level;
  for (const auto& round : problems_per_round) {
    for (const Problem& p : round) {
      level.emplace(p.conjecture, ChainTable::kUnsolved);
    }
  }
  for (std::size_t k = 0; k < solved_per_round.size(); ++k) {
    for (Serial s : solved_per_round[k]) {
      auto it = level.find(s);
      if (it == level.end()) {
        table.warnings.push_back("round " + std::to_string(k) +
                                 ": solved serial " + std::to_string(s) +
                                 " has no problem in any round");
      } else if (it->second == ChainTable::kUnsolved) {
        it->second = static_cast<std::uint32_t>(k);
      }
    }
  }
  // A chain is only valid if every premise that is itself a conjecture was
  // established in a strictly earlier round.
  for (std::size_t k = 0; k < problems_per_round.size(); ++k) {
    for (const Problem& p : problems_per_round[k]) {
      for (Serial prem : p.premises) {
        auto it = level.find(prem);
        if (it == level.end()) continue;  // ordinary premise, level 0
        if (it->second == ChainTable::kUnsolved || it->second >= k) {
          table.warnings.push_back(
              "round " + std::to_string(k) + " problem " +
              std::to_string(p.conjecture) + ": premise " +
              std::to_string(prem) + " was not solved before this round");
        }
      }
    }
  }
  table.levels.assign(level.begin(), level.end());
  std::sort(table.levels.begin(), table.levels.end());
  return table;
}

}  // namespace lemmaforge
