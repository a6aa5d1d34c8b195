#include "lemmaforge/graph_cut.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace lemmaforge {
namespace {

// Merge the sorted source into dst, keeping dst sorted and duplicate-free.
void merge_into(std::vector<Serial>& dst, const std::vector<Serial>& src) {
  if (src.empty()) return;
  const std::size_t mid = dst.size();
  dst.insert(dst.end(), src.begin(), src.end());
  std::inplace_merge(dst.begin(), dst.begin() + mid, dst.end());
  dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
}

void insert_sorted(std::vector<Serial>& dst, Serial v) {
  auto it = std::lower_bound(dst.begin(), dst.end(), v);
  if (it == dst.end() || *it != v) dst.insert(it, v);
}

}  // namespace

FrontierComputer::FrontierComputer(const ProofGraph& g, const NamedSet& named)
    : g_(g),
      named_mask_(named.mask(g.node_count())),
      deps_memo_(g.node_count() + 1),
      uses_memo_(g.node_count() + 1),
      deps_done_(g.node_count() + 1, 0),
      uses_done_(g.node_count() + 1, 0) {}

// done flags: 0 untouched, 2 queued within the current call, 1 final. The
// queued state never outlives one ensure call, since every queued node is
// finished before it returns.
void FrontierComputer::ensure_deps(Serial n) {
  if (deps_done_[n] == 1) return;
  std::vector<Serial> todo{n};
  std::vector<Serial> stack{n};
  deps_done_[n] = 2;
  auto stops = [&](Serial x) {
    return named_mask_[x] || g_.is_axiom(x);
  };
  while (!stack.empty()) {
    const Serial x = stack.back();
    stack.pop_back();
    for (Serial d : g_.deps(x)) {
      if (stops(d) || deps_done_[d] != 0) continue;
      deps_done_[d] = 2;
      todo.push_back(d);
      stack.push_back(d);
    }
  }
  // Deps precede their users in serial order, so ascending processing has
  // every needed memo ready.
  std::sort(todo.begin(), todo.end());
  for (Serial x : todo) {
    auto& out = deps_memo_[x];
    for (Serial d : g_.deps(x)) {
      if (stops(d)) {
        insert_sorted(out, d);
      } else {
        merge_into(out, deps_memo_[d]);
      }
    }
    deps_done_[x] = 1;
  }
}

void FrontierComputer::ensure_uses(Serial n) {
  if (uses_done_[n] == 1) return;
  std::vector<Serial> todo{n};
  std::vector<Serial> stack{n};
  uses_done_[n] = 2;
  // Only named nodes stop the upward walk; axioms have users like any
  // other node.
  while (!stack.empty()) {
    const Serial x = stack.back();
    stack.pop_back();
    for (Serial u : g_.uses(x)) {
      if (named_mask_[u] || uses_done_[u] != 0) continue;
      uses_done_[u] = 2;
      todo.push_back(u);
      stack.push_back(u);
    }
  }
  std::sort(todo.begin(), todo.end(), std::greater<>());
  for (Serial x : todo) {
    auto& out = uses_memo_[x];
    for (Serial u : g_.uses(x)) {
      if (named_mask_[u]) {
        insert_sorted(out, u);
      } else {
        merge_into(out, uses_memo_[u]);
      }
    }
    uses_done_[x] = 1;
  }
}

const std::vector<Serial>& FrontierComputer::frontier_deps(Serial n) {
  ensure_deps(n);
  return deps_memo_[n];
}

const std::vector<Serial>& FrontierComputer::frontier_uses(Serial n) {
  ensure_uses(n);
  return uses_memo_[n];
}

FrontierSets frontiers(const ProofGraph& g, const NamedSet& named, Serial n) {
  if (named.contains(n)) {
    throw std::invalid_argument("node " + std::to_string(n) +
                                " is already named");
  }
  FrontierComputer fc(g, named);
  return {fc.frontier_deps(n), fc.frontier_uses(n)};
}

std::int64_t mc1(const FrontierSets& fs) {
  const auto fd = static_cast<std::int64_t>(fs.deps_frontier.size());
  const auto fu = static_cast<std::int64_t>(fs.uses_frontier.size());
  return fd * fu - fd - fu;
}

double mc_score(const ProofGraph& g, const NamedSet& named, Serial n,
                bool normalized) {
  const double raw = static_cast<double>(mc1(frontiers(g, named, n)));
  return normalized ? raw / static_cast<double>(g.size_of(n)) : raw;
}

std::vector<double> mc_scores(const ProofGraph& g, const NamedSet& named,
                              bool normalized) {
  const std::size_t n = g.node_count();
  const auto mask = named.mask(n);
  FrontierComputer fc(g, named);
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const Serial s = static_cast<Serial>(i);
    if (mask[i] || g.is_axiom(s)) {
      out[i] = -std::numeric_limits<double>::infinity();
      continue;
    }
    FrontierSets fs{fc.frontier_deps(s), fc.frontier_uses(s)};
    const double raw = static_cast<double>(mc1(fs));
    out[i] = normalized ? raw / static_cast<double>(g.size_of(s)) : raw;
  }
  return out;
}

}  // namespace lemmaforge
