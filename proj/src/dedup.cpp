#include "lemmaforge/dedup.hpp"

#include <string_view>
#include <unordered_map>

namespace lemmaforge {

DedupResult dedup(const ProofGraph& g, const Sidecars& sc,
                  const DedupSpec& spec) {
  const std::size_t n = g.node_count();
  const KeyMap& keys =
      spec.key_kind == KeyKind::Raw ? sc.raw_keys : sc.alpha_keys;
  if (keys.empty()) {
    throw InputError(spec.key_kind == KeyKind::Raw
                         ? "dedup requires a raw-keys sidecar"
                         : "dedup requires an alpha-keys sidecar");
  }
  if (spec.scope == DedupScope::Segment && sc.names.empty()) {
    throw InputError("segment-scoped dedup requires a names sidecar");
  }

  const Segmentation seg(sc.names);
  const auto named_mask = sc.names.mask(n);

  // Ascending scan: the first serial seen per (scope, key) bucket is the
  // canonical one. Scope 0 doubles as the global bucket and the trailing
  // (past the last named serial) region; named-serial scopes start at 1.
  std::vector<Serial> canonical(n + 1);
  {
    std::unordered_map<Serial, std::unordered_map<std::string_view, Serial>>
        buckets;
    for (std::size_t i = 1; i <= n; ++i) {
      const Serial s = static_cast<Serial>(i);
      canonical[i] = s;
      auto key_it = keys.find(s);
      if (key_it == keys.end()) continue;  // keyless nodes never merge
      const Serial scope =
          spec.scope == DedupScope::Global ? kNoSerial : seg.segment_of(s);
      auto [it, fresh] = buckets[scope].try_emplace(key_it->second, s);
      canonical[i] = it->second;
    }
  }

  std::vector<std::uint8_t> removed(n + 1, 0);
  std::vector<Serial> work;
  // With keep_named_duplicates off, the earliest deleted named duplicate
  // donates its name to a still-unnamed canonical.
  std::unordered_map<Serial, const std::string*> transferred;
  std::uint64_t removed_count = 0;

  for (std::size_t i = 1; i <= n; ++i) {
    const Serial s = static_cast<Serial>(i);
    if (canonical[i] == s) continue;
    if (named_mask[i]) {
      if (spec.keep_named_duplicates) continue;
      const Serial c = canonical[i];
      if (!named_mask[c]) transferred.try_emplace(c, sc.names.name_of(s));
    }
    removed[i] = 1;
    ++removed_count;
    work.push_back(s);
  }

  // Reference counts after the rewrite, before any deletion. Nodes that
  // never had a referencer (roots of dead branches in the input) survive;
  // only nodes that lose every referencer to deletion go with them.
  std::vector<std::uint64_t> cnt(n + 1, 0);
  for (Serial d : g.dep_arena()) ++cnt[canonical[d]];
  std::vector<std::uint8_t> had(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) had[i] = cnt[i] > 0;

  while (!work.empty()) {
    const Serial a = work.back();
    work.pop_back();
    for (Serial d : g.deps(a)) {
      const Serial c = canonical[d];
      --cnt[c];
      if (cnt[c] == 0 && had[c] && !removed[c] && !named_mask[c] &&
          !transferred.count(c)) {
        removed[c] = 1;
        ++removed_count;
        work.push_back(c);
      }
    }
  }

  DedupResult res;
  res.canonical = std::move(canonical);
  res.removed = removed_count;
  res.new_serial.assign(n + 1, kNoSerial);

  GraphBuilder builder(g.axiom_rules());
  builder.reserve(n - removed_count, g.edge_count());
  std::vector<Serial> deps;
  for (std::size_t i = 1; i <= n; ++i) {
    if (removed[i]) continue;
    const Serial s = static_cast<Serial>(i);
    deps.clear();
    for (Serial d : g.deps(s)) {
      deps.push_back(res.new_serial[res.canonical[d]]);
    }
    res.new_serial[i] = builder.add_node(g.rule(s), g.size_of(s), deps);
  }
  res.graph = builder.finish();

  for (const auto& [s, name] : sc.names.entries()) {
    if (!removed[s]) res.sidecars.names.add(res.new_serial[s], name);
  }
  for (const auto& [c, name] : transferred) {
    res.sidecars.names.add(res.new_serial[c], *name);
  }
  for (const auto& [s, key] : sc.raw_keys) {
    if (!removed[s]) res.sidecars.raw_keys.emplace(res.new_serial[s], key);
  }
  for (const auto& [s, key] : sc.alpha_keys) {
    if (!removed[s]) res.sidecars.alpha_keys.emplace(res.new_serial[s], key);
  }
  for (const auto& [s, text] : sc.statements) {
    if (!removed[s]) res.sidecars.statements.emplace(res.new_serial[s], text);
  }
  res.sidecars.duplicate_warnings = sc.duplicate_warnings;
  return res;
}

DedupPipeline dedup_pipeline(const ProofGraph& g, const Sidecars& sc) {
  DedupPipeline p;
  // Stages chain: each runs on the previous stage's output, so the node
  // counts are monotonically non-increasing by construction. Applying the
  // stronger scopes to the raw input instead can produce a larger graph
  // than the weaker stage (dup classes interact with cascade deletion).
  p.trace0 = dedup(g, sc, {DedupScope::Segment, KeyKind::Raw, true});
  p.trace1 = dedup(p.trace0.graph, p.trace0.sidecars,
                   {DedupScope::Global, KeyKind::Raw, true});
  p.trace2 = dedup(p.trace1.graph, p.trace1.sidecars,
                   {DedupScope::Global, KeyKind::Alpha, true});
  return p;
}

}  // namespace lemmaforge
