#pragma once
// De-duplication passes: rewrite every reference to the earliest lemma that
// has the same content key (within one segment, or globally), drop unnamed
// duplicates together with ancestors that lose their last referencer, and
// recompact serials densely.

#include <cstdint>
#include <vector>

#include "lemmaforge/trace_io.hpp"

namespace lemmaforge {

enum class DedupScope { Segment, Global };
enum class KeyKind { Raw, Alpha };

struct DedupSpec {
  DedupScope scope = DedupScope::Global;
  KeyKind key_kind = KeyKind::Raw;
  // Named duplicates stay in the graph (their proofs feed the usage
  // statistics); references to them are still redirected to the canonical.
  bool keep_named_duplicates = true;
};

struct DedupResult {
  ProofGraph graph;
  Sidecars sidecars;  // remapped onto the new serials

  // Both indexed by old serial, slot 0 unused.
  std::vector<Serial> canonical;   // earliest same-key same-scope serial
  std::vector<Serial> new_serial;  // kNoSerial if the node was removed
  std::uint64_t removed = 0;

  // Where an old reference lands in the new graph; kNoSerial only when the
  // node's whole equivalence class was deleted as unreferenced.
  Serial map_old_to_new(Serial old_serial) const {
    Serial n = new_serial[old_serial];
    return n != kNoSerial ? n : new_serial[canonical[old_serial]];
  }
};

// Nodes without a key never merge. An entirely absent key sidecar for the
// requested kind is an input error.
DedupResult dedup(const ProofGraph& g, const Sidecars& sidecars,
                  const DedupSpec& spec);

struct DedupPipeline {
  DedupResult trace0;  // segment scope, raw keys, on the input
  DedupResult trace1;  // global scope, raw keys, on trace0
  DedupResult trace2;  // global scope, alpha keys, on trace1
};

// Stages chain, so node counts only ever shrink along the pipeline.
DedupPipeline dedup_pipeline(const ProofGraph& g, const Sidecars& sidecars);

}  // namespace lemmaforge
