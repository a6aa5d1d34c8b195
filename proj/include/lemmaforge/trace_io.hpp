#pragma once
// Line-oriented trace format plus sidecar files.
//
//   trace:      <RULE><SIZE>[ <dep>]*[ #comment]    one node per line
//   names:      <serial> <name>
//   keys:       <serial> <key>                      opaque, equality only
//   statements: <serial><TAB><text>
//
// Trace serials are implicit: node k comes from the k-th non-blank line.
// Everything from '#' to end of line is commentary, not data.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>

#include "lemmaforge/proof_graph.hpp"
#include "lemmaforge/types.hpp"

namespace lemmaforge {

struct TraceParseOptions {
  AxiomRules axiom_rules{};
  std::string source = "<trace>";  // label used in diagnostics
};

// Streaming: memory stays O(nodes) plus one line buffer.
ProofGraph parse_trace(std::istream& in, const TraceParseOptions& opt = {});
ProofGraph parse_trace_file(const std::string& path,
                            AxiomRules rules = AxiomRules{});

// Canonical form: no comments, no padding, LF-terminated.
// parse_trace(write_trace(g)) reconstructs g exactly.
void write_trace(const ProofGraph& g, std::ostream& out);

using KeyMap = std::unordered_map<Serial, std::string>;
using StatementMap = std::unordered_map<Serial, std::string>;

struct Sidecars {
  NamedSet names;
  KeyMap raw_keys;
  KeyMap alpha_keys;
  StatementMap statements;
  std::uint64_t duplicate_warnings = 0;  // duplicate serials seen, last won
};

// Serials outside 1..node_count are input errors naming the source and line.
NamedSet parse_names(std::istream& in, std::size_t node_count,
                     const std::string& source,
                     std::uint64_t* duplicate_warnings = nullptr);
KeyMap parse_keys(std::istream& in, std::size_t node_count,
                  const std::string& source,
                  std::uint64_t* duplicate_warnings = nullptr);
StatementMap parse_statements(std::istream& in, std::size_t node_count,
                              const std::string& source,
                              std::uint64_t* duplicate_warnings = nullptr);

// Convenience loader; an empty path means the sidecar is absent.
struct SidecarPaths {
  std::string names;
  std::string raw_keys;
  std::string alpha_keys;
  std::string statements;
};
Sidecars parse_sidecars(const SidecarPaths& paths, std::size_t node_count);

}  // namespace lemmaforge
