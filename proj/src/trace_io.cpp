#include "lemmaforge/trace_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

namespace lemmaforge {
namespace {

[[noreturn]] void fail(const std::string& source, std::uint64_t line,
                       const std::string& msg) {
  throw InputError(source + ":" + std::to_string(line) + ": " + msg);
}

const char* skip_ws(const char* p, const char* end) {
  while (p != end && (*p == ' ' || *p == '\t')) ++p;
  return p;
}

// Serial + position of the first char after it; nullptr on parse failure.
const char* parse_u64(const char* p, const char* end, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(p, end, out);
  return ec == std::errc{} ? ptr : nullptr;
}

}  // namespace

ProofGraph parse_trace(std::istream& in, const TraceParseOptions& opt) {
  GraphBuilder builder(opt.axiom_rules);
  std::string line;
  std::vector<Serial> deps;
  std::uint64_t lineno = 0;
  constexpr std::uint64_t kMaxSerial = std::numeric_limits<Serial>::max();

  while (std::getline(in, line)) {
    ++lineno;
    // Comments run to end of line; a bare '\r' before it is CRLF input.
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const char* p = line.data();
    const char* end = p + line.size();
    p = skip_ws(p, end);
    if (p == end) continue;  // blank or comment-only, consumes no serial

    const Serial serial = static_cast<Serial>(builder.node_count() + 1);
    if (builder.node_count() >= kMaxSerial) {
      fail(opt.source, lineno,
           "trace exceeds " + std::to_string(kMaxSerial) +
               " nodes; rebuild with LEMMAFORGE_WIDE_SERIALS");
    }

    const char rule = *p;
    if (std::isdigit(static_cast<unsigned char>(rule))) {
      fail(opt.source, lineno, "expected a rule code before the size");
    }
    if (!std::isprint(static_cast<unsigned char>(rule))) {
      fail(opt.source, lineno, "unprintable rule code");
    }
    ++p;

    std::uint64_t size = 0;
    const char* q = parse_u64(p, end, size);
    if (q == nullptr || size == 0 ||
        size > std::numeric_limits<std::uint32_t>::max()) {
      fail(opt.source, lineno,
           "expected a positive size after rule code '" +
               std::string(1, rule) + "'");
    }
    p = q;

    deps.clear();
    for (;;) {
      const char* ws = skip_ws(p, end);
      if (ws == end) break;
      if (ws == p) {
        fail(opt.source, lineno, "unexpected character '" +
                                     std::string(1, *p) + "' after size");
      }
      p = ws;
      std::uint64_t dep = 0;
      q = parse_u64(p, end, dep);
      if (q == nullptr) {
        fail(opt.source, lineno, "malformed dependency serial");
      }
      if (dep == 0) {
        fail(opt.source, lineno, "dependency serial 0 is invalid");
      }
      if (dep >= serial) {
        fail(opt.source, lineno,
             "forward reference: node " + std::to_string(serial) +
                 " depends on " + std::to_string(dep));
      }
      deps.push_back(static_cast<Serial>(dep));
      p = q;
    }

    builder.add_node(rule, static_cast<std::uint32_t>(size), deps);
  }
  if (in.bad()) {
    throw InputError(opt.source + ": read error");
  }
  return builder.finish();
}

ProofGraph parse_trace_file(const std::string& path, AxiomRules rules) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  TraceParseOptions opt;
  opt.axiom_rules = rules;
  opt.source = path;
  return parse_trace(in, opt);
}

void write_trace(const ProofGraph& g, std::ostream& out) {
  std::string buf;
  constexpr std::size_t kFlush = 1 << 20;
  buf.reserve(kFlush + 256);
  char num[24];
  const std::size_t n = g.node_count();
  for (std::size_t i = 1; i <= n; ++i) {
    const Serial s = static_cast<Serial>(i);
    buf.push_back(g.rule(s));
    auto r = std::to_chars(num, num + sizeof num, g.size_of(s));
    buf.append(num, r.ptr);
    for (Serial d : g.deps(s)) {
      buf.push_back(' ');
      r = std::to_chars(num, num + sizeof num, d);
      buf.append(num, r.ptr);
    }
    buf.push_back('\n');
    if (buf.size() >= kFlush) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

namespace {

// Shared line shape of the sidecar files: serial, separator, payload.
// Payload handling differs per kind, so it arrives as a callback.
template <typename Insert>
void parse_sidecar_lines(std::istream& in, std::size_t node_count,
                         const std::string& source, char separator,
                         const char* payload_name, Insert insert) {
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const char* p = line.data();
    const char* end = p + line.size();
    if (separator == ' ') p = skip_ws(p, end);
    if (p == end) continue;

    std::uint64_t serial = 0;
    const char* q = parse_u64(p, end, serial);
    if (q == nullptr) {
      fail(source, lineno, "expected a serial");
    }
    if (serial == 0 || serial > node_count) {
      fail(source, lineno,
           "serial " + std::to_string(serial) + " not in graph (1.." +
               std::to_string(node_count) + ")");
    }
    p = q;
    if (separator == ' ') {
      const char* ws = skip_ws(p, end);
      if (ws == p || ws == end) {
        fail(source, lineno,
             std::string("missing ") + payload_name + " after serial");
      }
      p = ws;
    } else {
      if (p == end || *p != separator) {
        fail(source, lineno,
             std::string("expected a tab before the ") + payload_name);
      }
      ++p;
    }
    insert(static_cast<Serial>(serial), std::string(p, end));
  }
  if (in.bad()) {
    throw InputError(source + ": read error");
  }
}

}  // namespace

NamedSet parse_names(std::istream& in, std::size_t node_count,
                     const std::string& source,
                     std::uint64_t* duplicate_warnings) {
  NamedSet out;
  parse_sidecar_lines(in, node_count, source, ' ', "name",
                      [&](Serial s, std::string name) {
                        if (out.contains(s) && duplicate_warnings) {
                          ++*duplicate_warnings;
                        }
                        out.add(s, std::move(name));
                      });
  return out;
}

KeyMap parse_keys(std::istream& in, std::size_t node_count,
                  const std::string& source,
                  std::uint64_t* duplicate_warnings) {
  KeyMap out;
  parse_sidecar_lines(in, node_count, source, ' ', "key",
                      [&](Serial s, std::string key) {
                        auto [it, fresh] = out.insert_or_assign(
                            s, std::move(key));
                        if (!fresh && duplicate_warnings) {
                          ++*duplicate_warnings;
                        }
                      });
  return out;
}

StatementMap parse_statements(std::istream& in, std::size_t node_count,
                              const std::string& source,
                              std::uint64_t* duplicate_warnings) {
  StatementMap out;
  parse_sidecar_lines(in, node_count, source, '\t', "statement",
                      [&](Serial s, std::string text) {
                        auto [it, fresh] = out.insert_or_assign(
                            s, std::move(text));
                        if (!fresh && duplicate_warnings) {
                          ++*duplicate_warnings;
                        }
                      });
  return out;
}

Sidecars parse_sidecars(const SidecarPaths& paths, std::size_t node_count) {
  Sidecars out;
  auto open = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return in;
  };
  if (!paths.names.empty()) {
    auto in = open(paths.names);
    out.names =
        parse_names(in, node_count, paths.names, &out.duplicate_warnings);
  }
  if (!paths.raw_keys.empty()) {
    auto in = open(paths.raw_keys);
    out.raw_keys =
        parse_keys(in, node_count, paths.raw_keys, &out.duplicate_warnings);
  }
  if (!paths.alpha_keys.empty()) {
    auto in = open(paths.alpha_keys);
    out.alpha_keys = parse_keys(in, node_count, paths.alpha_keys,
                                &out.duplicate_warnings);
  }
  if (!paths.statements.empty()) {
    auto in = open(paths.statements);
    out.statements = parse_statements(in, node_count, paths.statements,
                                      &out.duplicate_warnings);
  }
  return out;
}

}  // namespace lemmaforge
