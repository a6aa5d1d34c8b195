#include <sstream>
#include <string>

#include "doctest.h"
#include "lemmaforge/trace_io.hpp"
#include "testutil.hpp"

using namespace lemmaforge;
using namespace lemmaforge::test;

namespace {

ProofGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

std::string written(const ProofGraph& g) {
  std::ostringstream out;
  write_trace(g, out);
  return out.str();
}

}  // namespace

TEST_CASE("the commented trace excerpt parses to the seven-node fixture") {
  const ProofGraph g = parse_trace_file(fixture_path("fig1.trace"));
  CHECK(g.same_nodes(g7()));
  CHECK(g.rule(5) == 'C');
  CHECK(g.size_of(5) == 17);
  REQUIRE(g.deps(5).size() == 2);
  CHECK(g.deps(5)[0] == 4);
  CHECK(g.deps(5)[1] == 1);
  CHECK(g.is_axiom(1));
}

TEST_CASE("single lines parse to the expected nodes") {
  const ProofGraph g = parse("R9\n");
  CHECK(g.node_count() == 1);
  CHECK(g.rule(1) == 'R');
  CHECK(g.size_of(1) == 9);
  CHECK(g.deps(1).empty());

  // A late node with far-back references, as in tactical traces.
  std::string text;
  for (int i = 0; i < 3377; ++i) text += "R1\n";
  text += "X29 3377 3371\n";
  const ProofGraph t = parse(text);
  CHECK(t.node_count() == 3378);
  CHECK(t.rule(3378) == 'X');
  CHECK(t.size_of(3378) == 29);
  REQUIRE(t.deps(3378).size() == 2);
  CHECK(t.deps(3378)[0] == 3377);
  CHECK(t.deps(3378)[1] == 3371);
}

TEST_CASE("blank and comment-only lines consume no serial") {
  const ProofGraph g = parse("R1\n\n   \n# nothing here\nC2 1\n");
  CHECK(g.node_count() == 2);
  CHECK(g.deps(2)[0] == 1);
}

TEST_CASE("carriage returns are tolerated") {
  const ProofGraph g = parse("R1\r\nC2 1\r\n");
  CHECK(g.node_count() == 2);
  CHECK(g.rule(2) == 'C');
}

TEST_CASE("parse errors name the source and line") {
  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    TraceParseOptions opt;
    opt.source = "input.trace";
    try {
      parse_trace(in, opt);
      return std::string();
    } catch (const InputError& e) {
      return std::string(e.what());
    }
  };

  SUBCASE("forward reference") {
    const std::string msg = error_of("R1\nR1\nC5 9\n");
    CHECK(msg.find("input.trace:3") != std::string::npos);
    CHECK(msg.find("forward reference") != std::string::npos);
  }
  SUBCASE("self reference") {
    CHECK(error_of("R1\nC5 2\n").find("forward reference") !=
          std::string::npos);
  }
  SUBCASE("dep zero") {
    CHECK(error_of("R1\nC5 0\n").find(":2") != std::string::npos);
  }
  SUBCASE("digit instead of rule code") {
    const std::string msg = error_of("17 4\n");
    CHECK(msg.find("rule code") != std::string::npos);
  }
  SUBCASE("missing size") {
    CHECK_FALSE(error_of("C\n").empty());
    CHECK_FALSE(error_of("C 1\n").empty());
  }
  SUBCASE("zero size") {
    CHECK_FALSE(error_of("C0\n").empty());
  }
  SUBCASE("malformed dep token") {
    CHECK_FALSE(error_of("R1\nC5 1x\n").empty());
  }
  SUBCASE("unprintable rule byte") {
    CHECK_FALSE(error_of("\x01" "5\n").empty());
  }
}

TEST_CASE("write_trace emits the canonical form") {
  CHECK(written(g7()) == "F13\nR9\nR5\nR5\nC17 4 1\nC21 5 3\nE13 6 3\n");
  CHECK(written(GraphBuilder().finish()).empty());
  CHECK(written(g2()) == "F10\nC5 1\n");
}

TEST_CASE("write then parse is the identity on random graphs") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 30; ++iter) {
    const ProofGraph g = random_graph(rng, 150);
    const ProofGraph back = parse(written(g));
    CHECK(back.same_nodes(g));
  }
}

TEST_CASE("parse_trace_file reports unreadable paths") {
  CHECK_THROWS_WITH_AS(parse_trace_file("/nonexistent/missing.trace"),
                       doctest::Contains("cannot open"), InputError);
}

TEST_CASE("names sidecar maps serials to names") {
  std::istringstream in("7 TRUTH_ALPHA\n");
  const NamedSet names = parse_names(in, 7, "g7.names");
  CHECK(names.size() == 1);
  REQUIRE(names.name_of(7) != nullptr);
  CHECK(*names.name_of(7) == "TRUTH_ALPHA");
  CHECK(names.contains(7));
  CHECK_FALSE(names.contains(6));
}

TEST_CASE("names sidecar validates serial range") {
  std::istringstream in("9 X\n");
  try {
    parse_names(in, 7, "bad.names");
    FAIL("expected an error");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.names:1") != std::string::npos);
  }

  std::istringstream zero("0 X\n");
  CHECK_THROWS_AS(parse_names(zero, 7, "bad.names"), InputError);
}

TEST_CASE("duplicate sidecar serials warn and keep the last value") {
  std::istringstream in("3 FIRST\n3 SECOND\n");
  std::uint64_t warnings = 0;
  const NamedSet names = parse_names(in, 7, "dup.names", &warnings);
  CHECK(warnings == 1);
  CHECK(*names.name_of(3) == "SECOND");
}

TEST_CASE("key sidecars are opaque equality-only strings") {
  std::istringstream in("3 ab12\n4 ab12\n5 ff00\n");
  const KeyMap keys = parse_keys(in, 7, "keys");
  CHECK(keys.at(3) == keys.at(4));
  CHECK(keys.at(5) != keys.at(3));
  CHECK(keys.size() == 3);
}

TEST_CASE("missing payload after a sidecar serial is an error") {
  std::istringstream in("3\n");
  CHECK_THROWS_AS(parse_names(in, 7, "x"), InputError);
  std::istringstream in2("3 \n");
  CHECK_THROWS_AS(parse_names(in2, 7, "x"), InputError);
}

TEST_CASE("statements are tab-separated and keep interior spaces") {
  std::istringstream in("2\tMAP f (APPEND l1 l2)\n5\t!x. x = x\n");
  const StatementMap st = parse_statements(in, 7, "st");
  CHECK(st.at(2) == "MAP f (APPEND l1 l2)");
  CHECK(st.at(5) == "!x. x = x");

  std::istringstream spacey("2 not tab separated\n");
  CHECK_THROWS_AS(parse_statements(spacey, 7, "st"), InputError);
}

TEST_CASE("parse_sidecars loads only the given paths") {
  TempDir dir;
  {
    std::ofstream names(dir.file("t.names"));
    names << "7 TRUTH_ALPHA\n";
    std::ofstream keys(dir.file("t.raw"));
    keys << "3 aa\n4 aa\n";
  }
  SidecarPaths paths;
  paths.names = dir.file("t.names");
  paths.raw_keys = dir.file("t.raw");
  const Sidecars sc = parse_sidecars(paths, 7);
  CHECK(sc.names.size() == 1);
  CHECK(sc.raw_keys.size() == 2);
  CHECK(sc.alpha_keys.empty());
  CHECK(sc.statements.empty());

  const Sidecars none = parse_sidecars(SidecarPaths{}, 7);
  CHECK(none.names.empty());

  SidecarPaths missing;
  missing.names = dir.file("absent.names");
  CHECK_THROWS_AS(parse_sidecars(missing, 7), InputError);
}
