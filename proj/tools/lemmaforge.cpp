// Command-line front end. Every subcommand is a thin wrapper over one
// library operation; all file outputs go through AtomicFile so an
// interrupted run never leaves a truncated artifact behind.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lemmaforge/dedup.hpp"
#include "lemmaforge/knn.hpp"
#include "lemmaforge/pagerank.hpp"
#include "lemmaforge/proof_graph.hpp"
#include "lemmaforge/quality.hpp"
#include "lemmaforge/scenario.hpp"
#include "lemmaforge/selection.hpp"
#include "lemmaforge/trace_io.hpp"
#include "lemmaforge/util.hpp"

namespace fs = std::filesystem;
using namespace lemmaforge;

namespace {

struct CommonOpts {
  std::string trace;
  std::string axiom_rules = "F";
  std::string names;
};

struct PrOpts {
  double damping = 0.85;
  double tolerance = 1e-9;
  int max_iterations = 200;
  int threads = 0;

  PageRankConfig config() const {
    PageRankConfig cfg;
    cfg.damping = damping;
    cfg.tolerance = tolerance;
    cfg.max_iterations = max_iterations;
    cfg.threads = resolve_threads(threads);
    return cfg;
  }
};

void add_pr_options(CLI::App* sub, PrOpts& o) {
  sub->add_option("--damping", o.damping, "pagerank damping factor");
  sub->add_option("--tol", o.tolerance, "pagerank L1 stopping tolerance");
  sub->add_option("--max-iters", o.max_iterations,
                  "pagerank iteration limit");
  sub->add_option("--threads", o.threads,
                  "worker threads (0: LEMMAFORGE_THREADS or all cores)");
}

ProofGraph load_trace(const CommonOpts& o) {
  return parse_trace_file(o.trace, AxiomRules::of(o.axiom_rules));
}

NamedSet load_names(const std::string& path, std::size_t node_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return parse_names(in, node_count, path);
}

// stdout when path is empty, atomic file otherwise.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  AtomicFile file(path);
  file.stream() << content;
  file.commit();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory " + dir);
}

std::string problem_filename(const Problem& p) {
  std::string name = std::to_string(p.conjecture);
  if (p.slice >= 0) name += ".s" + std::to_string(p.slice);
  return name + ".p";
}

void write_problem_file(const std::string& dir, const Problem& p,
                        const NamedSet* names) {
  AtomicFile file((fs::path(dir) / problem_filename(p)).string());
  write_problem(p, names, file.stream());
  file.commit();
}

// ---- stats ----

struct StatsOpts : CommonOpts {};

void run_stats(const StatsOpts& o) {
  const ProofGraph g = load_trace(o);
  const GraphStats st = graph_stats(g);
  std::cout << "nodes " << st.nodes << " edges " << st.edges << " roots "
            << st.roots << "\n";
}

// ---- rank ----

struct RankOpts : CommonOpts {
  std::string metric = "q1";
  std::string output;
  PrOpts pr;
};

std::string rank_tsv(const ProofGraph& g, const NamedSet& named,
                     const Metric& metric, const PageRankConfig& prcfg) {
  QualityScores qs;
  qs.D = compute_D(g, named);
  qs.U = compute_U(g, named);
  qs.L = compute_L(g, named);
  qs.score = metric_scores(g, named, metric, prcfg);
  const auto ranked = rank_nodes(g, qs);

  std::string out = "rank\tserial\tscore\tD\tU\tL\tS\n";
  out.reserve(out.size() + ranked.size() * 48);
  std::uint64_t rank = 0;
  for (const RankedNode& r : ranked) {
    ++rank;
    out += std::to_string(rank);
    out += '\t';
    out += std::to_string(r.serial);
    out += '\t';
    out += format_double(r.score);
    out += '\t';
    out += format_double(r.D);
    out += '\t';
    out += format_double(r.U);
    out += '\t';
    out += std::to_string(r.L);
    out += '\t';
    out += std::to_string(r.S);
    out += '\n';
  }
  return out;
}

void run_rank(const RankOpts& o) {
  const Metric metric = parse_metric(o.metric);
  const ProofGraph g = load_trace(o);
  NamedSet named;
  if (!o.names.empty()) named = load_names(o.names, g.node_count());
  emit(o.output, rank_tsv(g, named, metric, o.pr.config()));
}

// ---- select ----

struct SelectOpts : CommonOpts {
  std::string metric = "q1";
  std::size_t count = 0;
  bool from_scratch = false;
  std::string output;
  PrOpts pr;
};

void run_select(const SelectOpts& o) {
  const Metric metric = parse_metric(o.metric);
  const ProofGraph g = load_trace(o);
  NamedSet named0;
  if (!o.from_scratch) {
    if (o.names.empty()) {
      throw InputError("select needs --named or --from-scratch");
    }
    named0 = load_names(o.names, g.node_count());
  }
  const SelectionRun run =
      select_best(g, metric, named0, o.count, o.pr.config());
  std::string out;
  for (const auto& [s, score] : run.chosen) {
    out += std::to_string(s);
    out += " NEWDEP";
    out += std::to_string(s);
    out += '\n';
  }
  emit(o.output, out);
  if (run.truncated) {
    std::cerr << "note: only " << run.chosen.size() << " of " << o.count
              << " requested lemmas were eligible\n";
  }
}

// ---- dedup ----

struct DedupOpts : CommonOpts {
  std::string raw_keys;
  std::string alpha_keys;
  std::string statements;
  std::string out_dir;
  std::string scope = "global";
  std::string keys = "raw";
  bool pipeline = false;
  bool drop_named_duplicates = false;
};

void write_stage(const std::string& dir, const std::string& stem,
                 const DedupResult& res, std::size_t old_node_count) {
  AtomicFile trace_file((fs::path(dir) / (stem + ".trace")).string());
  write_trace(res.graph, trace_file.stream());
  trace_file.commit();

  AtomicFile map_file((fs::path(dir) / (stem + ".map")).string());
  for (std::size_t i = 1; i <= old_node_count; ++i) {
    map_file.stream() << i << ' '
                      << res.map_old_to_new(static_cast<Serial>(i)) << '\n';
  }
  map_file.commit();

  const Sidecars& sc = res.sidecars;
  if (!sc.names.empty()) {
    AtomicFile f((fs::path(dir) / (stem + ".names")).string());
    for (const auto& [s, name] :
         std::map<Serial, std::string>(sc.names.entries().begin(),
                                       sc.names.entries().end())) {
      f.stream() << s << ' ' << name << '\n';
    }
    f.commit();
  }
  auto write_keys = [&](const KeyMap& km, const char* suffix) {
    if (km.empty()) return;
    AtomicFile f((fs::path(dir) / (stem + suffix)).string());
    for (const auto& [s, key] : std::map<Serial, std::string>(km.begin(),
                                                              km.end())) {
      f.stream() << s << ' ' << key << '\n';
    }
    f.commit();
  };
  write_keys(sc.raw_keys, ".raw-keys");
  write_keys(sc.alpha_keys, ".alpha-keys");
  if (!sc.statements.empty()) {
    AtomicFile f((fs::path(dir) / (stem + ".statements")).string());
    for (const auto& [s, text] :
         std::map<Serial, std::string>(sc.statements.begin(),
                                       sc.statements.end())) {
      f.stream() << s << '\t' << text << '\n';
    }
    f.commit();
  }
}

void run_dedup(const DedupOpts& o) {
  const ProofGraph g = load_trace(o);
  SidecarPaths paths;
  paths.names = o.names;
  paths.raw_keys = o.raw_keys;
  paths.alpha_keys = o.alpha_keys;
  paths.statements = o.statements;
  const Sidecars sidecars = parse_sidecars(paths, g.node_count());
  ensure_dir(o.out_dir);

  if (o.pipeline) {
    const DedupPipeline p = dedup_pipeline(g, sidecars);
    write_stage(o.out_dir, "trace0", p.trace0, g.node_count());
    write_stage(o.out_dir, "trace1", p.trace1, p.trace0.graph.node_count());
    write_stage(o.out_dir, "trace2", p.trace2, p.trace1.graph.node_count());
    std::cerr << "trace0 " << p.trace0.graph.node_count() << " trace1 "
              << p.trace1.graph.node_count() << " trace2 "
              << p.trace2.graph.node_count() << " nodes\n";
    return;
  }

  DedupSpec spec;
  if (o.scope == "segment") {
    spec.scope = DedupScope::Segment;
  } else if (o.scope == "global") {
    spec.scope = DedupScope::Global;
  } else {
    throw InputError("unknown scope '" + o.scope +
                     "' (expected segment or global)");
  }
  if (o.keys == "raw") {
    spec.key_kind = KeyKind::Raw;
  } else if (o.keys == "alpha") {
    spec.key_kind = KeyKind::Alpha;
  } else {
    throw InputError("unknown key kind '" + o.keys +
                     "' (expected raw or alpha)");
  }
  spec.keep_named_duplicates = !o.drop_named_duplicates;
  const DedupResult res = dedup(g, sidecars, spec);
  write_stage(o.out_dir, "dedup", res, g.node_count());
  std::cerr << "removed " << res.removed << " of " << g.node_count()
            << " nodes\n";
}

// ---- scenario ----

struct ScenarioOpts : CommonOpts {
  std::string mode;
  std::string new_names;
  std::string out_dir;
  std::string metric = "q1";
  std::size_t count = 0;
  std::size_t stride = 10;
  PrOpts pr;
};

void write_derived_file(const std::string& dir, const DerivedGraph& dg) {
  AtomicFile f((fs::path(dir) / "derived.graph").string());
  write_derived_graph(dg, f.stream());
  f.commit();
}

void run_scenario(const ScenarioOpts& o) {
  const ProofGraph g = load_trace(o);
  if (o.names.empty()) throw InputError("scenario needs --named");
  const NamedSet orig = load_names(o.names, g.node_count());
  ensure_dir(o.out_dir);

  if (o.mode == "cheating") {
    const DerivedGraph dg = derive(g, orig);
    write_derived_file(o.out_dir, dg);
    for (const Problem& p : export_parents(dg)) {
      write_problem_file(o.out_dir, p, &orig);
    }
  } else if (o.mode == "almost-honest") {
    if (o.new_names.empty()) {
      throw InputError("almost-honest needs --new-names");
    }
    const NamedSet next = load_names(o.new_names, g.node_count());
    const DerivedGraph dg = almost_honest(g, orig, next);
    write_derived_file(o.out_dir, dg);
    for (const Problem& p : export_parents(dg)) {
      write_problem_file(o.out_dir, p, &next);
    }
  } else if (o.mode == "fully-honest") {
    const Metric metric = parse_metric(o.metric);
    const auto entries = fully_honest_schedule(g, orig, metric, o.count,
                                               o.stride, o.pr.config());
    for (const FullyHonestEntry& e : entries) {
      NamedSet annot = orig;
      std::string lemmas;
      for (const auto& [s, score] : e.run.chosen) {
        annot.add(s, "NEWDEP" + std::to_string(s));
        lemmas += std::to_string(s);
        lemmas += " NEWDEP";
        lemmas += std::to_string(s);
        lemmas += '\n';
      }
      write_problem_file(o.out_dir, e.problem, &annot);
      AtomicFile f((fs::path(o.out_dir) /
                    (std::to_string(e.theorem) + ".lemmas"))
                       .string());
      f.stream() << lemmas;
      f.commit();
    }
  } else {
    throw InputError("unknown mode '" + o.mode +
                     "' (expected cheating, almost-honest or fully-honest)");
  }
}

// ---- advise ----

struct AdviseOpts {
  std::string statements;
  std::string derived;
  std::string out_dir;
  std::size_t k = 40;
  std::vector<std::size_t> slices;
};

void run_advise(const AdviseOpts& o) {
  std::ifstream stf(o.statements, std::ios::binary);
  if (!stf) throw InputError("cannot open " + o.statements);
  // No trace is involved here, so any serial that fits the type passes.
  const StatementMap statements = parse_statements(
      stf, std::numeric_limits<Serial>::max(), o.statements);

  std::ifstream dgf(o.derived, std::ios::binary);
  if (!dgf) throw InputError("cannot open " + o.derived);
  const DerivedGraph dg = parse_derived_graph(dgf, o.derived);

  if (o.slices.empty()) throw InputError("advise needs --slices");
  ensure_dir(o.out_dir);

  const ChronoProblems result =
      chrono_eval(statements, dg, o.k, o.slices);
  for (const auto& per_slice : result.problems) {
    for (const Problem& p : per_slice) {
      write_problem_file(o.out_dir, p, nullptr);
    }
  }
  if (result.skipped_missing_statement > 0) {
    std::cerr << "note: skipped " << result.skipped_missing_statement
              << " theorems without statements\n";
  }
}

// ---- chains ----

struct ChainsOpts {
  std::vector<std::string> rounds;
  std::vector<std::string> problem_dirs;
};

void run_chains(const ChainsOpts& o) {
  if (o.rounds.size() != o.problem_dirs.size()) {
    throw InputError("--rounds and --problems must list one entry per round");
  }
  std::vector<std::vector<Problem>> problems;
  std::vector<std::vector<Serial>> solved;
  for (std::size_t k = 0; k < o.rounds.size(); ++k) {
    std::ifstream sf(o.rounds[k], std::ios::binary);
    if (!sf) throw InputError("cannot open " + o.rounds[k]);
    solved.push_back(parse_solved_set(sf, o.rounds[k]));

    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry :
         fs::directory_iterator(o.problem_dirs[k], ec)) {
      if (entry.path().extension() == ".p") files.push_back(entry.path());
    }
    if (ec) {
      throw InputError("cannot read directory " + o.problem_dirs[k]);
    }
    std::sort(files.begin(), files.end());
    std::vector<Problem> round;
    for (const fs::path& f : files) {
      std::ifstream pf(f, std::ios::binary);
      if (!pf) throw InputError("cannot open " + f.string());
      round.push_back(parse_problem(pf, f.string()));
    }
    problems.push_back(std::move(round));
  }

  const ChainTable table = chain_levels(problems, solved);
  for (const auto& [t, lvl] : table.levels) {
    std::cout << t << '\t';
    if (lvl == ChainTable::kUnsolved) {
      std::cout << "unsolved";
    } else {
      std::cout << lvl;
    }
    std::cout << '\n';
  }
  for (const std::string& w : table.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  const auto hist = table.histogram();
  std::uint64_t unsolved = 0;
  for (const auto& [t, lvl] : table.levels) {
    if (lvl == ChainTable::kUnsolved) ++unsolved;
  }
  std::cerr << "histogram:";
  for (std::size_t k = 0; k < hist.size(); ++k) {
    std::cerr << ' ' << k << ':' << hist[k];
  }
  std::cerr << " unsolved:" << unsolved << '\n';
}

void add_common(CLI::App* sub, CommonOpts& o, bool names_required = false) {
  sub->add_option("trace", o.trace, "trace file")->required();
  sub->add_option("--axiom-rules", o.axiom_rules,
                  "rule codes classed as axioms");
  auto* named = sub->add_option("--named", o.names, "names sidecar file");
  if (names_required) named->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof-trace lemma mining toolkit"};
  app.require_subcommand(1);

  StatsOpts stats_opts;
  auto* stats_cmd =
      app.add_subcommand("stats", "print node, edge and root counts");
  add_common(stats_cmd, stats_opts);
  stats_cmd->callback([&] { run_stats(stats_opts); });

  RankOpts rank_opts;
  auto* rank_cmd =
      app.add_subcommand("rank", "score every node and emit a ranked TSV");
  add_common(rank_cmd, rank_opts);
  rank_cmd->add_option("--metric", rank_opts.metric,
                       "q1|q2|q3:<b>|qr:<r>|eq1|eq2|pr1..pr6|mc1|mc2");
  rank_cmd->add_option("-o,--output", rank_opts.output,
                       "output file (stdout when absent)");
  add_pr_options(rank_cmd, rank_opts.pr);
  rank_cmd->callback([&] { run_rank(rank_opts); });

  SelectOpts select_opts;
  auto* select_cmd = app.add_subcommand(
      "select", "greedily pick the best lemmas as a names-file fragment");
  add_common(select_cmd, select_opts);
  select_cmd->add_option("--metric", select_opts.metric, "metric designator");
  select_cmd->add_option("--count", select_opts.count, "lemmas to select")
      ->required();
  select_cmd->add_flag("--from-scratch", select_opts.from_scratch,
                       "start from an empty named set");
  select_cmd->add_option("-o,--output", select_opts.output,
                         "output file (stdout when absent)");
  add_pr_options(select_cmd, select_opts.pr);
  select_cmd->callback([&] { run_select(select_opts); });

  DedupOpts dedup_opts;
  auto* dedup_cmd = app.add_subcommand(
      "dedup", "merge equal-key lemmas and rewrite the trace");
  add_common(dedup_cmd, dedup_opts);
  dedup_cmd->add_option("--raw-keys", dedup_opts.raw_keys,
                        "raw content key sidecar");
  dedup_cmd->add_option("--alpha-keys", dedup_opts.alpha_keys,
                        "variable-normalized key sidecar");
  dedup_cmd->add_option("--statements", dedup_opts.statements,
                        "statements sidecar");
  dedup_cmd->add_option("--out-dir", dedup_opts.out_dir, "output directory")
      ->required();
  dedup_cmd->add_option("--scope", dedup_opts.scope, "segment|global");
  dedup_cmd->add_option("--keys", dedup_opts.keys, "raw|alpha");
  dedup_cmd->add_flag("--pipeline", dedup_opts.pipeline,
                      "run the trace0/trace1/trace2 pipeline");
  dedup_cmd->add_flag("--drop-named-duplicates",
                      dedup_opts.drop_named_duplicates,
                      "delete named duplicates too");
  dedup_cmd->callback([&] { run_dedup(dedup_opts); });

  ScenarioOpts scenario_opts;
  auto* scenario_cmd = app.add_subcommand(
      "scenario", "export prover problems for an evaluation scenario");
  add_common(scenario_cmd, scenario_opts, true);
  scenario_cmd
      ->add_option("--mode", scenario_opts.mode,
                   "cheating|almost-honest|fully-honest")
      ->required();
  scenario_cmd->add_option("--new-names", scenario_opts.new_names,
                           "extended names file (almost-honest)");
  scenario_cmd
      ->add_option("--out-dir", scenario_opts.out_dir, "output directory")
      ->required();
  scenario_cmd->add_option("--metric", scenario_opts.metric,
                           "metric designator (fully-honest)");
  scenario_cmd->add_option("--count", scenario_opts.count,
                           "lemmas per selection run (fully-honest)");
  scenario_cmd->add_option("--stride", scenario_opts.stride,
                           "schedule every stride-th theorem (fully-honest)");
  add_pr_options(scenario_cmd, scenario_opts.pr);
  scenario_cmd->callback([&] { run_scenario(scenario_opts); });

  AdviseOpts advise_opts;
  auto* advise_cmd = app.add_subcommand(
      "advise", "k-NN premise advice replayed chronologically");
  advise_cmd
      ->add_option("--statements", advise_opts.statements,
                   "statements sidecar")
      ->required();
  advise_cmd
      ->add_option("--derived", advise_opts.derived, "derived-graph file")
      ->required();
  advise_cmd
      ->add_option("--out-dir", advise_opts.out_dir, "output directory")
      ->required();
  advise_cmd->add_option("--k", advise_opts.k, "neighbor count");
  advise_cmd->add_option("--slices", advise_opts.slices,
                         "premise-count slices, e.g. 32,128,512")
      ->delimiter(',')
      ->required();
  advise_cmd->callback([&] { run_advise(advise_opts); });

  ChainsOpts chains_opts;
  auto* chains_cmd = app.add_subcommand(
      "chains", "chain levels from per-round problems and solved sets");
  chains_cmd
      ->add_option("--rounds", chains_opts.rounds,
                   "solved-set file per round, comma separated")
      ->delimiter(',')
      ->required();
  chains_cmd
      ->add_option("--problems", chains_opts.problem_dirs,
                   "problem directory per round, comma separated")
      ->delimiter(',')
      ->required();
  chains_cmd->callback([&] { run_chains(chains_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
