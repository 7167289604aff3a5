#include <algorithm>
#include <atomic>
#include <exception>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include <CLI11.hpp>

#include "mobench/cli.hpp"
#include "mobench/error.hpp"
#include "mobench/metrics.hpp"
#include "mobench/report.hpp"
#include "mobench/taskgen.hpp"
#include "mobench/text.hpp"

namespace mobench::cli {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next++;
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t count = std::max<std::size_t>(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::unique_ptr<AgentBackend> make_text_backend(const BackendSpec& spec, std::vector<std::unique_ptr<AgentBackend>>& keep) {
  if (spec.kind == "script") return std::make_unique<ScriptedBackend>(spec.label, spec.outputs);
  if (spec.kind == "http") {
    auto http = std::make_unique<HttpBackend>(spec.http);
    if (spec.cache_dir.empty()) return http;
    auto cached = std::make_unique<CachingBackend>(*http, spec.cache_dir);
    keep.push_back(std::move(http));
    return cached;
  }
  throw Error(Errc::config_error, "unsupported backend kind '" + spec.kind + "'");
}

struct GraphCache {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const SnapshotGraph>> graphs;

  std::shared_ptr<const SnapshotGraph> get(const TaskSpec& task, const std::optional<std::filesystem::path>& override) {
    std::string path = override ? override->string() : task.graph;
    if (path.empty()) throw Error(Errc::config_error, "task " + task.id + " names no snapshot graph");
    std::lock_guard lock(mu);
    auto& slot = graphs[path];
    if (!slot) slot = std::make_shared<const SnapshotGraph>(load_snapshot_graph_file(path));
    return slot;
  }
};

bool is_backend_failure(const std::string& error) {
  return starts_with(error, errc_name(Errc::backend_unavailable));
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::backend_unavailable:
    case Errc::empty_response:
      return kExitBackend;
    default:
      return kExitConfig;
  }
}

std::filesystem::path trajectory_root(const std::filesystem::path& dir) {
  std::error_code ec;
  if (std::filesystem::is_directory(dir / "trajectories", ec)) return dir / "trajectories";
  return dir;
}

}  // namespace

AgentHandle make_agent(const BackendSpec& spec, std::uint64_t run_seed) {
  AgentHandle h;
  const std::string label = spec.label.empty() ? spec.kind : spec.label;
  if (spec.kind == "gold") {
    h.agent = std::make_unique<GoldAgent>(label);
  } else if (spec.kind == "prefix") {
    h.agent = std::make_unique<PrefixAgent>(label, spec.fraction);
  } else if (spec.kind == "plan") {
    h.agent = std::make_unique<PlanAgent>(label, spec.plans);
  } else if (spec.kind == "script") {
    h.agent = std::make_unique<ScriptAgent>(label, spec.scripts);
  } else if (spec.kind == "random") {
    h.agent = std::make_unique<RandomAgent>(label, spec.seed.value_or(run_seed));
  } else if (spec.kind == "http") {
    h.backends.push_back(make_text_backend(spec, h.backends));
    h.agent = std::make_unique<LlmAgent>(*h.backends.back());
  } else {
    throw Error(Errc::config_error, "unknown agent kind '" + spec.kind + "'");
  }
  return h;
}

JudgeHandle make_judge(const BackendSpec& spec) {
  JudgeHandle h;
  if (spec.kind == "yes") {
    h.judge = std::make_unique<ScriptedJudge>("Yes");
  } else if (spec.kind == "no") {
    h.judge = std::make_unique<ScriptedJudge>("No");
  } else if (spec.kind == "script") {
    h.judge = std::make_unique<ScriptedJudge>(spec.reply, spec.verdicts);
  } else if (spec.kind == "oracle") {
    h.judge = std::make_unique<OracleJudge>();
  } else if (spec.kind == "http") {
    h.backends.push_back(make_text_backend(spec, h.backends));
    h.judge = std::make_unique<BackendJudge>(*h.backends.back());
  } else {
    throw Error(Errc::config_error, "unknown judge kind '" + spec.kind + "'");
  }
  return h;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate_run_config(config);
  const auto tasks = load_task_file(config.tasks, true);
  GraphCache graphs;
  for (const auto& t : tasks) graphs.get(t, config.graph);

  std::vector<AgentHandle> agents;
  for (const auto& spec : config.agents) agents.push_back(make_agent(spec, config.seed));
  auto judge = make_judge(config.judge);

  const std::size_t n = agents.size() * tasks.size();
  std::vector<std::vector<Trajectory>> results(n);
  std::vector<std::string> failures(n);
  std::mutex log_mu;
  std::atomic<std::size_t> done{0};

  const auto run_item = [&](std::size_t i) {
    auto& agent = *agents[i / tasks.size()].agent;
    const auto& task = tasks[i % tasks.size()];
    Environment env(graphs.get(task, config.graph), config.policy);
    EpisodeOptions opts;
    opts.exploration = config.exploration;
    opts.context_limit = config.context_limit;
    opts.date = config.date;
    try {
      switch (config.protocol) {
        case Protocol::single:
          results[i].push_back(run_episode(agent, env, task, opts));
          break;
        case Protocol::reexecute:
          results[i] = reexecute_loop(agent, env, task, config.k, *judge.judge, opts).trials;
          break;
        case Protocol::reflexion: {
          std::vector<std::unique_ptr<AgentBackend>> keep;
          auto reflector = make_text_backend(*config.reflector, keep);
          results[i] = reflexion_loop(agent, *reflector, env, task, config.k, *judge.judge, opts).trials;
          break;
        }
      }
    } catch (const Error& e) {
      if (e.code() != Errc::backend_unavailable) throw;
      failures[i] = e.what();
    }
    for (const auto& t : results[i]) {
      write_file_atomic(trajectory_path(config.output_dir, t.agent, t.task_id, t.trial), trajectory_to_jsonl(t));
    }
    std::lock_guard lock(log_mu);
    err << "[" << ++done << "/" << n << "] " << agent.label() << " " << task.id << " "
        << (results[i].empty() ? "error" : std::string(terminal_name(results[i].back().terminal))) << "\n";
  };
  parallel_for(n, config.parallelism, run_item);

  bool backend_failed = false;
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& task = tasks[i % tasks.size()];
    const std::string agent = agents[i / tasks.size()].agent->label();
    nlohmann::ordered_json entry = {{"agent", agent}, {"task_id", task.id}, {"trials", results[i].size()}};
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : results[i]) {
      terms.push_back(std::string(terminal_name(t.terminal)));
      if (t.terminal == Terminal::error && is_backend_failure(t.error)) backend_failed = true;
    }
    entry["terminals"] = terms;
    if (!failures[i].empty()) {
      backend_failed = true;
      entry["error"] = failures[i];
    }
    summary.push_back(entry);
    out << agent << "\t" << task.id << "\t" << results[i].size() << " trial(s)\t"
        << (results[i].empty() ? "error" : std::string(terminal_name(results[i].back().terminal))) << "\n";
  }
  write_file_atomic(config.output_dir / "run_summary.json", summary.dump(2) + "\n");
  return backend_failed ? kExitBackend : kExitOk;
}

int cmd_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& err) {
  const auto root = trajectory_root(args.trajectories);
  std::error_code ec;
  if (!std::filesystem::is_directory(root, ec)) throw Error(Errc::config_error, "no trajectory directory " + root.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  if (files.empty()) throw Error(Errc::config_error, "no trajectory files under " + root.string());
  std::sort(files.begin(), files.end());

  std::map<std::pair<std::string, std::string>, std::vector<Trajectory>> groups;
  for (const auto& f : files) {
    auto t = trajectory_from_jsonl(read_file(f));
    groups[{t.agent, t.task_id}].push_back(std::move(t));
  }
  for (auto& [key, trials] : groups) {
    std::sort(trials.begin(), trials.end(), [](const Trajectory& a, const Trajectory& b) { return a.trial < b.trial; });
  }

  const auto tasks = load_task_file(args.tasks, true);
  std::map<std::string, const TaskSpec*> by_id;
  for (const auto& t : tasks) by_id[t.id] = &t;
  std::set<std::string> warned;
  for (const auto& [key, trials] : groups) {
    auto it = by_id.find(key.second);
    if (it == by_id.end()) throw Error(Errc::config_error, "trajectory for unknown task '" + key.second + "'");
    if (it->second->gold_actions.empty() && warned.insert(key.second).second) {
      err << errc_name(Errc::missing_gold) << ": task " << key.second << " has no gold actions; scoring SR only\n";
    }
  }

  auto judge = make_judge(args.judge);
  ScoringOptions options;
  options.gamma = args.gamma;
  options.normalized = args.normalize_tr;
  options.k = args.k;

  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& [key, trials] : groups) keys.push_back(key);
  std::vector<TaskScore> scores(keys.size());
  parallel_for(keys.size(), args.parallelism, [&](std::size_t i) {
    scores[i] = score_task(*by_id.at(keys[i].second), groups.at(keys[i]), *judge.judge, options);
  });

  GraphCache graphs;
  std::vector<const SnapshotGraph*> graph_list;
  std::vector<std::shared_ptr<const SnapshotGraph>> hold;
  std::set<const SnapshotGraph*> seen_graphs;
  std::vector<TaskSpec> gold_tasks;
  for (const auto& t : tasks) {
    if (t.gold_actions.empty()) continue;
    gold_tasks.push_back(t);
    if (!args.graph && t.graph.empty()) continue;
    auto g = graphs.get(t, args.graph);
    if (seen_graphs.insert(g.get()).second) {
      graph_list.push_back(g.get());
      hold.push_back(g);
    }
  }
  std::vector<AppComplexity> complexity;
  std::set<std::string> app_keys;
  for (const auto& s : scores) app_keys.insert(s.app_key);
  for (const auto& key : app_keys) {
    try {
      auto rows = ir_oc(graph_list, gold_tasks, {key});
      complexity.insert(complexity.end(), rows.begin(), rows.end());
    } catch (const Error& e) {
      if (e.code() != Errc::no_tasks_for_app) throw;
      err << e.what() << "\n";
    }
  }

  const auto report = build_report(std::move(scores), complexity, options, judge.judge->label());
  const auto dir = args.output_dir.empty() ? args.trajectories : args.output_dir;
  const auto text = report_text(report);
  write_file_atomic(dir / "metrics.json", report_to_json(report).dump(2) + "\n");
  write_file_atomic(dir / "metrics.txt", text);
  write_file_atomic(dir / "metrics.csv", report_csv(report));
  out << text;
  return kExitOk;
}

int cmd_report(const std::vector<std::filesystem::path>& reports, const std::filesystem::path& output_dir,
               std::ostream& out, std::ostream&) {
  if (reports.empty()) throw Error(Errc::config_error, "report needs at least one metrics file");
  std::vector<MetricsReport> loaded;
  for (const auto& p : reports) {
    try {
      loaded.push_back(report_from_json(nlohmann::json::parse(read_file(p))));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::config_error, p.string() + ": " + e.what());
    }
  }
  const auto cmp = compare_reports(loaded);
  const auto text = comparison_text(cmp);
  if (!output_dir.empty()) {
    write_file_atomic(output_dir / "comparison.json", comparison_to_json(cmp).dump(2) + "\n");
    write_file_atomic(output_dir / "comparison.txt", text);
  }
  out << text;
  return kExitOk;
}

int cmd_replay(const std::filesystem::path& tasks_file, const std::optional<std::filesystem::path>& graph,
               std::ostream& out, std::ostream&) {
  const auto tasks = load_task_file(tasks_file);
  GraphCache graphs;
  std::size_t failed = 0;
  for (const auto& task : tasks) {
    auto g = graphs.get(task, graph);
    const auto report = replay(g, task, task.gold_actions);
    if (report.first_mismatch) {
      ++failed;
      const auto idx = *report.first_mismatch;
      const auto& step = report.trajectory.steps.at(idx);
      out << "FAIL " << task.id << ": gold action " << idx + 1 << " (" << verb_name(task.gold_actions[idx].verb)
          << " " << task.gold_actions[idx].target << ") has no transition from state " << step.state_id << "\n";
    } else if (task.final_state && *task.final_state != report.final_state) {
      ++failed;
      out << "FAIL " << task.id << ": ended in " << report.final_state << ", expected " << *task.final_state << "\n";
    } else {
      out << "ok   " << task.id << " (" << task.gold_actions.size() << " actions, final state " << report.final_state
          << ")\n";
    }
  }
  if (failed == 0) {
    out << "all gold sequences verified\n";
    return kExitOk;
  }
  out << failed << " of " << tasks.size() << " gold sequences failed verification\n";
  return kExitVerification;
}

int cmd_compress(const std::filesystem::path& xml, bool json, bool stats, std::ostream& out, std::ostream& err) {
  const auto tree = parse_ui_dump(read_file(xml));
  const auto obs = compress(tree);
  if (json) {
    out << observation_to_json(obs).dump(2) << "\n";
  } else {
    out << render(obs);
  }
  if (stats) {
    const auto after = token_count(render(obs));
    err << "raw tokens " << tree.raw_token_count << ", compressed tokens " << after << ", ratio "
        << compression_ratio(static_cast<long long>(tree.raw_token_count), static_cast<long long>(after)) << "\n";
  }
  return kExitOk;
}

int cmd_validate(const std::vector<std::filesystem::path>& files, std::ostream& out, std::ostream&) {
  if (files.empty()) throw Error(Errc::config_error, "validate needs at least one file");
  int code = kExitOk;
  for (const auto& f : files) {
    try {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(f));
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::schema_error, e.what());
      }
      if (doc.is_object() && doc.contains("states")) {
        const auto g = load_snapshot_graph(doc, f.parent_path());
        out << "ok    " << f.string() << ": graph with " << g.states().size() << " states, " << g.transitions().size()
            << " transitions\n";
      } else {
        TaskLoadOptions opts;
        opts.allow_empty_gold = true;
        opts.base_dir = f.parent_path();
        const auto tasks = load_tasks(doc, opts);
        std::set<std::string> graphs;
        for (const auto& t : tasks) {
          if (!t.graph.empty() && graphs.insert(t.graph).second) load_snapshot_graph_file(t.graph);
        }
        out << "ok    " << f.string() << ": " << tasks.size() << " tasks\n";
      }
    } catch (const Error& e) {
      out << "error " << f.string() << ": " << e.what() << "\n";
      code = kExitConfig;
    }
  }
  return code;
}

int cmd_taskgen(const TaskgenArgs& args, std::ostream& out, std::ostream&) {
  if (args.apps.empty() || args.apps.size() > 2) {
    throw Error(Errc::arity_error, "taskgen takes one or two apps, got " + std::to_string(args.apps.size()));
  }
  std::vector<EvolveMode> modes;
  for (const auto& m : args.modes) modes.push_back(evolve_mode_from_name(m));

  std::vector<std::unique_ptr<AgentBackend>> keep;
  std::unique_ptr<AgentBackend> backend;
  if (args.backend.kind == "template") {
    backend = std::make_unique<TemplateTaskgenBackend>();
  } else {
    backend = make_text_backend(args.backend, keep);
  }

  const auto index = load_corpus(args.corpus);
  const auto functionalities = extract_functionalities(args.apps, index, *backend, args.top_k);
  const auto app_text = join(args.apps, " and ");
  std::vector<TaskCandidate> candidates;
  for (const auto& f : functionalities) {
    for (auto& instruction : generate_instructions(app_text, f, *backend)) {
      TaskCandidate c;
      c.instruction = std::move(instruction);
      c.apps = args.apps;
      c.functionality = f;
      candidates.push_back(std::move(c));
    }
  }
  const std::size_t generated = candidates.size();
  if (args.rounds > 0 && !candidates.empty()) candidates = evolve(std::move(candidates), *backend, modes, args.rounds);
  dedup_filter(candidates, args.threshold);
  export_tasks(candidates, args.output);
  const auto filtered = std::count_if(candidates.begin(), candidates.end(),
                                      [](const auto& c) { return c.status == CandidateStatus::filtered_out; });
  out << "functionalities " << functionalities.size() << ", generated " << generated << ", evolved "
      << candidates.size() - generated << ", filtered " << filtered << ", exported " << candidates.size() - filtered
      << " -> " << args.output.string() << "\n";
  return kExitOk;
}

int main(int argc, char** argv) {
  CLI::App app{"Device-free evaluation harness for LLM phone agents"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run agents over a task suite and write trajectories");
  std::string config_path, tasks_path, graph_path, output_path, protocol, agent_kind;
  std::optional<std::size_t> k, parallelism;
  std::optional<std::uint64_t> seed;
  bool exploration = false, strict = false;
  run->add_option("-c,--config", config_path, "Run configuration JSON");
  run->add_option("--tasks", tasks_path, "Task file (overrides the config)");
  run->add_option("--graph", graph_path, "Snapshot graph used for every task");
  run->add_option("-o,--output", output_path, "Output directory");
  run->add_option("--agent", agent_kind, "Agent kind (gold|random) replacing the configured agents");
  run->add_option("--protocol", protocol, "single|reflexion|reexecute");
  run->add_option("-k,--k", k, "Retries for reflexion/reexecute");
  run->add_option("-j,--parallelism", parallelism, "Concurrent episodes");
  run->add_option("--seed", seed, "Seed for all randomness");
  run->add_flag("--exploration", exploration, "Add the visit-count hint to prompts");
  run->add_flag("--strict", strict, "Off-graph actions end the episode with an error");

  auto* metrics = app.add_subcommand("metrics", "Score trajectories into a metrics report");
  MetricsArgs margs;
  std::string traj_dir, mtasks, mgraph, mout, judge = "yes";
  std::optional<std::size_t> mk;
  bool raw_tr = false;
  metrics->add_option("trajectories", traj_dir, "Run output or trajectory directory")->required();
  metrics->add_option("--tasks", mtasks, "Task file with gold actions")->required();
  metrics->add_option("--graph", mgraph, "Snapshot graph override");
  metrics->add_option("--judge", judge, "yes|no|oracle or a judge spec JSON file");
  metrics->add_option("-o,--output", mout, "Directory for metrics.json/.txt/.csv");
  metrics->add_option("--gamma", margs.gamma, "Task reward discount");
  metrics->add_flag("--raw-tr", raw_tr, "Report unnormalized task reward");
  metrics->add_option("-k,--k", mk, "Retry count the trajectories were produced with");
  metrics->add_option("-j,--parallelism", margs.parallelism, "Concurrent judge calls");

  auto* report = app.add_subcommand("report", "Compare metrics reports across agents");
  std::vector<std::string> report_files;
  std::string rout;
  report->add_option("reports", report_files, "metrics.json files")->required();
  report->add_option("-o,--output", rout, "Directory for comparison.json/.txt");

  auto* replay_cmd = app.add_subcommand("replay", "Verify gold action sequences against their graphs");
  std::string rtasks, rgraph;
  replay_cmd->add_option("tasks", rtasks, "Task file")->required();
  replay_cmd->add_option("--graph", rgraph, "Snapshot graph override");

  auto* compress_cmd = app.add_subcommand("compress", "Print the compressed observation of a UI dump");
  std::string xml;
  bool as_json = false, stats = false;
  compress_cmd->add_option("xml", xml, "UI hierarchy XML dump")->required();
  compress_cmd->add_flag("--json", as_json, "Emit the JSON form");
  compress_cmd->add_flag("--stats", stats, "Print token counts to stderr");

  auto* validate = app.add_subcommand("validate", "Check graph and task files");
  std::vector<std::string> vfiles;
  validate->add_option("files", vfiles, "Graph or task JSON files")->required();

  auto* taskgen = app.add_subcommand("taskgen", "Generate task candidates from a document corpus");
  TaskgenArgs targs;
  std::string corpus, tout, tbackend;
  taskgen->add_option("--corpus", corpus, "Directory of plain-text documents")->required();
  taskgen->add_option("--app", targs.apps, "App name (once or twice)")->required();
  taskgen->add_option("-o,--output", tout, "Exported task file")->required();
  taskgen->add_option("--top-k", targs.top_k, "Documents retrieved per query");
  taskgen->add_option("--rounds", targs.rounds, "Evolution rounds (0 disables)");
  taskgen->add_option("--modes", targs.modes, "Evolution modes cycled per round");
  taskgen->add_option("--threshold", targs.threshold, "Jaccard similarity above which a later task is dropped");
  taskgen->add_option("--backend", tbackend, "Backend spec JSON file (default: offline templates)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      RunConfig c;
      if (!config_path.empty()) c = load_run_config(config_path);
      if (!tasks_path.empty()) c.tasks = tasks_path;
      if (!graph_path.empty()) c.graph = graph_path;
      if (!output_path.empty()) c.output_dir = output_path;
      if (!agent_kind.empty()) c.agents = {backend_kind(agent_kind)};
      if (!protocol.empty()) c.protocol = protocol_from_name(protocol);
      if (k) c.k = *k;
      if (parallelism) c.parallelism = *parallelism;
      if (seed) c.seed = *seed;
      if (exploration) c.exploration = true;
      if (strict) c.policy = EnvPolicy::strict;
      return cmd_run(c, std::cout, std::cerr);
    }
    if (*metrics) {
      margs.trajectories = traj_dir;
      margs.tasks = mtasks;
      if (!mgraph.empty()) margs.graph = mgraph;
      margs.output_dir = mout;
      margs.normalize_tr = !raw_tr;
      margs.k = mk;
      if (judge == "yes" || judge == "no" || judge == "oracle") {
        margs.judge = backend_kind(judge);
      } else {
        const std::filesystem::path p(judge);
        margs.judge = backend_spec_from_json(nlohmann::json::parse(read_file(p)), p.parent_path());
      }
      return cmd_metrics(margs, std::cout, std::cerr);
    }
    if (*report) {
      std::vector<std::filesystem::path> paths(report_files.begin(), report_files.end());
      return cmd_report(paths, rout, std::cout, std::cerr);
    }
    if (*replay_cmd) {
      std::optional<std::filesystem::path> g;
      if (!rgraph.empty()) g = rgraph;
      return cmd_replay(rtasks, g, std::cout, std::cerr);
    }
    if (*compress_cmd) return cmd_compress(xml, as_json, stats, std::cout, std::cerr);
    if (*validate) {
      std::vector<std::filesystem::path> paths(vfiles.begin(), vfiles.end());
      return cmd_validate(paths, std::cout, std::cerr);
    }
    if (*taskgen) {
      targs.corpus = corpus;
      targs.output = tout;
      if (!tbackend.empty()) {
        const std::filesystem::path p(tbackend);
        targs.backend = backend_spec_from_json(nlohmann::json::parse(read_file(p)), p.parent_path());
      }
      return cmd_taskgen(targs, std::cout, std::cerr);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace mobench::cli
