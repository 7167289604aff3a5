#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mobench/agent.hpp"
#include "mobench/cli.hpp"
#include "mobench/error.hpp"
#include "mobench/metrics.hpp"
#include "mobench/report.hpp"
#include "mobench/tokenizer.hpp"
#include "mobench/ui_model.hpp"
#include "support.hpp"

using namespace mobench;

namespace {

struct Check {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::map<std::string, std::vector<CanonicalAction>> plans_from(const std::filesystem::path& file) {
  auto doc = nlohmann::json::parse(read_file(file));
  std::map<std::string, std::vector<CanonicalAction>> out;
  for (const auto& [task, list] : doc.items()) {
    for (const auto& a : list) out[task].push_back(canonical_from_json(a));
  }
  return out;
}

std::size_t brute_force_lcs(const std::string& a, const std::string& b) {
  std::size_t best = 0;
  for (unsigned mask = 0; mask < (1u << a.size()); ++mask) {
    std::string sub;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask & (1u << i)) sub += a[i];
    }
    std::size_t j = 0;
    for (char c : b) {
      if (j < sub.size() && sub[j] == c) ++j;
    }
    if (j == sub.size()) best = std::max(best, sub.size());
  }
  return best;
}

Check lcs_oracle() {
  Check c;
  std::mt19937_64 rng(20240101);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t mismatches = 0;
  const std::size_t cases = 1000;
  for (std::size_t n = 0; n < cases; ++n) {
    const std::size_t alpha = 1 + rng() % 5;
    auto draw = [&] {
      std::string s(rng() % 9, 'a');
      for (auto& ch : s) ch = static_cast<char>('a' + rng() % alpha);
      return s;
    };
    const auto gold = draw();
    const auto exec = draw();
    auto al = lcs_align(gold, exec, [](char x, char y) { return x == y; });
    bool ok = al.length() == brute_force_lcs(gold, exec);
    for (std::size_t k = 0; k < al.pairs.size(); ++k) {
      const auto [gi, ej] = al.pairs[k];
      ok &= gi >= 1 && ej >= 1 && gi <= gold.size() && ej <= exec.size() && gold[gi - 1] == exec[ej - 1];
      if (k > 0) ok &= gi > al.pairs[k - 1].first && ej > al.pairs[k - 1].second;
    }
    if (!ok) ++mismatches;
  }
  const double secs = seconds_since(t0);
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatching pairs");
  c.expect(secs < 5.0, "runtime under 5 s");
  c.note(std::to_string(cases) + " pairs, 0 mismatches required, " + fmt(secs, 3) + " s");
  return c;
}

Check worked_example() {
  Check c;
  const std::string gold = "ABCDEFG";
  const std::string exec = "AXYBUVWEFFFGZ";
  auto al = lcs_align(gold, exec, [](char x, char y) { return x == y; });
  std::string matched;
  for (const auto& [gi, ej] : al.pairs) matched += gold[gi - 1];
  const double tcr = completion_ratio(al);
  const double rrr = redundancy(gold.size(), exec.size());
  const double tr = task_reward(al, 0.9, true);
  const double ol = operation_logic(al).value_or(-1);
  c.expect(matched == "ABEFG", "LCS {A,B,E,F,G}");
  c.expect(tcr == 1.0, "TCR = 1");
  c.expect(near(rrr, 7.0 / 13.0, 1e-9), "RRR = 7/13");
  c.expect(near(tr, 0.734505, 1e-6), "TR = 0.734505");
  c.expect(near(ol, 0.6667, 1e-4), "OL = 0.6667");
  c.expect(al.pairs.size() > 1 && al.pairs[1] == std::pair<std::size_t, std::size_t>{2, 4}, "B pair at exec 4");

  auto tasks = load_task_file(testsupport::data_dir() / "alignment" / "tasks.json");
  auto graph = std::make_shared<const SnapshotGraph>(load_snapshot_graph_file(tasks.at(0).graph));
  Environment env(graph);
  PlanAgent plan("plan", plans_from(testsupport::data_dir() / "alignment" / "plans.json"));
  OracleJudge oracle;
  auto s = score_task(tasks.at(0), {run_episode(plan, env, tasks.at(0))}, oracle);
  c.expect(near(s.tr, 0.734505, 1e-6) && s.tcr == 1.0 && near(s.rrr, 7.0 / 13.0, 1e-9) &&
               near(s.operation_logic.value_or(-1), 0.6667, 1e-4),
           "end-to-end episode on the letters fixture");
  c.note("LCS " + matched + ", TCR " + fmt(tcr, 4) + ", RRR " + fmt(rrr, 9) + ", TR " + fmt(tr) + ", OL " +
         fmt(ol, 4) + "; episode TR " + fmt(s.tr));
  return c;
}

Check table_aggregation() {
  Check c;
  struct Row {
    const char* app;
    long long before, after;
    double printed_ratio;
  };
  const std::vector<Row> rows = {
      {"Gmail (email list)", 11707, 1155, 0.9013}, {"Gmail (compose email)", 7273, 413, 0.9432},
      {"Calendar", 8604, 584, 0.9321},           {"Google map", 15725, 637, 0.9595},
      {"YouTube", 12005, 939, 0.9218},           {"Play Store", 10450, 620, 0.9407},
      {"Google drive", 11060, 651, 0.9411},      {"Clock Alarm", 9633, 505, 0.9476},
      {"Clock", 7980, 285, 0.9643},
  };
  std::vector<std::pair<long long, long long>> pairs;
  bool rows_ok = true;
  for (const auto& r : rows) {
    pairs.emplace_back(r.before, r.after);
    rows_ok &= near(compression_ratio(r.before, r.after), r.printed_ratio, 5e-5);
  }
  c.expect(rows_ok, "per-row ratios");
  const double mean = mean_compression_ratio(pairs);
  c.expect(near(mean, 0.866, 0.005), "aggregate 0.866 +/- 0.005");
  c.note("per-row ratios " + std::string(rows_ok ? "match" : "differ") + "; aggregate " + fmt(mean, 4) +
         " vs target 0.866");
  return c;
}

Check compression_property() {
  Check c;
  std::size_t files = 0;
  double worst = 1.0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(testsupport::data_dir())) {
    if (entry.path().extension() != ".xml") continue;
    ++files;
    const auto name = entry.path().filename().string();
    auto tree = parse_ui_dump(read_file(entry.path()));
    auto obs = compress(tree);
    const double ratio =
        compression_ratio(static_cast<long long>(tree.raw_token_count), static_cast<long long>(obs.token_count));
    worst = std::min(worst, ratio);
    c.expect(ratio >= 0.80, name + " ratio " + fmt(ratio, 4));
    c.expect(render(obs) == render(compress(tree)), name + " deterministic rendering");

    IdPathMap ids(obs);
    c.expect(ids.bijective() && ids.size() == obs.entries.size(), name + " id bijectivity");
    auto nodes = testsupport::flat(tree);
    std::map<std::string, std::size_t> order;
    for (std::size_t i = 0; i < nodes.size(); ++i) order[nodes[i].path] = i;
    bool ordered = true;
    for (std::size_t k = 0; k < obs.entries.size(); ++k) {
      const auto& e = obs.entries[k];
      ordered &= e.node_id == "nd" + std::to_string(k) && resolve_path(tree.root, e.element_path) != nullptr &&
                 order.count(e.element_path) > 0;
      if (k > 0 && ordered) ordered &= order[e.element_path] > order[obs.entries[k - 1].element_path];
    }
    c.expect(ordered, name + " order preservation");
    bool retained = true;
    for (const auto& pn : nodes) {
      if (!pn.node->functional() || ids.id_of(pn.path)) continue;
      const std::string own = collapse_whitespace(pn.node->text_content);
      const ObservationEntry* holder = nullptr;
      for (auto it = pn.ancestors.rbegin(); it != pn.ancestors.rend() && !holder; ++it) {
        holder = obs.find_by_path(nodes[*it].path);
      }
      retained &= holder != nullptr && (own.empty() || holder->rendered_text.find(own) != std::string::npos);
    }
    c.expect(retained, name + " information retention");
  }
  c.expect(files > 0, "fixtures found");
  c.note(std::to_string(files) + " fixtures, worst ratio " + fmt(worst, 4));
  return c;
}

Action sample(Verb v) {
  Action a;
  a.verb = v;
  a.verb_text = std::string(verb_wire_name(v));
  if (is_app_verb(v)) a.target = "Contacts";
  if (v == Verb::click || v == Verb::double_click || v == Verb::long_click) a.target = "nd3";
  if (v == Verb::set_text) {
    a.target = "nd2";
    a.payload = "hello world";
  }
  if (is_swipe(v)) a.payload = "2";
  if (v == Verb::set_orientation) a.payload = "horizontal";
  return a;
}

Check grammar_round_trip() {
  Check c;
  std::size_t verbs = 0;
  for (auto v : kAllVerbs) {
    ++verbs;
    const auto a = sample(v);
    const auto text = format_action(a);
    auto r = parse_action(text);
    const auto* back = std::get_if<Action>(&r);
    c.expect(back && *back == a && format_action(*back) == text, text);
  }
  c.expect(verbs == 23, "23 verbs");
  std::mt19937_64 rng(11);
  const std::string alphabet = "#[] \nabcdefiklnoprstuvwx-0123456789_";
  std::size_t parsed = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 48);
    for (int k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
    if (i % 3 == 0) s = "#" + std::string(verb_name(kAllVerbs[rng() % kAllVerbs.size()])) + s;
    if (std::holds_alternative<Action>(parse_action(s))) ++parsed;
  }
  c.note(std::to_string(verbs) + " verbs round trip, 10000 fuzz cases (" + std::to_string(parsed) + " parsed)");
  return c;
}

Check gold_self_test() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto& tasks = testsupport::suite_tasks();
  std::size_t single = 0, cross = 0, constrained = 0;
  for (const auto& t : tasks) {
    single += t.task_type == TaskType::single_app;
    cross += t.task_type == TaskType::cross_app;
    constrained += t.task_type == TaskType::constrained;
  }
  c.expect(single >= 3 && cross >= 1 && constrained >= 3, "suite composition");
  GoldAgent gold;
  ScriptedJudge yes("Yes");
  Environment env(testsupport::suite_graph());
  for (const auto& t : tasks) {
    auto s = score_task(t, {run_episode(gold, env, t)}, yes);
    const bool ok = near(s.tr, 1.0, 1e-12) && s.tcr == 1.0 && s.rrr == 1.0 && s.invalid_format == 0.0 &&
                    s.invalid_action == 0.0 && s.repeat_actions == 0.0 && s.operation_logic == 1.0 && s.sr == 1 &&
                    s.violations == 0;
    c.expect(ok, t.id);
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 10.0, "runtime under 10 s");
  c.note(std::to_string(tasks.size()) + " tasks (" + std::to_string(single) + " single, " + std::to_string(cross) +
         " cross, " + std::to_string(constrained) + " constrained), " + fmt(secs, 3) + " s");
  return c;
}

Check constraint_monitor() {
  Check c;
  PlanAgent violator("violator", plans_from(testsupport::data_dir() / "suite" / "violating_plans.json"));
  GoldAgent gold;
  Environment env(testsupport::suite_graph());
  std::set<ConstraintLevel> levels;
  std::string layout;
  for (const auto& t : testsupport::suite_tasks()) {
    if (t.constraints.empty()) continue;
    auto bad = run_episode(violator, env, t);
    std::vector<Constraint> hits;
    for (const auto& s : bad.steps) hits.insert(hits.end(), s.violations.begin(), s.violations.end());
    c.expect(hits.size() == t.constraints.size(), t.id + " violation count");
    for (std::size_t i = 0; i < hits.size() && i < t.constraints.size(); ++i) {
      c.expect(hits[i].level == t.constraints[i].level && hits[i].subject == t.constraints[i].subject,
               t.id + " violation level");
      levels.insert(hits[i].level);
      layout += std::string(layout.empty() ? "" : ", ") + std::string(constraint_level_name(hits[i].level));
    }
    std::size_t clean = 0;
    for (const auto& s : run_episode(gold, env, t).steps) clean += s.violations.size();
    c.expect(clean == 0, t.id + " compliant episode");
  }
  c.expect(levels.size() == 3, "all three levels exercised");
  c.note("violations at " + layout + "; compliant episodes clean");
  return c;
}

Check exploration_counters() {
  Check c;
  PlanAgent loop("loop", plans_from(testsupport::data_dir() / "suite" / "loop_plans.json"));
  Environment env(testsupport::suite_graph());
  const auto& t = testsupport::suite_task("contacts-call-bob");
  std::map<std::size_t, std::string> on_prompts, off_prompts;
  EpisodeOptions on;
  on.exploration = true;
  on.on_prompt = [&](std::size_t step, const std::string& p) { on_prompts[step] = p; };
  run_episode(loop, env, t, on);
  EpisodeOptions off;
  off.on_prompt = [&](std::size_t step, const std::string& p) { off_prompts[step] = p; };
  run_episode(loop, env, t, off);
  const std::string sentence =
      "You have already been in the current state 3 times, and taken action #swipe-down# for 2 times.";
  c.expect(on_prompts.count(4) && on_prompts[4].find(sentence) != std::string::npos, "hint at step 4");
  bool confined = on_prompts.size() == off_prompts.size();
  for (const auto& [step, text] : on_prompts) {
    const auto at = text.find("\n" + std::string(kHintHeader));
    if (at == std::string::npos) {
      confined = false;
      continue;
    }
    const auto end = text.find('\n', at + 1);
    confined &= text.substr(0, at) + text.substr(end + 1) == off_prompts[step];
  }
  c.expect(confined, "prompt diff confined to the hint");
  c.note("step 4 hint: M=3, N=2; diff confined to hint section");
  return c;
}

Check reflexion_plumbing() {
  Check c;
  ScriptAgent fail("fail", {{"", {"#finish#"}}});
  ScriptedBackend reflector("reflector", {"R1 open Contacts first", "R2 find Bob in the list", "R3 press Call",
                                          "R4 confirm the dialer", "R5 finish only after calling"});
  ScriptedJudge no("No");
  Environment env(testsupport::suite_graph());
  std::vector<std::string> prompts;
  EpisodeOptions o;
  o.on_prompt = [&](std::size_t, const std::string& p) { prompts.push_back(p); };
  auto r = reflexion_loop(fail, reflector, env, testsupport::suite_task("contacts-call-bob"), 5, no, o);
  c.expect(r.trials.size() == 6, "6 trajectories");
  c.expect(r.reflections.size() == 5, "5 reflections");
  bool verbatim = prompts.size() == 6;
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    for (std::size_t j = 0; j < r.reflections.size(); ++j) {
      verbatim &= (prompts[i].find(r.reflections[j]) != std::string::npos) == (j < i);
    }
  }
  c.expect(verbatim, "verbatim injection into successor prompts");

  bool property = true;
  std::size_t lists = 0;
  for (std::size_t len = 2; len <= 10; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      std::vector<int> sr(len);
      for (std::size_t i = 0; i < len; ++i) sr[i] = (mask >> i) & 1u;
      property &= reflexion_at_k(sr) == static_cast<double>(sr.back() - sr.front());
      ++lists;
    }
  }
  c.expect(property, "Reflexion@K = SR_K - SR_0");

  GoldAgent gold;
  auto re = reexecute_loop(gold, env, testsupport::suite_task("cross-paris-trip"), 3, no);
  bool identical = re.trials.size() == 4;
  auto strip = [](Trajectory t) {
    t.trial = 0;
    return trajectory_to_jsonl(t);
  };
  for (const auto& t : re.trials) identical &= strip(t) == strip(re.trials.front());
  c.expect(identical, "re-execute trials identical");
  c.note("6 trials, 5 reflections, " + std::to_string(lists) + " binary lists, " + std::to_string(re.trials.size()) +
         " identical re-execute trials");
  return c;
}

// Gold on a fixed share of the tasks, half the gold prefix elsewhere.
class MixedAgent : public Agent {
 public:
  MixedAgent(std::string label, std::set<std::string> full) : label_(std::move(label)), full_(std::move(full)) {}
  std::string act(const DecisionContext& ctx) override {
    return full_.count(ctx.task.id) ? gold_.act(ctx) : half_.act(ctx);
  }
  std::string label() const override { return label_; }

 private:
  std::string label_;
  std::set<std::string> full_;
  GoldAgent gold_;
  PrefixAgent half_{"half", 0.5};
};

Check correlation_sanity() {
  Check c;
  const auto& tasks = testsupport::suite_tasks();
  std::vector<std::string> order;
  for (const auto& t : tasks) order.push_back(t.id);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(7));
  OracleJudge oracle;
  Environment env(testsupport::suite_graph());
  std::vector<double> sr, tcr;
  std::string cohort;
  for (std::size_t n = 0; n <= tasks.size(); n += 2) {
    MixedAgent agent("mix" + std::to_string(n), {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n)});
    double s = 0, k = 0;
    for (const auto& t : tasks) {
      auto score = score_task(t, {run_episode(agent, env, t)}, oracle);
      s += score.sr;
      k += score.tcr;
    }
    sr.push_back(s / static_cast<double>(tasks.size()));
    tcr.push_back(k / static_cast<double>(tasks.size()));
    cohort += (cohort.empty() ? "" : " ") + fmt(sr.back(), 2) + "/" + fmt(tcr.back(), 2);
  }
  const double pcc = pearson(sr, tcr);
  c.expect(pcc > 0.9, "PCC(SR, TCR) > 0.9");
  const std::vector<double> x = {1, 2, 3}, y = {2, 4, 7}, p = {1, 2, 3, 4}, q = {1, 3, 2, 4};
  const double value = pearson(x, y);
  const double closed_form = 5.0 / std::sqrt(2.0 * 114.0 / 9.0);
  c.expect(near(value, closed_form, 1e-12) && near(pearson(p, q), 0.8, 1e-12), "hand-computed closed forms");
  c.expect(near(value, 0.9897, 1e-4), "pearson([1,2,3],[2,4,7]) = 0.9897 +/- 1e-4");
  c.note("cohort SR/TCR " + cohort + "; PCC " + fmt(pcc, 4) + "; pearson([1,2,3],[2,4,7]) " + fmt(value, 4) +
         " vs closed form 5/sqrt(76/3) " + fmt(closed_form, 4) + " vs stated 0.9897");
  return c;
}

std::string snapshot_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string out;
  for (const auto& f : files) out += std::filesystem::relative(f, dir).string() + "\n" + read_file(f) + "\n";
  return out;
}

Check end_to_end_determinism() {
  Check c;
  const auto dir = testsupport::scratch_dir("determinism");
  nlohmann::json j = {
      {"tasks", (testsupport::data_dir() / "suite" / "tasks.json").string()},
      {"agents",
       {"gold",
        {{"kind", "prefix"}, {"label", "half"}, {"fraction", 0.5}},
        {{"kind", "random"}, {"label", "random"}},
        {{"kind", "script"}, {"label", "script"}, {"scripts", {{"", {"#start [Contacts]#", "junk", "#finish#"}}}}}}},
      {"judge", {{"kind", "script"}, {"verdicts", {{"weather-paris", "Yes"}}}, {"reply", "No"}}},
      {"parallelism", 4},
      {"seed", 17},
      {"exploration", true},
      {"output_dir", (dir / "out").string()},
  };
  auto once = [&] {
    std::filesystem::remove_all(dir / "out");
    std::ostringstream out, err;
    auto cfg = cli::run_config_from_json(j, {});
    int rc = cli::cmd_run(cfg, out, err);
    cli::MetricsArgs m;
    m.trajectories = dir / "out";
    m.tasks = cfg.tasks;
    m.judge = cfg.judge;
    m.output_dir = dir / "out" / "metrics";
    if (rc == cli::kExitOk) rc = cli::cmd_metrics(m, out, err);
    if (rc != cli::kExitOk) throw std::runtime_error("run failed: " + err.str());
    return snapshot_dir(dir / "out");
  };
  const auto first = once();
  const auto second = once();
  std::size_t files = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir / "out")) files += e.is_regular_file();
  c.expect(first == second, "byte-identical outputs");
  c.note(std::to_string(files) + " files, " + std::to_string(first.size()) + " bytes, identical across two runs");
  std::filesystem::remove_all(dir);
  return c;
}

struct Criterion {
  int number;
  const char* name;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "lcs oracle equivalence", lcs_oracle},
      {2, "alignment worked example", worked_example},
      {3, "compression table aggregation", table_aggregation},
      {4, "compression property", compression_property},
      {5, "grammar round trip", grammar_round_trip},
      {6, "gold self-test", gold_self_test},
      {7, "constraint monitor", constraint_monitor},
      {8, "exploration counters", exploration_counters},
      {9, "reflexion plumbing", reflexion_plumbing},
      {10, "correlation sanity", correlation_sanity},
      {11, "end-to-end determinism", end_to_end_determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto& cr : all) {
    if (!wanted.empty() && !wanted.count(cr.number)) continue;
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    all_pass &= c.pass;
    std::string detail;
    for (const auto& n : c.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::cout << (c.pass ? "PASS" : "FAIL") << " [" << cr.number << "] " << cr.name << ": " << detail << "\n";
  }
  return all_pass ? 0 : 1;
}
