#include "mobench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

namespace {

constexpr ConstraintLevel kLevels[] = {ConstraintLevel::app, ConstraintLevel::page, ConstraintLevel::component};

template <class T>
nlohmann::ordered_json opt(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <class T>
std::optional<T> opt_get(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "-"; }

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::optional<double> mean_opt(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return mean(v);
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows) {
    if (widths.size() < r.size()) widths.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
  }
  std::string out;
  for (std::size_t n = 0; n < rows.size(); ++n) {
    std::string line;
    for (std::size_t i = 0; i < rows[n].size(); ++i) {
      line += i + 1 == rows[n].size() ? rows[n][i] : pad(rows[n][i], widths[i] + 2);
    }
    out += line + "\n";
    if (n == 0) {
      std::size_t total = 0;
      for (std::size_t w : widths) total += w + 2;
      out += std::string(total > 2 ? total - 2 : total, '-') + "\n";
    }
  }
  return out;
}

nlohmann::ordered_json levels_json(const std::vector<ConstraintLevel>& levels) {
  auto a = nlohmann::ordered_json::array();
  for (auto l : levels) a.push_back(std::string(constraint_level_name(l)));
  return a;
}

std::vector<ConstraintLevel> levels_from(const nlohmann::json& j) {
  std::vector<ConstraintLevel> out;
  for (const auto& e : j) out.push_back(constraint_level_from_name(e.get<std::string>()));
  return out;
}

nlohmann::ordered_json agent_json(const AgentSummary& a) {
  nlohmann::ordered_json j;
  j["agent"] = a.agent;
  j["tasks"] = a.tasks;
  j["tr"] = a.tr;
  j["tcr"] = a.tcr;
  j["rrr"] = a.rrr;
  j["sr"] = a.sr;
  j["invalid_format"] = a.fine.invalid_format;
  j["invalid_action"] = a.fine.invalid_action;
  j["nuggets_mining"] = opt(a.fine.nuggets_mining);
  j["operation_logic"] = opt(a.fine.operation_logic);
  j["awareness_of_completion"] = opt(a.fine.awareness_of_completion);
  j["repeat_actions"] = a.fine.repeat_actions;
  j["reflexion_at_k"] = opt(a.fine.reflexion_at_k);
  nlohmann::ordered_json v;
  for (auto l : kLevels) {
    auto it = a.violation_ratio.find(l);
    v[std::string(constraint_level_name(l))] = it == a.violation_ratio.end() ? nlohmann::ordered_json(nullptr) : opt(it->second);
  }
  j["violation_ratio"] = v;
  return j;
}

AgentSummary agent_from_json(const nlohmann::json& j) {
  AgentSummary a;
  a.agent = j.at("agent").get<std::string>();
  a.fine.agent = a.agent;
  a.tasks = j.at("tasks").get<std::size_t>();
  a.tr = j.at("tr").get<double>();
  a.tcr = j.at("tcr").get<double>();
  a.rrr = j.at("rrr").get<double>();
  a.sr = j.at("sr").get<double>();
  a.fine.invalid_format = j.at("invalid_format").get<double>();
  a.fine.invalid_action = j.at("invalid_action").get<double>();
  a.fine.nuggets_mining = opt_get<double>(j, "nuggets_mining");
  a.fine.operation_logic = opt_get<double>(j, "operation_logic");
  a.fine.awareness_of_completion = opt_get<double>(j, "awareness_of_completion");
  a.fine.repeat_actions = j.at("repeat_actions").get<double>();
  a.fine.reflexion_at_k = opt_get<double>(j, "reflexion_at_k");
  if (j.contains("violation_ratio")) {
    for (auto l : kLevels) {
      a.violation_ratio[l] = opt_get<double>(j.at("violation_ratio"), std::string(constraint_level_name(l)).c_str());
    }
  }
  return a;
}

}  // namespace

TaskScore score_task(const TaskSpec& task, const std::vector<Trajectory>& trials, Judge& judge,
                     const ScoringOptions& options) {
  if (trials.empty()) throw Error(Errc::empty_trajectory, "no trials for task " + task.id);
  TaskScore s;
  const auto& t = trials.front();
  s.agent = t.agent;
  s.task_id = task.id;
  s.app_key = task.app_key();
  s.task_type = task.task_type;
  s.trials = trials.size();
  s.terminal = t.terminal;
  s.steps = t.steps.size();
  s.has_gold = !task.gold_actions.empty();

  for (const auto& trial : trials) {
    const auto v = success_rate(trial, task.instruction, judge, &task, options.excerpt_budget);
    s.sr_trials.push_back(v.success ? 1 : 0);
    if (&trial == &t) s.judge_nonconforming = v.nonconforming;
  }
  s.sr = s.sr_trials.front();
  if (s.sr_trials.size() >= 2) {
    s.reflexion_at_k = reflexion_at_k(s.sr_trials);
  } else if (options.k && *options.k > 0 && s.sr == 1) {
    s.reflexion_at_k = 0.0;
  }

  if (!t.steps.empty()) {
    s.invalid_format = invalid_format_ratio(t);
    s.invalid_action = invalid_action_ratio(t);
    s.repeat_actions = repeat_action_ratio(t);
  }

  const auto exec = t.executed_actions();
  s.gold_len = task.gold_actions.size();
  s.exec_len = exec.size();
  if (s.has_gold) {
    const auto al = lcs_align(std::span<const CanonicalAction>(task.gold_actions), std::span<const CanonicalAction>(exec));
    s.lcs_len = al.length();
    s.tr = task_reward(al, options.gamma, options.normalized);
    s.tcr = completion_ratio(al);
    s.rrr = redundancy(s.gold_len, s.exec_len);
    s.rrr_clamped = s.exec_len > 0 && s.exec_len < s.gold_len;
    s.nuggets_mining = nuggets_mining(t, al);
    s.operation_logic = operation_logic(al);
    s.completion_aware = completion_awareness(t, al);
  }

  std::set<ConstraintLevel> constrained, violated;
  for (const auto& c : task.constraints) constrained.insert(c.level);
  for (const auto& step : t.steps) {
    s.violations += step.violations.size();
    for (const auto& c : step.violations) violated.insert(c.level);
  }
  s.constrained_levels.assign(constrained.begin(), constrained.end());
  s.violated_levels.assign(violated.begin(), violated.end());
  return s;
}

MetricsReport build_report(std::vector<TaskScore> scores, const std::vector<AppComplexity>& complexity,
                           const ScoringOptions& options, std::string judge_label) {
  MetricsReport r;
  r.gamma = options.gamma;
  r.normalized = options.normalized;
  r.judge = std::move(judge_label);
  std::stable_sort(scores.begin(), scores.end(), [](const TaskScore& a, const TaskScore& b) {
    return std::tie(a.agent, a.task_id) < std::tie(b.agent, b.task_id);
  });
  r.tasks = std::move(scores);

  std::vector<std::string> agents;
  for (const auto& s : r.tasks) {
    if (std::find(agents.begin(), agents.end(), s.agent) == agents.end()) agents.push_back(s.agent);
  }
  for (const auto& name : agents) {
    AgentSummary a;
    a.agent = name;
    a.fine.agent = name;
    std::vector<double> tr, tcr, rrr, sr, ifr, iar, ra, nm, ol, rk;
    std::vector<std::optional<bool>> aware;
    std::map<ConstraintLevel, std::pair<std::size_t, std::size_t>> levels;
    for (const auto& s : r.tasks) {
      if (s.agent != name) continue;
      ++a.tasks;
      sr.push_back(s.sr);
      if (s.steps > 0) {
        ifr.push_back(s.invalid_format);
        iar.push_back(s.invalid_action);
        ra.push_back(s.repeat_actions);
      }
      if (s.has_gold) {
        tr.push_back(s.tr);
        tcr.push_back(s.tcr);
        rrr.push_back(s.rrr);
        aware.push_back(s.completion_aware);
      }
      if (s.nuggets_mining) nm.push_back(*s.nuggets_mining);
      if (s.operation_logic) ol.push_back(*s.operation_logic);
      if (s.reflexion_at_k) rk.push_back(*s.reflexion_at_k);
      for (auto l : s.constrained_levels) {
        auto& [total, hit] = levels[l];
        ++total;
        if (std::find(s.violated_levels.begin(), s.violated_levels.end(), l) != s.violated_levels.end()) ++hit;
      }
    }
    a.tr = mean(tr);
    a.tcr = mean(tcr);
    a.rrr = mean(rrr);
    a.sr = mean(sr);
    a.fine.invalid_format = mean(ifr);
    a.fine.invalid_action = mean(iar);
    a.fine.repeat_actions = mean(ra);
    a.fine.nuggets_mining = mean_opt(nm);
    a.fine.operation_logic = mean_opt(ol);
    a.fine.awareness_of_completion = awareness_of_completion(aware);
    a.fine.reflexion_at_k = mean_opt(rk);
    for (auto l : kLevels) {
      auto it = levels.find(l);
      if (it == levels.end()) {
        a.violation_ratio[l] = std::nullopt;
      } else {
        a.violation_ratio[l] = static_cast<double>(it->second.second) / static_cast<double>(it->second.first);
      }
    }
    r.agents.push_back(a);

    std::vector<std::string> keys;
    for (const auto& s : r.tasks) {
      if (s.agent == name && std::find(keys.begin(), keys.end(), s.app_key) == keys.end()) keys.push_back(s.app_key);
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& key : keys) {
      AppSummary app;
      app.agent = name;
      app.app_key = key;
      std::vector<double> asr, atr, atcr, arrr;
      for (const auto& s : r.tasks) {
        if (s.agent != name || s.app_key != key) continue;
        ++app.tasks;
        asr.push_back(s.sr);
        if (s.has_gold) {
          atr.push_back(s.tr);
          atcr.push_back(s.tcr);
          arrr.push_back(s.rrr);
        }
      }
      app.sr = mean(asr);
      app.tr = mean(atr);
      app.tcr = mean(atcr);
      app.rrr = mean(arrr);
      for (const auto& c : complexity) {
        if (c.app_key == key) {
          app.ir = c.ir;
          app.oc = c.oc;
        }
      }
      r.apps.push_back(app);
    }
  }
  return r;
}

nlohmann::ordered_json report_to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["gamma"] = r.gamma;
  j["normalized"] = r.normalized;
  j["judge"] = r.judge;
  auto tasks = nlohmann::ordered_json::array();
  for (const auto& s : r.tasks) {
    nlohmann::ordered_json t;
    t["agent"] = s.agent;
    t["task_id"] = s.task_id;
    t["app"] = s.app_key;
    t["task_type"] = std::string(task_type_name(s.task_type));
    t["has_gold"] = s.has_gold;
    t["trials"] = s.trials;
    t["terminal"] = std::string(terminal_name(s.terminal));
    t["steps"] = s.steps;
    t["gold_len"] = s.gold_len;
    t["exec_len"] = s.exec_len;
    t["lcs_len"] = s.lcs_len;
    t["tr"] = s.tr;
    t["tcr"] = s.tcr;
    t["rrr"] = s.rrr;
    t["rrr_clamped"] = s.rrr_clamped;
    t["sr"] = s.sr;
    t["judge_nonconforming"] = s.judge_nonconforming;
    t["sr_trials"] = s.sr_trials;
    t["invalid_format"] = s.invalid_format;
    t["invalid_action"] = s.invalid_action;
    t["repeat_actions"] = s.repeat_actions;
    t["nuggets_mining"] = opt(s.nuggets_mining);
    t["operation_logic"] = opt(s.operation_logic);
    t["completion_aware"] = opt(s.completion_aware);
    t["reflexion_at_k"] = opt(s.reflexion_at_k);
    t["constrained_levels"] = levels_json(s.constrained_levels);
    t["violated_levels"] = levels_json(s.violated_levels);
    t["violations"] = s.violations;
    tasks.push_back(t);
  }
  j["tasks"] = tasks;
  auto agents = nlohmann::ordered_json::array();
  for (const auto& a : r.agents) agents.push_back(agent_json(a));
  j["agents"] = agents;
  auto apps = nlohmann::ordered_json::array();
  for (const auto& a : r.apps) {
    nlohmann::ordered_json x;
    x["agent"] = a.agent;
    x["app"] = a.app_key;
    x["tasks"] = a.tasks;
    x["sr"] = a.sr;
    x["tr"] = a.tr;
    x["tcr"] = a.tcr;
    x["rrr"] = a.rrr;
    x["ir"] = a.ir;
    x["oc"] = a.oc;
    apps.push_back(x);
  }
  j["apps"] = apps;
  return j;
}

MetricsReport report_from_json(const nlohmann::json& j) {
  try {
    MetricsReport r;
    r.gamma = j.at("gamma").get<double>();
    r.normalized = j.at("normalized").get<bool>();
    r.judge = j.value("judge", "");
    for (const auto& t : j.at("tasks")) {
      TaskScore s;
      s.agent = t.at("agent").get<std::string>();
      s.task_id = t.at("task_id").get<std::string>();
      s.app_key = t.at("app").get<std::string>();
      s.task_type = task_type_from_name(t.at("task_type").get<std::string>());
      s.has_gold = t.at("has_gold").get<bool>();
      s.trials = t.at("trials").get<std::size_t>();
      s.terminal = terminal_from_name(t.at("terminal").get<std::string>());
      s.steps = t.at("steps").get<std::size_t>();
      s.gold_len = t.at("gold_len").get<std::size_t>();
      s.exec_len = t.at("exec_len").get<std::size_t>();
      s.lcs_len = t.at("lcs_len").get<std::size_t>();
      s.tr = t.at("tr").get<double>();
      s.tcr = t.at("tcr").get<double>();
      s.rrr = t.at("rrr").get<double>();
      s.rrr_clamped = t.at("rrr_clamped").get<bool>();
      s.sr = t.at("sr").get<int>();
      s.judge_nonconforming = t.at("judge_nonconforming").get<bool>();
      s.sr_trials = t.at("sr_trials").get<std::vector<int>>();
      s.invalid_format = t.at("invalid_format").get<double>();
      s.invalid_action = t.at("invalid_action").get<double>();
      s.repeat_actions = t.at("repeat_actions").get<double>();
      s.nuggets_mining = opt_get<double>(t, "nuggets_mining");
      s.operation_logic = opt_get<double>(t, "operation_logic");
      s.completion_aware = opt_get<bool>(t, "completion_aware");
      s.reflexion_at_k = opt_get<double>(t, "reflexion_at_k");
      s.constrained_levels = levels_from(t.at("constrained_levels"));
      s.violated_levels = levels_from(t.at("violated_levels"));
      s.violations = t.at("violations").get<std::size_t>();
      r.tasks.push_back(std::move(s));
    }
    for (const auto& a : j.at("agents")) r.agents.push_back(agent_from_json(a));
    for (const auto& a : j.at("apps")) {
      AppSummary x;
      x.agent = a.at("agent").get<std::string>();
      x.app_key = a.at("app").get<std::string>();
      x.tasks = a.at("tasks").get<std::size_t>();
      x.sr = a.at("sr").get<double>();
      x.tr = a.at("tr").get<double>();
      x.tcr = a.at("tcr").get<double>();
      x.rrr = a.at("rrr").get<double>();
      x.ir = a.at("ir").get<double>();
      x.oc = a.at("oc").get<double>();
      r.apps.push_back(x);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::schema_error, std::string("metrics report: ") + e.what());
  }
}

std::string report_text(const MetricsReport& r) {
  std::string out = "Per task (gamma " + fmt(r.gamma) + (r.normalized ? ", normalized TR" : ", raw TR") +
                    ", judge " + r.judge + ")\n\n";
  std::vector<std::vector<std::string>> rows = {
      {"agent", "task", "app", "terminal", "steps", "TR", "TCR", "RRR", "SR", "IF", "IA", "NM", "OL", "RA", "viol"}};
  for (const auto& s : r.tasks) {
    rows.push_back({s.agent, s.task_id, s.app_key, std::string(terminal_name(s.terminal)), std::to_string(s.steps),
                    s.has_gold ? fmt(s.tr) : "-", s.has_gold ? fmt(s.tcr) : "-",
                    s.has_gold ? fmt(s.rrr) + (s.rrr_clamped ? "*" : "") : "-",
                    std::to_string(s.sr) + (s.judge_nonconforming ? "!" : ""), fmt(s.invalid_format),
                    fmt(s.invalid_action), fmt(s.nuggets_mining), fmt(s.operation_logic), fmt(s.repeat_actions),
                    std::to_string(s.violations)});
  }
  out += table(rows);
  out += "\n* RRR clamped at 1 (shorter than gold)   ! judge reply did not conform\n\nPer agent\n\n";
  rows = {{"agent", "tasks", "TR", "TCR", "RRR", "SR", "IF", "IA", "NM", "OL", "AC", "RA", "R@K"}};
  for (const auto& a : r.agents) {
    rows.push_back({a.agent, std::to_string(a.tasks), fmt(a.tr), fmt(a.tcr), fmt(a.rrr), fmt(a.sr),
                    fmt(a.fine.invalid_format), fmt(a.fine.invalid_action), fmt(a.fine.nuggets_mining),
                    fmt(a.fine.operation_logic), fmt(a.fine.awareness_of_completion), fmt(a.fine.repeat_actions),
                    fmt(a.fine.reflexion_at_k)});
  }
  out += table(rows);
  out += "\nPer app\n\n";
  rows = {{"agent", "app", "tasks", "SR", "TR", "TCR", "RRR", "IR", "OC"}};
  for (const auto& a : r.apps) {
    rows.push_back({a.agent, a.app_key, std::to_string(a.tasks), fmt(a.sr), fmt(a.tr), fmt(a.tcr), fmt(a.rrr),
                    fmt(a.ir), fmt(a.oc)});
  }
  out += table(rows);
  return out;
}

std::string report_csv(const MetricsReport& r) {
  auto field = [](std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    return "\"" + replace_all(std::move(s), "\"", "\"\"") + "\"";
  };
  auto num = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  std::string out =
      "agent,task_id,app,task_type,terminal,steps,gold_len,exec_len,lcs_len,tr,tcr,rrr,sr,invalid_format,"
      "invalid_action,nuggets_mining,operation_logic,completion_aware,repeat_actions,reflexion_at_k,violations\n";
  for (const auto& s : r.tasks) {
    out += field(s.agent) + "," + field(s.task_id) + "," + field(s.app_key) + "," +
           std::string(task_type_name(s.task_type)) + "," + std::string(terminal_name(s.terminal)) + "," +
           std::to_string(s.steps) + "," + std::to_string(s.gold_len) + "," + std::to_string(s.exec_len) + "," +
           std::to_string(s.lcs_len) + "," + fmt(s.tr) + "," + fmt(s.tcr) + "," + fmt(s.rrr) + "," +
           std::to_string(s.sr) + "," + fmt(s.invalid_format) + "," + fmt(s.invalid_action) + "," +
           num(s.nuggets_mining) + "," + num(s.operation_logic) + "," +
           (s.completion_aware ? (*s.completion_aware ? "1" : "0") : "") + "," + fmt(s.repeat_actions) + "," +
           num(s.reflexion_at_k) + "," + std::to_string(s.violations) + "\n";
  }
  return out;
}

ComparisonReport compare_reports(const std::vector<MetricsReport>& reports) {
  ComparisonReport c;
  std::map<std::string, std::size_t> slot;
  std::map<std::string, std::vector<AppSummary>> apps;
  for (const auto& r : reports) {
    for (const auto& a : r.agents) {
      auto it = slot.find(a.agent);
      if (it == slot.end()) {
        slot[a.agent] = c.agents.size();
        c.agents.push_back(a);
      } else {
        c.agents[it->second] = a;
      }
      apps[a.agent].clear();
    }
    for (const auto& a : r.apps) apps[a.agent].push_back(a);
  }
  std::vector<AgentFineGrained> cohort;
  for (const auto& a : c.agents) cohort.push_back(a.fine);
  c.dimensions = dimension_scores(cohort);

  for (const auto& a : c.agents) {
    CorrelationRow row;
    row.agent = a.agent;
    std::vector<double> sr, ir, oc, iroc;
    for (const auto& app : apps[a.agent]) {
      sr.push_back(app.sr);
      ir.push_back(app.ir);
      oc.push_back(app.oc);
      iroc.push_back(app.ir * app.oc);
    }
    auto try_pcc = [&](const std::vector<double>& xs, const char* name) -> std::optional<double> {
      try {
        return pearson(sr, xs);
      } catch (const Error& e) {
        if (e.code() != Errc::degenerate_variance) throw;
        row.footnotes.push_back(std::string("PCC(SR, ") + name + ") undefined: " + e.what());
        return std::nullopt;
      }
    };
    row.sr_ir = try_pcc(ir, "IR");
    row.sr_oc = try_pcc(oc, "OC");
    row.sr_iroc = try_pcc(iroc, "IRxOC");
    c.correlations.push_back(std::move(row));
  }
  return c;
}

nlohmann::ordered_json comparison_to_json(const ComparisonReport& c) {
  nlohmann::ordered_json j;
  auto dims = nlohmann::ordered_json::array();
  for (const auto& d : c.dimensions.rows) {
    dims.push_back({{"agent", d.agent},
                    {"understanding", d.understanding},
                    {"reasoning", d.reasoning},
                    {"exploration", d.exploration},
                    {"reflection", d.reflection},
                    {"raw", {{"understanding", d.raw_understanding},
                             {"reasoning", d.raw_reasoning},
                             {"exploration", d.raw_exploration},
                             {"reflection", d.raw_reflection}}}});
  }
  auto range = [](const Range& r) { return nlohmann::ordered_json{{"min", r.min}, {"max", r.max}}; };
  j["dimensions"] = {{"degenerate", c.dimensions.degenerate},
                     {"rows", dims},
                     {"normalization",
                      {{"nuggets_mining", range(c.dimensions.nuggets_mining)},
                       {"operation_logic", range(c.dimensions.operation_logic)},
                       {"reflexion_at_k", range(c.dimensions.reflexion_at_k)},
                       {"understanding", range(c.dimensions.understanding)},
                       {"reasoning", range(c.dimensions.reasoning)},
                       {"exploration", range(c.dimensions.exploration)},
                       {"reflection", range(c.dimensions.reflection)}}}};
  auto agents = nlohmann::ordered_json::array();
  for (const auto& a : c.agents) agents.push_back(agent_json(a));
  j["agents"] = agents;
  auto corr = nlohmann::ordered_json::array();
  for (const auto& r : c.correlations) {
    corr.push_back({{"agent", r.agent},
                    {"sr_ir", opt(r.sr_ir)},
                    {"sr_oc", opt(r.sr_oc)},
                    {"sr_ir_x_oc", opt(r.sr_iroc)},
                    {"footnotes", r.footnotes}});
  }
  j["correlations"] = corr;
  return j;
}

std::string comparison_text(const ComparisonReport& c) {
  std::string out = "Dimension scores";
  out += c.dimensions.degenerate ? " (single agent: raw values, not standardized)\n\n" : " (min-max across agents)\n\n";
  std::vector<std::vector<std::string>> rows = {{"agent", "understanding", "reasoning", "exploration", "reflection"}};
  for (const auto& d : c.dimensions.rows) {
    rows.push_back({d.agent, fmt(d.understanding), fmt(d.reasoning), fmt(d.exploration), fmt(d.reflection)});
  }
  out += table(rows);
  out += "\nConstraint violation ratios\n\n";
  rows = {{"agent", "app-level", "page-level", "component-level"}};
  for (const auto& a : c.agents) {
    std::vector<std::string> row = {a.agent};
    for (auto l : kLevels) {
      auto it = a.violation_ratio.find(l);
      row.push_back(it == a.violation_ratio.end() ? "-" : fmt(it->second));
    }
    rows.push_back(row);
  }
  out += table(rows);
  out += "\nCorrelation of SR with app complexity\n\n";
  rows = {{"agent", "PCC(SR,IR)", "PCC(SR,OC)", "PCC(SR,IRxOC)"}};
  std::vector<std::string> notes;
  for (const auto& r : c.correlations) {
    rows.push_back({r.agent, fmt(r.sr_ir), fmt(r.sr_oc), fmt(r.sr_iroc)});
    for (const auto& f : r.footnotes) notes.push_back(r.agent + ": " + f);
  }
  out += table(rows);
  if (!notes.empty()) {
    out += "\n";
    for (std::size_t i = 0; i < notes.size(); ++i) out += "[" + std::to_string(i + 1) + "] " + notes[i] + "\n";
  }
  return out;
}

}  // namespace mobench
