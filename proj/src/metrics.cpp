#include "mobench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mobench/error.hpp"
#include "mobench/text.hpp"

namespace mobench {

Alignment lcs_align(std::span<const CanonicalAction> gold, std::span<const CanonicalAction> exec) {
  return lcs_align(gold, exec, [](const CanonicalAction& a, const CanonicalAction& b) { return action_equal(a, b); });
}

double task_reward(const Alignment& al, double gamma, bool normalized) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(Errc::gamma_out_of_range, "gamma must lie in [0,1]");
  const std::size_t L = al.gold_len;
  if (L == 0 || al.pairs.empty()) return 0.0;
  double raw = 0.0;
  for (const auto& [i, j] : al.pairs) raw += std::pow(gamma, static_cast<double>(L - i));
  if (!normalized) return raw;
  double denom = 0.0;
  for (std::size_t i = 1; i <= L; ++i) denom += std::pow(gamma, static_cast<double>(L - i));
  return raw / denom;
}

double completion_ratio(const Alignment& al) {
  if (al.gold_len == 0) return 0.0;
  return static_cast<double>(al.last_gold()) / static_cast<double>(al.gold_len);
}

double redundancy(std::size_t gold_len, std::size_t executed_len) {
  if (executed_len == 0) return 0.0;
  return std::min(1.0, static_cast<double>(gold_len) / static_cast<double>(executed_len));
}

namespace {

void require_steps(const Trajectory& t) {
  if (t.steps.empty()) throw Error(Errc::empty_trajectory, "trajectory " + t.task_id + " has no steps");
}

}  // namespace

double invalid_format_ratio(const Trajectory& t) {
  require_steps(t);
  const auto n = std::count_if(t.steps.begin(), t.steps.end(), [](const auto& s) { return s.is_format_error(); });
  return static_cast<double>(n) / static_cast<double>(t.steps.size());
}

double invalid_action_ratio(const Trajectory& t) {
  require_steps(t);
  const auto n = std::count_if(t.steps.begin(), t.steps.end(), [](const auto& s) { return s.is_invalid_action(); });
  return static_cast<double>(n) / static_cast<double>(t.steps.size());
}

std::vector<std::size_t> repeat_step_indices(const Trajectory& t) {
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<std::size_t> out;
  for (const auto& s : t.steps) {
    if (!s.action) continue;
    auto key = std::make_pair(s.observation_hash, action_key(*s.action));
    if (!seen.insert(std::move(key)).second) out.push_back(s.index);
  }
  return out;
}

double repeat_action_ratio(const Trajectory& t) {
  require_steps(t);
  return static_cast<double>(repeat_step_indices(t).size()) / static_cast<double>(t.steps.size());
}

std::optional<double> nuggets_mining(const Trajectory& t, const Alignment& al) {
  const auto positions = t.executed_step_positions();
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [gi, ej] : al.pairs) {
    if (ej == 0 || ej > positions.size()) continue;
    const auto& step = t.steps[positions[ej - 1]];
    if (!step.action || !is_component_verb(step.action->verb) || !step.parsed || !step.parsed->target) continue;
    if (step.observation.empty()) continue;
    const std::string marker = "[" + *step.parsed->target + "]";
    std::size_t entry_len = 0;
    for (const auto& line : split(step.observation, '\n')) {
      const auto body = trim(line);
      if (starts_with(body, marker + " ") || body == marker) {
        entry_len = body.size();
        break;
      }
    }
    if (entry_len == 0) continue;
    sum += static_cast<double>(entry_len) / static_cast<double>(step.observation.size());
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> operation_logic(const Alignment& al) {
  if (al.pairs.empty()) return std::nullopt;
  double sum = 0.0;
  std::size_t prev = 0;
  for (const auto& [gi, ej] : al.pairs) {
    const std::size_t w = ej - prev - 1;
    sum += w == 0 ? 1.0 : 1.0 / static_cast<double>(w);
    prev = ej;
  }
  return sum / static_cast<double>(al.pairs.size());
}

std::optional<bool> completion_awareness(const Trajectory& t, const Alignment& al) {
  if (al.gold_len == 0 || al.last_gold() != al.gold_len) return std::nullopt;
  const auto positions = t.executed_step_positions();
  const std::size_t ej = al.pairs.back().second;
  if (ej == 0 || ej > positions.size()) return std::nullopt;
  const std::size_t next = positions[ej - 1] + 1;
  return next < t.steps.size() && t.steps[next].is_finish();
}

std::optional<double> awareness_of_completion(std::span<const std::optional<bool>> per_task) {
  std::size_t reached = 0;
  std::size_t aware = 0;
  for (const auto& v : per_task) {
    if (!v) continue;
    ++reached;
    if (*v) ++aware;
  }
  if (reached == 0) return std::nullopt;
  return static_cast<double>(aware) / static_cast<double>(reached);
}

double reflexion_at_k(std::span<const int> sr) {
  if (sr.size() < 2) throw Error(Errc::too_short, "Reflexion@K needs at least two success values");
  double sum = 0.0;
  for (std::size_t i = 1; i < sr.size(); ++i) sum += sr[i] - sr[i - 1];
  return sum;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(Errc::degenerate_variance, "pearson needs two equal-length samples of size >= 2");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 1e-15 || syy <= 1e-15) throw Error(Errc::degenerate_variance, "zero variance sample");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

Range range_of(const std::vector<double>& v) {
  if (v.empty()) return {};
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

double minmax(double x, const Range& r) {
  const double span = r.max - r.min;
  return span <= 1e-15 ? 0.0 : (x - r.min) / span;
}

}  // namespace

DimensionTable dimension_scores(std::span<const AgentFineGrained> cohort) {
  DimensionTable table;
  const bool single = cohort.size() <= 1;
  table.degenerate = single;

  std::vector<double> nm, ol, rk;
  for (const auto& a : cohort) {
    if (a.nuggets_mining) nm.push_back(*a.nuggets_mining);
    ol.push_back(a.operation_logic.value_or(0.0));
    rk.push_back(a.reflexion_at_k.value_or(0.0));
  }
  table.nuggets_mining = range_of(nm);
  table.operation_logic = range_of(ol);
  table.reflexion_at_k = range_of(rk);

  for (const auto& a : cohort) {
    DimensionScores d;
    d.agent = a.agent;
    double nm_v, ol_v, rk_v;
    if (single) {
      nm_v = a.nuggets_mining.value_or(1.0);
      ol_v = a.operation_logic.value_or(0.0);
      rk_v = a.reflexion_at_k.value_or(0.0);
    } else {
      nm_v = a.nuggets_mining ? minmax(*a.nuggets_mining, table.nuggets_mining) : 1.0;
      ol_v = minmax(a.operation_logic.value_or(0.0), table.operation_logic);
      rk_v = minmax(a.reflexion_at_k.value_or(0.0), table.reflexion_at_k);
    }
    d.raw_understanding = (1.0 - a.invalid_format) + (1.0 - a.invalid_action) + (1.0 - nm_v);
    d.raw_reasoning = ol_v + a.awareness_of_completion.value_or(0.0);
    d.raw_exploration = 1.0 - a.repeat_actions;
    d.raw_reflection = rk_v;
    table.rows.push_back(d);
  }

  auto dim_range = [&](double DimensionScores::*f) {
    std::vector<double> v;
    for (const auto& r : table.rows) v.push_back(r.*f);
    return range_of(v);
  };
  table.understanding = dim_range(&DimensionScores::raw_understanding);
  table.reasoning = dim_range(&DimensionScores::raw_reasoning);
  table.exploration = dim_range(&DimensionScores::raw_exploration);
  table.reflection = dim_range(&DimensionScores::raw_reflection);

  for (auto& r : table.rows) {
    if (single) {
      r.understanding = r.raw_understanding;
      r.reasoning = r.raw_reasoning;
      r.exploration = r.raw_exploration;
      r.reflection = r.raw_reflection;
    } else {
      r.understanding = minmax(r.raw_understanding, table.understanding);
      r.reasoning = minmax(r.raw_reasoning, table.reasoning);
      r.exploration = minmax(r.raw_exploration, table.exploration);
      r.reflection = minmax(r.raw_reflection, table.reflection);
    }
  }
  return table;
}

std::vector<AppComplexity> ir_oc(const std::vector<const SnapshotGraph*>& graphs, std::span<const TaskSpec> tasks,
                                 const std::vector<std::string>& app_keys) {
  std::vector<std::string> keys = app_keys;
  if (keys.empty()) {
    for (const auto& t : tasks) {
      if (std::find(keys.begin(), keys.end(), t.app_key()) == keys.end()) keys.push_back(t.app_key());
    }
  }
  std::vector<AppComplexity> out;
  for (const auto& key : keys) {
    std::size_t gold_total = 0;
    std::size_t n_tasks = 0;
    std::vector<std::string> apps;
    for (const auto& t : tasks) {
      if (t.app_key() != key) continue;
      ++n_tasks;
      gold_total += t.gold_actions.size();
      apps = t.apps;
    }
    if (n_tasks == 0 || gold_total == 0) throw Error(Errc::no_tasks_for_app, "no tasks with gold actions for " + key);

    std::set<std::string> packages;
    for (const auto* g : graphs) {
      for (const auto& a : apps) {
        if (auto p = g->apps().resolve(a)) packages.insert(*p);
      }
    }
    double tokens = 0;
    std::size_t n_states = 0;
    std::set<std::pair<const SnapshotGraph*, std::string>> counted;
    for (const auto* g : graphs) {
      for (const auto& s : g->states()) {
        if (!packages.count(s.app) || !counted.insert({g, s.id}).second) continue;
        tokens += static_cast<double>(s.observation.token_count);
        ++n_states;
      }
    }
    AppComplexity c;
    c.app_key = key;
    c.ir = n_states == 0 ? 0.0 : tokens / static_cast<double>(n_states);
    c.oc = static_cast<double>(n_tasks) / static_cast<double>(gold_total);
    out.push_back(c);
  }
  return out;
}

}  // namespace mobench
