#include "mobench/taskgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <json.hpp>

#include "mobench/error.hpp"
#include "mobench/task.hpp"
#include "mobench/text.hpp"

namespace mobench {

namespace {

constexpr std::string_view kSingleAppQueries[] = {
    "how to use {app_name}",
    "{app_name} usage instructions",
    "{app_name} quick start guides",
    "{app_name} cheat sheets",
    "{app_name} productivity guides",
    "use {app_name} step-by-step",
    "tips and tricks for {app_name}",
    "{app_name} for beginners",
    "{app_name} tutorial",
    "getting started with {app_name}",
    "introduction to {app_name}",
};

constexpr std::string_view kCrossAppQueries[] = {
    "{app_name1} and {app_name2} collaboration features",
    "How to use {app_name1} and {app_name2} together for tasks",
    "Integration between {app_name1} and {app_name2} for productivity",
    "Collaborative task management with {app_name1} and {app_name2}",
    "{app_name1} and {app_name2} integration for work and productivity",
    "Productivity tips with {app_name1} and {app_name2}",
};

constexpr std::string_view kInstructionTemplate =
    "You are a smart task creator for a smartphone intelligent assistant. Given the features description of the "
    "{app} APP, your goal is to generate clear and practical tasks that the assistant can assist people with while "
    "they use {app} on their phone in their daily lives. These tasks should encompass a wide range of possible "
    "instructions and questions that may arise when using {app} APP.\n"
    "\n"
    "For example, for the Gmail APP, potential task instructions could include:\n"
    "Compose an email with the subject <email subject> and the message content <email content> to be sent to "
    "<email address> using Gmail., \n"
    "Send the first draft email., \n"
    "Open the latest email from <email address> in Gmail., \n"
    "Open Gmail settings., \n"
    "Turn off notifications for Gmail., \n"
    "Star the latest email from <email address> in Gmail., \n"
    "Delete the latest email from <email address> in Gmail., \n"
    "etc., where the placeholders surrounded with angle brackets '<' and '>' should be automated generated and not "
    "be filled with specific content.\n"
    "\n"
    "The {app} APP's feature description is: \n"
    "{feature}\n"
    "\n"
    "Your task is to generate as many of these tasks as possible for the {app} app. Ensure that these instructions "
    "are clear and will not lead to any misunderstanding so that the assitant can successfully execute them.\n"
    "Your response should be a list of comma separated task instructions, where each instruction should be "
    "presented in one sentence.";

constexpr std::string_view kExtractionHeader =
    "You are reading help articles about smartphone apps. List the distinct features of {apps} that a user can "
    "operate on the phone, as described in the documents below. Write one short feature name per line and nothing "
    "else.\n\n";

constexpr std::string_view kInDepthTemplate =
    "Rewrite the following task instruction for the {app} app so that it becomes more complex and challenging: it "
    "should need more steps or add a condition, while remaining one clear sentence a phone user could ask for. Keep "
    "every placeholder in angle brackets, such as <email address>, exactly as written.\n\n"
    "Instruction: {instruction}\n\nRewritten instruction:";

constexpr std::string_view kInBreadthTemplate =
    "Write a new task instruction for the {app} app that uses a different feature from the one below, so that the "
    "set of tasks covers more of the app. Keep a similar length and difficulty, write one clear sentence, and use "
    "placeholders in angle brackets for any user-specific content.\n\n"
    "Instruction: {instruction}\n\nNew instruction:";

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      cur += static_cast<char>(std::tolower(u));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string strip_list_marker(std::string s) {
  s = trim(s);
  if (starts_with(s, "- ") || starts_with(s, "* ")) return trim(s.substr(2));
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i > 0 && i + 1 < s.size() && (s[i] == '.' || s[i] == ')') && s[i + 1] == ' ') return trim(s.substr(i + 2));
  return s;
}

std::vector<std::string> placeholders(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = s.find('<', pos)) != std::string_view::npos) {
    const auto end = s.find('>', pos);
    if (end == std::string_view::npos) break;
    out.emplace_back(s.substr(pos, end - pos + 1));
    pos = end + 1;
  }
  return out;
}

std::string first_line(std::string_view s) {
  for (const auto& line : split(s, '\n')) {
    auto t = trim(line);
    if (!t.empty()) return t;
  }
  return {};
}

}  // namespace

QuerySet build_queries(const std::vector<std::string>& apps) {
  QuerySet q;
  q.apps = apps;
  if (apps.size() == 1) {
    for (auto t : kSingleAppQueries) q.queries.push_back(replace_all(std::string(t), "{app_name}", apps[0]));
  } else if (apps.size() == 2) {
    for (auto t : kCrossAppQueries) {
      auto s = replace_all(std::string(t), "{app_name1}", apps[0]);
      q.queries.push_back(replace_all(std::move(s), "{app_name2}", apps[1]));
    }
  } else {
    throw Error(Errc::arity_error, "queries take one or two apps, got " + std::to_string(apps.size()));
  }
  return q;
}

void RetrievalIndex::add(Document doc) {
  std::map<std::string, std::size_t> tf;
  const auto toks = words(doc.title + "\n" + doc.text);
  for (const auto& w : toks) ++tf[w];
  for (const auto& [w, n] : tf) ++df_[w];
  lengths_.push_back(toks.size());
  total_length_ += toks.size();
  tf_.push_back(std::move(tf));
  docs_.push_back(std::move(doc));
}

std::vector<ScoredDocument> RetrievalIndex::search(std::string_view query, std::size_t top_k) const {
  constexpr double k1 = 1.2;
  constexpr double b = 0.75;
  std::vector<ScoredDocument> out;
  if (docs_.empty() || top_k == 0) return out;
  const double n = static_cast<double>(docs_.size());
  const double avg = static_cast<double>(total_length_) / n;
  auto terms = words(query);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    double score = 0;
    for (const auto& t : terms) {
      auto it = tf_[d].find(t);
      if (it == tf_[d].end()) continue;
      const double df = static_cast<double>(df_.at(t));
      const double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
      const double f = static_cast<double>(it->second);
      score += idf * f * (k1 + 1) / (f + k1 * (1 - b + b * static_cast<double>(lengths_[d]) / (avg > 0 ? avg : 1)));
    }
    out.push_back({&docs_[d], score});
  }
  std::sort(out.begin(), out.end(), [](const ScoredDocument& x, const ScoredDocument& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.doc->id < y.doc->id;
  });
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

RetrievalIndex load_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(Errc::io_error, "corpus directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  RetrievalIndex index;
  for (const auto& f : files) {
    Document d;
    d.id = f.stem().string();
    d.text = read_file(f);
    d.title = first_line(d.text);
    index.add(std::move(d));
  }
  return index;
}

std::string extraction_prompt(std::string_view apps, const std::vector<const Document*>& docs) {
  std::string out = replace_all(std::string(kExtractionHeader), "{apps}", apps);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out += "Document " + std::to_string(i + 1) + ": " + docs[i]->title + "\n" + docs[i]->text;
    if (!ends_with(out, "\n")) out += "\n";
    out += "\n";
  }
  out += "Features:";
  return out;
}

std::vector<std::string> extract_functionalities(const std::vector<std::string>& apps, const RetrievalIndex& index,
                                                 AgentBackend& backend, std::size_t top_k) {
  if (index.size() == 0) throw Error(Errc::empty_index, "retrieval index has no documents");
  const auto queries = build_queries(apps);
  std::vector<std::string> out;
  std::set<std::string> seen;
  if (top_k == 0) return out;
  const auto app_text = join(apps, " and ");
  for (const auto& q : queries.queries) {
    std::vector<const Document*> docs;
    for (const auto& hit : index.search(q, top_k)) docs.push_back(hit.doc);
    for (const auto& line : split(backend.complete(extraction_prompt(app_text, docs)), '\n')) {
      auto f = strip_list_marker(line);
      if (f.empty()) continue;
      if (seen.insert(to_lower(collapse_whitespace(f))).second) out.push_back(f);
    }
  }
  return out;
}

std::string instruction_prompt(std::string_view app, std::string_view feature) {
  auto s = replace_all(std::string(kInstructionTemplate), "{app}", app);
  return replace_all(std::move(s), "{feature}", feature);
}

std::vector<std::string> split_instructions(std::string_view response) {
  std::vector<std::string> pieces;
  const std::string text(response);
  if (text.find(".,") != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const auto pos = text.find(".,", start);
      if (pos == std::string::npos) {
        pieces.push_back(text.substr(start));
        break;
      }
      pieces.push_back(text.substr(start, pos + 1 - start));
      start = pos + 2;
    }
  } else {
    auto lines = split(text, '\n');
    lines.erase(std::remove_if(lines.begin(), lines.end(), [](const std::string& l) { return trim(l).empty(); }),
                lines.end());
    if (lines.size() > 1) {
      pieces = lines;
    } else {
      std::size_t start = 0;
      while (true) {
        const auto pos = text.find(", ", start);
        if (pos == std::string::npos) {
          pieces.push_back(text.substr(start));
          break;
        }
        pieces.push_back(text.substr(start, pos - start));
        start = pos + 2;
      }
    }
  }
  std::vector<std::string> out;
  for (auto& p : pieces) {
    for (const auto& line : split(p, '\n')) {
      auto s = strip_list_marker(line);
      while (!s.empty() && s.back() == ',') s = trim(s.substr(0, s.size() - 1));
      if (s.empty()) continue;
      const auto low = to_lower(s);
      if (low == "etc" || low == "etc." || starts_with(low, "etc.,") || starts_with(low, "etc., ")) continue;
      if (s.back() != '.' && s.back() != '?' && s.back() != '!') s += '.';
      out.push_back(s);
    }
  }
  return out;
}

std::vector<std::string> generate_instructions(std::string_view app, std::string_view functionality,
                                               AgentBackend& backend) {
  auto out = split_instructions(backend.complete(instruction_prompt(app, functionality)));
  if (out.empty()) throw Error(Errc::empty_response, "no instructions generated for '" + std::string(functionality) + "'");
  return out;
}

std::string_view evolve_mode_name(EvolveMode m) { return m == EvolveMode::in_depth ? "in-depth" : "in-breadth"; }

EvolveMode evolve_mode_from_name(std::string_view name) {
  if (name == "in-depth") return EvolveMode::in_depth;
  if (name == "in-breadth") return EvolveMode::in_breadth;
  throw Error(Errc::config_error, "unknown evolution mode '" + std::string(name) + "'");
}

std::string evolve_prompt(EvolveMode mode, std::string_view app, std::string_view instruction) {
  auto s = std::string(mode == EvolveMode::in_depth ? kInDepthTemplate : kInBreadthTemplate);
  s = replace_all(std::move(s), "{app}", app);
  return replace_all(std::move(s), "{instruction}", instruction);
}

std::string_view candidate_status_name(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::raw: return "raw";
    case CandidateStatus::evolved: return "evolved";
    case CandidateStatus::filtered_out: return "filtered-out";
    case CandidateStatus::exported: return "exported";
  }
  return "raw";
}

std::vector<TaskCandidate> evolve(std::vector<TaskCandidate> candidates, AgentBackend& backend,
                                  const std::vector<EvolveMode>& modes, std::size_t rounds) {
  if (rounds == 0) throw Error(Errc::config_error, "evolution needs at least one round");
  if (modes.empty()) throw Error(Errc::config_error, "evolution needs at least one mode");
  std::set<std::string> seen;
  for (const auto& c : candidates) seen.insert(collapse_whitespace(c.instruction));
  std::vector<std::size_t> frontier(candidates.size());
  for (std::size_t i = 0; i < frontier.size(); ++i) frontier[i] = i;

  for (std::size_t r = 1; r <= rounds; ++r) {
    const auto mode = modes[(r - 1) % modes.size()];
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      const TaskCandidate parent = candidates[idx];
      auto text = first_line(backend.complete(evolve_prompt(mode, join(parent.apps, " and "), parent.instruction)));
      for (std::string_view prefix : {"Rewritten instruction:", "New instruction:", "Instruction:"}) {
        if (starts_with(text, prefix)) text = trim(text.substr(prefix.size()));
      }
      text = collapse_whitespace(text);
      if (text.empty() || !seen.insert(text).second) continue;
      if (mode == EvolveMode::in_depth) {
        bool kept = true;
        for (const auto& p : placeholders(parent.instruction)) kept = kept && text.find(p) != std::string::npos;
        if (!kept) continue;
      }
      TaskCandidate child;
      child.instruction = text;
      child.apps = parent.apps;
      child.functionality = parent.functionality;
      child.round = r;
      child.modes = parent.modes;
      child.modes.push_back(mode);
      child.parent = idx;
      child.status = CandidateStatus::evolved;
      next.push_back(candidates.size());
      candidates.push_back(std::move(child));
    }
    frontier = std::move(next);
  }
  return candidates;
}

std::vector<std::string> instruction_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<') {
      const auto end = text.find('>', i);
      if (end != std::string_view::npos) {
        out.push_back(to_lower(collapse_whitespace(text.substr(i, end - i + 1))));
        i = end + 1;
        continue;
      }
    }
    const auto u = static_cast<unsigned char>(text[i]);
    if (std::isalnum(u) || u >= 0x80) {
      std::string w;
      while (i < text.size() && text[i] != '<' &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || static_cast<unsigned char>(text[i]) >= 0x80)) {
        w += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
        ++i;
      }
      out.push_back(std::move(w));
      continue;
    }
    ++i;
  }
  return out;
}

double jaccard(std::string_view a, std::string_view b) {
  const auto ta = instruction_tokens(a);
  const auto tb = instruction_tokens(b);
  const std::set<std::string> sa(ta.begin(), ta.end());
  const std::set<std::string> sb(tb.begin(), tb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& w : sa) common += sb.count(w);
  return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

void dedup_filter(std::vector<TaskCandidate>& candidates, double threshold) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].status == CandidateStatus::filtered_out) continue;
    bool dup = false;
    for (std::size_t k : kept) {
      if (jaccard(candidates[k].instruction, candidates[i].instruction) > threshold) {
        dup = true;
        break;
      }
    }
    if (dup) {
      candidates[i].status = CandidateStatus::filtered_out;
    } else {
      kept.push_back(i);
    }
  }
}

void export_tasks(std::vector<TaskCandidate>& candidates, const std::filesystem::path& destination) {
  nlohmann::json tasks = nlohmann::json::array();
  std::size_t n = 0;
  for (auto& c : candidates) {
    if (c.status == CandidateStatus::filtered_out) continue;
    TaskSpec t;
    char id[32];
    std::snprintf(id, sizeof id, "gen-%04zu", ++n);
    t.id = id;
    t.task_type = c.apps.size() >= 2 ? TaskType::cross_app : TaskType::single_app;
    t.instruction = c.instruction;
    t.apps = c.apps;
    t.max_steps = default_max_steps(t.task_type);
    auto j = task_to_json(t);
    nlohmann::json lineage = {{"functionality", c.functionality}, {"round", c.round}};
    nlohmann::json modes = nlohmann::json::array();
    for (auto m : c.modes) modes.push_back(std::string(evolve_mode_name(m)));
    lineage["modes"] = modes;
    j["lineage"] = lineage;
    tasks.push_back(j);
  }
  try {
    write_file_atomic(destination, tasks.dump(2) + "\n");
  } catch (const std::filesystem::filesystem_error& e) {
    throw Error(Errc::io_error, e.what());
  }
  for (auto& c : candidates) {
    if (c.status != CandidateStatus::filtered_out) c.status = CandidateStatus::exported;
  }
}

std::string TemplateTaskgenBackend::complete(const std::string& prompt) {
  if (starts_with(prompt, "You are reading help articles")) {
    std::string out;
    for (const auto& line : split(prompt, '\n')) {
      if (!starts_with(line, "Document ")) continue;
      const auto colon = line.find(": ");
      if (colon != std::string::npos) out += line.substr(colon + 2) + "\n";
    }
    return out;
  }
  if (starts_with(prompt, "You are a smart task creator")) {
    const auto app_start = prompt.find("The ", prompt.find("be filled with specific content."));
    const auto app_end = prompt.find(" APP's feature description is:", app_start);
    const std::string app = prompt.substr(app_start + 4, app_end - app_start - 4);
    const auto feat_start = prompt.find('\n', app_end) + 1;
    const std::string feature = trim(prompt.substr(feat_start, prompt.find('\n', feat_start) - feat_start));
    return "Open " + feature + " in " + app + "., Use " + feature + " in " + app + " for <item name>.";
  }
  const auto at = prompt.rfind("Instruction: ");
  if (at == std::string::npos) return "";
  const auto end = prompt.find('\n', at);
  std::string instr = trim(prompt.substr(at + 13, end - at - 13));
  if (!instr.empty() && instr.back() == '.') instr.pop_back();
  if (starts_with(prompt, "Rewrite")) return instr + ", and then share the result with <contact name>.";
  return "Check the settings related to this task: " + instr + ".";
}

}  // namespace mobench
