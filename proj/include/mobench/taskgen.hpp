#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobench/backend.hpp"

namespace mobench {

struct QuerySet {
  std::vector<std::string> apps;
  std::vector<std::string> queries;
};

// 11 single-app templates for one app, 6 cross-app templates for two; throws ArityError.
QuerySet build_queries(const std::vector<std::string>& apps);

struct Document {
  std::string id;
  std::string title;
  std::string text;
};

struct ScoredDocument {
  const Document* doc = nullptr;
  double score = 0;
};

// Okapi BM25 over lowercase word tokens. Ties go to the smaller document id.
class RetrievalIndex {
 public:
  void add(Document doc);
  std::size_t size() const { return docs_.size(); }
  const std::vector<Document>& documents() const { return docs_; }
  std::vector<ScoredDocument> search(std::string_view query, std::size_t top_k) const;

 private:
  std::vector<Document> docs_;
  std::vector<std::map<std::string, std::size_t>> tf_;
  std::vector<std::size_t> lengths_;
  std::map<std::string, std::size_t> df_;
  std::size_t total_length_ = 0;
};

// Every regular file in dir (sorted by name) becomes a document: id is the
// file stem, title the first non-empty line.
RetrievalIndex load_corpus(const std::filesystem::path& dir);

std::string extraction_prompt(std::string_view apps, const std::vector<const Document*>& docs);
// Throws EmptyIndex. Returns the distinct functionality lines in first-seen order.
std::vector<std::string> extract_functionalities(const std::vector<std::string>& apps, const RetrievalIndex& index,
                                                 AgentBackend& backend, std::size_t top_k);

std::string instruction_prompt(std::string_view app, std::string_view feature);
// Splits a completion into single-sentence instructions, keeping <placeholders>.
std::vector<std::string> split_instructions(std::string_view response);
// Throws EmptyResponse when the completion yields no instruction.
std::vector<std::string> generate_instructions(std::string_view app, std::string_view functionality,
                                               AgentBackend& backend);

enum class EvolveMode { in_depth, in_breadth };
std::string_view evolve_mode_name(EvolveMode m);
EvolveMode evolve_mode_from_name(std::string_view name);
std::string evolve_prompt(EvolveMode mode, std::string_view app, std::string_view instruction);

enum class CandidateStatus { raw, evolved, filtered_out, exported };
std::string_view candidate_status_name(CandidateStatus s);

struct TaskCandidate {
  std::string instruction;
  std::vector<std::string> apps;
  std::string functionality;         // extraction output at the root of the chain
  std::size_t round = 0;             // 0 for generated, r for the r-th evolution
  std::vector<EvolveMode> modes;     // evolution modes from the root, in order
  std::optional<std::size_t> parent; // index of the candidate this one evolved from
  CandidateStatus status = CandidateStatus::raw;
};

// Round r evolves the outputs of round r-1 (the inputs for r = 1) with
// modes[(r-1) % modes.size()]. Returns inputs followed by new candidates;
// exact duplicates are skipped and in-depth rewrites must keep the parent's
// placeholders.
std::vector<TaskCandidate> evolve(std::vector<TaskCandidate> candidates, AgentBackend& backend,
                                  const std::vector<EvolveMode>& modes, std::size_t rounds);

std::vector<std::string> instruction_tokens(std::string_view text);
double jaccard(std::string_view a, std::string_view b);
// Marks a candidate filtered_out when its similarity to an earlier kept one exceeds threshold.
void dedup_filter(std::vector<TaskCandidate>& candidates, double threshold = 0.85);

// Writes the kept candidates as a task array (empty gold, 15 or 30 steps) and
// marks them exported. Throws IoError.
void export_tasks(std::vector<TaskCandidate>& candidates, const std::filesystem::path& destination);

// Offline backend answering the three taskgen prompt kinds deterministically.
class TemplateTaskgenBackend : public AgentBackend {
 public:
  std::string complete(const std::string& prompt) override;
  std::string label() const override { return "template"; }
};

}  // namespace mobench
