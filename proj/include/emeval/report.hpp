#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "emeval/manifest.hpp"
#include "emeval/meta.hpp"

namespace emeval {

inline constexpr const char* kToolVersion = "1.0.0";

struct ThresholdMode {
  enum class Kind { kAsIs, kFixed, kAdaptive };
  Kind kind = Kind::kAdaptive;
  double threshold = 0.5;

  // "asis" | "fixed:<t>" | "adaptive"
  static ThresholdMode parse(const std::string& s);
  std::string to_string() const;
};

enum class ReportFormat { kCsv, kJson };
ReportFormat parse_report_format(const std::string& s);

struct RunConfig {
  std::filesystem::path manifest;
  std::vector<std::string> measures;
  ThresholdMode threshold;
  std::uint64_t seed = 1;
  int jobs = 1;
  ReportFormat format = ReportFormat::kCsv;
  std::filesystem::path out;
  // Meta runs only.
  double keep_fraction = 0.8;
  MetaOptions meta;
};

struct ScoreRecord {
  std::string image_id;
  std::string measure;
  double score = 0.0;
  bool degenerate = false;
  std::map<std::string, std::string> params;

  bool operator==(const ScoreRecord&) const = default;
};

struct BatchResult {
  std::vector<ScoreRecord> records;
  // One line per skipped (image, model) pair.
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

// Loads a model map from disk and binarizes it per `mode`.
BinaryMap load_model_map(const std::filesystem::path& path, const ThresholdMode& mode);

// One record per (image, model map, measure), sorted by (image id, measure,
// model). Missing files abort with EvalError naming the file; mismatched
// dimensions skip the pair and are listed in `errors`.
BatchResult run_score_batch(const RunConfig& cfg);

// Candidate sets / triples loaded from a manifest.
std::vector<CandidateSet> load_candidate_sets(const Manifest& m, const ThresholdMode& mode);
std::vector<HumanRankedTriple> load_triples(const Manifest& m, const ThresholdMode& mode);

// meta_id in {mm2, mm3, mm4, mm5}; one result per measure, in cfg order.
// mm2/mm3 first keep the best cfg.keep_fraction of images per measure.
std::vector<MetaResult> run_meta(const RunConfig& cfg, const std::string& meta_id);

// Scores are written with 12 significant digits.
std::string format_score(double v);
std::string params_to_string(const std::map<std::string, std::string>& params);

void write_csv(const std::vector<ScoreRecord>& records, std::ostream& out);
void write_json(const std::vector<ScoreRecord>& records, const RunConfig& cfg, std::ostream& out);
void emit_report(const std::vector<ScoreRecord>& records, const RunConfig& cfg);

std::vector<ScoreRecord> parse_json_records(const std::string& json_text);

void write_meta_csv(const std::vector<MetaResult>& results, std::ostream& out);
void write_meta_json(const std::vector<MetaResult>& results, const RunConfig& cfg,
                     std::ostream& out);
void emit_meta_report(const std::vector<MetaResult>& results, const RunConfig& cfg);

}  // namespace emeval
