#include "emeval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "emeval/image_io.hpp"
#include "emeval/parallel.hpp"

namespace emeval {

using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double round_to_report_precision(double v) { return std::strtod(format_score(v).c_str(), nullptr); }

json config_json(const RunConfig& cfg) {
  return {{"manifest", cfg.manifest.generic_string()},
          {"measures", cfg.measures},
          {"threshold", cfg.threshold.to_string()},
          {"seed", cfg.seed},
          {"jobs", cfg.jobs},
          {"format", cfg.format == ReportFormat::kCsv ? "csv" : "json"},
          {"keep_fraction", cfg.keep_fraction}};
}

template <typename Writer>
void write_to(const std::filesystem::path& path, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EvalError("cannot write report to " + path.string());
  writer(out);
  if (!out) throw EvalError("error while writing " + path.string());
}

void require_file(const std::filesystem::path& p) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(p, ec)) throw EvalError("file not found: " + p.string());
}

std::vector<Measure> measures_of(const RunConfig& cfg) {
  if (cfg.measures.empty()) throw EvalError("at least one measure id is required");
  std::vector<Measure> out;
  for (const auto& id : cfg.measures) out.push_back(Measure::parse(id));
  return out;
}

}  // namespace

ThresholdMode ThresholdMode::parse(const std::string& s) {
  ThresholdMode m;
  if (s == "asis") {
    m.kind = Kind::kAsIs;
  } else if (s == "adaptive") {
    m.kind = Kind::kAdaptive;
  } else if (s.starts_with("fixed:")) {
    m.kind = Kind::kFixed;
    const std::string v = s.substr(6);
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), m.threshold);
    if (ec != std::errc() || ptr != v.data() + v.size() || !(m.threshold >= 0.0) ||
        !(m.threshold <= 1.0)) {
      throw EvalError("fixed threshold must be a number in [0,1]: '" + s + "'");
    }
  } else {
    throw EvalError("unknown threshold mode '" + s + "' (asis | fixed:<t> | adaptive)");
  }
  return m;
}

std::string ThresholdMode::to_string() const {
  switch (kind) {
    case Kind::kAsIs:
      return "asis";
    case Kind::kAdaptive:
      return "adaptive";
    case Kind::kFixed:
      return "fixed:" + format_real(threshold);
  }
  return "adaptive";
}

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "json") return ReportFormat::kJson;
  throw EvalError("unknown report format '" + s + "' (csv | json)");
}

BinaryMap load_model_map(const std::filesystem::path& path, const ThresholdMode& mode) {
  switch (mode.kind) {
    case ThresholdMode::Kind::kAsIs:
      return load_binary(path);
    case ThresholdMode::Kind::kFixed:
      return binarize_fixed(load_gray(path), mode.threshold);
    case ThresholdMode::Kind::kAdaptive:
      break;
  }
  return binarize_adaptive(load_gray(path));
}

BatchResult run_score_batch(const RunConfig& cfg) {
  const auto measures = measures_of(cfg);
  const Manifest manifest = load_manifest(cfg.manifest);

  struct Task {
    const ManifestImage* image;
    const ManifestMap* map;
  };
  std::vector<Task> tasks;
  for (const auto& img : manifest.images) {
    require_file(manifest.resolve(img.gt));
    for (const auto& mp : img.maps) {
      require_file(manifest.resolve(mp.path));
      tasks.push_back({&img, &mp});
    }
  }

  std::vector<std::vector<ScoreRecord>> slots(tasks.size());
  std::vector<std::string> slot_errors(tasks.size());
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    const BinaryMap gt = load_binary(manifest.resolve(t.image->gt));
    const BinaryMap fm = load_model_map(manifest.resolve(t.map->path), cfg.threshold);
    if (gt.dims() != fm.dims()) {
      slot_errors[i] = "image '" + t.image->id + "' model '" + t.map->model +
                       "': dimension mismatch " + gt.dims().to_string() + " vs " +
                       fm.dims().to_string();
      return;
    }
    for (const auto& m : measures) {
      auto outcome = m.evaluate(gt, fm);
      outcome.params["model"] = t.map->model;
      slots[i].push_back({t.image->id, m.id(), outcome.score, outcome.degenerate,
                          std::move(outcome.params)});
    }
  });

  BatchResult result;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (auto& r : slots[i]) result.records.push_back(std::move(r));
    if (!slot_errors[i].empty()) result.errors.push_back(slot_errors[i]);
  }
  auto key = [](const ScoreRecord& r) {
    const auto it = r.params.find("model");
    return std::tie(r.image_id, r.measure, it->second);
  };
  std::stable_sort(result.records.begin(), result.records.end(),
                   [&](const ScoreRecord& a, const ScoreRecord& b) { return key(a) < key(b); });
  return result;
}

std::vector<CandidateSet> load_candidate_sets(const Manifest& m, const ThresholdMode& mode) {
  std::vector<CandidateSet> sets;
  for (const auto& img : m.images) {
    if (img.maps.empty()) continue;
    CandidateSet s;
    s.image_id = img.id;
    s.gt = load_binary(m.resolve(img.gt));
    for (const auto& mp : img.maps) {
      s.models.push_back({mp.model, load_model_map(m.resolve(mp.path), mode)});
    }
    s.validate();
    sets.push_back(std::move(s));
  }
  return sets;
}

std::vector<HumanRankedTriple> load_triples(const Manifest& m, const ThresholdMode& mode) {
  std::vector<HumanRankedTriple> out;
  for (const auto& t : m.triples) {
    HumanRankedTriple h;
    h.image_id = t.id;
    h.gt = load_binary(m.resolve(t.gt));
    for (int k = 0; k < 3; ++k) {
      h.maps[k] = load_model_map(m.resolve(t.maps[k]), mode);
      require_same_dims(h.gt.dims(), h.maps[k].dims(), ("triple '" + t.id + "'").c_str());
    }
    h.human_rank = t.human_rank;
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<MetaResult> run_meta(const RunConfig& cfg, const std::string& meta_id) {
  const auto measures = measures_of(cfg);
  if (meta_id != "mm2" && meta_id != "mm3" && meta_id != "mm4" && meta_id != "mm5") {
    throw EvalError("unknown meta-measure '" + meta_id + "' (mm2 | mm3 | mm4 | mm5)");
  }
  const Manifest manifest = load_manifest(cfg.manifest);
  std::vector<MetaResult> results;

  if (meta_id == "mm4") {
    if (manifest.triples.empty()) throw EvalError("mm4 needs a 'triples' section in the manifest");
    const auto triples = load_triples(manifest, cfg.threshold);
    for (const auto& m : measures) results.push_back(mm4_human_theta(triples, m, cfg.jobs));
    return results;
  }

  const auto sets = load_candidate_sets(manifest, cfg.threshold);
  if (sets.empty()) throw EvalError(meta_id + " needs images with model maps in the manifest");
  for (const auto& m : measures) {
    if (meta_id == "mm5") {
      results.push_back(mm5_gt_switch_rate(sets, m, cfg.seed, cfg.jobs));
      continue;
    }
    const auto selected = restrict_to(sets, select_good_images(sets, m, cfg.keep_fraction));
    MetaOptions opts = cfg.meta;
    opts.jobs = cfg.jobs;
    const auto source = meta_id == "mm2" ? TrivialMapSource::kGeneric : TrivialMapSource::kNoise;
    results.push_back(misrank_rate(selected, source, m, cfg.seed, opts));
  }
  return results;
}

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string params_to_string(const std::map<std::string, std::string>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

void write_csv(const std::vector<ScoreRecord>& records, std::ostream& out) {
  out << "image_id,measure,score,degenerate,params\n";
  for (const auto& r : records) {
    out << csv_field(r.image_id) << ',' << csv_field(r.measure) << ',' << format_score(r.score)
        << ',' << (r.degenerate ? "true" : "false") << ',' << csv_field(params_to_string(r.params))
        << '\n';
  }
}

void write_json(const std::vector<ScoreRecord>& records, const RunConfig& cfg, std::ostream& out) {
  json doc;
  doc["tool"] = "emeval";
  doc["version"] = kToolVersion;
  doc["seed"] = cfg.seed;
  doc["config"] = config_json(cfg);
  doc["records"] = json::array();
  for (const auto& r : records) {
    doc["records"].push_back({{"image_id", r.image_id},
                              {"measure", r.measure},
                              {"score", round_to_report_precision(r.score)},
                              {"degenerate", r.degenerate},
                              {"params", r.params}});
  }
  out << doc.dump(2) << '\n';
}

void emit_report(const std::vector<ScoreRecord>& records, const RunConfig& cfg) {
  if (records.empty()) throw EvalError("no score records to report");
  write_to(cfg.out, [&](std::ostream& os) {
    if (cfg.format == ReportFormat::kCsv) {
      write_csv(records, os);
    } else {
      write_json(records, cfg, os);
    }
  });
}

std::vector<ScoreRecord> parse_json_records(const std::string& json_text) {
  const json doc = json::parse(json_text);
  std::vector<ScoreRecord> out;
  for (const json& r : doc.at("records")) {
    ScoreRecord rec;
    rec.image_id = r.at("image_id").get<std::string>();
    rec.measure = r.at("measure").get<std::string>();
    rec.score = r.at("score").get<double>();
    rec.degenerate = r.at("degenerate").get<bool>();
    rec.params = r.at("params").get<std::map<std::string, std::string>>();
    out.push_back(std::move(rec));
  }
  return out;
}

void write_meta_csv(const std::vector<MetaResult>& results, std::ostream& out) {
  out << "meta,measure,value,count,population,seed\n";
  for (const auto& r : results) {
    out << r.meta_id << ',' << csv_field(r.measure_id) << ',' << format_score(r.value) << ','
        << r.count << ',' << r.population << ',' << r.seed << '\n';
  }
}

void write_meta_json(const std::vector<MetaResult>& results, const RunConfig& cfg,
                     std::ostream& out) {
  json doc;
  doc["tool"] = "emeval";
  doc["version"] = kToolVersion;
  doc["seed"] = cfg.seed;
  doc["config"] = config_json(cfg);
  doc["results"] = json::array();
  for (const auto& r : results) {
    doc["results"].push_back({{"meta", r.meta_id},
                              {"measure", r.measure_id},
                              {"value", round_to_report_precision(r.value)},
                              {"count", r.count},
                              {"population", r.population},
                              {"seed", r.seed}});
  }
  out << doc.dump(2) << '\n';
}

void emit_meta_report(const std::vector<MetaResult>& results, const RunConfig& cfg) {
  write_to(cfg.out, [&](std::ostream& os) {
    if (cfg.format == ReportFormat::kCsv) {
      write_meta_csv(results, os);
    } else {
      write_meta_json(results, cfg, os);
    }
  });
}

}  // namespace emeval
