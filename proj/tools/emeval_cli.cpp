// emeval: batch scoring, meta-measure runs and synthetic corpora for binary
// foreground-map evaluation.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "emeval/measures.hpp"
#include "emeval/oracle/selftest.hpp"
#include "emeval/report.hpp"
#include "emeval/synth.hpp"

namespace {

emeval::Dimensions parse_size(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw emeval::EvalError("size must be WxH, got '" + s + "'");
  try {
    return emeval::Dimensions(std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1)));
  } catch (const std::logic_error&) {
    throw emeval::EvalError("size must be WxH, got '" + s + "'");
  }
}

struct CommonFlags {
  std::string manifest;
  std::string measures = "emeasure";
  std::string threshold = "adaptive";
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string format = "csv";
  std::string out = "-";

  void attach(CLI::App* app) {
    app->add_option("--manifest", manifest, "Corpus manifest (JSON)")->required();
    app->add_option("--measures", measures,
                    "Comma-separated measure ids: emeasure, f1, fbeta:<b>, iou, fbw")
        ->capture_default_str();
    app->add_option("--threshold", threshold, "asis | fixed:<t> | adaptive")
        ->capture_default_str();
    app->add_option("--seed", seed, "Master seed")->capture_default_str();
    app->add_option("--jobs", jobs, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--format", format, "csv | json")->capture_default_str();
    app->add_option("--out", out, "Output path ('-' for stdout)")->capture_default_str();
  }

  emeval::RunConfig config() const {
    emeval::RunConfig cfg;
    cfg.manifest = manifest;
    for (const auto& m : emeval::parse_measure_list(measures)) cfg.measures.push_back(m.id());
    cfg.threshold = emeval::ThresholdMode::parse(threshold);
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.format = emeval::parse_report_format(format);
    cfg.out = out;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary foreground map evaluation toolkit"};
  app.set_version_flag("--version", std::string(emeval::kToolVersion));
  app.require_subcommand(1);

  CommonFlags score_flags;
  auto* score = app.add_subcommand("score", "Score every model map against its ground truth");
  score_flags.attach(score);

  CommonFlags meta_flags;
  std::string meta_id;
  double keep = 0.8;
  double circle_fraction = 0.25;
  std::string noise_binarization = "mean";
  auto* meta = app.add_subcommand("meta", "Run a meta-measure over a corpus");
  meta_flags.attach(meta);
  meta->add_option("--id", meta_id, "mm2 | mm3 | mm4 | mm5")->required();
  meta->add_option("--keep", keep, "Fraction of best images kept for mm2/mm3")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  meta->add_option("--circle-radius", circle_fraction,
                   "Generic disk radius as a fraction of the shorter side")
      ->capture_default_str();
  meta->add_option("--noise-binarization", noise_binarization, "mean | adaptive")
      ->capture_default_str();

  int images = 200;
  std::string size = "64x64";
  std::uint64_t synth_seed = 1;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus and its manifest");
  synth->add_option("--images", images, "Number of images")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--size", size, "Map size WxH")->capture_default_str();
  synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output directory")->required();

  emeval::oracle::SelftestOptions selftest_opts;
  auto* selftest = app.add_subcommand("selftest", "Check optimized measures against naive oracles");
  selftest->add_option("--pairs", selftest_opts.pairs, "Random map pairs")->capture_default_str();
  selftest->add_option("--seed", selftest_opts.seed, "Seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*score) {
      const auto cfg = score_flags.config();
      const auto batch = emeval::run_score_batch(cfg);
      for (const auto& e : batch.errors) std::cerr << "error: " << e << '\n';
      if (!batch.records.empty()) emeval::emit_report(batch.records, cfg);
      return batch.ok() && !batch.records.empty() ? 0 : 1;
    }
    if (*meta) {
      auto cfg = meta_flags.config();
      cfg.keep_fraction = keep;
      cfg.meta.circle.radius_fraction = circle_fraction;
      if (noise_binarization == "adaptive") {
        cfg.meta.noise.binarization = emeval::NoiseConfig::Binarization::kAdaptive;
      } else if (noise_binarization != "mean") {
        throw emeval::EvalError("--noise-binarization must be 'mean' or 'adaptive'");
      }
      emeval::emit_meta_report(emeval::run_meta(cfg, meta_id), cfg);
      return 0;
    }
    if (*synth) {
      emeval::SyntheticConfig cfg;
      cfg.images = images;
      cfg.dims = parse_size(size);
      cfg.seed = synth_seed;
      const auto path =
          emeval::write_synthetic_corpus(emeval::make_synthetic_corpus(cfg), synth_out);
      std::cout << path.string() << '\n';
      return 0;
    }
    if (*selftest) {
      return emeval::oracle::run_selftest(std::cout, selftest_opts) ? 0 : 1;
    }
  } catch (const emeval::EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
