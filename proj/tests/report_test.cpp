#include "emeval/report.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "emeval/image_io.hpp"
#include "emeval/synth.hpp"
#include "test_util.hpp"

namespace emeval {
namespace {

using testing::TempDir;

BinaryMap Square(Dimensions d, int x0, int y0, int side) {
  BinaryMap b(d);
  for (int y = y0; y < y0 + side; ++y)
    for (int x = x0; x < x0 + side; ++x) b.set(x, y, true);
  return b;
}

// One image "a" whose only model map equals its GT.
std::filesystem::path OneImageManifest(const TempDir& dir) {
  const auto gt = Square(Dimensions(8, 8), 2, 2, 4);
  save_binary(gt, dir / "gt.png");
  save_binary(gt, dir / "fm.png");
  Manifest m;
  m.images.push_back({"a", "gt.png", {{"model", "fm.png"}}});
  write_manifest(m, dir / "manifest.json");
  return dir / "manifest.json";
}

std::filesystem::path SyntheticManifest(const TempDir& dir, int images) {
  SyntheticConfig cfg;
  cfg.images = images;
  cfg.dims = Dimensions(32, 32);
  return write_synthetic_corpus(make_synthetic_corpus(cfg), dir.path());
}

RunConfig Config(const std::filesystem::path& manifest, std::vector<std::string> measures) {
  RunConfig cfg;
  cfg.manifest = manifest;
  cfg.measures = std::move(measures);
  return cfg;
}

std::string Csv(const std::vector<ScoreRecord>& records) {
  std::ostringstream os;
  write_csv(records, os);
  return os.str();
}

TEST(ScoreBatchTest, OneImageTwoMeasures) {
  TempDir dir("report");
  const auto r = run_score_batch(Config(OneImageManifest(dir), {"emeasure", "f1"}));
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.records.size(), 2u);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.image_id, "a");
    EXPECT_EQ(rec.score, 1.0);
    EXPECT_FALSE(rec.degenerate);
    EXPECT_EQ(rec.params.at("model"), "model");
  }
  EXPECT_EQ(r.records[0].measure, "emeasure");
  EXPECT_EQ(r.records[1].measure, "f1");

  const std::string csv = Csv(r.records);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "image_id,measure,score,degenerate,params");
  EXPECT_NE(csv.find("a,f1,1,false,beta=1;model=model\n"), std::string::npos);
}

TEST(ScoreBatchTest, JobsDoNotChangeOutput) {
  TempDir dir("report");
  auto cfg = Config(SyntheticManifest(dir, 10), {"emeasure", "f1", "iou", "fbw"});
  const auto serial = run_score_batch(cfg);
  cfg.jobs = 8;
  const auto parallel = run_score_batch(cfg);
  EXPECT_EQ(serial.records.size(), 10u * 3u * 4u);
  EXPECT_EQ(Csv(serial.records), Csv(parallel.records));
}

TEST(ScoreBatchTest, MissingFileAborts) {
  TempDir dir("report");
  save_binary(Square(Dimensions(4, 4), 1, 1, 2), dir / "gt.png");
  Manifest m;
  m.images.push_back({"a", "gt.png", {{"x", "nowhere.png"}}});
  write_manifest(m, dir / "manifest.json");
  try {
    run_score_batch(Config(dir / "manifest.json", {"emeasure"}));
    FAIL() << "expected EvalError";
  } catch (const EvalError& e) {
    EXPECT_NE(std::string(e.what()).find("nowhere.png"), std::string::npos);
  }
}

TEST(ScoreBatchTest, DimensionMismatchIsReported) {
  TempDir dir("report");
  save_binary(Square(Dimensions(4, 4), 1, 1, 2), dir / "gt.png");
  save_binary(Square(Dimensions(5, 4), 1, 1, 2), dir / "wide.png");
  save_binary(Square(Dimensions(4, 4), 1, 1, 2), dir / "ok.png");
  Manifest m;
  m.images.push_back({"a", "gt.png", {{"wide", "wide.png"}, {"ok", "ok.png"}}});
  write_manifest(m, dir / "manifest.json");
  const auto r = run_score_batch(Config(dir / "manifest.json", {"emeasure"}));
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_NE(r.errors[0].find("wide"), std::string::npos);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].params.at("model"), "ok");
}

TEST(ScoreBatchTest, DegenerateGroundTruthFlagged) {
  TempDir dir("report");
  save_binary(BinaryMap(Dimensions(4, 4)), dir / "gt.png");
  save_binary(Square(Dimensions(4, 4), 0, 0, 1), dir / "fm.png");
  Manifest m;
  m.images.push_back({"a", "gt.png", {{"m", "fm.png"}}});
  write_manifest(m, dir / "manifest.json");
  auto cfg = Config(dir / "manifest.json", {"emeasure"});
  cfg.threshold = ThresholdMode::parse("asis");
  const auto r = run_score_batch(cfg);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_TRUE(r.records[0].degenerate);
  EXPECT_EQ(r.records[0].score, 15.0 / 16.0);
  EXPECT_EQ(r.records[0].params.at("gt"), "all-zero");
}

TEST(ReportTest, JsonRoundTrip) {
  std::vector<ScoreRecord> recs{
      {"a", "emeasure", 0.638639053254437869, false, {{"model", "m"}}},
      {"b,1", "fbeta:2", 1.0 / 3.0, true, {{"beta", "2"}, {"model", "x"}}}};
  TempDir dir("report");
  RunConfig cfg = Config(dir / "manifest.json", {"emeasure"});
  std::ostringstream os;
  write_json(recs, cfg, os);
  const auto back = parse_json_records(os.str());
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].image_id, recs[i].image_id);
    EXPECT_EQ(back[i].measure, recs[i].measure);
    EXPECT_EQ(back[i].degenerate, recs[i].degenerate);
    EXPECT_EQ(back[i].params, recs[i].params);
    EXPECT_NEAR(back[i].score, recs[i].score, 1e-11);
  }
  EXPECT_NE(os.str().find("\"version\": \"1.0.0\""), std::string::npos);
}

TEST(ReportTest, CsvQuotesFields) {
  const std::string csv = Csv({{"a,b", "f1", 0.5, false, {{"model", "q\"m"}}}});
  EXPECT_NE(csv.find("\"a,b\",f1,0.5,false,\"model=q\"\"m\"\n"), std::string::npos);
}

TEST(ReportTest, ScorePrecision) {
  EXPECT_EQ(format_score(1.0), "1");
  EXPECT_EQ(format_score(10793.0 / 16900.0), "0.638639053254");
  EXPECT_EQ(params_to_string({{"b", "2"}, {"a", "1"}}), "a=1;b=2");
}

TEST(ReportTest, EmitWritesFileAndRejectsEmpty) {
  TempDir dir("report");
  RunConfig cfg = Config(dir / "manifest.json", {"f1"});
  cfg.out = dir / "out.csv";
  EXPECT_THROW(emit_report({}, cfg), EvalError);
  emit_report({{"a", "f1", 1.0, false, {}}}, cfg);
  EXPECT_EQ(testing::read_file(dir / "out.csv"),
            "image_id,measure,score,degenerate,params\na,f1,1,false,\n");
}

TEST(ThresholdModeTest, Parse) {
  EXPECT_EQ(ThresholdMode::parse("asis").kind, ThresholdMode::Kind::kAsIs);
  EXPECT_EQ(ThresholdMode::parse("adaptive").kind, ThresholdMode::Kind::kAdaptive);
  const auto f = ThresholdMode::parse("fixed:0.25");
  EXPECT_EQ(f.kind, ThresholdMode::Kind::kFixed);
  EXPECT_EQ(f.threshold, 0.25);
  EXPECT_EQ(f.to_string(), "fixed:0.25");
  EXPECT_THROW(ThresholdMode::parse("fixed:"), EvalError);
  EXPECT_THROW(ThresholdMode::parse("fixed:1.5"), EvalError);
  EXPECT_THROW(ThresholdMode::parse("otsu"), EvalError);
  EXPECT_EQ(parse_report_format("json"), ReportFormat::kJson);
  EXPECT_THROW(parse_report_format("xml"), EvalError);
}

TEST(ThresholdModeTest, AppliedToModelMaps) {
  TempDir dir("report");
  GrayMap g(Dimensions(4, 1), std::vector<double>{0.1, 0.1, 0.1, 0.9});
  save_gray(g, dir / "g.png");
  EXPECT_EQ(load_model_map(dir / "g.png", ThresholdMode::parse("adaptive")),
            BinaryMap(Dimensions(4, 1), {0, 0, 0, 1}));
  EXPECT_EQ(load_model_map(dir / "g.png", ThresholdMode::parse("fixed:0.05")),
            BinaryMap(Dimensions(4, 1), {1, 1, 1, 1}));
  EXPECT_EQ(load_model_map(dir / "g.png", ThresholdMode::parse("asis")),
            BinaryMap(Dimensions(4, 1), {0, 0, 0, 1}));
}

TEST(ManifestTest, Errors) {
  EXPECT_THROW(parse_manifest("not json", "."), EvalError);
  EXPECT_THROW(parse_manifest(R"({"images":[{"gt":"g.png","maps":[]}]})", "."), EvalError);
  EXPECT_THROW(parse_manifest(
                   R"({"images":[{"id":"a","gt":"g","maps":[]},{"id":"a","gt":"g","maps":[]}]})",
                   "."),
               EvalError);
  EXPECT_THROW(parse_manifest(
                   R"({"triples":[{"id":"t","gt":"g","maps":["a","b","c"],"human_rank":[1,1,3]}]})",
                   "."),
               EvalError);
  EXPECT_THROW(parse_manifest(
                   R"({"triples":[{"id":"t","gt":"g","maps":["a","b"],"human_rank":[1,2,3]}]})",
                   "."),
               EvalError);
  EXPECT_THROW(load_manifest("/nonexistent/manifest.json"), EvalError);
}

TEST(ManifestTest, RoundTripAndRelativePaths) {
  TempDir dir("report");
  Manifest m;
  m.images.push_back({"a", "gt/a.png", {{"x", "maps/x/a.png"}}});
  m.triples.push_back({"a", "gt/a.png", {"t0.png", "t1.png", "t2.png"}, {2, 1, 3}});
  write_manifest(m, dir / "m.json");
  const auto back = load_manifest(dir / "m.json");
  ASSERT_EQ(back.images.size(), 1u);
  EXPECT_EQ(back.resolve(back.images[0].gt), dir.path() / "gt/a.png");
  EXPECT_EQ(back.images[0].maps[0].model, "x");
  EXPECT_EQ(back.triples[0].human_rank, (std::array<int, 3>{2, 1, 3}));
  EXPECT_EQ(back.resolve("/abs/p.png"), std::filesystem::path("/abs/p.png"));
}

TEST(RunMetaTest, Examples) {
  TempDir dir("report");
  const auto manifest = SyntheticManifest(dir, 12);
  auto cfg = Config(manifest, {"emeasure", "f1"});
  const auto mm3 = run_meta(cfg, "mm3");
  ASSERT_EQ(mm3.size(), 2u);
  EXPECT_EQ(mm3[0].measure_id, "emeasure");
  EXPECT_EQ(mm3[0].population, 9u);
  EXPECT_EQ(mm3[0].value, 0.0);

  const auto mm4 = run_meta(cfg, "mm4");
  EXPECT_EQ(mm4[0].population, 12u);
  const auto mm5 = run_meta(cfg, "mm5");
  EXPECT_GE(mm5[0].value, 0.0);
  EXPECT_LE(mm5[0].value, 1.0);

  std::ostringstream os;
  write_meta_csv(mm3, os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "meta,measure,value,count,population,seed");
  EXPECT_THROW(run_meta(cfg, "mm9"), EvalError);
}

TEST(RunMetaTest, PerfectCorpus) {
  TempDir dir("report");
  const auto manifest = OneImageManifest(dir);
  auto cfg = Config(manifest, {"emeasure"});
  cfg.keep_fraction = 1.0;
  EXPECT_EQ(run_meta(cfg, "mm2")[0].value, 0.0);
  EXPECT_EQ(run_meta(cfg, "mm3")[0].value, 0.0);
  EXPECT_THROW(run_meta(cfg, "mm4"), EvalError);
  EXPECT_THROW(run_meta(cfg, "mm5"), EvalError);
}

TEST(RunMetaTest, HumanOrderMatchingMeasure) {
  TempDir dir("report");
  const Dimensions d(16, 16);
  const auto gt = Square(d, 4, 4, 8);
  save_binary(gt, dir / "gt.png");
  save_binary(gt, dir / "t0.png");
  save_binary(shift_map(gt, 1, 0), dir / "t1.png");
  save_binary(shift_map(gt, 3, 3), dir / "t2.png");
  Manifest m;
  m.triples.push_back({"t", "gt.png", {"t2.png", "t0.png", "t1.png"}, {3, 1, 2}});
  write_manifest(m, dir / "manifest.json");
  const auto r = run_meta(Config(dir / "manifest.json", {"f1", "emeasure"}), "mm4");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].value, 0.0);
  EXPECT_EQ(r[1].value, 0.0);
}

}  // namespace
}  // namespace emeval
