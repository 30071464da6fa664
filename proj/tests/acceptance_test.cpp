// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any fails. argv[1] is the path of the emeval CLI binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "emeval/classic.hpp"
#include "emeval/emeasure.hpp"
#include "emeval/meta.hpp"
#include "emeval/oracle/naive.hpp"
#include "emeval/oracle/selftest.hpp"
#include "emeval/rank_stats.hpp"
#include "emeval/rng.hpp"
#include "emeval/synth.hpp"
#include "test_util.hpp"

namespace {

using namespace emeval;

// First verified run: 1 switch among 498 good (image, model) pairs.
constexpr double kFrozenMm5Rate = 1.0 / 498.0;
constexpr double kMm5Band = 0.005;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome Check(bool ok, std::string detail) { return {ok, std::move(detail)}; }

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

RankingList FromRanks(std::vector<int> ranks) {
  std::vector<RankedItem> items;
  for (std::size_t i = 0; i < ranks.size(); ++i)
    items.push_back({std::to_string(i), -double(ranks[i])});
  return RankingList(std::move(items));
}

Outcome WorkedExample() {
  const BinaryMap gt(Dimensions(2, 2), {1, 0, 0, 0});
  const BinaryMap fm(Dimensions(2, 2), {1, 1, 0, 0});
  const double naive = oracle::e_measure(gt, fm);
  const double fast = e_measure(gt, fm);
  const bool ok = std::abs(naive - 0.63865) <= 1e-4 && std::abs(fast - 0.63865) <= 1e-4 &&
                  std::abs(fast - naive) <= 1e-15;
  return Check(ok, "oracle " + Fmt("%.15g", naive) + ", optimized " + Fmt("%.15g", fast));
}

Outcome AlgebraicIdentities() {
  constexpr double kTol = 1e-12;
  Rng rng(20240601);
  int failures = 0;
  double worst = 0.0;
  auto expect = [&](double got, double want) {
    const double err = std::abs(got - want);
    worst = std::max(worst, err);
    if (!(err <= kTol)) ++failures;
  };
  const int kPairs = 1000;
  for (int i = 0; i < kPairs; ++i) {
    const auto gt = oracle::random_binary_map(rng, 64, true);
    const auto fm = oracle::random_binary_map(rng, gt.dims(), true);
    const double q = e_measure(gt, fm);
    expect(e_measure(gt, gt), 1.0);
    expect(e_measure(gt, complement(gt)), 0.0);
    expect(q, e_measure(fm, gt));
    if (q < 0.0 || q > 1.0) ++failures;
    expect(e_measure(gt, BinaryMap(gt.dims())), 0.25);
    const auto c = confusion(gt, fm);
    const double f = f1(c);
    const double j = iou_ji(c);
    expect(j, f / (2.0 - f));
    if (j > f + kTol) ++failures;
  }
  return Check(failures == 0, std::to_string(kPairs) + " pairs, " + std::to_string(failures) +
                                  " violations, max error " + Fmt("%.3g", worst));
}

Outcome OracleEquivalence() {
  Rng rng(77);
  double worst_e = 0.0, worst_w = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto gt = oracle::random_binary_map(rng, 64, true);
    const auto fm = oracle::random_binary_map(rng, gt.dims(), false);
    worst_e = std::max(worst_e, std::abs(e_measure(gt, fm) - oracle::e_measure(gt, fm)));
    worst_w = std::max(worst_w, std::abs(fbw(gt, fm, 1.0) - oracle::fbw(gt, fm, 1.0)));
  }
  return Check(worst_e <= 1e-10 && worst_w <= 1e-9,
               "100 pairs, max |dE| " + Fmt("%.3g", worst_e) + ", max |dFbw| " +
                   Fmt("%.3g", worst_w));
}

std::vector<CandidateSet> FixedCorpus() {
  SyntheticConfig cfg;  // 200 images, 64x64, seed 1
  return candidate_sets(make_synthetic_corpus(cfg));
}

Outcome Mm3Reproduction(const std::vector<CandidateSet>& sets) {
  const auto r = misrank_rate(sets, TrivialMapSource::kNoise, Measure::parse("emeasure"), 1);
  return Check(r.population == 200 && r.count == 0,
               std::to_string(r.count) + "/" + std::to_string(r.population) + " mis-ranked");
}

Outcome ThetaEndpoints() {
  const double same = theta(FromRanks({1, 2, 3}), FromRanks({1, 2, 3}));
  const double reversed = theta(FromRanks({1, 2, 3}), FromRanks({3, 2, 1}));
  const double swapped = theta(FromRanks({1, 2, 3}), FromRanks({1, 3, 2}));
  const bool ok = same == 0.0 && reversed == 2.0 && std::abs(swapped - 0.5) <= 1e-15;
  return Check(ok, "theta " + Fmt("%g", same) + ", " + Fmt("%g", reversed) + ", " +
                       Fmt("%.17g", swapped));
}

Outcome RetrievalSpotChecks() {
  const double a = retrieval_score(1, 0.9, 100);
  const double b = retrieval_score(std::nullopt, std::nullopt, 50);
  const double c = retrieval_score(std::nullopt, std::nullopt, 0);
  const bool ok = a == 0.9 + 1.0 + 1.0 && std::abs(a - 2.9) <= 1e-15 && b == 0.5 && c == 0.0;
  return Check(ok, "S = " + Fmt("%.17g", a) + ", " + Fmt("%g", b) + ", " + Fmt("%g", c));
}

Outcome CliDeterminism(const std::string& cli) {
  emeval::testing::TempDir dir("accept");
  const auto corpus = dir / "corpus";
  const auto q = [](const std::filesystem::path& p) { return "'" + p.string() + "'"; };
  const std::string bin = "'" + cli + "'";
  if (std::system((bin + " synth --images 50 --size 48x48 --seed 3 --out " + q(corpus) +
                   " > /dev/null")
                      .c_str()) != 0) {
    return Check(false, "synth failed");
  }
  const std::string score = bin + " score --manifest " + q(corpus / "manifest.json") +
                            " --measures emeasure,f1,iou,fbw --format csv";
  if (std::system((score + " --jobs 1 --out " + q(dir / "j1.csv")).c_str()) != 0 ||
      std::system((score + " --jobs 8 --out " + q(dir / "j8.csv")).c_str()) != 0) {
    return Check(false, "score failed");
  }
  const std::string a = emeval::testing::read_file(dir / "j1.csv");
  const std::string b = emeval::testing::read_file(dir / "j8.csv");
  const bool ok = !a.empty() && a == b;
  return Check(ok, std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " bytes" +
                       (ok ? ", identical" : ", differ"));
}

Outcome Mm5Regression(const std::vector<CandidateSet>& sets) {
  const auto r = mm5_gt_switch_rate(sets, Measure::parse("emeasure"), 1);
  const bool ok = std::abs(r.value - kFrozenMm5Rate) <= kMm5Band && r.value <= 0.005;
  return Check(ok, std::to_string(r.count) + "/" + std::to_string(r.population) + " = " +
                       Fmt("%.12g", r.value) + " (frozen " + Fmt("%.12g", kFrozenMm5Rate) +
                       " +- " + Fmt("%g", kMm5Band) + ")");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-emeval-cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  std::optional<std::vector<CandidateSet>> corpus;
  auto fixed_corpus = [&]() -> const std::vector<CandidateSet>& {
    if (!corpus) corpus = FixedCorpus();
    return *corpus;
  };

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 worked-example golden value", WorkedExample},
      {"2 algebraic identities", AlgebraicIdentities},
      {"3 oracle equivalence", OracleEquivalence},
      {"4 MM3 desk-scale reproduction", [&] { return Mm3Reproduction(fixed_corpus()); }},
      {"5 theta endpoints", ThetaEndpoints},
      {"6 retrieval score spot checks", RetrievalSpotChecks},
      {"7 determinism across --jobs", [&] { return CliDeterminism(cli); }},
      {"8 MM5 regression", [&] { return Mm5Regression(fixed_corpus()); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
