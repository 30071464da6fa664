#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "emeval/map.hpp"
#include "emeval/measures.hpp"
#include "emeval/synth.hpp"

namespace emeval {

// One image with its ground truth and the maps produced by each model.
struct CandidateSet {
  std::string image_id;
  BinaryMap gt;
  std::vector<NamedMap> models;

  // Throws unless every map matches the GT size and at least one model map
  // is present.
  void validate() const;
};

struct HumanRankedTriple {
  std::string image_id;
  BinaryMap gt;
  std::array<BinaryMap, 3> maps;
  // human_rank[i]: rank people assigned maps[i], 1 = best.
  std::array<int, 3> human_rank{};
};

struct MetaResult {
  std::string meta_id;
  std::string measure_id;
  // Mis-ranking / switch rates in [0, 1]; mean theta in [0, 2].
  double value = 0.0;
  std::size_t population = 0;
  // Numerator behind a rate (0 for theta results).
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

// Mean score of the image's model maps under `measure`.
double mean_model_score(const CandidateSet& set, const Measure& measure);

// Keeps the top max(1, floor(n * keep_fraction)) images by mean model score
// (descending; ties broken by ascending image id). Returned in that order.
std::vector<std::string> select_good_images(const std::vector<CandidateSet>& sets,
                                            const Measure& measure, double keep_fraction);

std::vector<CandidateSet> restrict_to(const std::vector<CandidateSet>& sets,
                                      const std::vector<std::string>& ids);

enum class TrivialMapSource { kGeneric, kNoise };

struct MetaOptions {
  CircleConfig circle;
  NoiseConfig noise;
  int jobs = 1;
};

// Builds the trivial competitor for one image: (image, seed) -> map.
using TrivialMapFn = std::function<BinaryMap(const CandidateSet&, std::uint64_t)>;

// Fraction of images where measure(gt, trivial) is strictly greater than the
// mean measure over the image's model maps.
MetaResult misrank_rate(const std::vector<CandidateSet>& sets, TrivialMapSource source,
                        const Measure& measure, std::uint64_t seed,
                        const MetaOptions& opts = {});
MetaResult misrank_rate(const std::vector<CandidateSet>& sets, const TrivialMapFn& trivial,
                        const std::string& meta_id, const Measure& measure,
                        std::uint64_t seed, int jobs = 1);

// Mean over triples of theta between the measure's ordering of the three maps
// and the human ordering.
MetaResult mm4_human_theta(const std::vector<HumanRankedTriple>& triples,
                           const Measure& measure, int jobs = 1);

inline constexpr double kGoodMapF1 = 0.8;

// Over (image, model) pairs whose F1 against their own GT is >= 0.8: swap in
// the GT of a uniformly drawn different image (nearest-neighbour resized to
// the map) and count how often the wrong GT scores strictly higher.
MetaResult mm5_gt_switch_rate(const std::vector<CandidateSet>& sets, const Measure& measure,
                              std::uint64_t seed, int jobs = 1);

// Candidate sets straight from an in-memory synthetic corpus.
std::vector<CandidateSet> candidate_sets(const std::vector<SyntheticImage>& corpus);
std::vector<HumanRankedTriple> human_triples(const std::vector<SyntheticImage>& corpus);

}  // namespace emeval
