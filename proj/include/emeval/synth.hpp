#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emeval/map.hpp"

namespace emeval {

struct CircleConfig {
  // Disk radius as a fraction of min(width, height).
  double radius_fraction = 0.25;
};

// Centred filled disk. Pixel (x, y) is sampled at its centre (x + 0.5,
// y + 0.5); pixels at distance <= radius from (w/2, h/2) are foreground.
BinaryMap generic_circle(Dimensions d, const CircleConfig& cfg = {});

struct NoiseConfig {
  enum class Binarization {
    // Threshold at the map's own mean: roughly half the pixels survive.
    kMeanThreshold,
    // The same 2 * mean rule applied to model maps. On N(0.5, 0.15) noise the
    // threshold clamps to ~1 and almost no pixel survives.
    kAdaptive,
  };
  double mean = 0.5;
  double stddev = 0.15;
  Binarization binarization = Binarization::kMeanThreshold;
};

// Gray i.i.d. normal samples clamped to [0, 1], before binarization.
GrayMap gaussian_noise_gray(Dimensions d, std::uint64_t seed, const NoiseConfig& cfg = {});
BinaryMap gaussian_noise_map(Dimensions d, std::uint64_t seed, const NoiseConfig& cfg = {});

enum class PerturbKind { kDilate, kErode, kShift, kFlipNoise };

PerturbKind parse_perturb_kind(const std::string& s);

// Translate by (dx, dy); vacated pixels become background.
BinaryMap shift_map(const BinaryMap& b, int dx, int dy);

// Square (Chebyshev) structuring element of the given radius. Pixels outside
// the map count as background for dilation and as foreground for erosion, so
// neither operation invents structure at the border.
BinaryMap dilate(const BinaryMap& b, int radius);
BinaryMap erode(const BinaryMap& b, int radius);

// Flips each pixel independently with probability rate_per_mille / 1000.
BinaryMap flip_noise(const BinaryMap& b, int rate_per_mille, std::uint64_t seed);

// Manufactures a model-like map from a ground truth.
//   dilate/erode: square element of radius `magnitude`
//   shift:        `magnitude` pixels along one of 8 compass directions picked
//                 from the seed
//   flip-noise:   rate magnitude / 1000
// Throws EvalError when a non-constant input becomes constant.
BinaryMap perturb(const BinaryMap& gt, PerturbKind kind, int magnitude, std::uint64_t seed);

struct NamedMap {
  std::string name;
  BinaryMap map;
};

struct SyntheticImage {
  std::string id;
  BinaryMap gt;
  std::vector<NamedMap> models;
  // Three maps of increasing degradation; best first.
  std::vector<BinaryMap> ranked_triple;
};

struct SyntheticConfig {
  int images = 200;
  Dimensions dims{64, 64};
  std::uint64_t seed = 1;
  int max_flip_per_mille = 20;
  int max_shift = 2;
};

// Disk and blob ground truths, each with three mildly perturbed model maps
// ("shift", "morph", "flip") and a graded triple for human-ranking runs.
std::vector<SyntheticImage> make_synthetic_corpus(const SyntheticConfig& cfg);

// Writes gt/<id>.png, maps/<model>/<id>.png, triples/<id>_<k>.png and
// manifest.json under `dir`. Returns the manifest path.
std::filesystem::path write_synthetic_corpus(const std::vector<SyntheticImage>& corpus,
                                             const std::filesystem::path& dir);

}  // namespace emeval
