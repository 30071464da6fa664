#include "emeval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "emeval/image_io.hpp"
#include "emeval/manifest.hpp"
#include "emeval/rng.hpp"

namespace emeval {
namespace {

void paint_disk(std::vector<std::uint8_t>& px, Dimensions d, double cx, double cy, double r) {
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= r * r) px[static_cast<std::size_t>(y) * d.width + x] = 1;
    }
  }
}

BinaryMap random_disk(Dimensions d, Rng& rng) {
  std::vector<std::uint8_t> px(d.area(), 0);
  const double side = std::min(d.width, d.height);
  const double r = side * (0.125 + 0.125 * rng.uniform());
  const double cx = d.width * (0.3 + 0.4 * rng.uniform());
  const double cy = d.height * (0.3 + 0.4 * rng.uniform());
  paint_disk(px, d, cx, cy, r);
  return BinaryMap(d, std::move(px));
}

// Two or three overlapping disks around a common anchor.
BinaryMap random_blob(Dimensions d, Rng& rng) {
  std::vector<std::uint8_t> px(d.area(), 0);
  const double side = std::min(d.width, d.height);
  const double ax = d.width * (0.35 + 0.3 * rng.uniform());
  const double ay = d.height * (0.35 + 0.3 * rng.uniform());
  const int parts = rng.range(2, 3);
  for (int i = 0; i < parts; ++i) {
    const double r = side * (0.08 + 0.08 * rng.uniform());
    const double cx = ax + side * 0.15 * (2.0 * rng.uniform() - 1.0);
    const double cy = ay + side * 0.15 * (2.0 * rng.uniform() - 1.0);
    paint_disk(px, d, cx, cy, r);
  }
  return BinaryMap(d, std::move(px));
}

// Constant maps are ruled out before returning from perturb().
BinaryMap perturb_unchecked(const BinaryMap& gt, PerturbKind kind, int magnitude,
                            std::uint64_t seed) {
  switch (kind) {
    case PerturbKind::kDilate:
      return dilate(gt, magnitude);
    case PerturbKind::kErode:
      return erode(gt, magnitude);
    case PerturbKind::kShift: {
      static constexpr int kDirs[8][2] = {{1, 0},  {1, 1},   {0, 1},  {-1, 1},
                                          {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
      Rng rng(seed);
      const auto* dir = kDirs[rng.below(8)];
      return shift_map(gt, dir[0] * magnitude, dir[1] * magnitude);
    }
    case PerturbKind::kFlipNoise:
      return flip_noise(gt, magnitude, seed);
  }
  return gt;
}

std::string image_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "img%04d", i);
  return buf;
}

}  // namespace

BinaryMap generic_circle(Dimensions d, const CircleConfig& cfg) {
  std::vector<std::uint8_t> px(d.area(), 0);
  const double r = std::min(d.width, d.height) * cfg.radius_fraction;
  paint_disk(px, d, d.width / 2.0, d.height / 2.0, r);
  return BinaryMap(d, std::move(px));
}

GrayMap gaussian_noise_gray(Dimensions d, std::uint64_t seed, const NoiseConfig& cfg) {
  Rng rng(seed);
  std::vector<double> px(d.area());
  for (double& v : px) v = std::clamp(rng.normal(cfg.mean, cfg.stddev), 0.0, 1.0);
  return GrayMap(d, std::move(px));
}

BinaryMap gaussian_noise_map(Dimensions d, std::uint64_t seed, const NoiseConfig& cfg) {
  const GrayMap g = gaussian_noise_gray(d, seed, cfg);
  switch (cfg.binarization) {
    case NoiseConfig::Binarization::kAdaptive:
      return binarize_adaptive(g);
    case NoiseConfig::Binarization::kMeanThreshold:
      break;
  }
  return binarize_fixed(g, mean_value(g));
}

PerturbKind parse_perturb_kind(const std::string& s) {
  if (s == "dilate") return PerturbKind::kDilate;
  if (s == "erode") return PerturbKind::kErode;
  if (s == "shift") return PerturbKind::kShift;
  if (s == "flip-noise") return PerturbKind::kFlipNoise;
  throw EvalError("unknown perturbation '" + s + "'");
}

BinaryMap shift_map(const BinaryMap& b, int dx, int dy) {
  BinaryMap out(b.dims(), std::uint8_t{0});
  for (int y = 0; y < b.height(); ++y) {
    const int sy = y - dy;
    if (sy < 0 || sy >= b.height()) continue;
    for (int x = 0; x < b.width(); ++x) {
      const int sx = x - dx;
      if (sx >= 0 && sx < b.width() && b(sx, sy)) out.set(x, y, true);
    }
  }
  return out;
}

BinaryMap dilate(const BinaryMap& b, int radius) {
  if (radius < 0) throw EvalError("structuring element radius must be >= 0");
  if (radius == 0) return b;
  BinaryMap out(b.dims(), std::uint8_t{0});
  const int w = b.width(), h = b.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool hit = false;
      for (int yy = std::max(0, y - radius); yy <= std::min(h - 1, y + radius) && !hit; ++yy)
        for (int xx = std::max(0, x - radius); xx <= std::min(w - 1, x + radius); ++xx)
          if (b(xx, yy)) {
            hit = true;
            break;
          }
      out.set(x, y, hit);
    }
  }
  return out;
}

BinaryMap erode(const BinaryMap& b, int radius) {
  if (radius < 0) throw EvalError("structuring element radius must be >= 0");
  return complement(dilate(complement(b), radius));
}

BinaryMap flip_noise(const BinaryMap& b, int rate_per_mille, std::uint64_t seed) {
  if (rate_per_mille < 0 || rate_per_mille > 1000) {
    throw EvalError("flip rate must lie in [0, 1000] per mille");
  }
  if (rate_per_mille == 0) return b;
  Rng rng(seed);
  std::vector<std::uint8_t> px(b.values().begin(), b.values().end());
  for (auto& v : px) {
    if (rng.below(1000) < static_cast<std::uint64_t>(rate_per_mille)) v = 1 - v;
  }
  return BinaryMap(b.dims(), std::move(px));
}

BinaryMap perturb(const BinaryMap& gt, PerturbKind kind, int magnitude, std::uint64_t seed) {
  if (magnitude < 0) throw EvalError("perturbation magnitude must be >= 0");
  if (magnitude == 0) return gt;
  BinaryMap out = perturb_unchecked(gt, kind, magnitude, seed);
  if (!gt.is_constant() && out.is_constant()) {
    throw EvalError("perturbation magnitude " + std::to_string(magnitude) +
                    " too large: output map is constant");
  }
  return out;
}

std::vector<SyntheticImage> make_synthetic_corpus(const SyntheticConfig& cfg) {
  if (cfg.images < 1) throw EvalError("synthetic corpus needs at least one image");
  std::vector<SyntheticImage> corpus;
  corpus.reserve(cfg.images);
  for (int i = 0; i < cfg.images; ++i) {
    SyntheticImage img;
    img.id = image_id(i);
    Rng rng = Rng::stream(cfg.seed, img.id);
    img.gt = (i % 2 == 0) ? random_disk(cfg.dims, rng) : random_blob(cfg.dims, rng);

    // Every random draw is sequenced explicitly: argument evaluation order
    // is unspecified and would make the corpus compiler-dependent.
    auto noisy = [&](const BinaryMap& m) {
      const int rate = cfg.max_flip_per_mille > 0 ? rng.range(1, cfg.max_flip_per_mille) : 0;
      const auto seed = rng.next_u64();
      return perturb(m, PerturbKind::kFlipNoise, rate, seed);
    };
    auto shifted = [&](const BinaryMap& m) {
      const int by = cfg.max_shift > 0 ? rng.range(1, cfg.max_shift) : 0;
      const auto seed = rng.next_u64();
      return perturb(m, PerturbKind::kShift, by, seed);
    };
    auto graded = [&](int shift_by, int flip_rate) {
      const auto shift_seed = rng.next_u64();
      const auto flip_seed = rng.next_u64();
      return perturb(perturb(img.gt, PerturbKind::kShift, shift_by, shift_seed),
                     PerturbKind::kFlipNoise, flip_rate, flip_seed);
    };

    BinaryMap shift_model = shifted(img.gt);
    img.models.push_back({"shift", noisy(shift_model)});
    auto morph = rng.below(2) == 0 ? PerturbKind::kDilate : PerturbKind::kErode;
    const auto morph_seed = rng.next_u64();
    // Thin shapes on small maps can vanish under erosion.
    if (morph == PerturbKind::kErode && erode(img.gt, 1).is_constant()) morph = PerturbKind::kDilate;
    BinaryMap morph_model = perturb(img.gt, morph, 1, morph_seed);
    img.models.push_back({"morph", noisy(morph_model)});
    img.models.push_back({"flip", noisy(img.gt)});

    // Graded degradations: mild, moderate, severe.
    img.ranked_triple.push_back(graded(0, 5));
    img.ranked_triple.push_back(graded(2, 60));
    img.ranked_triple.push_back(graded(5, 200));
    corpus.push_back(std::move(img));
  }
  return corpus;
}

std::filesystem::path write_synthetic_corpus(const std::vector<SyntheticImage>& corpus,
                                             const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  Manifest manifest;
  manifest.base_dir = dir;
  fs::create_directories(dir / "gt");
  fs::create_directories(dir / "triples");

  for (const auto& img : corpus) {
    ManifestImage entry;
    entry.id = img.id;
    entry.gt = fs::path("gt") / (img.id + ".png");
    save_binary(img.gt, dir / entry.gt);
    for (const auto& m : img.models) {
      const fs::path rel = fs::path("maps") / m.name / (img.id + ".png");
      fs::create_directories(dir / rel.parent_path());
      save_binary(m.map, dir / rel);
      entry.maps.push_back({m.name, rel});
    }
    manifest.images.push_back(std::move(entry));

    if (img.ranked_triple.size() == 3) {
      // Store the graded maps in a seed-independent but non-sorted order so
      // the rank permutation is not trivially (1, 2, 3).
      static constexpr int kSlotOf[3][3] = {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};
      const auto& slots = kSlotOf[fnv1a64(img.id) % 3];
      ManifestTriple t;
      t.id = img.id;
      t.gt = manifest.images.back().gt;
      for (int graded = 0; graded < 3; ++graded) {
        const int slot = slots[graded];
        const fs::path rel = fs::path("triples") / (img.id + "_" + std::to_string(slot) + ".png");
        save_binary(img.ranked_triple[graded], dir / rel);
        t.maps[slot] = rel;
        t.human_rank[slot] = graded + 1;
      }
      manifest.triples.push_back(std::move(t));
    }
  }
  const fs::path path = dir / "manifest.json";
  write_manifest(manifest, path);
  return path;
}

}  // namespace emeval
