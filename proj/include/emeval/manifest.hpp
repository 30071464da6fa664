#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace emeval {

// Corpus manifest (JSON). Paths are relative to the manifest's directory
// unless absolute.
//
//   {
//     "images": [
//       {"id": "img0001", "gt": "gt/img0001.png",
//        "maps": [{"model": "dhs", "path": "maps/dhs/img0001.png"}, ...]},
//       ...
//     ],
//     "triples": [
//       {"id": "img0001", "gt": "gt/img0001.png",
//        "maps": ["a.png", "b.png", "c.png"], "human_rank": [2, 1, 3]},
//       ...
//     ]
//   }
//
// human_rank[i] is the rank people gave maps[i], 1 = best; it must be a
// permutation of {1, 2, 3}. Both sections are optional.

struct ManifestMap {
  std::string model;
  std::filesystem::path path;
};

struct ManifestImage {
  std::string id;
  std::filesystem::path gt;
  std::vector<ManifestMap> maps;
};

struct ManifestTriple {
  std::string id;
  std::filesystem::path gt;
  std::array<std::filesystem::path, 3> maps;
  std::array<int, 3> human_rank{};
};

struct Manifest {
  std::filesystem::path base_dir;
  std::vector<ManifestImage> images;
  std::vector<ManifestTriple> triples;

  std::filesystem::path resolve(const std::filesystem::path& p) const {
    return p.is_absolute() ? p : base_dir / p;
  }
};

Manifest load_manifest(const std::filesystem::path& path);
Manifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir);
void write_manifest(const Manifest& m, const std::filesystem::path& path);

}  // namespace emeval
