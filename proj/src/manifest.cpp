#include "emeval/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "emeval/map.hpp"

namespace emeval {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw EvalError("manifest: " + where + " lacks required field '" + key + "'");
  }
  return obj.at(key);
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw EvalError("manifest: " + where + "." + key + " must be a string");
  return v.get<std::string>();
}

}  // namespace

Manifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw EvalError(std::string("manifest: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw EvalError("manifest: top level must be an object");

  Manifest m;
  m.base_dir = base_dir;
  std::set<std::string> ids;
  if (doc.contains("images")) {
    for (const json& item : doc.at("images")) {
      ManifestImage img;
      img.id = require_string(item, "id", "image entry");
      const std::string where = "image '" + img.id + "'";
      if (!ids.insert(img.id).second) throw EvalError("manifest: duplicate image id " + img.id);
      img.gt = require_string(item, "gt", where);
      if (item.contains("maps")) {
        for (const json& mp : item.at("maps")) {
          img.maps.push_back({require_string(mp, "model", where + " map"),
                              require_string(mp, "path", where + " map")});
        }
      }
      m.images.push_back(std::move(img));
    }
  }
  if (doc.contains("triples")) {
    for (const json& item : doc.at("triples")) {
      ManifestTriple t;
      t.id = require_string(item, "id", "triple entry");
      const std::string where = "triple '" + t.id + "'";
      t.gt = require_string(item, "gt", where);
      const json& maps = require(item, "maps", where);
      const json& rank = require(item, "human_rank", where);
      if (!maps.is_array() || maps.size() != 3 || !rank.is_array() || rank.size() != 3) {
        throw EvalError("manifest: " + where + " needs exactly 3 maps and 3 ranks");
      }
      for (int i = 0; i < 3; ++i) {
        t.maps[i] = maps[i].get<std::string>();
        t.human_rank[i] = rank[i].get<int>();
      }
      auto sorted = t.human_rank;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != std::array<int, 3>{1, 2, 3}) {
        throw EvalError("manifest: " + where + " human_rank is not a permutation of 1,2,3");
      }
      m.triples.push_back(std::move(t));
    }
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EvalError("file not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  json doc;
  doc["images"] = json::array();
  for (const auto& img : m.images) {
    json maps = json::array();
    for (const auto& mp : img.maps) {
      maps.push_back({{"model", mp.model}, {"path", mp.path.generic_string()}});
    }
    doc["images"].push_back({{"id", img.id}, {"gt", img.gt.generic_string()}, {"maps", maps}});
  }
  if (!m.triples.empty()) {
    doc["triples"] = json::array();
    for (const auto& t : m.triples) {
      doc["triples"].push_back({{"id", t.id},
                                {"gt", t.gt.generic_string()},
                                {"maps",
                                 {t.maps[0].generic_string(), t.maps[1].generic_string(),
                                  t.maps[2].generic_string()}},
                                {"human_rank", t.human_rank}});
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw EvalError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace emeval
