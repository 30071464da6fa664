#include "emeval/meta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "emeval/classic.hpp"
#include "emeval/parallel.hpp"
#include "emeval/rank_stats.hpp"
#include "emeval/rng.hpp"
#include "emeval/summation.hpp"

namespace emeval {

void CandidateSet::validate() const {
  if (models.empty()) throw EvalError("image '" + image_id + "' has no model maps");
  for (const auto& m : models) {
    if (m.map.dims() != gt.dims()) {
      throw DimensionMismatch("image '" + image_id + "' model '" + m.name + "' is " +
                              m.map.dims().to_string() + ", GT is " + gt.dims().to_string());
    }
  }
}

double mean_model_score(const CandidateSet& set, const Measure& measure) {
  set.validate();
  CompensatedSum sum;
  for (const auto& m : set.models) sum.add(measure.score(set.gt, m.map));
  return sum.value() / static_cast<double>(set.models.size());
}

std::vector<std::string> select_good_images(const std::vector<CandidateSet>& sets,
                                            const Measure& measure, double keep_fraction) {
  if (sets.empty()) throw EvalError("select_good_images: no images");
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
    throw EvalError("keep fraction must lie in (0, 1]");
  }
  struct Entry {
    std::string id;
    double mean;
  };
  std::vector<Entry> entries;
  entries.reserve(sets.size());
  for (const auto& s : sets) entries.push_back({s.image_id, mean_model_score(s, measure)});
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.mean != b.mean) return a.mean > b.mean;
    return a.id < b.id;
  });

  // The small slack keeps products such as 0.29 * 100 from flooring to 28.
  const double exact = static_cast<double>(sets.size()) * keep_fraction;
  const auto keep = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(exact + 1e-9)));
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < std::min(keep, entries.size()); ++i) ids.push_back(entries[i].id);
  return ids;
}

std::vector<CandidateSet> restrict_to(const std::vector<CandidateSet>& sets,
                                      const std::vector<std::string>& ids) {
  const std::set<std::string> wanted(ids.begin(), ids.end());
  std::vector<CandidateSet> out;
  for (const auto& s : sets) {
    if (wanted.count(s.image_id)) out.push_back(s);
  }
  return out;
}

MetaResult misrank_rate(const std::vector<CandidateSet>& sets, const TrivialMapFn& trivial,
                        const std::string& meta_id, const Measure& measure,
                        std::uint64_t seed, int jobs) {
  std::vector<std::uint8_t> misranked(sets.size(), 0);
  parallel_for(sets.size(), jobs, [&](std::size_t i) {
    const CandidateSet& s = sets[i];
    const double model_mean = mean_model_score(s, measure);
    const BinaryMap t = trivial(s, seed);
    require_same_dims(s.gt.dims(), t.dims(), "trivial map");
    misranked[i] = measure.score(s.gt, t) > model_mean ? 1 : 0;
  });

  MetaResult r;
  r.meta_id = meta_id;
  r.measure_id = measure.id();
  r.population = sets.size();
  r.count = static_cast<std::size_t>(std::count(misranked.begin(), misranked.end(), 1));
  r.value = sets.empty() ? 0.0 : static_cast<double>(r.count) / static_cast<double>(r.population);
  r.seed = seed;
  return r;
}

MetaResult misrank_rate(const std::vector<CandidateSet>& sets, TrivialMapSource source,
                        const Measure& measure, std::uint64_t seed, const MetaOptions& opts) {
  if (source == TrivialMapSource::kGeneric) {
    const CircleConfig circle = opts.circle;
    return misrank_rate(
        sets,
        [circle](const CandidateSet& s, std::uint64_t) { return generic_circle(s.gt.dims(), circle); },
        "mm2", measure, seed, opts.jobs);
  }
  const NoiseConfig noise = opts.noise;
  return misrank_rate(
      sets,
      [noise](const CandidateSet& s, std::uint64_t master) {
        return gaussian_noise_map(s.gt.dims(), Rng::stream(master, s.image_id).next_u64(), noise);
      },
      "mm3", measure, seed, opts.jobs);
}

MetaResult mm4_human_theta(const std::vector<HumanRankedTriple>& triples,
                           const Measure& measure, int jobs) {
  std::vector<double> thetas(triples.size(), 0.0);
  parallel_for(triples.size(), jobs, [&](std::size_t i) {
    const auto& t = triples[i];
    std::vector<RankedItem> by_measure, by_human;
    for (int k = 0; k < 3; ++k) {
      require_same_dims(t.gt.dims(), t.maps[k].dims(), "human-ranked triple");
      const std::string id = std::to_string(k);
      by_measure.push_back({id, measure.score(t.gt, t.maps[k])});
      by_human.push_back({id, -static_cast<double>(t.human_rank[k])});
    }
    thetas[i] = theta(RankingList(std::move(by_measure)), RankingList(std::move(by_human)));
  });

  MetaResult r;
  r.meta_id = "mm4";
  r.measure_id = measure.id();
  r.population = triples.size();
  r.value = triples.empty() ? 0.0 : compensated_sum(thetas) / static_cast<double>(triples.size());
  return r;
}

MetaResult mm5_gt_switch_rate(const std::vector<CandidateSet>& sets, const Measure& measure,
                              std::uint64_t seed, int jobs) {
  if (sets.size() < 2) throw EvalError("GT switch needs at least 2 images");
  const Measure good_map_measure = Measure::parse("f1");

  struct Pair {
    std::size_t image;
    std::size_t model;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    sets[i].validate();
    for (std::size_t m = 0; m < sets[i].models.size(); ++m) {
      if (good_map_measure.score(sets[i].gt, sets[i].models[m].map) >= kGoodMapF1) {
        pairs.push_back({i, m});
      }
    }
  }

  std::vector<std::uint8_t> switched(pairs.size(), 0);
  parallel_for(pairs.size(), jobs, [&](std::size_t p) {
    const auto [i, m] = pairs[p];
    const CandidateSet& s = sets[i];
    const BinaryMap& fm = s.models[m].map;
    Rng rng = Rng::stream(seed, s.image_id + "/" + s.models[m].name, m);
    std::size_t other = rng.below(sets.size() - 1);
    if (other >= i) ++other;
    const BinaryMap wrong_gt = resize_nn(sets[other].gt, fm.dims());
    switched[p] = measure.score(wrong_gt, fm) > measure.score(s.gt, fm) ? 1 : 0;
  });

  MetaResult r;
  r.meta_id = "mm5";
  r.measure_id = measure.id();
  r.population = pairs.size();
  r.count = static_cast<std::size_t>(std::count(switched.begin(), switched.end(), 1));
  r.value = pairs.empty() ? 0.0 : static_cast<double>(r.count) / static_cast<double>(r.population);
  r.seed = seed;
  return r;
}

std::vector<CandidateSet> candidate_sets(const std::vector<SyntheticImage>& corpus) {
  std::vector<CandidateSet> out;
  out.reserve(corpus.size());
  for (const auto& img : corpus) out.push_back({img.id, img.gt, img.models});
  return out;
}

std::vector<HumanRankedTriple> human_triples(const std::vector<SyntheticImage>& corpus) {
  std::vector<HumanRankedTriple> out;
  for (const auto& img : corpus) {
    if (img.ranked_triple.size() != 3) continue;
    HumanRankedTriple t;
    t.image_id = img.id;
    t.gt = img.gt;
    for (int k = 0; k < 3; ++k) {
      t.maps[k] = img.ranked_triple[k];
      t.human_rank[k] = k + 1;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace emeval
