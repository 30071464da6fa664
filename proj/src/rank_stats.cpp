#include "emeval/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "emeval/map.hpp"

namespace emeval {

RankingList::RankingList(std::vector<RankedItem> items) : items_(std::move(items)) {
  std::unordered_set<std::string> seen;
  for (const auto& it : items_) {
    if (!seen.insert(it.id).second) throw EvalError("duplicate ranking id '" + it.id + "'");
  }
}

std::vector<double> ranks_with_ties(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    // Positions i..j (0-based) hold ranks i+1..j+1.
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(const RankingList& a, const RankingList& b) {
  if (a.size() < 2) throw EvalError("rank correlation needs at least 2 items");
  if (a.size() != b.size()) throw EvalError("ranking lists cover different item sets");

  std::unordered_map<std::string, double> b_scores;
  for (const auto& it : b.items()) b_scores.emplace(it.id, it.score);

  std::vector<double> sa, sb;
  sa.reserve(a.size());
  sb.reserve(a.size());
  for (const auto& it : a.items()) {
    auto found = b_scores.find(it.id);
    if (found == b_scores.end()) {
      throw EvalError("ranking lists cover different item sets (missing '" + it.id + "')");
    }
    sa.push_back(it.score);
    sb.push_back(found->second);
  }

  const auto ra = ranks_with_ties(sa);
  const auto rb = ranks_with_ties(sb);
  const double n = static_cast<double>(ra.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - ma;
    const double db = rb[i] - mb;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

double theta(const RankingList& a, const RankingList& b) { return 1.0 - spearman_rho(a, b); }

double retrieval_score(std::optional<int> found_rank_k, std::optional<double> found_score,
                       int intersection_size) {
  if (intersection_size < 0 || intersection_size > 100) {
    throw EvalError("retrieval intersection size must lie in [0, 100]");
  }
  const double overlap = intersection_size / 100.0;
  if (!found_rank_k) return overlap;
  if (*found_rank_k < 1) throw EvalError("retrieval rank must be >= 1");
  if (!found_score) throw EvalError("retrieval rank given without its similarity score");
  return *found_score + 1.0 / *found_rank_k + overlap;
}

std::vector<RetrievalDump> parse_retrieval_dumps(std::istream& in) {
  std::vector<RetrievalDump> dumps;
  std::unordered_set<std::string> ids_in_record;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first.starts_with('#')) continue;
    auto fail = [&](const std::string& why) {
      throw EvalError("retrieval dump line " + std::to_string(line_no) + ": " + why);
    };
    if (first == "query") {
      RetrievalDump d;
      if (!(ls >> d.query_id)) fail("missing query id");
      dumps.push_back(std::move(d));
      ids_in_record.clear();
      continue;
    }
    if (dumps.empty()) fail("result line before any 'query' line");
    double score = 0.0;
    if (!(ls >> score)) fail("expected '<result-id> <score>'");
    std::string extra;
    if (ls >> extra) fail("trailing text");
    auto& d = dumps.back();
    if (d.result_ids.size() == 100) fail("more than 100 results for query " + d.query_id);
    if (!ids_in_record.insert(first).second) fail("duplicate result id " + first);
    d.result_ids.push_back(first);
    d.scores.push_back(score);
  }
  return dumps;
}

std::vector<RetrievalDump> load_retrieval_dumps(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EvalError("file not found: " + path.string());
  return parse_retrieval_dumps(in);
}

double score_retrieval(const RetrievalDump& gt, const RetrievalDump& fm,
                       const std::string& target_id) {
  const std::unordered_set<std::string> gt_ids(gt.result_ids.begin(), gt.result_ids.end());
  int overlap = 0;
  for (const auto& id : fm.result_ids) overlap += gt_ids.count(id) ? 1 : 0;

  const auto it = std::find(fm.result_ids.begin(), fm.result_ids.end(), target_id);
  if (it == fm.result_ids.end()) return retrieval_score(std::nullopt, std::nullopt, overlap);
  const auto idx = static_cast<std::size_t>(it - fm.result_ids.begin());
  return retrieval_score(static_cast<int>(idx) + 1, fm.scores[idx], overlap);
}

}  // namespace emeval
