#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace emeval {

struct RankedItem {
  std::string id;
  double score = 0.0;
};

// Items with unique ids; higher score ranks first.
class RankingList {
 public:
  RankingList() = default;
  explicit RankingList(std::vector<RankedItem> items);

  const std::vector<RankedItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<RankedItem> items_;
};

// Rank 1 goes to the highest score; tied scores share the mean of the ranks
// they span.
std::vector<double> ranks_with_ties(const std::vector<double>& scores);

// Pearson correlation of the tie-averaged rank vectors, items matched by id.
// A constant rank vector on either side yields 0.
double spearman_rho(const RankingList& a, const RankingList& b);

// 1 - rho, in [0, 2]; 0 for identical order, 2 for reversed order.
double theta(const RankingList& a, const RankingList& b);

// Score of one foreground map in the retrieval application:
//   found_score + 1/k + |I|/100  if the query's GT image was retrieved at rank k
//   |I|/100                      otherwise
// where |I| is the overlap of the GT-driven and FM-driven result lists.
double retrieval_score(std::optional<int> found_rank_k, std::optional<double> found_score,
                       int intersection_size);

// One query of a precomputed retrieval run: up to 100 results in rank order.
struct RetrievalDump {
  std::string query_id;
  std::vector<std::string> result_ids;
  std::vector<double> scores;
};

// Text format, one record per query:
//
//   # comment
//   query <query-id>
//   <result-id> <similarity>
//   ...
//
// Blank lines and lines starting with '#' are ignored. Ids contain no
// whitespace; results are listed most-similar first.
std::vector<RetrievalDump> parse_retrieval_dumps(std::istream& in);
std::vector<RetrievalDump> load_retrieval_dumps(const std::filesystem::path& path);

// Scores the FM-driven run of one query against the GT-driven run of the same
// query. The GT-combined image is identified by `target_id` (by default the
// query id): it counts as found when it appears in `fm.result_ids`.
double score_retrieval(const RetrievalDump& gt, const RetrievalDump& fm,
                       const std::string& target_id);
inline double score_retrieval(const RetrievalDump& gt, const RetrievalDump& fm) {
  return score_retrieval(gt, fm, gt.query_id);
}

}  // namespace emeval
