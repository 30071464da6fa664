#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emeval/classic.hpp"
#include "emeval/map.hpp"

namespace emeval {

// A parsed measure id:
//   emeasure | f1 | fbeta:<beta> | iou | fbw | fbw:<beta>
class Measure {
 public:
  enum class Kind { kEMeasure, kFBeta, kIou, kFbw };

  static Measure parse(std::string_view id);

  const std::string& id() const { return id_; }
  Kind kind() const { return kind_; }
  double beta() const { return beta_; }

  struct Outcome {
    double score = 0.0;
    bool degenerate = false;
    std::map<std::string, std::string> params;
  };

  Outcome evaluate(const BinaryMap& gt, const BinaryMap& fm) const;
  double score(const BinaryMap& gt, const BinaryMap& fm) const {
    return evaluate(gt, fm).score;
  }

  FbwConfig fbw_config;

 private:
  Measure(std::string id, Kind kind, double beta) : id_(std::move(id)), kind_(kind), beta_(beta) {}

  std::string id_;
  Kind kind_;
  double beta_;
};

std::vector<Measure> parse_measure_list(std::string_view comma_separated);

// Shortest decimal that round-trips a double ("%.17g" trimmed).
std::string format_real(double v);

}  // namespace emeval
