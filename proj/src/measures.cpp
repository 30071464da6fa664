#include "emeval/measures.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "emeval/emeasure.hpp"

namespace emeval {
namespace {

double parse_beta(std::string_view id, std::string_view text) {
  double beta = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, beta);
  if (ec != std::errc() || ptr != end || !(beta > 0.0) || !std::isfinite(beta)) {
    throw EvalError("invalid beta in measure id '" + std::string(id) + "'");
  }
  return beta;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Measure Measure::parse(std::string_view id) {
  if (id == "emeasure") return Measure(std::string(id), Kind::kEMeasure, 0.0);
  if (id == "f1") return Measure(std::string(id), Kind::kFBeta, 1.0);
  if (id == "iou") return Measure(std::string(id), Kind::kIou, 0.0);
  if (id == "fbw") return Measure(std::string(id), Kind::kFbw, 1.0);
  if (id.starts_with("fbeta:")) {
    return Measure(std::string(id), Kind::kFBeta, parse_beta(id, id.substr(6)));
  }
  if (id.starts_with("fbw:")) {
    return Measure(std::string(id), Kind::kFbw, parse_beta(id, id.substr(4)));
  }
  throw EvalError("unknown measure id '" + std::string(id) + "'");
}

Measure::Outcome Measure::evaluate(const BinaryMap& gt, const BinaryMap& fm) const {
  Outcome out;
  switch (kind_) {
    case Kind::kEMeasure: {
      const auto r = e_measure_detailed(gt, fm);
      out.score = r.score;
      out.degenerate = r.is_degenerate();
      if (r.degenerate == DegenerateGt::kAllZero) out.params["gt"] = "all-zero";
      if (r.degenerate == DegenerateGt::kAllOne) out.params["gt"] = "all-one";
      break;
    }
    case Kind::kFBeta: {
      const auto s = f_beta_detailed(confusion(gt, fm), beta_);
      out.score = s.value;
      out.degenerate = s.degenerate;
      out.params["beta"] = format_real(beta_);
      break;
    }
    case Kind::kIou: {
      const auto s = iou_detailed(confusion(gt, fm));
      out.score = s.value;
      out.degenerate = s.degenerate;
      break;
    }
    case Kind::kFbw: {
      const auto s = fbw_detailed(gt, fm, beta_, fbw_config);
      out.score = s.value;
      out.degenerate = s.degenerate;
      out.params["beta"] = format_real(beta_);
      break;
    }
  }
  return out;
}

std::vector<Measure> parse_measure_list(std::string_view text) {
  std::vector<Measure> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    if (!item.empty()) out.push_back(Measure::parse(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw EvalError("no measure ids given");
  return out;
}

}  // namespace emeval
