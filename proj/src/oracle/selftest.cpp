#include "emeval/oracle/selftest.hpp"

#include <cmath>
#include <string>

#include "emeval/classic.hpp"
#include "emeval/emeasure.hpp"
#include "emeval/oracle/naive.hpp"

namespace emeval::oracle {

BinaryMap random_binary_map(Rng& rng, Dimensions d, bool non_constant) {
  for (;;) {
    const double density = rng.uniform();
    std::vector<std::uint8_t> px(d.area());
    for (auto& v : px) v = rng.uniform() < density ? 1 : 0;
    BinaryMap m(d, std::move(px));
    if (!non_constant || !m.is_constant() || d.area() == 1) return m;
  }
}

BinaryMap random_binary_map(Rng& rng, int max_side, bool non_constant) {
  // A 1x1 map is always constant.
  const int lo = non_constant ? 2 : 1;
  const int w = rng.range(lo, max_side);
  const int h = rng.range(1, max_side);
  return random_binary_map(rng, Dimensions(w, h), non_constant);
}

bool run_selftest(std::ostream& out, const SelftestOptions& opts) {
  Rng rng(opts.seed);
  double worst_e = 0.0, worst_fbw = 0.0;
  for (int i = 0; i < opts.pairs; ++i) {
    const BinaryMap gt = random_binary_map(rng, opts.max_side, i % 10 != 0);
    const BinaryMap fm = random_binary_map(rng, gt.dims(), false);
    worst_e = std::max(worst_e, std::abs(emeval::e_measure(gt, fm) - oracle::e_measure(gt, fm)));
    worst_fbw = std::max(worst_fbw, std::abs(emeval::fbw(gt, fm, 1.0) - oracle::fbw(gt, fm, 1.0)));
  }
  const bool e_ok = worst_e <= 1e-10;
  const bool f_ok = worst_fbw <= 1e-9;
  out << (e_ok ? "PASS" : "FAIL") << "  emeasure vs naive per-pixel oracle, " << opts.pairs
      << " pairs, max |diff| = " << worst_e << " (tol 1e-10)\n";
  out << (f_ok ? "PASS" : "FAIL") << "  fbw vs naive convolution/distance oracle, " << opts.pairs
      << " pairs, max |diff| = " << worst_fbw << " (tol 1e-9)\n";
  return e_ok && f_ok;
}

}  // namespace emeval::oracle
