#pragma once

// The natural self-similar measure mu = (1/L) sum_j phi_j(mu) on the
// attractor. Interval measures are evaluated by depth-bounded self-similar
// recursion with a certified error bound (<= 2 L^-max_depth).

#include "recur/ifs.hpp"

#include <cstdint>
#include <vector>

namespace recur {

using MeasureEstimate = Estimate;

MeasureEstimate mu_interval(const IFSConfig& cfg, const Interval& iv, int max_depth);

// mu of [center - radius, center + radius] clipped to [0,1];
// throws nonpositive_radius.
MeasureEstimate mu_ball(const IFSConfig& cfg, const Rational& center, const Rational& radius,
                        int max_depth);

struct AhlforsRow {
  Rational x;
  Rational r;
  MeasureEstimate mu;
  double ratio;  // mu(B(x,r)) / r^gamma
};

struct AhlforsReport {
  long samples = 0;
  double min_ratio = 0;
  double max_ratio = 0;
  double bound_lo = 0;  // 1/L
  double bound_hi = 0;  // 2/rho + 1
  std::vector<AhlforsRow> rows;

  bool within_bounds(double slack = 1e-9) const {
    if (samples == 0) return true;
    return min_ratio >= bound_lo - slack && max_ratio <= bound_hi + slack;
  }
};

// Samples x ~ mu via random digits and r log-uniform in [r_min, r_max], and
// records mu(B(x,r))/r^gamma for each draw; throws bad_range.
AhlforsReport ahlfors_scan(const IFSConfig& cfg, long n_samples, const Rational& r_min,
                           const Rational& r_max, uint64_t seed);

// Smallest n with rho^n <= r, plus `extra` levels of headroom.
int depth_for_radius(const IFSConfig& cfg, const Rational& r, int extra);

}  // namespace recur
