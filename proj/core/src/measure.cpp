#include "recur/measure.hpp"

#include "recur/coding.hpp"
#include "recur/rng.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace recur {

namespace {

// Self-similar recursion on a subinterval of [0,1]. At most two partially-cut
// branches stay alive per level, so the certified error never exceeds
// 2 L^-max_depth.
MeasureEstimate mu_rec(const IFSConfig& cfg, const Rational& lo, const Rational& hi, int depth) {
  if (hi <= 0 || lo >= 1 || lo >= hi) return MeasureEstimate{Rational(0), Rational(0)};
  if (lo <= 0 && hi >= 1) return MeasureEstimate{Rational(1), Rational(0)};
  if (depth == 0) return MeasureEstimate{Rational(0), Rational(1)};

  MeasureEstimate acc;
  for (int j = 1; j <= cfg.alphabet(); ++j) {
    const Rational& a = cfg.translation(j);
    Rational clo = std::max(lo, a);
    Rational chi = std::min(hi, a + cfg.rho());
    if (clo >= chi) continue;  // empty or a single point (mu is atomless)
    if (clo == a && chi == a + cfg.rho()) {
      acc.value += 1;
    } else {
      acc += mu_rec(cfg, (clo - a) / cfg.rho(), (chi - a) / cfg.rho(), depth - 1);
    }
  }
  acc.value /= cfg.alphabet();
  acc.error /= cfg.alphabet();
  return acc;
}

}  // namespace

MeasureEstimate mu_interval(const IFSConfig& cfg, const Interval& iv, int max_depth) {
  if (max_depth < 1) fail(Errc::bad_argument, "max_depth must be >= 1");
  Rational lo = std::max(iv.lo, Rational(0));
  Rational hi = std::min(iv.hi, Rational(1));
  return mu_rec(cfg, lo, hi, max_depth);
}

MeasureEstimate mu_ball(const IFSConfig& cfg, const Rational& center, const Rational& radius,
                        int max_depth) {
  if (radius <= 0) fail(Errc::nonpositive_radius, "ball radius must be positive");
  return mu_interval(cfg, Interval{center - radius, center + radius}, max_depth);
}

int depth_for_radius(const IFSConfig& cfg, const Rational& r, int extra) {
  if (r <= 0) fail(Errc::nonpositive_radius, "radius must be positive");
  int n = 0;
  Rational p(1);
  while (p > r && n < 100000) {
    p *= cfg.rho();
    ++n;
  }
  return n + extra;
}

AhlforsReport ahlfors_scan(const IFSConfig& cfg, long n_samples, const Rational& r_min,
                           const Rational& r_max, uint64_t seed) {
  if (!(r_min > 0 && r_min < r_max && r_max <= Rational(1, 4))) {
    fail(Errc::bad_range, "need 0 < r_min < r_max <= 1/4");
  }
  if (n_samples < 0) fail(Errc::bad_argument, "sample count must be >= 0");

  AhlforsReport report;
  report.samples = n_samples;
  report.bound_lo = 1.0 / cfg.alphabet();
  report.bound_hi = 2.0 / to_double(cfg.rho()) + 1.0;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = -std::numeric_limits<double>::infinity();
  report.rows.reserve(static_cast<size_t>(n_samples));

  const int digit_depth = depth_for_radius(cfg, r_min, 8);
  const int mu_depth = depth_for_radius(cfg, r_min, 40);
  const double log_rmin = std::log(to_double(r_min));
  const double log_rmax = std::log(to_double(r_max));
  const double gamma = cfg.gamma();
  // x = pi(w 1 1 1 ...), an exact point of K for the sampled prefix w.
  const Rational tail = cfg.translation(1) / (Rational(1) - cfg.rho());

  for (long i = 0; i < n_samples; ++i) {
    SplitMix64 rng(derive_stream(seed, static_cast<uint64_t>(i)));
    Word w(static_cast<size_t>(digit_depth));
    for (auto& s : w) s = rng.next_symbol(cfg.alphabet());
    Rational x = word_value(cfg, w) + cfg.rho_pow(digit_depth) * tail;

    double rd = std::exp(log_rmin + rng.next_unit() * (log_rmax - log_rmin));
    Rational r = dyadic_approx(Float100(rd));
    if (r < r_min) r = r_min;
    if (r > r_max) r = r_max;

    MeasureEstimate mu = mu_ball(cfg, x, r, mu_depth);
    double ratio = to_double(mu.value) / std::pow(to_double(r), gamma);
    report.min_ratio = std::min(report.min_ratio, ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    report.rows.push_back(AhlforsRow{std::move(x), std::move(r), std::move(mu), ratio});
  }
  return report;
}

}  // namespace recur
