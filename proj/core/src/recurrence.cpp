#include "recur/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace recur {

JDescriptor j_interval(const IFSConfig& cfg, const Word& word, const Rational& phi_n) {
  if (word.empty()) fail(Errc::empty_word, "recurrence windows need a nonempty word");
  if (phi_n <= 0) fail(Errc::nonpositive_rate, "phi(n) must be positive");
  const long n = static_cast<long>(word.size());
  const Rational rho_n = cfg.rho_pow(n);
  const Rational denom = Rational(1) - rho_n;
  Interval cyl = cylinder_interval(cfg, word);
  Rational center = cyl.lo / denom;  // [eps]/(1 - rho^n)
  Rational half_width = rho_n * phi_n / denom;
  // The center is the fixed point of phi_eps and lies in the cylinder, so
  // the intersection is never empty.
  Rational lo = std::max(cyl.lo, center - half_width);
  Rational hi = std::min(cyl.hi, center + half_width);
  return JDescriptor{word, std::move(center), std::move(half_width),
                     Interval{std::move(lo), std::move(hi)}};
}

namespace {

// Depth-first cylinder walk; prunes subtrees whose cylinder misses the
// region. `prefix_value` is [eps] of the partial word.
void enumerate_rec(const IFSConfig& cfg, const std::vector<Rational>& rho_pow,
                   const Rational& prefix_value, int level, int target, const Rational& phi_n,
                   const Rational& denom, const std::optional<Interval>& region, LevelSet& out) {
  const Rational& rho_level = rho_pow[static_cast<size_t>(level)];
  if (region) {
    Interval cyl{prefix_value, prefix_value + rho_level};
    if (!intersect(cyl, *region)) return;
  }
  if (level == target) {
    Rational center = prefix_value / denom;
    Rational half_width = rho_level * phi_n / denom;
    Rational lo = std::max(prefix_value, center - half_width);
    Rational hi = std::min(prefix_value + rho_level, center + half_width);
    if (region) {
      lo = std::max(lo, region->lo);
      hi = std::min(hi, region->hi);
      if (lo > hi) return;
    }
    ++out.count;
    out.intervals.push_back(Interval{std::move(lo), std::move(hi)});
    return;
  }
  for (int j = 1; j <= cfg.alphabet(); ++j) {
    enumerate_rec(cfg, rho_pow, prefix_value + rho_level * cfg.translation(j), level + 1, target,
                  phi_n, denom, region, out);
  }
}

}  // namespace

LevelSet enumerate_level(const IFSConfig& cfg, int n, const Rational& phi_n,
                         const std::optional<Interval>& region, long cap) {
  if (n < 1) fail(Errc::bad_argument, "level index must be >= 1");
  if (phi_n <= 0) fail(Errc::nonpositive_rate, "phi(n) must be positive");
  double words = std::pow(static_cast<double>(cfg.alphabet()), n);
  if (words > static_cast<double>(cap)) {
    fail(Errc::level_too_large, "L^n exceeds the enumeration cap", n);
  }
  LevelSet out;
  out.n = n;
  out.region = region;
  std::vector<Rational> rho_pow(static_cast<size_t>(n) + 1);
  rho_pow[0] = 1;
  for (int i = 1; i <= n; ++i) rho_pow[static_cast<size_t>(i)] = rho_pow[i - 1] * cfg.rho();
  enumerate_rec(cfg, rho_pow, Rational(0), 0, n, phi_n, Rational(1) - rho_pow.back(), region,
                out);
  out.intervals = merge_intervals(std::move(out.intervals));
  return out;
}

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
  if (intervals.empty()) return intervals;
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  merged.reserve(intervals.size());
  merged.push_back(intervals.front());
  for (size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, intervals[i].hi);
    } else {
      merged.push_back(intervals[i]);
    }
  }
  return merged;
}

std::vector<Interval> intersect_sorted(const std::vector<Interval>& a,
                                       const std::vector<Interval>& b) {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    Rational lo = std::max(a[i].lo, b[j].lo);
    Rational hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back(Interval{std::move(lo), std::move(hi)});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

MeasureEstimate mu_union(const IFSConfig& cfg, const std::vector<LevelSet>& sets, int max_depth) {
  if (sets.empty()) fail(Errc::bad_argument, "mu_union needs at least one level set");
  std::vector<Interval> all;
  for (const auto& s : sets) {
    all.insert(all.end(), s.intervals.begin(), s.intervals.end());
  }
  MeasureEstimate acc;
  for (const auto& comp : merge_intervals(std::move(all))) {
    acc += mu_interval(cfg, comp, max_depth);
  }
  return acc;
}

namespace {

MeasureEstimate mu_of_components(const IFSConfig& cfg, const std::vector<Interval>& components,
                                 int max_depth) {
  MeasureEstimate acc;
  for (const auto& c : components) acc += mu_interval(cfg, c, max_depth);
  return acc;
}

}  // namespace

QuasiIndepReport quasi_independence(const IFSConfig& cfg, const Interval& ball,
                                    const RateFunction& phi, int horizon, int max_depth,
                                    long cap) {
  if (horizon < 1) fail(Errc::bad_argument, "horizon must be >= 1");
  QuasiIndepReport report;
  report.horizon = horizon;
  report.ball = ball;
  report.mu_ball_est = mu_interval(cfg, ball, max_depth);
  if (report.mu_ball_est.value - report.mu_ball_est.error <= 0) {
    fail(Errc::empty_ball, "ball has no certified mass");
  }

  std::vector<LevelSet> levels;
  levels.reserve(static_cast<size_t>(horizon));
  for (int n = 1; n <= horizon; ++n) {
    levels.push_back(enumerate_level(cfg, n, phi.eval_rational(cfg, n), ball, cap));
  }

  report.per_level.reserve(levels.size());
  for (const auto& ls : levels) {
    report.per_level.push_back(mu_of_components(cfg, ls.intervals, max_depth));
    report.counts.push_back(ls.count);
    report.sum_single += report.per_level.back();
  }

  // Geometry first, measure second: intersect the sorted interval lists and
  // measure only the resulting components.
  MeasureEstimate off_diagonal;
  for (int m = 0; m < horizon; ++m) {
    for (int n = m + 1; n < horizon; ++n) {
      auto common = intersect_sorted(levels[m].intervals, levels[n].intervals);
      if (common.empty()) continue;
      off_diagonal += mu_of_components(cfg, common, max_depth);
    }
  }
  report.sum_pairs = report.sum_single;
  report.sum_pairs.value += 2 * off_diagonal.value;
  report.sum_pairs.error += 2 * off_diagonal.error;

  report.mu_union_all = mu_union(cfg, levels, max_depth);

  const double s1 = to_double(report.sum_single.value);
  const double s2 = to_double(report.sum_pairs.value);
  const double mb = to_double(report.mu_ball_est.value);
  report.ratio = s1 > 0 ? s2 * mb / (s1 * s1) : 0.0;
  report.pz_lower = s2 > 0 ? s1 * s1 / s2 : 0.0;
  return report;
}

}  // namespace recur
