#pragma once

// Recurrence windows J(eps) inside cylinders, the level sets
// A_n(B) = {x in K : |T^n x - x| < phi(n)} ∩ B, exact measures of finite
// unions, and the quasi-independence diagnostics behind the divergence
// argument.

#include "recur/ifs.hpp"
#include "recur/measure.hpp"
#include "recur/rates.hpp"

#include <optional>
#include <vector>

namespace recur {

struct JDescriptor {
  Word word;
  Rational center;      // [eps]/(1 - rho^n), the periodic point
  Rational half_width;  // rho^n phi(n) / (1 - rho^n)
  Interval interval;    // cylinder ∩ [center - half_width, center + half_width]
};

struct LevelSet {
  int n = 0;
  std::vector<Interval> intervals;  // sorted, pairwise disjoint after merging
  std::optional<Interval> region;
  long count = 0;  // words whose window meets the region (N(n, B))
};

// Exact window for one word; throws empty_word / nonpositive_rate.
JDescriptor j_interval(const IFSConfig& cfg, const Word& word, const Rational& phi_n);

inline constexpr long kDefaultLevelCap = 1L << 20;

// All L^n windows at level n, clipped to `region` when given. Cylinder
// subtrees that miss the region are pruned; throws level_too_large when L^n
// exceeds the cap.
LevelSet enumerate_level(const IFSConfig& cfg, int n, const Rational& phi_n,
                         const std::optional<Interval>& region = std::nullopt,
                         long cap = kDefaultLevelCap);

// Union of possibly overlapping interval lists, merged into disjoint
// components and measured component by component.
MeasureEstimate mu_union(const IFSConfig& cfg, const std::vector<LevelSet>& sets, int max_depth);

std::vector<Interval> merge_intervals(std::vector<Interval> intervals);
std::vector<Interval> intersect_sorted(const std::vector<Interval>& a,
                                       const std::vector<Interval>& b);

struct QuasiIndepReport {
  int horizon = 0;
  Interval ball;
  MeasureEstimate mu_ball_est;
  MeasureEstimate sum_single;  // sum_n mu(A_n(B))
  MeasureEstimate sum_pairs;   // sum_{m,n} mu(A_m(B) ∩ A_n(B))
  double ratio = 0;            // sum_pairs * mu(B) / sum_single^2
  double pz_lower = 0;         // sum_single^2 / sum_pairs
  std::vector<MeasureEstimate> per_level;  // mu(A_n(B)), n = 1..horizon
  std::vector<long> counts;                // N(n, B), n = 1..horizon
  MeasureEstimate mu_union_all;            // mu(∪_{n<=horizon} A_n(B))
};

// Measures all pairwise intersections of the level sets inside `ball`;
// throws empty_ball when mu(ball) cannot be certified positive.
QuasiIndepReport quasi_independence(const IFSConfig& cfg, const Interval& ball,
                                    const RateFunction& phi, int horizon, int max_depth,
                                    long cap = kDefaultLevelCap);

}  // namespace recur
