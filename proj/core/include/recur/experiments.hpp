#pragma once

// Seeded Monte Carlo orbit experiments and the covering-exponent dimension
// estimate. Orbit distances run in double precision with explicitly tracked
// enclosure half-widths; the exact rational paths stay in measure/recurrence.

#include "recur/coding.hpp"
#include "recur/ifs.hpp"
#include "recur/rates.hpp"
#include "recur/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace recur {

struct UndecidedPolicy {
  int extra_depth = 64;  // one escalation, then count as miss
};

// Digits needed beyond the horizon so the coding truncation stays far below
// double resolution.
int orbit_guard_digits(const IFSConfig& cfg);

struct ExperimentConfig {
  int horizon = 0;       // N
  int start = 1;         // k
  long samples = 0;
  int orbit_depth = 0;   // D; 0 means horizon + guard
  uint64_t seed = 0;
  bool seed_set = false;
  UndecidedPolicy undecided;

  void validate(const IFSConfig& cfg) const;  // depth and seed invariants
};

// Truncated point with `depth` i.i.d. uniform digits; deterministic in seed.
TruncatedPoint sample_point(const IFSConfig& cfg, uint64_t seed, int depth);

struct RecurrentFractionResult {
  double fraction = 0;              // samples with >= 1 decided hit in [k, N]
  std::vector<long> hits_per_n;     // index 0 <-> n = k
  long undecided_tests = 0;         // still undecided after escalation
  long escalations = 0;
  long samples = 0;
  int start = 1;
  int horizon = 0;
};

RecurrentFractionResult recurrent_fraction(const IFSConfig& cfg, const RateFunction& phi, int k,
                                           int N, long samples, uint64_t seed,
                                           const UndecidedPolicy& policy = {});

struct LiminfCheckpoint {
  int horizon = 0;
  std::vector<double> stat_lo;  // certified enclosure of min_{n<=N} n^{1/alpha} d(n)
  std::vector<double> stat_hi;
  double median = 0;            // of the enclosure midpoints
  double p10 = 0;
  double p90 = 0;
};

// One pass per sample; checkpoints share the per-sample minima, so the
// statistic is pointwise non-increasing across growing horizons.
std::vector<LiminfCheckpoint> liminf_statistic(const IFSConfig& cfg, const GammaScaled& alpha,
                                               const std::vector<int>& horizons, long samples,
                                               uint64_t seed);

// Exact-arithmetic variant for a single coded point (test hook).
double liminf_statistic_point(const IFSConfig& cfg, const CodedPoint& p, const GammaScaled& alpha,
                              int N);

// The s in [0,1] where the mean level cover sum
//   (1/(N-k+1)) sum_{n=k}^N L^n (min(rho^{n-1} phi(n), rho^n))^s
// equals one, by bisection to 1e-6. With k == N this is the exact single-level
// cover exponent. Throws no_root for an empty range.
double covering_exponent(const IFSConfig& cfg, const RateFunction& phi, int k, int N);

// log10 of the mean level cover sum at a given s (plot/diagnostic hook).
double covering_sum_log10(const IFSConfig& cfg, const RateFunction& phi, int k, int N, double s);

}  // namespace recur
