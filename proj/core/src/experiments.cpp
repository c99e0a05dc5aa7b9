#include "recur/experiments.hpp"

#include "recur/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace recur {

namespace {

// Per-orbit scratch: digits w_1..w_D and backward suffix values
//   suffix[i] = sum_{j>i} a_{w_j} rho^{j-i-1},
// so suffix[0] encloses x from below and suffix[n] encloses T^n x.
struct Orbit {
  std::vector<int> digits;
  std::vector<double> suffix;

  void generate(const IFSConfig& cfg, uint64_t stream_seed, int depth,
                const std::vector<double>& translations, double rho) {
    SplitMix64 rng(stream_seed);
    digits.resize(static_cast<size_t>(depth));
    for (auto& d : digits) d = rng.next_symbol(cfg.alphabet());
    suffix.assign(static_cast<size_t>(depth) + 1, 0.0);
    for (int i = depth - 1; i >= 0; --i) {
      suffix[static_cast<size_t>(i)] =
          translations[static_cast<size_t>(digits[static_cast<size_t>(i)] - 1)] +
          rho * suffix[static_cast<size_t>(i) + 1];
    }
  }
};

// Floating-point slack for the backward evaluation; the recursion is a
// contraction, so accumulated rounding stays within a few ulps of 1/(1-rho).
double float_slack(double rho) { return 4e-16 / (1.0 - rho) + 1e-15; }

struct DistanceEnclosure {
  double lo = 0;
  double hi = 0;
};

DistanceEnclosure distance_enclosure(const Orbit& orbit, int n, const std::vector<double>& rho_pow,
                                     int depth, double slack) {
  const double x_lo = orbit.suffix[0];
  const double t_lo = orbit.suffix[static_cast<size_t>(n)];
  const double x_w = rho_pow[static_cast<size_t>(depth)];
  const double t_w = rho_pow[static_cast<size_t>(depth - n)];
  double dlo = (t_lo - x_lo) - x_w - slack;
  double dhi = (t_lo - x_lo) + t_w + slack;
  DistanceEnclosure out;
  if (dlo <= 0 && dhi >= 0) {
    out.lo = 0;
    out.hi = std::max(-dlo, dhi);
  } else if (dhi < 0) {
    out.lo = -dhi;
    out.hi = -dlo;
  } else {
    out.lo = dlo;
    out.hi = dhi;
  }
  return out;
}

void parallel_over_samples(long samples, const std::function<void(long)>& body) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers <= 1 || samples < 256) {
    for (long i = 0; i < samples; ++i) body(i);
    return;
  }
  workers = std::min<unsigned>(workers, 16);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (long i = static_cast<long>(w); i < samples; i += static_cast<long>(workers)) {
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

int orbit_guard_digits(const IFSConfig& cfg) {
  const double per_digit = std::log2(1.0 / to_double(cfg.rho()));
  return static_cast<int>(std::ceil(64.0 / per_digit)) + 64;
}

void ExperimentConfig::validate(const IFSConfig& cfg) const {
  if (!seed_set) fail(Errc::bad_argument, "randomized runs need an explicit seed");
  if (horizon < 1) fail(Errc::bad_argument, "horizon must be >= 1");
  if (samples < 1) fail(Errc::bad_argument, "sample count must be >= 1");
  if (orbit_depth != 0 && orbit_depth < horizon + orbit_guard_digits(cfg)) {
    fail(Errc::depth_exhausted, "orbit depth leaves no guard digits beyond the horizon");
  }
}

TruncatedPoint sample_point(const IFSConfig& cfg, uint64_t seed, int depth) {
  if (depth < 1) fail(Errc::bad_argument, "sample depth must be >= 1");
  SplitMix64 rng(seed);
  Word w(static_cast<size_t>(depth));
  for (auto& s : w) s = rng.next_symbol(cfg.alphabet());
  return make_truncated(cfg, std::move(w));
}

RecurrentFractionResult recurrent_fraction(const IFSConfig& cfg, const RateFunction& phi, int k,
                                           int N, long samples, uint64_t seed,
                                           const UndecidedPolicy& policy) {
  if (k < 1 || N < k) fail(Errc::bad_argument, "need 1 <= k <= N");
  if (samples < 1) fail(Errc::bad_argument, "sample count must be >= 1");

  const int guard = orbit_guard_digits(cfg);
  const int depth = N + guard;
  const int deep = depth + policy.extra_depth;
  const double rho = to_double(cfg.rho());
  const double slack = float_slack(rho);
  std::vector<double> translations;
  for (const auto& a : cfg.translations()) translations.push_back(to_double(a));
  std::vector<double> rho_pow(static_cast<size_t>(deep) + 1);
  rho_pow[0] = 1.0;
  for (size_t i = 1; i < rho_pow.size(); ++i) rho_pow[i] = rho_pow[i - 1] * rho;
  std::vector<double> phi_vals(static_cast<size_t>(N) + 1, 0.0);
  for (int n = k; n <= N; ++n) phi_vals[static_cast<size_t>(n)] = phi.eval(cfg, n);

  std::vector<uint8_t> hit_any(static_cast<size_t>(samples), 0);
  std::vector<std::vector<long>> hits(static_cast<size_t>(samples));
  std::vector<long> undecided(static_cast<size_t>(samples), 0);
  std::vector<long> escalated(static_cast<size_t>(samples), 0);

  parallel_over_samples(samples, [&](long i) {
    Orbit orbit;
    orbit.generate(cfg, derive_stream(seed, static_cast<uint64_t>(i)), depth, translations, rho);
    Orbit deep_orbit;
    bool have_deep = false;
    auto& my_hits = hits[static_cast<size_t>(i)];
    for (int n = k; n <= N; ++n) {
      const double phi_n = phi_vals[static_cast<size_t>(n)];
      DistanceEnclosure d = distance_enclosure(orbit, n, rho_pow, depth, slack);
      bool decided_hit = d.hi < phi_n;
      bool decided_miss = d.lo >= phi_n;
      if (!decided_hit && !decided_miss) {
        // One escalation with more digits, then the conservative miss.
        if (!have_deep) {
          deep_orbit.generate(cfg, derive_stream(seed, static_cast<uint64_t>(i)), deep,
                              translations, rho);
          have_deep = true;
        }
        ++escalated[static_cast<size_t>(i)];
        d = distance_enclosure(deep_orbit, n, rho_pow, deep, slack);
        decided_hit = d.hi < phi_n;
        decided_miss = d.lo >= phi_n;
        if (!decided_hit && !decided_miss) {
          ++undecided[static_cast<size_t>(i)];
          continue;
        }
      }
      if (decided_hit) {
        my_hits.push_back(n);
        hit_any[static_cast<size_t>(i)] = 1;
      }
    }
  });

  RecurrentFractionResult out;
  out.samples = samples;
  out.start = k;
  out.horizon = N;
  out.hits_per_n.assign(static_cast<size_t>(N - k + 1), 0);
  long hit_count = 0;
  for (long i = 0; i < samples; ++i) {
    hit_count += hit_any[static_cast<size_t>(i)];
    out.undecided_tests += undecided[static_cast<size_t>(i)];
    out.escalations += escalated[static_cast<size_t>(i)];
    for (long n : hits[static_cast<size_t>(i)]) {
      ++out.hits_per_n[static_cast<size_t>(n - k)];
    }
  }
  out.fraction = static_cast<double>(hit_count) / static_cast<double>(samples);
  return out;
}

std::vector<LiminfCheckpoint> liminf_statistic(const IFSConfig& cfg, const GammaScaled& alpha,
                                               const std::vector<int>& horizons, long samples,
                                               uint64_t seed) {
  if (horizons.empty()) fail(Errc::bad_argument, "need at least one horizon");
  if (samples < 1) fail(Errc::bad_argument, "sample count must be >= 1");
  std::vector<int> hs = horizons;
  std::sort(hs.begin(), hs.end());
  const int N = hs.back();
  if (hs.front() < 1) fail(Errc::bad_argument, "horizons must be >= 1");

  const int depth = N + orbit_guard_digits(cfg);
  const double rho = to_double(cfg.rho());
  const double slack = float_slack(rho);
  const double inv_alpha = 1.0 / alpha.value(cfg);
  std::vector<double> translations;
  for (const auto& a : cfg.translations()) translations.push_back(to_double(a));
  std::vector<double> rho_pow(static_cast<size_t>(depth) + 1);
  rho_pow[0] = 1.0;
  for (size_t i = 1; i < rho_pow.size(); ++i) rho_pow[i] = rho_pow[i - 1] * rho;
  std::vector<double> weight(static_cast<size_t>(N) + 1, 0.0);
  for (int n = 1; n <= N; ++n) weight[static_cast<size_t>(n)] = std::pow(double(n), inv_alpha);

  std::vector<LiminfCheckpoint> out(hs.size());
  for (size_t c = 0; c < hs.size(); ++c) {
    out[c].horizon = hs[c];
    out[c].stat_lo.assign(static_cast<size_t>(samples), 0.0);
    out[c].stat_hi.assign(static_cast<size_t>(samples), 0.0);
  }

  parallel_over_samples(samples, [&](long i) {
    Orbit orbit;
    orbit.generate(cfg, derive_stream(seed, static_cast<uint64_t>(i)), depth, translations, rho);
    double lo = std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    size_t next_cp = 0;
    for (int n = 1; n <= N; ++n) {
      DistanceEnclosure d = distance_enclosure(orbit, n, rho_pow, depth, slack);
      const double w = weight[static_cast<size_t>(n)];
      lo = std::min(lo, w * d.lo);
      hi = std::min(hi, w * d.hi);
      while (next_cp < hs.size() && n == hs[next_cp]) {
        out[next_cp].stat_lo[static_cast<size_t>(i)] = lo;
        out[next_cp].stat_hi[static_cast<size_t>(i)] = hi;
        ++next_cp;
      }
    }
  });

  auto quantile = [](std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const size_t idx = static_cast<size_t>(q * static_cast<double>(v.size() - 1) + 0.5);
    return v[std::min(idx, v.size() - 1)];
  };
  for (auto& cp : out) {
    std::vector<double> mid(cp.stat_lo.size());
    for (size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (cp.stat_lo[i] + cp.stat_hi[i]);
    cp.median = quantile(mid, 0.5);
    cp.p10 = quantile(mid, 0.1);
    cp.p90 = quantile(mid, 0.9);
  }
  return out;
}

double liminf_statistic_point(const IFSConfig& cfg, const CodedPoint& p, const GammaScaled& alpha,
                              int N) {
  if (N < 1) fail(Errc::bad_argument, "horizon must be >= 1");
  const double inv_alpha = 1.0 / alpha.value(cfg);
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= N; ++n) {
    Estimate d = recurrence_distance(cfg, p, n);
    best = std::min(best, std::pow(double(n), inv_alpha) * to_double(d.value));
  }
  return best;
}

namespace {

// log of the mean level cover sum, computed stably in the log domain.
double mean_cover_log(const IFSConfig& cfg, const std::vector<double>& log_phi, int k, int N,
                      double s) {
  const double log_l = std::log(static_cast<double>(cfg.alphabet()));
  const double log_rho = std::log(to_double(cfg.rho()));
  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(static_cast<size_t>(N - k + 1));
  for (int n = k; n <= N; ++n) {
    const double log_w =
        std::min(log_rho * (n - 1) + log_phi[static_cast<size_t>(n - k)], log_rho * n);
    const double t = double(n) * log_l + s * log_w;
    terms.push_back(t);
    max_term = std::max(max_term, t);
  }
  double acc = 0;
  for (double t : terms) acc += std::exp(t - max_term);
  return max_term + std::log(acc) - std::log(static_cast<double>(N - k + 1));
}

}  // namespace

double covering_exponent(const IFSConfig& cfg, const RateFunction& phi, int k, int N) {
  if (k < 1 || N < k) fail(Errc::no_root, "empty level range");
  std::vector<double> log_phi;
  log_phi.reserve(static_cast<size_t>(N - k + 1));
  for (int n = k; n <= N; ++n) log_phi.push_back(std::log(phi.eval(cfg, n)));

  double lo = 0.0, hi = 1.0;
  double g_lo = mean_cover_log(cfg, log_phi, k, N, lo);
  if (g_lo < 0) fail(Errc::no_root, "cover sum below one at s = 0");
  double g_hi = mean_cover_log(cfg, log_phi, k, N, hi);
  if (g_hi > 0) return 1.0;  // root beyond the unit exponent; report the cap
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (mean_cover_log(cfg, log_phi, k, N, mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double covering_sum_log10(const IFSConfig& cfg, const RateFunction& phi, int k, int N, double s) {
  if (k < 1 || N < k) fail(Errc::no_root, "empty level range");
  std::vector<double> log_phi;
  log_phi.reserve(static_cast<size_t>(N - k + 1));
  for (int n = k; n <= N; ++n) log_phi.push_back(std::log(phi.eval(cfg, n)));
  return mean_cover_log(cfg, log_phi, k, N, s) / std::log(10.0);
}

}  // namespace recur
