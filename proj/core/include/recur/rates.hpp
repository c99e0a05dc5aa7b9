#pragma once

// Rate and dimension function families, the series classifiers for the
// measure and Hausdorff-measure dichotomies, the liminf exponent, and the
// mass-transference ball transform.
//
// Exponent parameters are rational multiples of gamma^k (k in {-1,0,1}),
// which keeps every comparison the classifiers need either exactly rational
// or decidable at 100-digit precision against a declared margin.

#include "recur/errors.hpp"
#include "recur/ifs.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace recur {

// value = coeff * gamma^gamma_pow.
struct GammaScaled {
  Rational coeff{0};
  int gamma_pow = 0;

  double value(const IFSConfig& cfg) const;
  Float100 value_hp(const IFSConfig& cfg) const;

  // Grammar: "R", "gamma", "R*gamma", "R/gamma" with R a rational literal.
  static GammaScaled parse(const std::string& text);
  std::string str() const;
};

inline GammaScaled gamma_scaled(Rational coeff, int gamma_pow = 0) {
  return GammaScaled{std::move(coeff), gamma_pow};
}
GammaScaled mul(const GammaScaled& a, const GammaScaled& b);
GammaScaled mul(const GammaScaled& a, const Rational& b);
GammaScaled inverse(const GammaScaled& a);  // coeff must be nonzero

struct CompareResult {
  int sign = 0;      // -1, 0, +1 for a < b, a ~ b, a > b
  bool exact = true; // decided by rational structure (0 means true equality)
};

// Exact when the gamma powers match or gamma itself is rational; otherwise a
// 100-digit comparison with a 10^-60 relative margin (sign 0 => critical).
CompareResult compare(const IFSConfig& cfg, const GammaScaled& a, const GammaScaled& b);

// Compares sum(lhs) with sum(rhs) under the same exactness rules.
CompareResult compare_sums(const IFSConfig& cfg, std::vector<GammaScaled> lhs,
                           std::vector<GammaScaled> rhs);

// ---------------------------------------------------------------------------
// Rate functions phi: N -> R+.

struct ConstantRate {
  Rational c;  // phi(n) = c
};
struct PowerRate {
  Rational c;         // phi(n) = c * n^{-1/alpha}
  GammaScaled alpha;  // alpha > 0
};
struct GeometricRate {
  Rational b;  // phi(n) = rho^{b n}, b > 0
};
struct GeometricLogRate {
  // phi(n) = rho^{b n} * (n log(1/rho))^{-e}: e is the logarithmic decay
  // exponent, so positive e shrinks the rate below rho^{b n}.
  Rational b;
  GammaScaled e;
};
struct TableRate {
  std::vector<Rational> values;  // 1-based: phi(n) = values[n-1]
};

class RateFunction {
 public:
  using Family = std::variant<ConstantRate, PowerRate, GeometricRate, GeometricLogRate, TableRate>;

  static RateFunction constant(Rational c);
  static RateFunction power(Rational c, GammaScaled alpha);
  static RateFunction geometric(Rational b);
  static RateFunction geometric_log(Rational b, GammaScaled e);
  static RateFunction table(std::vector<Rational> values);
  static RateFunction clamped(RateFunction inner);  // min(inner(n), (1-rho)/4)

  const Family& family() const { return family_; }
  bool clamped() const { return clamped_; }
  std::optional<long> table_horizon() const;

  Float100 eval_hp(const IFSConfig& cfg, long n) const;
  double eval(const IFSConfig& cfg, long n) const;

  // The rational value used for exact set construction: equal to the true
  // value whenever that value is rational, otherwise a deterministic dyadic
  // approximation with 2^-76 relative error.
  Rational eval_rational(const IFSConfig& cfg, long n) const;

 private:
  RateFunction(Family f, bool clamp) : family_(std::move(f)), clamped_(clamp) {}

  Family family_;
  bool clamped_ = false;
};

// ---------------------------------------------------------------------------
// Dimension functions f with f(r) -> 0 as r -> 0.

struct PowerDim {
  GammaScaled s;  // f(r) = r^s, s > 0
};
struct PowerLogDim {
  GammaScaled s;  // f(r) = r^s * (log(1/r))^t on r in (0,1)
  GammaScaled t;
};

class DimensionFunction {
 public:
  using Family = std::variant<PowerDim, PowerLogDim>;

  static DimensionFunction power(GammaScaled s);
  static DimensionFunction power_log(GammaScaled s, GammaScaled t);

  const Family& family() const { return family_; }

  Float100 eval_hp(const IFSConfig& cfg, const Float100& r) const;  // r in (0,1)
  double eval(const IFSConfig& cfg, double r) const;

  // lambda with f(2r) <= lambda f(r) for r <= 0.1.
  double doubling_constant(const IFSConfig& cfg) const;

  // True when r^{-gamma} f(r) is non-increasing in r (grows as r -> 0).
  bool r_gamma_monotone(const IFSConfig& cfg) const;

 private:
  explicit DimensionFunction(Family f) : family_(std::move(f)) {}
  Family family_;
};

// ---------------------------------------------------------------------------
// Series verdicts.

enum class VerdictKind { null_set, full_set, zero_hf, full_hf, inconclusive };
enum class VerdictBasis { closed_form, numeric_partial_sums };
enum class HfMassOnK { infinite, positive_finite, zero };

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  VerdictBasis basis = VerdictBasis::numeric_partial_sums;
  long horizon = 0;  // meaningful for numeric_partial_sums
  std::optional<HfMassOnK> hf_on_k;
};

const char* verdict_kind_name(VerdictKind k);
const char* hf_mass_name(HfMassOnK m);

// Classifies sum phi^gamma(n): null_set iff convergent, full_set iff
// divergent. Table rates get numeric partial sums and may be inconclusive.
Verdict khintchine_classify(const IFSConfig& cfg, const RateFunction& phi);

// Classifies sum f(rho^n phi(n)) rho^{-gamma n}; requires the monotone gate
// r_gamma_monotone, else throws monotonicity_violated. full_hf verdicts also
// classify the f-mass of the whole attractor.
Verdict jarnik_classify(const IFSConfig& cfg, const DimensionFunction& f, const RateFunction& phi);

struct BExponent {
  double value = 0;          // liminf_n log_rho phi(n) / n
  bool proxy = false;        // numeric proxy from a finite table
  bool infinity_trending = false;
};

// Closed form per family; Table rates need a horizon (throws
// horizon_required) and report a finite-window proxy.
BExponent b_exponent(const IFSConfig& cfg, const RateFunction& phi,
                     std::optional<long> horizon = std::nullopt);

// gamma/(1+b) with b in [0, inf]; throws negative_b.
double dim_formula(const IFSConfig& cfg, double b);

// B(center, f(radius)^{1/delta}); exact when f is the delta-power.
Interval ball_transform(const IFSConfig& cfg, const DimensionFunction& f, const Rational& center,
                        const Rational& radius, const GammaScaled& delta);

// f^{1/gamma}(rho^n phi(n)/(1-rho^n)) * (1-rho^n)/rho^n.
double phi_tilde(const IFSConfig& cfg, const DimensionFunction& f, const RateFunction& phi, long n);

}  // namespace recur
