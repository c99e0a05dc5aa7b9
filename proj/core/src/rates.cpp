#include "recur/rates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <utility>

namespace recur {

namespace {

const GammaScaled kOne = GammaScaled{Rational(1), 0};
const GammaScaled kGamma = GammaScaled{Rational(1), 1};

Float100 gamma_pow_hp(const IFSConfig& cfg, int k) {
  Float100 g = cfg.gamma_hp();
  Float100 acc(1);
  int n = k < 0 ? -k : k;
  for (int i = 0; i < n; ++i) acc *= g;
  if (k < 0) acc = Float100(1) / acc;
  return acc;
}

}  // namespace

double GammaScaled::value(const IFSConfig& cfg) const {
  return value_hp(cfg).convert_to<double>();
}

Float100 GammaScaled::value_hp(const IFSConfig& cfg) const {
  return to_hp(coeff) * gamma_pow_hp(cfg, gamma_pow);
}

GammaScaled GammaScaled::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "gamma") return kGamma;
  if (s == "-gamma") return GammaScaled{Rational(-1), 1};
  const std::string mul_suffix = "*gamma";
  const std::string div_suffix = "/gamma";
  if (s.size() > mul_suffix.size() &&
      s.compare(s.size() - mul_suffix.size(), mul_suffix.size(), mul_suffix) == 0) {
    return GammaScaled{parse_rational(s.substr(0, s.size() - mul_suffix.size())), 1};
  }
  if (s.size() > div_suffix.size() &&
      s.compare(s.size() - div_suffix.size(), div_suffix.size(), div_suffix) == 0) {
    return GammaScaled{parse_rational(s.substr(0, s.size() - div_suffix.size())), -1};
  }
  return GammaScaled{parse_rational(s), 0};
}

std::string GammaScaled::str() const {
  if (gamma_pow == 0) return rational_str(coeff);
  if (gamma_pow == 1) {
    if (coeff == 1) return "gamma";
    return rational_str(coeff) + "*gamma";
  }
  if (gamma_pow == -1) return rational_str(coeff) + "/gamma";
  return rational_str(coeff) + "*gamma^" + std::to_string(gamma_pow);
}

GammaScaled mul(const GammaScaled& a, const GammaScaled& b) {
  return GammaScaled{a.coeff * b.coeff, a.gamma_pow + b.gamma_pow};
}

GammaScaled mul(const GammaScaled& a, const Rational& b) {
  return GammaScaled{a.coeff * b, a.gamma_pow};
}

GammaScaled inverse(const GammaScaled& a) {
  if (a.coeff == 0) fail(Errc::bad_argument, "inverse of zero");
  return GammaScaled{Rational(1) / a.coeff, -a.gamma_pow};
}

CompareResult compare_sums(const IFSConfig& cfg, std::vector<GammaScaled> lhs,
                           std::vector<GammaScaled> rhs) {
  std::map<int, Rational> diff;
  for (const auto& t : lhs) diff[t.gamma_pow] += t.coeff;
  for (const auto& t : rhs) diff[t.gamma_pow] -= t.coeff;
  for (auto it = diff.begin(); it != diff.end();) {
    it = it->second == 0 ? diff.erase(it) : std::next(it);
  }
  if (diff.empty()) return CompareResult{0, true};
  if (diff.size() == 1) {
    return CompareResult{diff.begin()->second > 0 ? 1 : -1, true};
  }
  if (cfg.gamma_rational()) {
    Rational v(0);
    for (const auto& [k, c] : diff) v += c * pow_rational(*cfg.gamma_rational(), k);
    if (v == 0) return CompareResult{0, true};
    return CompareResult{v > 0 ? 1 : -1, true};
  }
  Float100 v(0), scale(1);
  for (const auto& [k, c] : diff) {
    Float100 term = to_hp(c) * gamma_pow_hp(cfg, k);
    v += term;
    scale = std::max(scale, fabs(term));
  }
  static const Float100 kMargin("1e-60");
  if (fabs(v) <= scale * kMargin) return CompareResult{0, false};
  return CompareResult{v > 0 ? 1 : -1, false};
}

CompareResult compare(const IFSConfig& cfg, const GammaScaled& a, const GammaScaled& b) {
  return compare_sums(cfg, {a}, {b});
}

// ---------------------------------------------------------------------------
// Rate functions.

RateFunction RateFunction::constant(Rational c) {
  if (c <= 0) fail(Errc::nonpositive_rate, "constant rate must be positive");
  return RateFunction(ConstantRate{std::move(c)}, false);
}

RateFunction RateFunction::power(Rational c, GammaScaled alpha) {
  if (c <= 0) fail(Errc::nonpositive_rate, "power rate needs c > 0");
  if (alpha.coeff <= 0) fail(Errc::nonpositive_rate, "power rate needs alpha > 0");
  return RateFunction(PowerRate{std::move(c), std::move(alpha)}, false);
}

RateFunction RateFunction::geometric(Rational b) {
  if (b <= 0) fail(Errc::nonpositive_rate, "geometric rate needs b > 0");
  return RateFunction(GeometricRate{std::move(b)}, false);
}

RateFunction RateFunction::geometric_log(Rational b, GammaScaled e) {
  if (b <= 0) fail(Errc::nonpositive_rate, "geometric-log rate needs b > 0");
  return RateFunction(GeometricLogRate{std::move(b), std::move(e)}, false);
}

RateFunction RateFunction::table(std::vector<Rational> values) {
  if (values.empty()) fail(Errc::bad_argument, "table rate needs at least one value");
  for (const auto& v : values) {
    if (v <= 0) fail(Errc::nonpositive_rate, "table rate values must be positive");
  }
  return RateFunction(TableRate{std::move(values)}, false);
}

RateFunction RateFunction::clamped(RateFunction inner) {
  return RateFunction(std::move(inner.family_), true);
}

std::optional<long> RateFunction::table_horizon() const {
  if (const auto* t = std::get_if<TableRate>(&family_)) {
    return static_cast<long>(t->values.size());
  }
  return std::nullopt;
}

Float100 RateFunction::eval_hp(const IFSConfig& cfg, long n) const {
  if (n < 1) fail(Errc::bad_argument, "rate functions are defined for n >= 1");
  Float100 v;
  if (const auto* c = std::get_if<ConstantRate>(&family_)) {
    v = to_hp(c->c);
  } else if (const auto* p = std::get_if<PowerRate>(&family_)) {
    v = to_hp(p->c) * pow(Float100(n), -Float100(1) / p->alpha.value_hp(cfg));
  } else if (const auto* g = std::get_if<GeometricRate>(&family_)) {
    Float100 log_rho = log(to_hp(cfg.rho()));
    v = exp(to_hp(g->b) * Float100(n) * log_rho);
  } else if (const auto* gl = std::get_if<GeometricLogRate>(&family_)) {
    Float100 log_inv_rho = -log(to_hp(cfg.rho()));
    v = exp(-to_hp(gl->b) * Float100(n) * log_inv_rho) *
        pow(Float100(n) * log_inv_rho, -gl->e.value_hp(cfg));
  } else {
    const auto& t = std::get<TableRate>(family_);
    if (n > static_cast<long>(t.values.size())) {
      fail(Errc::unknown_family, "table rate evaluated beyond its horizon", n);
    }
    v = to_hp(t.values[static_cast<size_t>(n - 1)]);
  }
  if (clamped_) v = std::min(v, to_hp(cfg.clamp_threshold()));
  return v;
}

double RateFunction::eval(const IFSConfig& cfg, long n) const {
  return eval_hp(cfg, n).convert_to<double>();
}

Rational RateFunction::eval_rational(const IFSConfig& cfg, long n) const {
  if (n < 1) fail(Errc::bad_argument, "rate functions are defined for n >= 1");
  Rational base;
  bool have_exact = false;
  if (const auto* c = std::get_if<ConstantRate>(&family_)) {
    base = c->c;
    have_exact = true;
  } else if (const auto* g = std::get_if<GeometricRate>(&family_)) {
    Rational exponent = g->b * n;
    if (denominator(exponent) == 1) {
      base = pow_rational(cfg.rho(), exponent.convert_to<long>());
      have_exact = true;
    }
  } else if (const auto* t = std::get_if<TableRate>(&family_)) {
    if (n > static_cast<long>(t->values.size())) {
      fail(Errc::unknown_family, "table rate evaluated beyond its horizon", n);
    }
    base = t->values[static_cast<size_t>(n - 1)];
    have_exact = true;
  }
  if (!have_exact) {
    // Deterministic dyadic snapshot of the irrational value; every exact-set
    // computation downstream uses this same rational.
    RateFunction unclamped(family_, false);
    base = dyadic_approx(unclamped.eval_hp(cfg, n));
  }
  if (clamped_) base = std::min(base, cfg.clamp_threshold());
  return base;
}

// ---------------------------------------------------------------------------
// Dimension functions.

DimensionFunction DimensionFunction::power(GammaScaled s) {
  if (s.coeff <= 0) fail(Errc::bad_argument, "dimension function needs s > 0");
  return DimensionFunction(PowerDim{std::move(s)});
}

DimensionFunction DimensionFunction::power_log(GammaScaled s, GammaScaled t) {
  if (s.coeff <= 0) fail(Errc::bad_argument, "dimension function needs s > 0");
  return DimensionFunction(PowerLogDim{std::move(s), std::move(t)});
}

Float100 DimensionFunction::eval_hp(const IFSConfig& cfg, const Float100& r) const {
  if (r <= 0) fail(Errc::nonpositive_radius, "dimension functions need r > 0");
  if (const auto* p = std::get_if<PowerDim>(&family_)) {
    return pow(r, p->s.value_hp(cfg));
  }
  const auto& pl = std::get<PowerLogDim>(family_);
  if (r >= 1) fail(Errc::bad_argument, "log-power dimension function needs r < 1");
  return pow(r, pl.s.value_hp(cfg)) * pow(-log(r), pl.t.value_hp(cfg));
}

double DimensionFunction::eval(const IFSConfig& cfg, double r) const {
  return eval_hp(cfg, Float100(r)).convert_to<double>();
}

double DimensionFunction::doubling_constant(const IFSConfig& cfg) const {
  if (const auto* p = std::get_if<PowerDim>(&family_)) {
    return std::pow(2.0, p->s.value(cfg));
  }
  const auto& pl = std::get<PowerLogDim>(family_);
  const double s = pl.s.value(cfg);
  const double t = pl.t.value(cfg);
  double lambda = std::pow(2.0, s);
  if (t < 0) {
    // f(2r)/f(r) = 2^s (1 - ln2/ln(1/r))^t peaks at the large-r end of the
    // working range r <= 0.1.
    const double r0 = 0.1;
    lambda *= std::pow(1.0 - std::log(2.0) / std::log(1.0 / r0), t);
  }
  return lambda * (1.0 + 1e-12);
}

bool DimensionFunction::r_gamma_monotone(const IFSConfig& cfg) const {
  const GammaScaled* s = nullptr;
  const GammaScaled* t = nullptr;
  if (const auto* p = std::get_if<PowerDim>(&family_)) {
    s = &p->s;
  } else {
    const auto& pl = std::get<PowerLogDim>(family_);
    s = &pl.s;
    t = &pl.t;
  }
  CompareResult cmp = compare(cfg, *s, kGamma);
  if (cmp.sign < 0) return true;
  if (cmp.sign > 0) return false;
  if (!cmp.exact) return false;  // unresolved critical: refuse
  if (!t) return true;           // f = r^gamma: the quotient is constant
  return t->coeff >= 0;
}

// ---------------------------------------------------------------------------
// Series classifiers.

const char* verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::null_set: return "NullSet";
    case VerdictKind::full_set: return "FullSet";
    case VerdictKind::zero_hf: return "ZeroHf";
    case VerdictKind::full_hf: return "FullHf";
    case VerdictKind::inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* hf_mass_name(HfMassOnK m) {
  switch (m) {
    case HfMassOnK::infinite: return "Infinite";
    case HfMassOnK::positive_finite: return "PositiveFinite";
    case HfMassOnK::zero: return "Zero";
  }
  return "?";
}

namespace {

enum class SeriesOutcome { convergent, divergent, inconclusive };

// Numeric partial sums can never prove convergence; the decay witness makes
// the convergent answer an explicitly labeled heuristic.
SeriesOutcome scan_series(const std::function<double(long)>& term, long horizon) {
  double sum = 0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  int decay_run = 0;
  double last = std::numeric_limits<double>::quiet_NaN();
  for (long n = 1; n <= horizon; ++n) {
    double t = term(n);
    if (std::isnan(t)) return SeriesOutcome::inconclusive;
    sum += t;
    if (std::isinf(sum) || sum > 1e6) return SeriesOutcome::divergent;
    if (!std::isnan(prev) && prev > 0 && t <= 0.995 * prev) {
      ++decay_run;
    } else {
      decay_run = 0;
    }
    prev = t;
    last = t;
  }
  if (!std::isnan(last) && last < 1e-15 && decay_run >= 16) return SeriesOutcome::convergent;
  return SeriesOutcome::inconclusive;
}

Verdict numeric_verdict(SeriesOutcome outcome, long horizon, bool hausdorff) {
  Verdict v;
  v.basis = VerdictBasis::numeric_partial_sums;
  v.horizon = horizon;
  switch (outcome) {
    case SeriesOutcome::convergent:
      v.kind = hausdorff ? VerdictKind::zero_hf : VerdictKind::null_set;
      break;
    case SeriesOutcome::divergent:
      v.kind = hausdorff ? VerdictKind::full_hf : VerdictKind::full_set;
      break;
    case SeriesOutcome::inconclusive:
      v.kind = VerdictKind::inconclusive;
      break;
  }
  return v;
}

Verdict closed(VerdictKind kind) {
  Verdict v;
  v.kind = kind;
  v.basis = VerdictBasis::closed_form;
  return v;
}

constexpr long kFallbackHorizon = 100000;

}  // namespace

Verdict khintchine_classify(const IFSConfig& cfg, const RateFunction& phi) {
  // Clamping by a constant changes at most finitely many terms of a rate
  // that decays to zero and keeps divergence otherwise, so the verdict only
  // depends on the underlying family.
  const auto& fam = phi.family();
  if (std::holds_alternative<ConstantRate>(fam)) {
    return closed(VerdictKind::full_set);
  }
  if (std::holds_alternative<GeometricRate>(fam) ||
      std::holds_alternative<GeometricLogRate>(fam)) {
    return closed(VerdictKind::null_set);
  }
  if (const auto* p = std::get_if<PowerRate>(&fam)) {
    // Terms are c^gamma n^{-u} with u = gamma/alpha.
    GammaScaled u = mul(kGamma, inverse(p->alpha));
    CompareResult cmp = compare(cfg, u, kOne);
    if (cmp.sign > 0) return closed(VerdictKind::null_set);
    if (cmp.sign < 0 || cmp.exact) return closed(VerdictKind::full_set);
    const double gamma = cfg.gamma();
    const double ud = u.value(cfg);
    const double cg = std::pow(to_double(p->c), gamma);
    return numeric_verdict(
        scan_series([&](long n) { return cg * std::pow(double(n), -ud); }, kFallbackHorizon),
        kFallbackHorizon, false);
  }
  const long horizon = phi.table_horizon().value();
  const double gamma = cfg.gamma();
  return numeric_verdict(
      scan_series([&](long n) { return std::pow(phi.eval(cfg, n), gamma); }, horizon), horizon,
      false);
}

namespace {

HfMassOnK hf_mass_on_attractor(const IFSConfig& cfg, const DimensionFunction& f) {
  const GammaScaled* s = nullptr;
  const GammaScaled* t = nullptr;
  if (const auto* p = std::get_if<PowerDim>(&f.family())) {
    s = &p->s;
  } else {
    const auto& pl = std::get<PowerLogDim>(f.family());
    s = &pl.s;
    t = &pl.t;
  }
  CompareResult cmp = compare(cfg, *s, kGamma);
  if (cmp.sign < 0) return HfMassOnK::infinite;
  if (cmp.sign > 0) return HfMassOnK::zero;
  if (!t || t->coeff == 0) return HfMassOnK::positive_finite;
  return t->coeff > 0 ? HfMassOnK::infinite : HfMassOnK::zero;
}

}  // namespace

Verdict jarnik_classify(const IFSConfig& cfg, const DimensionFunction& f,
                        const RateFunction& phi) {
  if (!f.r_gamma_monotone(cfg)) {
    fail(Errc::monotonicity_violated, "r^-gamma f(r) must grow as r -> 0");
  }
  GammaScaled s{Rational(0), 0};
  GammaScaled t{Rational(0), 0};
  if (const auto* p = std::get_if<PowerDim>(&f.family())) {
    s = p->s;
  } else {
    const auto& pl = std::get<PowerLogDim>(f.family());
    s = pl.s;
    t = pl.t;
  }

  auto attach_mass = [&](Verdict v) {
    if (v.kind == VerdictKind::full_hf) v.hf_on_k = hf_mass_on_attractor(cfg, f);
    return v;
  };

  const auto& fam = phi.family();
  if (std::holds_alternative<TableRate>(fam)) {
    const long horizon = phi.table_horizon().value();
    const double gamma = cfg.gamma();
    auto term = [&](long n) {
      double a = to_double(cfg.rho_pow(n)) * phi.eval(cfg, n);
      return f.eval(cfg, a) * std::exp(double(n) * gamma * std::log(1.0 / to_double(cfg.rho())));
    };
    return attach_mass(numeric_verdict(scan_series(term, horizon), horizon, true));
  }

  // The exponential scale of the terms is rho^{n(s(1+b) - gamma)}.
  Rational b(0);
  if (const auto* g = std::get_if<GeometricRate>(&fam)) b = g->b;
  if (const auto* gl = std::get_if<GeometricLogRate>(&fam)) b = gl->b;
  GammaScaled exponential = mul(s, Rational(1) + b);
  CompareResult cmp = compare(cfg, exponential, kGamma);
  if (cmp.sign > 0) return closed(VerdictKind::zero_hf);
  if (cmp.sign < 0) return attach_mass(closed(VerdictKind::full_hf));

  if (cmp.exact) {
    // Critical line: terms behave like C n^{-u}; convergent iff u > 1.
    // Power rates contribute s/alpha, geometric-log rates contribute s*e,
    // and the log factor of f contributes n^t because log(1/A_n) ~ C n.
    std::vector<GammaScaled> lhs;
    if (const auto* p = std::get_if<PowerRate>(&fam)) lhs.push_back(mul(s, inverse(p->alpha)));
    if (const auto* gl = std::get_if<GeometricLogRate>(&fam)) lhs.push_back(mul(s, gl->e));
    CompareResult cmp_u = compare_sums(cfg, lhs, {kOne, t});
    if (cmp_u.sign > 0) return closed(VerdictKind::zero_hf);
    if (cmp_u.sign < 0 || cmp_u.exact) return attach_mass(closed(VerdictKind::full_hf));
  }

  // Exponent comparisons stuck inside the margin: fall back to partial sums.
  const double gamma = cfg.gamma();
  const double log_inv_rho = std::log(1.0 / to_double(cfg.rho()));
  auto term = [&](long n) {
    double log_a = std::log(phi.eval(cfg, n)) - double(n) * log_inv_rho;
    double log_f = s.value(cfg) * log_a;
    if (const auto* pl = std::get_if<PowerLogDim>(&f.family())) {
      log_f += pl->t.value(cfg) * std::log(-log_a);
    }
    return std::exp(log_f + double(n) * gamma * log_inv_rho);
  };
  return attach_mass(numeric_verdict(scan_series(term, kFallbackHorizon), kFallbackHorizon, true));
}

BExponent b_exponent(const IFSConfig& cfg, const RateFunction& phi, std::optional<long> horizon) {
  const auto& fam = phi.family();
  if (std::holds_alternative<ConstantRate>(fam) || std::holds_alternative<PowerRate>(fam)) {
    return BExponent{0.0, false, false};
  }
  if (const auto* g = std::get_if<GeometricRate>(&fam)) {
    return BExponent{to_double(g->b), false, false};
  }
  if (const auto* gl = std::get_if<GeometricLogRate>(&fam)) {
    return BExponent{to_double(gl->b), false, false};
  }
  if (!horizon) fail(Errc::horizon_required, "table rates need a horizon for the liminf proxy");
  const long h = *horizon;
  if (h < 2) fail(Errc::bad_argument, "horizon must be >= 2");
  const double log_rho = std::log(to_double(cfg.rho()));
  double best = std::numeric_limits<double>::infinity();
  double first_q = 0, last_q = 0;
  bool nondecreasing = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (long n = (h + 1) / 2; n <= h; ++n) {
    double q = std::log(phi.eval(cfg, n)) / (double(n) * log_rho);
    if (n == (h + 1) / 2) first_q = q;
    last_q = q;
    if (q < prev) nondecreasing = false;
    prev = q;
    best = std::min(best, q);
  }
  BExponent out;
  out.value = best;
  out.proxy = true;
  out.infinity_trending = nondecreasing && (last_q - first_q >= 1.0);
  return out;
}

double dim_formula(const IFSConfig& cfg, double b) {
  if (std::isnan(b)) fail(Errc::bad_argument, "b must be a number");
  if (b < 0) fail(Errc::negative_b, "liminf exponent must be >= 0");
  if (std::isinf(b)) return 0.0;
  return cfg.gamma() / (1.0 + b);
}

Interval ball_transform(const IFSConfig& cfg, const DimensionFunction& f, const Rational& center,
                        const Rational& radius, const GammaScaled& delta) {
  if (radius <= 0) fail(Errc::nonpositive_radius, "ball radius must be positive");
  if (delta.coeff <= 0) fail(Errc::bad_argument, "delta must be positive");

  // f(r)^{1/delta} == r exactly when f is the delta-power.
  const GammaScaled* s = nullptr;
  const GammaScaled* t = nullptr;
  if (const auto* p = std::get_if<PowerDim>(&f.family())) {
    s = &p->s;
  } else {
    const auto& pl = std::get<PowerLogDim>(f.family());
    s = &pl.s;
    t = &pl.t;
  }
  bool plain_power = (t == nullptr) || t->coeff == 0;
  if (plain_power) {
    CompareResult cmp = compare(cfg, *s, delta);
    if (cmp.sign == 0 && cmp.exact) {
      return Interval{center - radius, center + radius};
    }
  }
  Float100 fr = f.eval_hp(cfg, to_hp(radius));
  Float100 rr_hp = pow(fr, Float100(1) / delta.value_hp(cfg));
  Rational rr = dyadic_approx(rr_hp);
  return Interval{center - rr, center + rr};
}

double phi_tilde(const IFSConfig& cfg, const DimensionFunction& f, const RateFunction& phi,
                 long n) {
  if (n < 1) fail(Errc::bad_argument, "phi_tilde is defined for n >= 1");
  Float100 rhon = to_hp(cfg.rho_pow(n));
  Float100 scale = (Float100(1) - rhon) / rhon;
  Float100 a = phi.eval_hp(cfg, n) / scale;
  Float100 v = pow(f.eval_hp(cfg, a), Float100(1) / cfg.gamma_hp()) * scale;
  return v.convert_to<double>();
}

}  // namespace recur
