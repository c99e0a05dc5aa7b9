#include "recur/coding.hpp"

#include <algorithm>
#include <utility>

namespace recur {

ExactPoint pi_eval(const IFSConfig& cfg, const Word& preperiod, const Word& period) {
  if (period.empty()) fail(Errc::empty_period, "exact evaluation needs a nonempty period");
  check_word(cfg, preperiod);
  check_word(cfg, period);
  Rational head = word_value(cfg, preperiod);
  Rational cycle = word_value(cfg, period) /
                   (Rational(1) - cfg.rho_pow(static_cast<long>(period.size())));
  Rational value = head + cfg.rho_pow(static_cast<long>(preperiod.size())) * cycle;
  return ExactPoint{preperiod, period, std::move(value)};
}

TruncatedPoint make_truncated(const IFSConfig& cfg, Word prefix) {
  check_word(cfg, prefix);
  Interval enc = cylinder_interval(cfg, prefix);
  return TruncatedPoint{std::move(prefix), std::move(enc)};
}

Word encode_point(const IFSConfig& cfg, const Rational& x, int depth) {
  if (depth < 1) fail(Errc::bad_argument, "encode depth must be >= 1");
  if (x < 0 || x > 1) fail(Errc::gap_point, "point outside the root interval", 0);
  Word out;
  out.reserve(static_cast<size_t>(depth));
  Rational y = x;
  for (int level = 1; level <= depth; ++level) {
    int chosen = 0;
    for (int j = 1; j <= cfg.alphabet(); ++j) {
      const Rational& a = cfg.translation(j);
      if (y < a || y > a + cfg.rho()) continue;
      if (chosen == 0) {
        chosen = j;
      } else {
        // Shared endpoint between adjacent cylinders: prefer the one holding
        // y in its interior, else keep the leftmost.
        if (y > a && y < a + cfg.rho()) chosen = j;
      }
    }
    if (chosen == 0) {
      fail(Errc::gap_point, "point falls in a gap at level " + std::to_string(level), level);
    }
    out.push_back(chosen);
    y = (y - cfg.translation(chosen)) / cfg.rho();
  }
  return out;
}

ExactPoint apply_shift(const IFSConfig& cfg, const ExactPoint& p, int n) {
  if (n < 0) fail(Errc::bad_argument, "shift count must be >= 0");
  const int pre = static_cast<int>(p.preperiod.size());
  const int per = static_cast<int>(p.period.size());
  if (n <= pre) {
    Word head(p.preperiod.begin() + n, p.preperiod.end());
    return pi_eval(cfg, head, p.period);
  }
  int rot = (n - pre) % per;
  Word cycled;
  cycled.reserve(static_cast<size_t>(per));
  cycled.insert(cycled.end(), p.period.begin() + rot, p.period.end());
  cycled.insert(cycled.end(), p.period.begin(), p.period.begin() + rot);
  return pi_eval(cfg, Word{}, cycled);
}

TruncatedPoint apply_shift(const IFSConfig& cfg, const TruncatedPoint& p, int n) {
  if (n < 0) fail(Errc::bad_argument, "shift count must be >= 0");
  if (n >= p.depth()) {
    fail(Errc::depth_exhausted,
         "shift by " + std::to_string(n) + " exceeds known depth " + std::to_string(p.depth()));
  }
  Word rest(p.prefix.begin() + n, p.prefix.end());
  return make_truncated(cfg, std::move(rest));
}

CodedPoint apply_shift(const IFSConfig& cfg, const CodedPoint& p, int n) {
  if (const auto* e = std::get_if<ExactPoint>(&p)) return apply_shift(cfg, *e, n);
  return apply_shift(cfg, std::get<TruncatedPoint>(p), n);
}

Estimate recurrence_distance(const IFSConfig& cfg, const CodedPoint& p, int n) {
  if (n < 1) fail(Errc::bad_argument, "recurrence distance needs n >= 1");
  if (const auto* e = std::get_if<ExactPoint>(&p)) {
    ExactPoint shifted = apply_shift(cfg, *e, n);
    Rational d = shifted.value - e->value;
    if (d < 0) d = -d;
    return Estimate{std::move(d), Rational(0)};
  }
  const auto& t = std::get<TruncatedPoint>(p);
  TruncatedPoint shifted = apply_shift(cfg, t, n);
  // T^n p - p lies in [lo' - hi, hi' - lo]; take the absolute-value hull.
  Rational dlo = shifted.enclosure.lo - t.enclosure.hi;
  Rational dhi = shifted.enclosure.hi - t.enclosure.lo;
  Rational abs_lo, abs_hi;
  if (dlo <= 0 && dhi >= 0) {
    abs_lo = 0;
    abs_hi = std::max(Rational(-dlo), dhi);
  } else if (dhi < 0) {
    abs_lo = -dhi;
    abs_hi = -dlo;
  } else {
    abs_lo = dlo;
    abs_hi = dhi;
  }
  return Estimate{(abs_lo + abs_hi) / 2, (abs_hi - abs_lo) / 2};
}

Word coding_prefix(const ExactPoint& p, int digits) {
  if (digits < 0) fail(Errc::bad_argument, "digit count must be >= 0");
  Word out;
  out.reserve(static_cast<size_t>(digits));
  for (int i = 0; i < digits; ++i) {
    const size_t idx = static_cast<size_t>(i);
    if (idx < p.preperiod.size()) {
      out.push_back(p.preperiod[idx]);
    } else {
      out.push_back(p.period[(idx - p.preperiod.size()) % p.period.size()]);
    }
  }
  return out;
}

Interval point_enclosure(const CodedPoint& p) {
  if (const auto* e = std::get_if<ExactPoint>(&p)) return Interval{e->value, e->value};
  return std::get<TruncatedPoint>(p).enclosure;
}

}  // namespace recur
