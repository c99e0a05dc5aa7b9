#pragma once

// Homogeneous linear iterated function system on [0,1]:
//   phi_j(x) = rho*x + a_j,  j = 1..L,
// with strictly separated first-level intervals. Provides exact cylinder
// geometry and word arithmetic.

#include "recur/errors.hpp"
#include "recur/rational.hpp"

#include <optional>
#include <vector>

namespace recur {

// Finite word over {1..L}; the empty word denotes the root cylinder [0,1].
using Word = std::vector<int>;

// Closed interval with exact rational endpoints.
struct Interval {
  Rational lo{0};
  Rational hi{0};

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }
};

Interval make_interval(Rational lo, Rational hi);  // throws bad_argument if lo > hi
std::optional<Interval> intersect(const Interval& a, const Interval& b);

class IFSConfig {
 public:
  // Validates separation and derives gamma; throws bad_ratio, not_sorted or
  // separation_violated.
  static IFSConfig validate(Rational rho, int alphabet, std::vector<Rational> translations);

  const Rational& rho() const { return rho_; }
  int alphabet() const { return alphabet_; }
  const std::vector<Rational>& translations() const { return translations_; }
  const Rational& translation(int symbol) const;  // 1-based, checked

  // dim_H K = log L / -log rho, as double (>= 50 significant bits) and at
  // 100-digit precision; gamma_rational is set when gamma is exactly p/q.
  double gamma() const { return gamma_; }
  const Float100& gamma_hp() const { return gamma_hp_; }
  const std::optional<Rational>& gamma_rational() const { return gamma_rational_; }

  Interval first_level(int symbol) const;  // [a_j, a_j + rho]
  Rational min_gap() const;                // min_j (a_{j+1} - a_j - rho)
  Rational clamp_threshold() const { return (Rational(1) - rho_) / 4; }
  Rational rho_pow(long n) const { return pow_rational(rho_, n); }

 private:
  IFSConfig() = default;

  Rational rho_;
  int alphabet_ = 0;
  std::vector<Rational> translations_;
  double gamma_ = 0;
  Float100 gamma_hp_;
  std::optional<Rational> gamma_rational_;
};

inline IFSConfig validate_config(Rational rho, int alphabet, std::vector<Rational> translations) {
  return IFSConfig::validate(std::move(rho), alphabet, std::move(translations));
}

double gamma_dim(const IFSConfig& cfg);

void check_word(const IFSConfig& cfg, const Word& word);  // throws symbol_out_of_range

// [eps] = sum_i a_{eps_i} rho^{i-1}; empty word -> 0.
Rational word_value(const IFSConfig& cfg, const Word& word);

// I(eps) = [ [eps], [eps] + rho^n ].
Interval cylinder_interval(const IFSConfig& cfg, const Word& word);

// [eps]/(1 - rho^n), the fixed point of phi_eps; throws empty_word.
Rational periodic_point(const IFSConfig& cfg, const Word& word);

}  // namespace recur
