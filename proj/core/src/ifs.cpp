#include "recur/ifs.hpp"

#include <algorithm>
#include <utility>

namespace recur {

Interval make_interval(Rational lo, Rational hi) {
  if (lo > hi) fail(Errc::bad_argument, "interval with lo > hi");
  return Interval{std::move(lo), std::move(hi)};
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Rational lo = std::max(a.lo, b.lo);
  Rational hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return Interval{std::move(lo), std::move(hi)};
}

namespace {

// gamma = u/v exactly iff L^v * p^u == q^u for rho = p/q. Searched over a
// bounded window (covers every sane configuration, e.g. rho=1/4, L=2).
std::optional<Rational> detect_rational_gamma(const Rational& rho, int alphabet) {
  const BigInt p = numerator(rho);
  const BigInt q = denominator(rho);
  constexpr int kMaxExp = 64;
  std::vector<BigInt> p_pow(kMaxExp + 1), q_pow(kMaxExp + 1);
  p_pow[0] = 1;
  q_pow[0] = 1;
  for (int i = 1; i <= kMaxExp; ++i) {
    p_pow[i] = p_pow[i - 1] * p;
    q_pow[i] = q_pow[i - 1] * q;
  }
  BigInt l_pow = 1;
  for (int v = 1; v <= kMaxExp; ++v) {
    l_pow *= alphabet;
    for (int u = 1; u <= kMaxExp; ++u) {
      if (l_pow * p_pow[u] == q_pow[u]) {
        return Rational(u, v);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

IFSConfig IFSConfig::validate(Rational rho, int alphabet, std::vector<Rational> translations) {
  if (alphabet < 2) fail(Errc::bad_ratio, "alphabet size must be at least 2");
  if (rho <= 0 || rho >= 1) fail(Errc::bad_ratio, "contraction ratio must lie in (0,1)");
  if (static_cast<int>(translations.size()) != alphabet) {
    fail(Errc::bad_argument, "expected one translation per symbol");
  }
  for (int j = 0; j + 1 < alphabet; ++j) {
    if (translations[j] >= translations[j + 1]) {
      fail(Errc::not_sorted, "translations must be strictly increasing");
    }
  }
  if (translations.front() < 0 || translations.back() > Rational(1) - rho) {
    fail(Errc::separation_violated, "translations must fit in [0, 1 - rho]");
  }
  for (int j = 0; j + 1 < alphabet; ++j) {
    if (translations[j + 1] - translations[j] <= rho) {
      fail(Errc::separation_violated, "first-level intervals touch or overlap");
    }
  }
  // Implied by the gap conditions for L >= 2; kept as a hard guarantee.
  if (rho * alphabet >= 1) fail(Errc::bad_ratio, "contraction ratio must be below 1/L");

  IFSConfig cfg;
  cfg.rho_ = std::move(rho);
  cfg.alphabet_ = alphabet;
  cfg.translations_ = std::move(translations);
  cfg.gamma_hp_ = log(Float100(alphabet)) /
                  (log(Float100(denominator(cfg.rho_))) - log(Float100(numerator(cfg.rho_))));
  cfg.gamma_ = cfg.gamma_hp_.convert_to<double>();
  cfg.gamma_rational_ = detect_rational_gamma(cfg.rho_, alphabet);
  return cfg;
}

const Rational& IFSConfig::translation(int symbol) const {
  if (symbol < 1 || symbol > alphabet_) {
    fail(Errc::symbol_out_of_range, "symbol " + std::to_string(symbol), symbol);
  }
  return translations_[static_cast<size_t>(symbol - 1)];
}

Interval IFSConfig::first_level(int symbol) const {
  const Rational& a = translation(symbol);
  return Interval{a, a + rho_};
}

Rational IFSConfig::min_gap() const {
  Rational best;
  bool have = false;
  for (int j = 0; j + 1 < alphabet_; ++j) {
    Rational gap = translations_[j + 1] - translations_[j] - rho_;
    if (!have || gap < best) {
      best = gap;
      have = true;
    }
  }
  return best;
}

double gamma_dim(const IFSConfig& cfg) { return cfg.gamma(); }

void check_word(const IFSConfig& cfg, const Word& word) {
  for (int s : word) {
    if (s < 1 || s > cfg.alphabet()) {
      fail(Errc::symbol_out_of_range, "symbol " + std::to_string(s), s);
    }
  }
}

Rational word_value(const IFSConfig& cfg, const Word& word) {
  check_word(cfg, word);
  // Horner from the back: [eps] = a_{e1} + rho*(a_{e2} + rho*(...)).
  Rational acc(0);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    acc = cfg.translation(*it) + cfg.rho() * acc;
  }
  return acc;
}

Interval cylinder_interval(const IFSConfig& cfg, const Word& word) {
  Rational lo = word_value(cfg, word);
  Rational hi = lo + cfg.rho_pow(static_cast<long>(word.size()));
  return Interval{std::move(lo), std::move(hi)};
}

Rational periodic_point(const IFSConfig& cfg, const Word& word) {
  if (word.empty()) fail(Errc::empty_word, "periodic point needs a nonempty word");
  Rational v = word_value(cfg, word);
  return v / (Rational(1) - cfg.rho_pow(static_cast<long>(word.size())));
}

}  // namespace recur
