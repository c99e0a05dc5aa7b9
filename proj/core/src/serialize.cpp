#include "recur/serialize.hpp"

#include <json.hpp>

#include <charconv>
#include <sstream>

namespace recur {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail(Errc::parse_error, "expected a rational as \"p/q\" or integer");
}

json estimate_to_json(const MeasureEstimate& e) {
  return json{{"value", rational_str(e.value)}, {"error", rational_str(e.error)}};
}

json provenance_to_json(const Provenance& p) {
  json j{{"config_hash", p.config_hash}, {"version", p.version}, {"rng", p.rng}};
  if (p.seeded) j["seed"] = p.seed;
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string double_str(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

IFSConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bad config JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rho") || !j.contains("L") || !j.contains("translations")) {
    fail(Errc::parse_error, "config needs rho, L and translations");
  }
  Rational rho = rational_from_json(j["rho"]);
  if (!j["L"].is_number_integer()) fail(Errc::parse_error, "L must be an integer");
  int alphabet = j["L"].get<int>();
  std::vector<Rational> translations;
  for (const auto& t : j["translations"]) translations.push_back(rational_from_json(t));
  return IFSConfig::validate(std::move(rho), alphabet, std::move(translations));
}

std::string config_to_json(const IFSConfig& cfg) {
  json arr = json::array();
  for (const auto& a : cfg.translations()) arr.push_back(rational_str(a));
  json j{{"rho", rational_str(cfg.rho())}, {"L", cfg.alphabet()}, {"translations", arr}};
  return j.dump();
}

uint64_t config_hash(const IFSConfig& cfg) {
  const std::string canonical = config_to_json(cfg);
  uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

Provenance make_provenance(const IFSConfig& cfg, std::optional<uint64_t> seed) {
  Provenance p;
  p.config_hash = config_hash(cfg);
  if (seed) {
    p.seed = *seed;
    p.seeded = true;
  }
  return p;
}

std::string provenance_csv_comment(const Provenance& p) {
  std::ostringstream os;
  os << "# config_hash=" << p.config_hash << "\n";
  if (p.seeded) os << "# seed=" << p.seed << "\n";
  os << "# version=" << p.version << "\n";
  os << "# rng=" << p.rng << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Rate functions.

namespace {

RateFunction rate_from_json_obj(const json& j) {
  if (!j.is_object() || !j.contains("family")) fail(Errc::parse_error, "rate needs a family");
  const std::string fam = j["family"].get<std::string>();
  if (fam == "constant") return RateFunction::constant(rational_from_json(j.at("c")));
  if (fam == "power") {
    return RateFunction::power(rational_from_json(j.at("c")),
                               GammaScaled::parse(j.at("alpha").get<std::string>()));
  }
  if (fam == "geometric") return RateFunction::geometric(rational_from_json(j.at("b")));
  if (fam == "geometric_log" || fam == "geomlog") {
    return RateFunction::geometric_log(rational_from_json(j.at("b")),
                                       GammaScaled::parse(j.at("e").get<std::string>()));
  }
  if (fam == "table") {
    std::vector<Rational> values;
    for (const auto& v : j.at("values")) values.push_back(rational_from_json(v));
    return RateFunction::table(std::move(values));
  }
  if (fam == "clamped") return RateFunction::clamped(rate_from_json_obj(j.at("inner")));
  fail(Errc::unknown_family, "unknown rate family '" + fam + "'");
}

json rate_to_json_obj(const RateFunction& phi) {
  json inner;
  if (const auto* c = std::get_if<ConstantRate>(&phi.family())) {
    inner = json{{"family", "constant"}, {"c", rational_str(c->c)}};
  } else if (const auto* p = std::get_if<PowerRate>(&phi.family())) {
    inner = json{{"family", "power"}, {"c", rational_str(p->c)}, {"alpha", p->alpha.str()}};
  } else if (const auto* g = std::get_if<GeometricRate>(&phi.family())) {
    inner = json{{"family", "geometric"}, {"b", rational_str(g->b)}};
  } else if (const auto* gl = std::get_if<GeometricLogRate>(&phi.family())) {
    inner = json{{"family", "geometric_log"}, {"b", rational_str(gl->b)}, {"e", gl->e.str()}};
  } else {
    const auto& t = std::get<TableRate>(phi.family());
    json arr = json::array();
    for (const auto& v : t.values) arr.push_back(rational_str(v));
    inner = json{{"family", "table"}, {"values", arr}};
  }
  if (phi.clamped()) return json{{"family", "clamped"}, {"inner", inner}};
  return inner;
}

}  // namespace

RateFunction rate_from_json(const std::string& text) {
  try {
    return rate_from_json_obj(json::parse(text));
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bad rate JSON: ") + e.what());
  }
}

std::string rate_to_json(const RateFunction& phi) { return rate_to_json_obj(phi).dump(); }

RateFunction rate_from_spec(const std::string& compact) {
  const std::string clamp_prefix = "clamped:";
  if (compact.rfind(clamp_prefix, 0) == 0) {
    return RateFunction::clamped(rate_from_spec(compact.substr(clamp_prefix.size())));
  }
  auto parts = split(compact, ':');
  const std::string& fam = parts[0];
  auto need = [&](size_t n) {
    if (parts.size() != n + 1) {
      fail(Errc::parse_error, "rate spec '" + compact + "' has the wrong arity");
    }
  };
  if (fam == "constant") {
    need(1);
    return RateFunction::constant(parse_rational(parts[1]));
  }
  if (fam == "power") {
    need(2);
    return RateFunction::power(parse_rational(parts[1]), GammaScaled::parse(parts[2]));
  }
  if (fam == "geometric") {
    need(1);
    return RateFunction::geometric(parse_rational(parts[1]));
  }
  if (fam == "geomlog" || fam == "geometric_log") {
    need(2);
    return RateFunction::geometric_log(parse_rational(parts[1]), GammaScaled::parse(parts[2]));
  }
  if (fam == "table") {
    need(1);
    std::vector<Rational> values;
    for (const auto& v : split(parts[1], ',')) values.push_back(parse_rational(v));
    return RateFunction::table(std::move(values));
  }
  fail(Errc::unknown_family, "unknown rate family '" + fam + "'");
}

std::string rate_spec(const RateFunction& phi) {
  std::string prefix = phi.clamped() ? "clamped:" : "";
  if (const auto* c = std::get_if<ConstantRate>(&phi.family())) {
    return prefix + "constant:" + rational_str(c->c);
  }
  if (const auto* p = std::get_if<PowerRate>(&phi.family())) {
    return prefix + "power:" + rational_str(p->c) + ":" + p->alpha.str();
  }
  if (const auto* g = std::get_if<GeometricRate>(&phi.family())) {
    return prefix + "geometric:" + rational_str(g->b);
  }
  if (const auto* gl = std::get_if<GeometricLogRate>(&phi.family())) {
    return prefix + "geomlog:" + rational_str(gl->b) + ":" + gl->e.str();
  }
  const auto& t = std::get<TableRate>(phi.family());
  std::string vals;
  for (size_t i = 0; i < t.values.size(); ++i) {
    if (i) vals += ",";
    vals += rational_str(t.values[i]);
  }
  return prefix + "table:" + vals;
}

// ---------------------------------------------------------------------------
// Dimension functions.

DimensionFunction dimension_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bad dimension JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("family")) {
    fail(Errc::parse_error, "dimension function needs a family");
  }
  const std::string fam = j["family"].get<std::string>();
  if (fam == "power_f" || fam == "powerf") {
    return DimensionFunction::power(GammaScaled::parse(j.at("s").get<std::string>()));
  }
  if (fam == "power_log_f" || fam == "powerlogf") {
    return DimensionFunction::power_log(GammaScaled::parse(j.at("s").get<std::string>()),
                                        GammaScaled::parse(j.at("t").get<std::string>()));
  }
  fail(Errc::unknown_family, "unknown dimension family '" + fam + "'");
}

std::string dimension_to_json(const DimensionFunction& f) {
  if (const auto* p = std::get_if<PowerDim>(&f.family())) {
    return json{{"family", "power_f"}, {"s", p->s.str()}}.dump();
  }
  const auto& pl = std::get<PowerLogDim>(f.family());
  return json{{"family", "power_log_f"}, {"s", pl.s.str()}, {"t", pl.t.str()}}.dump();
}

DimensionFunction dimension_from_spec(const std::string& compact) {
  auto parts = split(compact, ':');
  if (parts[0] == "powerf" && parts.size() == 2) {
    return DimensionFunction::power(GammaScaled::parse(parts[1]));
  }
  if (parts[0] == "powerlogf" && parts.size() == 3) {
    return DimensionFunction::power_log(GammaScaled::parse(parts[1]),
                                        GammaScaled::parse(parts[2]));
  }
  fail(Errc::parse_error, "bad dimension spec '" + compact + "'");
}

std::string verdict_to_json(const Verdict& v) {
  json j{{"verdict", verdict_kind_name(v.kind)},
         {"basis", v.basis == VerdictBasis::closed_form ? "ClosedForm" : "NumericPartialSums"}};
  if (v.basis == VerdictBasis::numeric_partial_sums) j["horizon"] = v.horizon;
  if (v.hf_on_k) j["hf_on_K"] = hf_mass_name(*v.hf_on_k);
  return j.dump();
}

// ---------------------------------------------------------------------------
// Codings.

ExactPoint coding_from_json(const IFSConfig& cfg, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("bad coding JSON: ") + e.what());
  }
  Word pre, per;
  for (const auto& s : j.at("preperiod")) pre.push_back(s.get<int>());
  for (const auto& s : j.at("period")) per.push_back(s.get<int>());
  return pi_eval(cfg, pre, per);
}

std::string coding_to_json(const ExactPoint& p) {
  return json{{"preperiod", p.preperiod}, {"period", p.period}}.dump();
}

// ---------------------------------------------------------------------------
// Reports.

std::string ahlfors_to_json(const AhlforsReport& r, const Provenance& p) {
  json j{{"samples", r.samples},
         {"bound_lo", r.bound_lo},
         {"bound_hi", r.bound_hi},
         {"provenance", provenance_to_json(p)}};
  if (r.samples > 0) {
    j["min_ratio"] = r.min_ratio;
    j["max_ratio"] = r.max_ratio;
  } else {
    j["min_ratio"] = nullptr;
    j["max_ratio"] = nullptr;
  }
  return j.dump();
}

std::string ahlfors_to_csv(const AhlforsReport& r, const Provenance& p) {
  std::ostringstream os;
  os << provenance_csv_comment(p);
  os << "x,r,mu,ratio\n";
  for (const auto& row : r.rows) {
    os << rational_str(row.x) << "," << rational_str(row.r) << "," << rational_str(row.mu.value)
       << "," << double_str(row.ratio) << "\n";
  }
  return os.str();
}

std::string quasi_indep_to_json(const QuasiIndepReport& r, const Provenance& p) {
  json j{{"N", r.horizon},
         {"ball", {rational_str(r.ball.lo), rational_str(r.ball.hi)}},
         {"mu_ball", estimate_to_json(r.mu_ball_est)},
         {"sum_single", estimate_to_json(r.sum_single)},
         {"sum_pairs", estimate_to_json(r.sum_pairs)},
         {"ratio", r.ratio},
         {"pz_lower", r.pz_lower},
         {"mu_union", estimate_to_json(r.mu_union_all)},
         {"provenance", provenance_to_json(p)}};
  return j.dump();
}

std::string quasi_indep_to_csv(const QuasiIndepReport& r, const Provenance& p) {
  std::ostringstream os;
  os << provenance_csv_comment(p);
  os << "n,count,mu_An,mu_An_err\n";
  for (size_t i = 0; i < r.per_level.size(); ++i) {
    os << (i + 1) << "," << r.counts[i] << "," << rational_str(r.per_level[i].value) << ","
       << rational_str(r.per_level[i].error) << "\n";
  }
  return os.str();
}

std::string dichotomy_to_csv(const std::vector<DichotomyRow>& rows, const Verdict& v,
                             const Provenance& p) {
  std::ostringstream os;
  os << provenance_csv_comment(p);
  os << "# verdict=" << verdict_kind_name(v.kind) << "\n";
  os << "n,count,mu_An,mu_An_err,cumulative,cumulative_err\n";
  for (const auto& row : rows) {
    os << row.n << "," << row.count << "," << rational_str(row.mu_level.value) << ","
       << rational_str(row.mu_level.error) << "," << rational_str(row.mu_cumulative.value) << ","
       << rational_str(row.mu_cumulative.error) << "\n";
  }
  return os.str();
}

std::string dichotomy_to_json(const std::vector<DichotomyRow>& rows, const Verdict& v,
                              const Provenance& p) {
  json arr = json::array();
  for (const auto& row : rows) {
    arr.push_back(json{{"n", row.n},
                       {"count", row.count},
                       {"mu_An", estimate_to_json(row.mu_level)},
                       {"cumulative", estimate_to_json(row.mu_cumulative)}});
  }
  json j{{"rows", arr},
         {"verdict", json::parse(verdict_to_json(v))},
         {"provenance", provenance_to_json(p)}};
  return j.dump();
}

std::string recurrent_fraction_to_json(const RecurrentFractionResult& r, const Provenance& p) {
  json j{{"fraction", r.fraction},
         {"samples", r.samples},
         {"k", r.start},
         {"N", r.horizon},
         {"undecided_tests", r.undecided_tests},
         {"escalations", r.escalations},
         {"hits_per_n", r.hits_per_n},
         {"provenance", provenance_to_json(p)}};
  return j.dump();
}

std::string liminf_to_json(const std::vector<LiminfCheckpoint>& cps, const Provenance& p) {
  json arr = json::array();
  for (const auto& cp : cps) {
    arr.push_back(json{{"N", cp.horizon},
                       {"median", cp.median},
                       {"p10", cp.p10},
                       {"p90", cp.p90}});
  }
  json j{{"checkpoints", arr}, {"provenance", provenance_to_json(p)}};
  return j.dump();
}

std::string liminf_to_csv(const std::vector<LiminfCheckpoint>& cps, const Provenance& p) {
  std::ostringstream os;
  os << provenance_csv_comment(p);
  os << "N,sample,stat_lo,stat_hi\n";
  for (const auto& cp : cps) {
    for (size_t i = 0; i < cp.stat_lo.size(); ++i) {
      os << cp.horizon << "," << i << "," << double_str(cp.stat_lo[i]) << ","
         << double_str(cp.stat_hi[i]) << "\n";
    }
  }
  return os.str();
}

}  // namespace recur
