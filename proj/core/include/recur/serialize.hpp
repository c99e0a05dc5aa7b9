#pragma once

// JSON and CSV external interfaces. Rationals serialize as exact "p/q"
// strings; every writer is deterministic so equal (config, seed) runs give
// byte-identical artifacts.

#include "recur/coding.hpp"
#include "recur/experiments.hpp"
#include "recur/ifs.hpp"
#include "recur/measure.hpp"
#include "recur/rates.hpp"
#include "recur/recurrence.hpp"
#include "recur/version.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace recur {

// {"rho":"1/3","L":2,"translations":["0","2/3"]}; rationals may be decimal
// or "p/q" strings, integers are accepted for L.
IFSConfig config_from_json(const std::string& text);
std::string config_to_json(const IFSConfig& cfg);

// FNV-1a of the canonical config serialization.
uint64_t config_hash(const IFSConfig& cfg);

struct Provenance {
  uint64_t config_hash = 0;
  uint64_t seed = 0;
  bool seeded = false;
  std::string version = kVersion;
  std::string rng = kRngName;
};
Provenance make_provenance(const IFSConfig& cfg, std::optional<uint64_t> seed);
std::string provenance_csv_comment(const Provenance& p);  // "# key=value" lines

// Rate functions: {"family":"geometric","b":"1"},
// {"family":"power","c":"1","alpha":"gamma"}, {"family":"clamped","inner":...},
// {"family":"geometric_log","b":"1","e":"4/gamma"}, {"family":"table","values":[...]}.
// Compact CLI grammar: "geometric:1", "power:1:gamma", "constant:1/6",
// "geomlog:1:4/gamma", "table:1/2,1/4,...", "clamped:<inner>".
RateFunction rate_from_json(const std::string& text);
std::string rate_to_json(const RateFunction& phi);
RateFunction rate_from_spec(const std::string& compact);
std::string rate_spec(const RateFunction& phi);

// Dimension functions: {"family":"power_f","s":"1/2*gamma"},
// {"family":"power_log_f","s":"...","t":"..."}; compact "powerf:1/2*gamma",
// "powerlogf:gamma:-1".
DimensionFunction dimension_from_json(const std::string& text);
std::string dimension_to_json(const DimensionFunction& f);
DimensionFunction dimension_from_spec(const std::string& compact);

std::string verdict_to_json(const Verdict& v);

// Codings: {"preperiod":[...],"period":[...]} with 1-based symbols.
ExactPoint coding_from_json(const IFSConfig& cfg, const std::string& text);
std::string coding_to_json(const ExactPoint& p);

// Reports.
std::string ahlfors_to_json(const AhlforsReport& r, const Provenance& p);
std::string ahlfors_to_csv(const AhlforsReport& r, const Provenance& p);  // x,r,mu,ratio
std::string quasi_indep_to_json(const QuasiIndepReport& r, const Provenance& p);
std::string quasi_indep_to_csv(const QuasiIndepReport& r, const Provenance& p);

struct DichotomyRow {
  int n = 0;
  long count = 0;
  MeasureEstimate mu_level;       // mu(A_n)
  MeasureEstimate mu_cumulative;  // mu(∪_{k<=m<=n} A_m)
};
std::string dichotomy_to_csv(const std::vector<DichotomyRow>& rows, const Verdict& v,
                             const Provenance& p);
std::string dichotomy_to_json(const std::vector<DichotomyRow>& rows, const Verdict& v,
                              const Provenance& p);

std::string recurrent_fraction_to_json(const RecurrentFractionResult& r, const Provenance& p);
std::string liminf_to_json(const std::vector<LiminfCheckpoint>& cps, const Provenance& p);
std::string liminf_to_csv(const std::vector<LiminfCheckpoint>& cps, const Provenance& p);

std::string double_str(double v);  // shortest round-trip formatting

}  // namespace recur
