#pragma once

#include <stdexcept>
#include <string>

namespace recur {

enum class Errc {
  separation_violated,
  bad_ratio,
  not_sorted,
  symbol_out_of_range,
  empty_word,
  empty_period,
  gap_point,
  depth_exhausted,
  nonpositive_radius,
  bad_range,
  nonpositive_rate,
  level_too_large,
  empty_ball,
  monotonicity_violated,
  unknown_family,
  horizon_required,
  negative_b,
  no_root,
  parse_error,
  bad_argument,
};

const char* errc_name(Errc code);

// Single exception type for all domain errors; `detail` carries the level
// for gap_point and similar per-error payloads.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg, long detail = 0)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code),
        detail_(detail) {}

  Errc code() const { return code_; }
  long detail() const { return detail_; }

 private:
  Errc code_;
  long detail_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg, long detail = 0) {
  throw Error(code, msg, detail);
}

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::separation_violated: return "SeparationViolated";
    case Errc::bad_ratio: return "BadRatio";
    case Errc::not_sorted: return "NotSorted";
    case Errc::symbol_out_of_range: return "SymbolOutOfRange";
    case Errc::empty_word: return "EmptyWord";
    case Errc::empty_period: return "EmptyPeriod";
    case Errc::gap_point: return "GapPoint";
    case Errc::depth_exhausted: return "DepthExhausted";
    case Errc::nonpositive_radius: return "NonpositiveRadius";
    case Errc::bad_range: return "BadRange";
    case Errc::nonpositive_rate: return "NonpositiveRate";
    case Errc::level_too_large: return "LevelTooLarge";
    case Errc::empty_ball: return "EmptyBall";
    case Errc::monotonicity_violated: return "MonotonicityViolated";
    case Errc::unknown_family: return "UnknownFamily";
    case Errc::horizon_required: return "HorizonRequired";
    case Errc::negative_b: return "NegativeB";
    case Errc::no_root: return "NoRoot";
    case Errc::parse_error: return "ParseError";
    case Errc::bad_argument: return "BadArgument";
  }
  return "UnknownError";
}

}  // namespace recur
