#pragma once

// Points of the attractor represented by codings: exact eventually-periodic
// codings with rational values, or truncated codings with an interval
// enclosure of width rho^depth. The induced map T acts as the left shift.

#include "recur/ifs.hpp"

#include <variant>

namespace recur {

struct ExactPoint {
  Word preperiod;
  Word period;  // nonempty
  Rational value;
};

struct TruncatedPoint {
  Word prefix;
  Interval enclosure;  // cylinder_interval(prefix), width rho^depth

  int depth() const { return static_cast<int>(prefix.size()); }
};

using CodedPoint = std::variant<ExactPoint, TruncatedPoint>;

// value([u], [w]) = [u] + rho^{|u|} * [w]/(1 - rho^{|w|}); throws empty_period.
ExactPoint pi_eval(const IFSConfig& cfg, const Word& preperiod, const Word& period);

TruncatedPoint make_truncated(const IFSConfig& cfg, Word prefix);

// The unique depth-length word whose cylinder contains x, chosen greedily;
// throws gap_point(level) when x falls outside every cylinder at some level.
Word encode_point(const IFSConfig& cfg, const Rational& x, int depth);

ExactPoint apply_shift(const IFSConfig& cfg, const ExactPoint& p, int n);
TruncatedPoint apply_shift(const IFSConfig& cfg, const TruncatedPoint& p, int n);
CodedPoint apply_shift(const IFSConfig& cfg, const CodedPoint& p, int n);

// |T^n p - p| with a certified error bound: exact (error 0) for exact points,
// an enclosure of width <= 2 rho^{depth-n} for truncated ones.
Estimate recurrence_distance(const IFSConfig& cfg, const CodedPoint& p, int n);

// First `digits` symbols of the coding (preperiod, then the cycled period).
Word coding_prefix(const ExactPoint& p, int digits);

Interval point_enclosure(const CodedPoint& p);

}  // namespace recur
