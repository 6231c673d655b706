#pragma once

#include <cstdint>

#include "driftlab/slopes.hpp"

namespace driftlab {

// Traces of the base Farey triangle {(1,0), (0,1), (1,1)} carried as natural
// logs. Traces of simple closed curves grow like exp(c * height), so linear
// storage overflows long before the searches stop caring; log space does not.
struct FrickeTriple {
  double l10 = 0.0;  // log trace of (1,0)
  double l01 = 0.0;  // log trace of (0,1)
  double l11 = 0.0;  // log trace of (1,1)
};

// One Markoff move in log space: t_new = t_a * t_b - t_old with every trace
// > 2. t_old and t_new are the two solutions over the edge (a, b), and
// t_old * t_new = t_a^2 + t_b^2 > 0 keeps the log1p argument in (-1, 0).
double markoff_flip(double la, double lb, double lold);

// log trace of the slope's curve, reached by Farey descent from the base
// triangle. Throws "slope too deep" when the descent exceeds max_flips.
double log_trace_at(const FrickeTriple& t, const Slope& s, long max_flips = 1 << 20);

// Len = 2*acosh(trace/2), from the log trace.
double log_length_from_log_trace(double lt);

// Relative error of the cubic relation x^2+y^2+z^2 = xyz for the triple.
double fricke_relation_error(const FrickeTriple& t);

}  // namespace driftlab
