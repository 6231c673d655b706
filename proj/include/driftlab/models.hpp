#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include "driftlab/group.hpp"
#include "driftlab/markoff.hpp"
#include "driftlab/search.hpp"
#include "driftlab/slopes.hpp"

namespace driftlab {

// ---------------------------------------------------------------------------
// Marked points. Both models keep the coordinates that evaluation actually
// needs (a half-plane coordinate / a log-trace triple) and carry the marking
// matrix as provenance. Group words along long walks leave int64 range, so
// the marking silently stops being tracked (marking_exact goes false) while
// the evaluation coordinates keep moving; distances never consult the matrix.
// ---------------------------------------------------------------------------

struct FlatTorusPoint {
  std::complex<double> tau{0.0, 1.0};  // effective coordinate, Im > 0
  GroupElement marking;                // g with point = g . base, while exact
  bool marking_exact = true;
};

struct FrickePoint {
  FrickeTriple triple;  // log traces at the base Farey triangle
  GroupElement marking;
  bool marking_exact = true;

  std::array<double, 3> traces() const;  // linear traces, overflow for deep points
};

FlatTorusPoint make_flat_point(std::complex<double> tau);
FrickePoint make_fricke_point(double x, double y, double z);  // traces > 2, cubic relation

// Default base points: square torus and the symmetric cusped triple.
FlatTorusPoint flat_base();
FrickePoint fricke_base();

// Isometric group action used by walks and experiments: only the marking (and
// the derived coordinates) moves.
FlatTorusPoint act_on_point(const GroupElement& g, const FlatTorusPoint& x);
FrickePoint act_on_point(const GroupElement& g, const FrickePoint& x);

// Mobius transport of the raw coordinate, tau -> (a tau + b)/(c tau + d),
// with the marking composed on the left.
FlatTorusPoint mobius_apply(const GroupElement& g, const FlatTorusPoint& x);

// Stable Mobius evaluation; Im comes out as Im(z)/|c z + d|^2, always > 0.
std::complex<double> mobius(const GroupElement& g, std::complex<double> z);

// log i(x, s): log Ext^(1/2) resp. log Len of the slope at the marked point.
double flat_log_i(const FlatTorusPoint& x, const Slope& s);
double fricke_log_i(const FrickePoint& x, const Slope& s, long max_flips = 1 << 20);

// d(x, y) = log sup over slopes of i(y, a)/i(x, a), by sweep + descent. For
// the flat model the closed-form distance is folded into truncation_bound.
SupResult distance(const FlatTorusPoint& x, const FlatTorusPoint& y, const SearchConfig& cfg);
SupResult distance(const FrickePoint& x, const FrickePoint& y, const SearchConfig& cfg);

// Half the hyperbolic half-plane distance between effective coordinates.
double hyperbolic_oracle(const FlatTorusPoint& x, const FlatTorusPoint& y);
double hyperbolic_distance(std::complex<double> z, std::complex<double> w);

// Fixed point in the upper half plane of an elliptic element's tau action.
std::complex<double> elliptic_fixed_point(const GroupElement& g);

// Evaluator factories for the search machinery.
FlatLogI log_i_field(const FlatTorusPoint& x);
FrickeLogI log_i_field(const FrickePoint& x);

const char* model_name(const FlatTorusPoint&);
const char* model_name(const FrickePoint&);

}  // namespace driftlab
