#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "driftlab/checked.hpp"
#include "driftlab/slopes.hpp"

namespace driftlab {

// 2x2 integer matrix of determinant one, identified with its negative.
// Canonical representative: first nonzero entry of (a, b, c, d) positive.
struct GroupElement {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement make_group_element(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
GroupElement identity_element();

GroupElement mul(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& g);
GroupElement power(const GroupElement& g, int n);

// Trace of the canonical representative (defined up to sign on the class).
inline std::int64_t trace(const GroupElement& g) { return g.a + g.d; }
inline std::int64_t abs_trace(const GroupElement& g) {
  std::int64_t t = trace(g);
  return t < 0 ? -t : t;
}
inline bool is_hyperbolic(const GroupElement& g) { return abs_trace(g) > 2; }
inline bool is_parabolic(const GroupElement& g) { return abs_trace(g) == 2; }
inline bool is_elliptic(const GroupElement& g) { return abs_trace(g) < 2; }

// Linear action on curves, column convention: (p, q) -> (a p + b q, c p + d q).
Slope act(const GroupElement& g, const Slope& s);
SlopeVec act_vec(const GroupElement& g, const SlopeVec& v);
ProjectiveDirection act(const GroupElement& g, const ProjectiveDirection& xi);

// Conjugate by diag(1, -1). Applying this matrix by Mobius maps realizes the
// isometric action on the half-plane coordinate that matches the column
// action on slopes: d(g.x, g.y) = d(x, y) exactly.
GroupElement tau_action(const GroupElement& g);

// log of the dominant eigenvalue modulus, 0 when |trace| <= 2. This is the
// translation length of g in both metrics implemented here.
double translation_length(const GroupElement& g);

// Attracting / repelling eigendirections; requires |trace| > 2.
std::pair<ProjectiveDirection, ProjectiveDirection> eigendirections(const GroupElement& g);

std::size_t hash_value(const GroupElement& g);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const { return hash_value(g); }
};

}  // namespace driftlab
