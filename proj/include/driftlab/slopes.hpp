#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driftlab/checked.hpp"

namespace driftlab {

// A primitive integer pair (p, q) standing for the isotopy class of a simple
// closed curve on a torus-type surface. Canonical form: gcd(|p|,|q|) = 1 and
// q > 0, or (q, p) = (0, 1).
struct Slope {
  std::int64_t p = 1;
  std::int64_t q = 0;
  friend bool operator==(const Slope&, const Slope&) = default;
};

// Non-canonical integer vector used internally by Farey-tree searches.
struct SlopeVec {
  std::int64_t p = 0;
  std::int64_t q = 0;
};

Slope canonicalize(std::int64_t p, std::int64_t q);
Slope canonicalize(const SlopeVec& v);

// |a.p * b.q - a.q * b.p|, the geometric intersection number on the torus.
std::int64_t intersection_number(const Slope& a, const Slope& b);

// All canonical slopes with max(|p|, |q|) <= max_height, deterministic order.
std::vector<Slope> farey_enumerate(std::int64_t max_height);

// Unit vector on the circle of projective directions; first nonzero
// coordinate positive. Rational directions embed slopes.
struct ProjectiveDirection {
  double u = 1.0;
  double v = 0.0;
};

ProjectiveDirection make_direction(double u, double v);
ProjectiveDirection direction_of(const Slope& s);

// |sin(angle)| between the two lines, then asin. Symmetric under sign flips.
double angular_distance(const ProjectiveDirection& a, const ProjectiveDirection& b);

// Intersection pairing of a direction with an integer slope vector.
inline double pairing(const ProjectiveDirection& xi, std::int64_t p, std::int64_t q) {
  return xi.u * static_cast<double>(q) - xi.v * static_cast<double>(p);
}

// First `depth` Stern-Brocot approximants of d (continued-fraction
// convergents). For a rational direction the list ends at d itself.
std::vector<Slope> convergents(const ProjectiveDirection& d, int depth);

// Two Farey neighbours and their mediant; i(left, right) = 1.
struct FareyTriangle {
  Slope left, right, mediant;
};

FareyTriangle make_farey_triangle(const Slope& left, const Slope& right);

std::string to_string(const Slope& s);    // "p/q"
Slope parse_slope(const std::string& s);  // inverse of to_string

}  // namespace driftlab
