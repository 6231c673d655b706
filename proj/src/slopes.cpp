#include "driftlab/slopes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace driftlab {

Slope canonicalize(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw std::invalid_argument("canonicalize: (0,0) is not a direction");
  if (p == INT64_MIN || q == INT64_MIN) throw overflow_error("canonicalize: entry out of range");
  std::int64_t g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope{p, q};
}

Slope canonicalize(const SlopeVec& v) { return canonicalize(v.p, v.q); }

std::int64_t intersection_number(const Slope& a, const Slope& b) {
  std::int64_t d = checked_sub(checked_mul(a.p, b.q), checked_mul(a.q, b.p));
  return d < 0 ? -d : d;
}

std::vector<Slope> farey_enumerate(std::int64_t max_height) {
  if (max_height < 1) throw std::invalid_argument("farey_enumerate: max_height must be >= 1");
  std::vector<Slope> out;
  out.push_back(Slope{1, 0});
  for (std::int64_t q = 1; q <= max_height; ++q)
    for (std::int64_t p = -max_height; p <= max_height; ++p)
      if (std::gcd(p < 0 ? -p : p, q) == 1) out.push_back(Slope{p, q});
  return out;
}

ProjectiveDirection make_direction(double u, double v) {
  double n = std::hypot(u, v);
  if (!(n > 1e-300) || !std::isfinite(n))
    throw std::invalid_argument("make_direction: not a direction");
  u /= n;
  v /= n;
  if (u < 0.0 || (u == 0.0 && v < 0.0)) {
    u = -u;
    v = -v;
  }
  return ProjectiveDirection{u, v};
}

ProjectiveDirection direction_of(const Slope& s) {
  return make_direction(static_cast<double>(s.p), static_cast<double>(s.q));
}

double angular_distance(const ProjectiveDirection& a, const ProjectiveDirection& b) {
  double cross = std::abs(a.u * b.v - a.v * b.u);
  return std::asin(std::min(1.0, cross));
}

std::vector<Slope> convergents(const ProjectiveDirection& d, int depth) {
  if (depth < 1) throw std::invalid_argument("convergents: depth must be >= 1");
  std::vector<Slope> out;
  if (std::abs(d.v) < 1e-300) {
    out.push_back(Slope{1, 0});
    return out;
  }
  // Continued fraction of t = u/v; h/k are the usual convergent recurrences.
  double t = d.u / d.v;
  double hm1 = 1.0, hm2 = 0.0, km1 = 0.0, km2 = 1.0;
  for (int i = 0; i < depth; ++i) {
    double a = std::floor(t);
    if (!(std::abs(a) < 9e15)) break;  // numerically rational: previous convergent is exact
    double h = a * hm1 + hm2;
    double k = a * km1 + km2;
    if (std::abs(h) > 9e15 || k > 9e15) break;
    out.push_back(canonicalize(static_cast<std::int64_t>(h), static_cast<std::int64_t>(k)));
    // Exact hit: |u*k - v*h| == 0 up to roundoff of the inputs.
    double res = d.u * k - d.v * h;
    if (std::abs(res) <= 1e-14 * (std::abs(d.u * k) + std::abs(d.v * h) + 1.0)) break;
    double frac = t - a;
    if (frac <= 0.0) break;
    t = 1.0 / frac;
    hm2 = hm1;
    hm1 = h;
    km2 = km1;
    km1 = k;
  }
  if (out.empty()) out.push_back(canonicalize(static_cast<std::int64_t>(std::llround(d.u / d.v)), 1));
  return out;
}

FareyTriangle make_farey_triangle(const Slope& left, const Slope& right) {
  if (intersection_number(left, right) != 1)
    throw std::invalid_argument("make_farey_triangle: slopes are not Farey neighbours");
  Slope m = canonicalize(checked_add(left.p, right.p), checked_add(left.q, right.q));
  return FareyTriangle{left, right, m};
}

std::string to_string(const Slope& s) {
  return std::to_string(s.p) + "/" + std::to_string(s.q);
}

Slope parse_slope(const std::string& s) {
  auto pos = s.find('/');
  if (pos == std::string::npos) throw std::invalid_argument("parse_slope: expected \"p/q\"");
  std::int64_t p = std::stoll(s.substr(0, pos));
  std::int64_t q = std::stoll(s.substr(pos + 1));
  return canonicalize(p, q);
}

}  // namespace driftlab
