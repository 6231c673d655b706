#include "driftlab/group.hpp"

#include <cmath>
#include <stdexcept>

namespace driftlab {

namespace {

GroupElement canonical_sign(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  std::int64_t lead = a != 0 ? a : b != 0 ? b : c != 0 ? c : d;
  if (lead < 0) {
    a = checked_neg(a);
    b = checked_neg(b);
    c = checked_neg(c);
    d = checked_neg(d);
  }
  return GroupElement{a, b, c, d};
}

}  // namespace

GroupElement make_group_element(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  std::int64_t det = checked_sub(checked_mul(a, d), checked_mul(b, c));
  if (det != 1) throw std::invalid_argument("make_group_element: determinant must be 1");
  return canonical_sign(a, b, c, d);
}

GroupElement identity_element() { return GroupElement{}; }

GroupElement mul(const GroupElement& x, const GroupElement& y) {
  return canonical_sign(checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
                        checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
                        checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
                        checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d)));
}

GroupElement inverse(const GroupElement& g) {
  return canonical_sign(g.d, checked_neg(g.b), checked_neg(g.c), g.a);
}

GroupElement power(const GroupElement& g, int n) {
  GroupElement base = n < 0 ? inverse(g) : g;
  int k = n < 0 ? -n : n;
  GroupElement r = identity_element();
  while (k-- > 0) r = mul(r, base);
  return r;
}

Slope act(const GroupElement& g, const Slope& s) {
  return canonicalize(checked_add(checked_mul(g.a, s.p), checked_mul(g.b, s.q)),
                      checked_add(checked_mul(g.c, s.p), checked_mul(g.d, s.q)));
}

SlopeVec act_vec(const GroupElement& g, const SlopeVec& v) {
  return SlopeVec{checked_add(checked_mul(g.a, v.p), checked_mul(g.b, v.q)),
                  checked_add(checked_mul(g.c, v.p), checked_mul(g.d, v.q))};
}

ProjectiveDirection act(const GroupElement& g, const ProjectiveDirection& xi) {
  double ga = static_cast<double>(g.a), gb = static_cast<double>(g.b);
  double gc = static_cast<double>(g.c), gd = static_cast<double>(g.d);
  return make_direction(ga * xi.u + gb * xi.v, gc * xi.u + gd * xi.v);
}

GroupElement tau_action(const GroupElement& g) {
  return canonical_sign(g.a, checked_neg(g.b), checked_neg(g.c), g.d);
}

double translation_length(const GroupElement& g) {
  double t = std::abs(static_cast<double>(trace(g)));
  if (t <= 2.0) return 0.0;
  return std::log(0.5 * (t + std::sqrt(t * t - 4.0)));
}

std::pair<ProjectiveDirection, ProjectiveDirection> eigendirections(const GroupElement& g) {
  if (!is_hyperbolic(g)) throw std::invalid_argument("eigendirections: element is not hyperbolic");
  // Work with the representative of positive trace; the class is unchanged.
  double a = static_cast<double>(g.a), b = static_cast<double>(g.b);
  double c = static_cast<double>(g.c), d = static_cast<double>(g.d);
  if (trace(g) < 0) {
    a = -a;
    b = -b;
    c = -c;
    d = -d;
  }
  double t = a + d;
  double s = std::sqrt(t * t - 4.0);
  double lp = 0.5 * (t + s);
  double lm = 0.5 * (t - s);
  auto eigvec = [&](double lambda) {
    // (g - lambda) v = 0; pick the better-conditioned row.
    double x1 = b, y1 = lambda - a;
    double x2 = lambda - d, y2 = c;
    if (x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2) return make_direction(x1, y1);
    return make_direction(x2, y2);
  };
  return {eigvec(lp), eigvec(lm)};
}

std::size_t hash_value(const GroupElement& g) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = mix(static_cast<std::uint64_t>(g.a));
  h = mix(h ^ static_cast<std::uint64_t>(g.b));
  h = mix(h ^ static_cast<std::uint64_t>(g.c));
  h = mix(h ^ static_cast<std::uint64_t>(g.d));
  return static_cast<std::size_t>(h);
}

}  // namespace driftlab
