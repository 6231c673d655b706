#include "driftlab/models.hpp"

#include <cmath>
#include <stdexcept>

namespace driftlab {

std::array<double, 3> FrickePoint::traces() const {
  return {std::exp(triple.l10), std::exp(triple.l01), std::exp(triple.l11)};
}

FlatTorusPoint make_flat_point(std::complex<double> tau) {
  if (!(tau.imag() > 0.0)) throw std::invalid_argument("make_flat_point: Im(tau) must be > 0");
  return FlatTorusPoint{tau, identity_element(), true};
}

FrickePoint make_fricke_point(double x, double y, double z) {
  if (!(x > 2.0 && y > 2.0 && z > 2.0))
    throw std::invalid_argument("make_fricke_point: traces must exceed 2");
  double rel = std::abs((x * x + y * y + z * z) / (x * y * z) - 1.0);
  if (rel > 1e-9)
    throw std::invalid_argument("make_fricke_point: triple violates x^2+y^2+z^2 = xyz");
  return FrickePoint{FrickeTriple{std::log(x), std::log(y), std::log(z)}, identity_element(),
                     true};
}

FlatTorusPoint flat_base() { return make_flat_point({0.0, 1.0}); }
FrickePoint fricke_base() { return make_fricke_point(3.0, 3.0, 3.0); }

std::complex<double> mobius(const GroupElement& g, std::complex<double> z) {
  double a = static_cast<double>(g.a), b = static_cast<double>(g.b);
  double c = static_cast<double>(g.c), d = static_cast<double>(g.d);
  double x = z.real(), y = z.imag();
  double den = (c * x + d) * (c * x + d) + c * c * y * y;
  // (a z + b)(conj(c z + d)) expanded; Im = det * y / |cz+d|^2 stays positive.
  double re = (a * c * (x * x + y * y) + (a * d + b * c) * x + b * d) / den;
  double im = y / den;
  return {re, im};
}

namespace {

void update_marking(GroupElement& m, bool& exact, const GroupElement& g) {
  if (!exact) return;
  try {
    m = mul(g, m);
  } catch (const overflow_error&) {
    exact = false;
  }
}

}  // namespace

FlatTorusPoint act_on_point(const GroupElement& g, const FlatTorusPoint& x) {
  FlatTorusPoint r = x;
  r.tau = mobius(tau_action(g), x.tau);
  update_marking(r.marking, r.marking_exact, g);
  return r;
}

FrickePoint act_on_point(const GroupElement& g, const FrickePoint& x) {
  // Traces of g.x at the base triangle are traces of x at the pulled-back
  // triangle: tr_{g.x}(u) = tr_x(g^{-1} u).
  GroupElement gi = inverse(g);
  FrickePoint r = x;
  r.triple.l10 = log_trace_at(x.triple, act(gi, Slope{1, 0}));
  r.triple.l01 = log_trace_at(x.triple, act(gi, Slope{0, 1}));
  r.triple.l11 = log_trace_at(x.triple, act(gi, Slope{1, 1}));
  update_marking(r.marking, r.marking_exact, g);
  return r;
}

FlatTorusPoint mobius_apply(const GroupElement& g, const FlatTorusPoint& x) {
  FlatTorusPoint r = x;
  r.tau = mobius(g, x.tau);
  update_marking(r.marking, r.marking_exact, g);
  return r;
}

double flat_log_i(const FlatTorusPoint& x, const Slope& s) {
  FlatLogI f{x.tau.real(), x.tau.imag()};
  return f.value(SlopeVec{s.p, s.q});
}

double fricke_log_i(const FrickePoint& x, const Slope& s, long max_flips) {
  return log_length_from_log_trace(log_trace_at(x.triple, s, max_flips));
}

FlatLogI log_i_field(const FlatTorusPoint& x) { return FlatLogI{x.tau.real(), x.tau.imag()}; }
FrickeLogI log_i_field(const FrickePoint& x) { return FrickeLogI{x.triple}; }

double hyperbolic_distance(std::complex<double> z, std::complex<double> w) {
  double dx = z.real() - w.real(), dy = z.imag() - w.imag();
  double u = (dx * dx + dy * dy) / (2.0 * z.imag() * w.imag());
  // acosh(1 + u), stable for both tiny and huge u.
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

double hyperbolic_oracle(const FlatTorusPoint& x, const FlatTorusPoint& y) {
  return 0.5 * hyperbolic_distance(x.tau, y.tau);
}

SupResult distance(const FlatTorusPoint& x, const FlatTorusPoint& y, const SearchConfig& cfg) {
  auto field = DiffField<FlatLogI, FlatLogI>{log_i_field(y), log_i_field(x)};
  SupResult r = farey_supremum(field, cfg);
  r.truncation_bound += std::max(0.0, hyperbolic_oracle(x, y) - r.log_sup);
  return r;
}

SupResult distance(const FrickePoint& x, const FrickePoint& y, const SearchConfig& cfg) {
  auto field = DiffField<FrickeLogI, FrickeLogI>{log_i_field(y), log_i_field(x)};
  return farey_supremum(field, cfg);
}

std::complex<double> elliptic_fixed_point(const GroupElement& g) {
  if (!is_elliptic(g)) throw std::invalid_argument("elliptic_fixed_point: element not elliptic");
  GroupElement h = tau_action(g);
  double a = static_cast<double>(h.a);
  double c = static_cast<double>(h.c), d = static_cast<double>(h.d);
  double t = a + d;
  if (h.c == 0) throw std::invalid_argument("elliptic_fixed_point: degenerate action");
  double im = std::sqrt(4.0 - t * t) / (2.0 * std::abs(c));
  double re = (a - d) / (2.0 * c);
  return {re, im};
}

const char* model_name(const FlatTorusPoint&) { return "flat"; }
const char* model_name(const FrickePoint&) { return "fricke"; }

}  // namespace driftlab
