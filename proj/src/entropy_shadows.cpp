#include "driftlab/entropy_shadows.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "driftlab/horoboundary.hpp"
#include "driftlab/parallel.hpp"

namespace driftlab {

namespace {

// Neumaier compensated sum.
struct CompensatedSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

double table_entropy(const std::unordered_map<GroupElement, double, GroupElementHash>& mass) {
  // Deterministic order for bit-stable sums.
  std::vector<std::pair<GroupElement, double>> atoms(mass.begin(), mass.end());
  std::sort(atoms.begin(), atoms.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.a, x.first.b, x.first.c, x.first.d) <
           std::tie(y.first.a, y.first.b, y.first.c, y.first.d);
  });
  CompensatedSum acc;
  for (const auto& [g, p] : atoms)
    if (p > 0.0) acc.add(-p * std::log(p));
  return acc.value();
}

}  // namespace

ConvolutionTable delta_table() {
  ConvolutionTable t;
  t.mass[identity_element()] = 1.0;
  t.power = 0;
  return t;
}

ConvolutionTable convolve(const ConvolutionTable& t, const Measure& mu,
                          std::size_t support_cap) {
  Measure m = validate(mu);
  ConvolutionTable out;
  out.power = t.power + 1;
  out.mass.reserve(t.mass.size() * m.atoms.size());
  for (const auto& [g, p] : t.mass)
    for (const auto& atom : m.atoms) {
      out.mass[mul(g, atom.g)] += p * atom.p;
      if (out.mass.size() > support_cap)
        throw std::runtime_error("convolve: support cap exceeded");
    }
  return out;
}

double entropy(const ConvolutionTable& t) { return table_entropy(t.mass); }

double entropy(const Measure& mu) {
  Measure m = validate(mu);
  CompensatedSum acc;
  for (const auto& a : m.atoms) acc.add(-a.p * std::log(a.p));
  return acc.value();
}

std::pair<double, double> asymptotic_entropy(const Measure& mu, int n_max,
                                             EntropyDiagnostics* diag,
                                             std::size_t support_cap) {
  if (n_max < 3) throw std::invalid_argument("asymptotic_entropy: n_max must be >= 3");
  ConvolutionTable t = delta_table();
  std::vector<double> H{0.0};
  for (int n = 1; n <= n_max; ++n) {
    t = convolve(t, mu, support_cap);
    H.push_back(entropy(t));
  }
  if (diag) diag->H = H;
  double plain = H[n_max] / static_cast<double>(n_max);
  double diff = H[n_max] - H[n_max - 1];
  return {plain, diff};
}

SweepReport entropy_continuity_sweep(const MeasureFamily& family, int n_max) {
  if (family.grid.empty()) throw std::invalid_argument("entropy_continuity_sweep: empty grid");
  SweepReport rep;
  rep.kind = "entropy-continuity";
  std::vector<double> time_one;
  for (double t : family.grid) {
    Measure m = validate(family.generator(t));
    auto [plain, diff] = asymptotic_entropy(m, n_max);
    SweepPoint pt;
    pt.parameter = t;
    pt.estimate.mean = diff;  // difference estimator as the headline value
    pt.estimate.stderr_ = 0.0;
    pt.estimate.trials = 1;
    pt.estimate.steps = n_max;
    pt.estimate.orientation = "entropy-diff";
    pt.extra = plain;
    rep.points.push_back(pt);
    time_one.push_back(entropy(m));
  }
  // Jump allowance: the family's own time-one entropy modulus (h <= H and the
  // exact computation has no stochastic error).
  double max_slope = 0.0;
  for (std::size_t i = 0; i + 1 < time_one.size(); ++i) {
    double dp = std::abs(family.grid[i + 1] - family.grid[i]);
    if (dp > 0.0) max_slope = std::max(max_slope, std::abs(time_one[i + 1] - time_one[i]) / dp);
  }
  for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
    double dp = std::abs(rep.points[i + 1].parameter - rep.points[i].parameter);
    double allow = 1.5 * max_slope * dp + 1e-12;
    bool ok = std::abs(rep.points[i + 1].estimate.mean - rep.points[i].estimate.mean) <= allow;
    rep.points[i + 1].verdict = ok;
    if (!ok) rep.pass = false;
  }
  rep.note = rep.pass ? "entropy curve has no jump beyond the time-one modulus" : "jump detected";
  return rep;
}

double ray_distance(const ProjectiveDirection& xi, std::complex<double> w) {
  // Boundary endpoint of the ray from i: Ext at slope (p,q) vanishes toward
  // -p/q, so xi = (u, v) heads to e = -u/v (v = 0: the vertical ray).
  std::complex<double> wp = w;
  if (std::abs(xi.v) > 1e-300) {
    double e = -xi.u / xi.v;
    // Isometry sending e -> infinity and i -> i: z -> -(e z + 1)/(z - e).
    std::complex<double> num = -(e * w + 1.0);
    std::complex<double> den = w - e;
    wp = num / den;
    // Same Im-stability trick as mobius(): Im = (e^2 + 1) Im(w)/|den|^2.
    double im = (e * e + 1.0) * w.imag() / std::norm(den);
    wp = {wp.real(), im};
  }
  // Distance to the vertical ray {iy : y >= 1}.
  double r = std::abs(wp);
  double d_h;
  if (r >= 1.0)
    d_h = std::acosh(std::min(std::numeric_limits<double>::max(), r / wp.imag()));
  else
    d_h = hyperbolic_distance(wp, {0.0, 1.0});
  return 0.5 * d_h;
}

bool shadow_contains(const Shadow& s, const ProjectiveDirection& xi) {
  if (!(s.radius > 0.0)) throw std::invalid_argument("shadow_contains: radius must be > 0");
  std::complex<double> w = mobius(tau_action(s.center), {0.0, 1.0});
  return ray_distance(xi, w) < s.radius;
}

std::vector<GroupElement> sphere_enumerate(int k, int k_cap) {
  if (k < 1) throw std::invalid_argument("sphere_enumerate: k must be >= 1");
  if (k > k_cap) throw std::invalid_argument("sphere_enumerate: k exceeds configured cap");
  // d_T(b, gb) = acosh(|g|_F^2 / 2)/2, so the (k-1, k] shell is a Frobenius
  // norm window.
  double lo = 2.0 * std::cosh(2.0 * (k - 1));
  double hi = 2.0 * std::cosh(2.0 * k);
  std::int64_t L = static_cast<std::int64_t>(std::floor(std::sqrt(hi))) + 1;
  std::vector<GroupElement> out;
  auto push_if = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    double n2 = static_cast<double>(a * a + b * b + c * c + d * d);
    if (n2 > lo && n2 <= hi) out.push_back(make_group_element(a, b, c, d));
  };
  for (std::int64_t a = -L; a <= L; ++a)
    for (std::int64_t b = -L; b <= L; ++b)
      for (std::int64_t c = -L; c <= L; ++c) {
        if (a == 0) {
          if (b * c != -1) continue;
          for (std::int64_t d = -L; d <= L; ++d) push_if(a, b, c, d);
        } else {
          std::int64_t num = 1 + b * c;
          if (num % a != 0) continue;
          std::int64_t d = num / a;
          if (d < -L || d > L) continue;
          push_if(a, b, c, d);
        }
      }
  std::sort(out.begin(), out.end(), [](const GroupElement& x, const GroupElement& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CoveringReport covering_number_check(int k_max, double C,
                                     const std::vector<ProjectiveDirection>& xi_samples) {
  if (xi_samples.empty()) throw std::invalid_argument("covering_number_check: no directions");
  CoveringReport rep;
  rep.k_max = k_max;
  rep.C = C;
  for (int k = 1; k <= k_max; ++k) {
    auto sphere = sphere_enumerate(k, k_max);
    std::vector<std::complex<double>> centers(sphere.size());
    for (std::size_t i = 0; i < sphere.size(); ++i)
      centers[i] = mobius(tau_action(sphere[i]), {0.0, 1.0});
    long worst = 0;
    for (const auto& xi : xi_samples) {
      long count = 0;
      for (const auto& w : centers)
        if (ray_distance(xi, w) < C) ++count;
      worst = std::max(worst, count);
    }
    rep.max_count.push_back(worst);
    rep.overall_max = std::max(rep.overall_max, worst);
  }
  for (std::size_t k = 2; k + 1 < rep.max_count.size() + 1; ++k)
    if (rep.max_count[k] > rep.max_count[k - 1]) rep.stable = false;
  return rep;
}

ShadowMeasureReport shadow_measure_check(const Measure& mu, const std::vector<double>& C_grid,
                                         long n_samples, std::uint64_t seed, int m_power,
                                         int n_centers, double eps) {
  Measure m = validate(mu);
  if (!certify_non_elementary(m))
    throw std::invalid_argument("shadow_measure_check: measure not certified non-elementary");
  if (!std::is_sorted(C_grid.begin(), C_grid.end()))
    throw std::invalid_argument("shadow_measure_check: C grid must be increasing");

  // Empirical stationary measure of mu and center elements from mu^{*m}.
  auto nu = boundary_sample(m, 200, n_samples, seed);
  ConvolutionTable t = delta_table();
  for (int n = 0; n < m_power; ++n) t = convolve(t, m);
  std::vector<std::pair<GroupElement, double>> atoms(t.mass.begin(), t.mass.end());
  std::sort(atoms.begin(), atoms.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.a, x.first.b, x.first.c, x.first.d) <
           std::tie(y.first.a, y.first.b, y.first.c, y.first.d);
  });
  std::vector<double> cum;
  double s = 0.0;
  for (const auto& [g, p] : atoms) cum.push_back(s += p);
  CounterRng rng{seed ^ 0x5851f42d4c957f2dULL};
  std::vector<GroupElement> centers;
  for (int i = 0; i < n_centers; ++i) {
    double u = rng.uniform(i, 0) * s;
    centers.push_back(atoms[std::lower_bound(cum.begin(), cum.end(), u) - cum.begin()].first);
  }

  ShadowMeasureReport rep;
  rep.C_grid = C_grid;
  for (double C : C_grid) {
    double worst = 1.0;
    for (const auto& g : centers) {
      Shadow sh{g, C};
      long hits = 0;
      for (const auto& xi : nu.samples)
        if (shadow_contains(sh, act(g, xi))) ++hits;  // xi in g^{-1} O(g,C)
      worst = std::min(worst, static_cast<double>(hits) /
                                  static_cast<double>(nu.samples.size()));
    }
    rep.min_fraction.push_back(worst);
  }
  for (std::size_t i = 0; i + 1 < rep.min_fraction.size(); ++i)
    if (rep.min_fraction[i + 1] < rep.min_fraction[i] - 1e-12) rep.monotone = false;
  rep.top_fraction = rep.min_fraction.empty() ? 0.0 : rep.min_fraction.back();
  rep.pass = rep.monotone && rep.top_fraction >= 1.0 - eps;
  return rep;
}

void write_entropy_csv(const EntropyDiagnostics& diag, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_entropy_csv: cannot open " + path);
  std::fprintf(f, "n,H,H_over_n,diff\n");
  for (std::size_t n = 1; n < diag.H.size(); ++n)
    std::fprintf(f, "%zu,%.17g,%.17g,%.17g\n", n, diag.H[n],
                 diag.H[n] / static_cast<double>(n), diag.H[n] - diag.H[n - 1]);
  std::fclose(f);
}

}  // namespace driftlab
