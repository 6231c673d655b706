#include "driftlab/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "driftlab/parallel.hpp"

namespace driftlab {

namespace {

bool atom_order(const MeasureAtom& x, const MeasureAtom& y) {
  return std::tie(x.g.a, x.g.b, x.g.c, x.g.d) < std::tie(y.g.a, y.g.b, y.g.c, y.g.d);
}

// Inverse-CDF draw; cum holds the running sums in atom order.
std::size_t draw_index(const std::vector<double>& cum, double u) {
  return std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
}

std::vector<double> cumulative(const Measure& mu) {
  std::vector<double> cum;
  cum.reserve(mu.atoms.size());
  double s = 0.0;
  for (const auto& a : mu.atoms) cum.push_back(s += a.p);
  cum.back() = 1.0;
  return cum;
}

}  // namespace

Measure validate(const Measure& raw) {
  if (raw.atoms.empty()) throw std::invalid_argument("measure: empty support");
  std::unordered_map<GroupElement, double, GroupElementHash> merged;
  double sum = 0.0;
  for (const auto& atom : raw.atoms) {
    if (!(atom.p > 0.0)) throw std::invalid_argument("measure: probabilities must be positive");
    merged[atom.g] += atom.p;
    sum += atom.p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("measure: probabilities sum to " + std::to_string(sum) +
                                ", refusing to renormalize");
  Measure out;
  out.atoms.reserve(merged.size());
  for (const auto& [g, p] : merged) out.atoms.push_back(MeasureAtom{g, p / sum});
  std::sort(out.atoms.begin(), out.atoms.end(), atom_order);
  return out;
}

Measure reflect(const Measure& mu) {
  Measure out;
  out.atoms.reserve(mu.atoms.size());
  for (const auto& a : mu.atoms) out.atoms.push_back(MeasureAtom{inverse(a.g), a.p});
  return validate(out);
}

Measure dirac(const GroupElement& g) { return Measure{{MeasureAtom{g, 1.0}}}; }

std::uint64_t measure_fingerprint(const Measure& mu) {
  std::uint64_t h = 0xa0761d6478bd642fULL;
  for (const auto& a : mu.atoms) {
    h = CounterRng::mix(h ^ hash_value(a.g));
    std::uint64_t pb;
    static_assert(sizeof(pb) == sizeof(a.p));
    std::memcpy(&pb, &a.p, sizeof(pb));
    h = CounterRng::mix(h ^ pb);
  }
  return h;
}

std::vector<GroupElement> SamplePath::partial_products() const {
  std::vector<GroupElement> out;
  out.reserve(increments.size() + 1);
  out.push_back(identity_element());
  try {
    for (const auto& g : increments) out.push_back(mul(out.back(), g));
  } catch (const overflow_error&) {
    throw overflow_error(
        "sample_path: partial product left int64 range; evaluate through marked orbits or "
        "trace/eigenvalue formulas instead of explicit matrices");
  }
  return out;
}

SamplePath sample_path(const Measure& mu, long steps, std::uint64_t seed, std::uint64_t trial) {
  if (steps < 1) throw std::invalid_argument("sample_path: steps must be >= 1");
  Measure m = validate(mu);
  std::vector<double> cum = cumulative(m);
  CounterRng rng{seed};
  SamplePath path;
  path.seed = seed;
  path.trial = trial;
  path.increments.reserve(steps);
  for (long s = 0; s < steps; ++s)
    path.increments.push_back(m.atoms[draw_index(cum, rng.uniform(trial, s))].g);
  return path;
}

std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  double var = ss / static_cast<double>(xs.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

template <class Point>
DriftEstimate kingman_drift(const Point& base, const Measure& mu, const WalkConfig& wc,
                            bool both_orientations) {
  if (wc.steps < 1 || wc.trials < 1)
    throw std::invalid_argument("kingman_drift: steps and trials must be >= 1");
  Measure m = validate(mu);
  std::vector<double> cum = cumulative(m);
  std::vector<GroupElement> inv;
  inv.reserve(m.atoms.size());
  for (const auto& a : m.atoms) inv.push_back(inverse(a.g));
  CounterRng rng{wc.seed};

  std::vector<double> fwd(wc.trials), rev(both_orientations ? wc.trials : 0);
  unsigned workers = wc.workers ? wc.workers : default_workers();
  parallel_for(static_cast<std::size_t>(wc.trials), workers, [&](std::size_t t) {
    Point y = base;  // y_n = w_n^{-1} base, so d(w_n b, b) = d(b, y_n)
    for (long s = 0; s < wc.steps; ++s)
      y = act_on_point(inv[draw_index(cum, rng.uniform(t, s))], y);
    fwd[t] = distance(base, y, wc.search).log_sup / static_cast<double>(wc.steps);
    if (both_orientations)
      rev[t] = distance(y, base, wc.search).log_sup / static_cast<double>(wc.steps);
  });

  DriftEstimate est;
  est.trials = wc.trials;
  est.steps = wc.steps;
  std::tie(est.mean, est.stderr_) = mean_stderr(fwd);
  if (both_orientations) std::tie(est.opposite_mean, est.opposite_stderr) = mean_stderr(rev);
  return est;
}

EmpiricalBoundaryMeasure boundary_sample(const Measure& mu, long n_steps, long n_samples,
                                         std::uint64_t seed) {
  if (n_steps < 16) throw std::invalid_argument("boundary_sample: n_steps must be >= 16");
  if (n_samples < 1) throw std::invalid_argument("boundary_sample: n_samples must be >= 1");
  Measure m = validate(mu);
  std::vector<double> cum = cumulative(m);
  CounterRng rng{seed};

  // Image direction of the prefix product, tracked as a normalized double
  // matrix; overflow never enters.
  const double v0u = std::cos(1.0), v0v = std::sin(1.0);
  std::vector<ProjectiveDirection> dirs(n_samples);
  std::vector<double> diags(n_samples);
  parallel_for(static_cast<std::size_t>(n_samples), default_workers(), [&](std::size_t t) {
    double w[4] = {1.0, 0.0, 0.0, 1.0};
    ProjectiveDirection mid{1.0, 0.0};
    for (long s = 0; s < n_steps; ++s) {
      const GroupElement& g = m.atoms[draw_index(cum, rng.uniform(t, s))].g;
      double ga = static_cast<double>(g.a), gb = static_cast<double>(g.b);
      double gc = static_cast<double>(g.c), gd = static_cast<double>(g.d);
      double n0 = w[0] * ga + w[1] * gc, n1 = w[0] * gb + w[1] * gd;
      double n2 = w[2] * ga + w[3] * gc, n3 = w[2] * gb + w[3] * gd;
      double scale = std::max(std::max(std::abs(n0), std::abs(n1)),
                              std::max(std::abs(n2), std::abs(n3)));
      w[0] = n0 / scale;
      w[1] = n1 / scale;
      w[2] = n2 / scale;
      w[3] = n3 / scale;
      if (s + 1 == n_steps / 2) mid = make_direction(w[0] * v0u + w[1] * v0v, w[2] * v0u + w[3] * v0v);
    }
    dirs[t] = make_direction(w[0] * v0u + w[1] * v0v, w[2] * v0u + w[3] * v0v);
    diags[t] = angular_distance(mid, dirs[t]);
  });

  EmpiricalBoundaryMeasure out;
  out.samples = std::move(dirs);
  out.steps_used = n_steps;
  std::vector<double> sorted = diags;
  std::sort(sorted.begin(), sorted.end());
  out.median_diagnostic = sorted[sorted.size() / 2];
  out.converged = out.median_diagnostic <= 1e-3;
  out.source_fingerprint = measure_fingerprint(m);
  return out;
}

template <class Point>
DriftEstimate integral_drift(const Point& base, const Measure& mu,
                             const EmpiricalBoundaryMeasure& boundary, const SearchConfig& cfg) {
  Measure m = validate(mu);
  if (boundary.source_fingerprint != measure_fingerprint(reflect(m)))
    throw std::invalid_argument(
        "integral_drift: boundary measure was not sampled from the reflected measure");
  if (boundary.samples.empty()) throw std::invalid_argument("integral_drift: empty boundary");

  // sum_g mu~(g) c_B(g, xi) = sum_{g in supp mu} mu(g) psi_xi(g b).
  std::vector<Point> points;
  points.reserve(m.atoms.size());
  for (const auto& a : m.atoms) points.push_back(act_on_point(a.g, base));

  std::vector<double> inner(boundary.samples.size());
  parallel_for(boundary.samples.size(), default_workers(), [&](std::size_t j) {
    const ProjectiveDirection& xi = boundary.samples[j];
    PairingLogI pair{xi.u, xi.v};
    auto den = farey_supremum(
        DiffField<PairingLogI, decltype(log_i_field(base))>{pair, log_i_field(base)}, cfg);
    double acc = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      auto num = farey_supremum(
          DiffField<PairingLogI, decltype(log_i_field(points[k]))>{pair, log_i_field(points[k])},
          cfg);
      if (!num.stabilized || !den.stabilized)
        throw std::runtime_error("integral_drift: horofunction search failed to stabilize");
      acc += m.atoms[k].p * (num.log_sup - den.log_sup);
    }
    inner[j] = acc;
  });

  DriftEstimate est;
  est.trials = static_cast<long>(boundary.samples.size());
  est.steps = boundary.steps_used;
  est.orientation = "busemann-integral";
  std::tie(est.mean, est.stderr_) = mean_stderr(inner);
  return est;
}

template DriftEstimate kingman_drift<FlatTorusPoint>(const FlatTorusPoint&, const Measure&,
                                                     const WalkConfig&, bool);
template DriftEstimate kingman_drift<FrickePoint>(const FrickePoint&, const Measure&,
                                                  const WalkConfig&, bool);
template DriftEstimate integral_drift<FlatTorusPoint>(const FlatTorusPoint&, const Measure&,
                                                      const EmpiricalBoundaryMeasure&,
                                                      const SearchConfig&);
template DriftEstimate integral_drift<FrickePoint>(const FrickePoint&, const Measure&,
                                                   const EmpiricalBoundaryMeasure&,
                                                   const SearchConfig&);

}  // namespace driftlab
