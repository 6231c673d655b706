#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "driftlab/group.hpp"
#include "driftlab/models.hpp"
#include "driftlab/rng.hpp"
#include "driftlab/search.hpp"

namespace driftlab {

struct MeasureAtom {
  GroupElement g;
  double p = 0.0;
};

// Finitely supported probability measure on group elements. Always pass raw
// atom lists through validate(): it merges projectively equal atoms, refuses
// sums off by more than 1e-9, and fixes a deterministic atom order.
struct Measure {
  std::vector<MeasureAtom> atoms;
};

Measure validate(const Measure& raw);
Measure reflect(const Measure& mu);
Measure dirac(const GroupElement& g);
std::uint64_t measure_fingerprint(const Measure& mu);

struct SamplePath {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::vector<GroupElement> increments;

  // w_n = w_{n-1} * increment_n, with w_0 = id prepended. Exact, so deep
  // paths overflow; walks evaluate through marked orbits instead.
  std::vector<GroupElement> partial_products() const;
};

SamplePath sample_path(const Measure& mu, long steps, std::uint64_t seed,
                       std::uint64_t trial = 0);

struct DriftEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long trials = 0;
  long steps = 0;
  std::string orientation = "d(wb,b)";
  // Reverse orientation d(b, wb); NaN unless requested (the metrics here are
  // asymmetric only for the fricke model).
  double opposite_mean = std::numeric_limits<double>::quiet_NaN();
  double opposite_stderr = std::numeric_limits<double>::quiet_NaN();
};

struct EmpiricalBoundaryMeasure {
  std::vector<ProjectiveDirection> samples;
  long steps_used = 0;
  double median_diagnostic = 0.0;  // angle between directions at n/2 and n
  bool converged = true;
  std::uint64_t source_fingerprint = 0;
};

struct WalkConfig {
  long steps = 200;
  long trials = 100;
  std::uint64_t seed = 1;
  SearchConfig search;
  unsigned workers = 0;  // 0 = hardware concurrency
};

// (L, L_reflected): exact sums of one-step distances over the atoms.
template <class Point>
std::pair<double, double> first_moment(const Point& base, const Measure& mu,
                                       const SearchConfig& cfg) {
  double l = 0.0, lr = 0.0;
  for (const auto& atom : mu.atoms) {
    Point gb = act_on_point(atom.g, base);
    l += atom.p * distance(base, gb, cfg).log_sup;
    lr += atom.p * distance(gb, base, cfg).log_sup;
  }
  return {l, lr};
}

template <class Point>
DriftEstimate kingman_drift(const Point& base, const Measure& mu, const WalkConfig& wc,
                            bool both_orientations = false);

EmpiricalBoundaryMeasure boundary_sample(const Measure& mu, long n_steps, long n_samples,
                                         std::uint64_t seed);

// Busemann-integral estimator: sum over the reflected measure's atoms of the
// averaged cocycle against the boundary samples. The boundary must have been
// sampled from reflect(mu); the fingerprint guards that.
template <class Point>
DriftEstimate integral_drift(const Point& base, const Measure& mu,
                             const EmpiricalBoundaryMeasure& boundary, const SearchConfig& cfg);

extern template DriftEstimate kingman_drift<FlatTorusPoint>(const FlatTorusPoint&, const Measure&,
                                                            const WalkConfig&, bool);
extern template DriftEstimate kingman_drift<FrickePoint>(const FrickePoint&, const Measure&,
                                                         const WalkConfig&, bool);
extern template DriftEstimate integral_drift<FlatTorusPoint>(const FlatTorusPoint&,
                                                             const Measure&,
                                                             const EmpiricalBoundaryMeasure&,
                                                             const SearchConfig&);
extern template DriftEstimate integral_drift<FrickePoint>(const FrickePoint&, const Measure&,
                                                          const EmpiricalBoundaryMeasure&,
                                                          const SearchConfig&);

// Mean and standard error of a sample, in one deterministic pass.
std::pair<double, double> mean_stderr(const std::vector<double>& xs);

}  // namespace driftlab
