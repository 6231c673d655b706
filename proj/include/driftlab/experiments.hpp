#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "driftlab/walk.hpp"

namespace driftlab {

// Parameter-indexed family with a common finite support (checked), so that
// simple convergence of the weights is all that varies along the grid.
struct MeasureFamily {
  std::vector<double> grid;
  std::function<Measure(double)> generator;
};

MeasureFamily two_atom_mix(const GroupElement& g, const GroupElement& h,
                           std::vector<double> grid);  // t delta_g + (1-t) delta_h

struct SweepPoint {
  double parameter = 0.0;
  DriftEstimate estimate;
  double reference = 0.0;   // limit / oracle value where one exists
  double extra = 0.0;       // per-experiment statistic (e.g. concentration)
  bool verdict = true;
};

struct SweepReport {
  std::string kind;
  std::vector<SweepPoint> points;
  bool pass = true;
  std::string note;
};

// True iff h moves both fixed directions of the hyperbolic g off the fixed
// set (angular tolerance 1e-9).
bool ns_admissibility_check(const GroupElement& g, const GroupElement& h);

// Searches short support words for a hyperbolic g and a conjugator h with
// ns_admissibility_check(g, h); g and h g h^{-1} are then independent
// hyperbolics.
bool certify_non_elementary(const Measure& mu, int max_word_len = 3);

template <class Point>
SweepReport continuity_sweep(const Point& base, const MeasureFamily& family,
                             const WalkConfig& wc);

template <class Point>
SweepReport ns_degeneration(const Point& base, const GroupElement& g, const GroupElement& h,
                            const std::vector<long>& i_grid, const WalkConfig& wc,
                            long boundary_samples = 400, double concentration_delta = 0.15);

// mu_i = (1 - 1/i) delta_a + (1/i) delta_g with a elliptic; the base point is
// moved to the fixed point of a, where L(delta_a) = 0.
SweepReport zero_drift_sweep_flat(const GroupElement& a_elliptic, const GroupElement& g,
                                  const std::vector<long>& i_grid, const WalkConfig& wc);
SweepReport zero_drift_sweep_fricke(const GroupElement& a_elliptic, const GroupElement& g,
                                    const std::vector<long>& i_grid, const WalkConfig& wc);

// Infinite dihedral toy model: elements (n, eps) acting on the line by
// x -> n + (-1)^eps x, d(x, y) = |x - y|, base 0.
struct DihedralElement {
  std::int64_t shift = 0;
  int flip = 0;
};

DihedralElement dihedral_mul(const DihedralElement& x, const DihedralElement& y);
DihedralElement dihedral_inverse(const DihedralElement& x);

SweepReport dihedral_drift(const std::vector<long>& i_grid, long steps, long trials,
                           std::uint64_t seed);

struct DriftEqualityReport {
  DriftEstimate thurston;     // fricke model
  DriftEstimate teichmuller;  // flat model
  double difference = 0.0;
  double combined_stderr = 0.0;
  bool pass = true;
};

DriftEqualityReport drift_equality_crosscheck(const Measure& mu, const WalkConfig& wc);

extern template SweepReport continuity_sweep<FlatTorusPoint>(const FlatTorusPoint&,
                                                             const MeasureFamily&,
                                                             const WalkConfig&);
extern template SweepReport continuity_sweep<FrickePoint>(const FrickePoint&,
                                                          const MeasureFamily&,
                                                          const WalkConfig&);
extern template SweepReport ns_degeneration<FlatTorusPoint>(const FlatTorusPoint&,
                                                            const GroupElement&,
                                                            const GroupElement&,
                                                            const std::vector<long>&,
                                                            const WalkConfig&, long, double);
extern template SweepReport ns_degeneration<FrickePoint>(const FrickePoint&, const GroupElement&,
                                                         const GroupElement&,
                                                         const std::vector<long>&,
                                                         const WalkConfig&, long, double);

void write_sweep_csv(const SweepReport& rep, const std::string& path);

}  // namespace driftlab
