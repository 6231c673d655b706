#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "driftlab/experiments.hpp"
#include "driftlab/walk.hpp"

namespace driftlab {

// Exact distribution of w_n on the group (not on words): projectively equal
// products merge their mass.
struct ConvolutionTable {
  std::unordered_map<GroupElement, double, GroupElementHash> mass;
  int power = 0;
};

ConvolutionTable delta_table();
ConvolutionTable convolve(const ConvolutionTable& t, const Measure& mu,
                          std::size_t support_cap = 1'000'000);

// Shannon entropy in nats, compensated summation.
double entropy(const ConvolutionTable& t);
double entropy(const Measure& mu);

struct EntropyDiagnostics {
  std::vector<double> H;  // H[n] = H(mu^{*n}), n = 0..n_max
};

// Returns (H(mu^{*n})/n, H(mu^{*n}) - H(mu^{*(n-1)})) at n = n_max; the
// difference estimator converges much faster and both share the limit.
std::pair<double, double> asymptotic_entropy(const Measure& mu, int n_max,
                                             EntropyDiagnostics* diag = nullptr,
                                             std::size_t support_cap = 1'000'000);

SweepReport entropy_continuity_sweep(const MeasureFamily& family, int n_max);

// Directions whose geodesic ray from the base passes within Teichmuller
// distance C of the orbit point g.b; flat model, base tau = i.
struct Shadow {
  GroupElement center;
  double radius = 0.0;
};

bool shadow_contains(const Shadow& s, const ProjectiveDirection& xi);

// Distance from the ray (base -> boundary endpoint of xi) to the point, in
// Teichmuller units.
double ray_distance(const ProjectiveDirection& xi, std::complex<double> w);

// All canonical group elements with d_T(b, gb) in (k-1, k].
std::vector<GroupElement> sphere_enumerate(int k, int k_cap = 4);

struct CoveringReport {
  int k_max = 0;
  double C = 0.0;
  std::vector<long> max_count;  // per k: max over sampled F of |{g in S^k : F in O(g,C)}|
  long overall_max = 0;
  bool stable = true;  // max_count non-increasing from k = 2 on
};

CoveringReport covering_number_check(int k_max, double C,
                                     const std::vector<ProjectiveDirection>& xi_samples);

struct ShadowMeasureReport {
  std::vector<double> C_grid;
  std::vector<double> min_fraction;  // per C: min over sampled g of nu(g^{-1} O(g,C))
  bool monotone = true;
  double top_fraction = 0.0;
  bool pass = false;  // monotone and top >= 1 - eps
};

ShadowMeasureReport shadow_measure_check(const Measure& mu, const std::vector<double>& C_grid,
                                         long n_samples, std::uint64_t seed, int m_power = 4,
                                         int n_centers = 32, double eps = 0.1);

void write_entropy_csv(const EntropyDiagnostics& diag, const std::string& path);

}  // namespace driftlab
