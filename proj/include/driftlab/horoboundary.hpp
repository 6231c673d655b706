#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "driftlab/models.hpp"
#include "driftlab/search.hpp"

namespace driftlab {

struct HoroResult {
  double value = 0.0;
  SupResult num, den;
  double truncation() const { return std::max(num.truncation_bound, den.truncation_bound); }
};

// psi_xi(x) = log( sup_a i(xi,a)/i(x,a) / sup_a i(xi,a)/i(b,a) ), both sups
// truncated with the same config so their errors partially cancel. Throws if
// either search fails to stabilize.
template <class Point>
HoroResult horofunction(const Point& x, const Point& base, const ProjectiveDirection& xi,
                        const SearchConfig& cfg) {
  PairingLogI pair{xi.u, xi.v};
  auto num = farey_supremum(DiffField<PairingLogI, decltype(log_i_field(x))>{pair, log_i_field(x)},
                            cfg);
  auto den = farey_supremum(
      DiffField<PairingLogI, decltype(log_i_field(base))>{pair, log_i_field(base)}, cfg);
  if (!num.stabilized || !den.stabilized)
    throw std::runtime_error(
        std::string("horofunction: sup search failed to stabilize (model ") + model_name(x) +
        ", direction " + std::to_string(xi.u) + "," + std::to_string(xi.v) +
        "; raise beam_width or lower stabilization_window)");
  return HoroResult{num.log_sup - den.log_sup, num, den};
}

// c_B(g, xi) = psi_xi(g^{-1} b).
template <class Point>
HoroResult busemann_cocycle(const GroupElement& g, const ProjectiveDirection& xi,
                            const Point& base, const SearchConfig& cfg) {
  return horofunction(act_on_point(inverse(g), base), base, xi, cfg);
}

// |psi_{g.xi}(x) - (psi_xi(g^{-1} x) - psi_xi(g^{-1} b))|; zero in the limit.
template <class Point>
double horofunction_equivariance_check(const GroupElement& g, const ProjectiveDirection& xi,
                                       const Point& x, const Point& base,
                                       const SearchConfig& cfg) {
  GroupElement gi = inverse(g);
  double lhs = horofunction(x, base, act(g, xi), cfg).value;
  double rhs = horofunction(act_on_point(gi, x), base, xi, cfg).value -
               horofunction(act_on_point(gi, base), base, xi, cfg).value;
  return std::abs(lhs - rhs);
}

struct ComparisonStep {
  long n = 0;
  double distance = 0.0;
  double horofunction = 0.0;
  double gap = 0.0;
  double truncation = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonStep> steps;
  double max_gap = 0.0;
  bool growing = false;
};

namespace detail {

// Walks are evaluated through the inverse orbit: with y_n = w_n^{-1} b and
// xi_n = w_n^{-1} xi, one has d(w_n b, b) = d(b, y_n) and
// psi_xi(w_n b) = -psi_{xi_n}(y_n). Both sides update by one generator per
// step, so nothing ever needs the full product matrix.
struct PulledDirection {
  double u, v;
  double log_scale = 0.0;

  void apply_inverse(const GroupElement& g) {
    GroupElement gi = inverse(g);
    double nu = static_cast<double>(gi.a) * u + static_cast<double>(gi.b) * v;
    double nv = static_cast<double>(gi.c) * u + static_cast<double>(gi.d) * v;
    double n = std::hypot(nu, nv);
    log_scale += std::log(n);
    u = nu / n;
    v = nv / n;
  }
  ProjectiveDirection dir() const { return make_direction(u, v); }
};

}  // namespace detail

// Per-step gaps d(w_n b, b) - psi_xi(w_n b) along a path of increments.
template <class Point>
ComparisonReport comparison_diagnostic(const Point& base,
                                       const std::vector<GroupElement>& increments,
                                       const ProjectiveDirection& xi, const SearchConfig& cfg) {
  ComparisonReport rep;
  Point y = base;
  detail::PulledDirection pd{xi.u, xi.v, 0.0};
  long n = 0;
  auto record = [&] {
    SupResult d = distance(base, y, cfg);
    HoroResult h = horofunction(y, base, pd.dir(), cfg);
    double psi = -h.value;
    ComparisonStep st;
    st.n = n;
    st.distance = d.log_sup;
    st.horofunction = psi;
    st.gap = d.log_sup - psi;
    st.truncation = std::max(d.truncation_bound, h.truncation());
    rep.steps.push_back(st);
  };
  record();
  for (const GroupElement& g : increments) {
    y = act_on_point(inverse(g), y);
    pd.apply_inverse(g);
    ++n;
    record();
  }
  double max1 = 0.0, max2 = 0.0;
  std::size_t half = rep.steps.size() / 2;
  for (std::size_t i = 0; i < rep.steps.size(); ++i) {
    double gp = rep.steps[i].gap;
    (i < half ? max1 : max2) = std::max(i < half ? max1 : max2, gp);
    rep.max_gap = std::max(rep.max_gap, gp);
  }
  rep.growing = max2 > 1.1 * max1;
  return rep;
}

// min over n of i(xi, a_n)/i(b, a_n) for the recorded argmax slopes a_n of
// d(x_n, b); a positive value is the empirical C' of the sequence condition.
template <class Point>
double condition_seq_diagnostic(const Point& base, const std::vector<GroupElement>& increments,
                                const ProjectiveDirection& xi, const SearchConfig& cfg) {
  Point y = base;
  detail::PulledDirection pd{xi.u, xi.v, 0.0};
  double min_log = std::numeric_limits<double>::infinity();
  auto record = [&] {
    SupResult d = distance(base, y, cfg);
    const Slope& beta = d.argmax;
    double num = std::abs(pairing(pd.dir(), beta.p, beta.q));
    double log_num = num > 0.0 ? pd.log_scale + std::log(num)
                               : -std::numeric_limits<double>::infinity();
    double log_den = [&] {
      if constexpr (std::is_same_v<Point, FlatTorusPoint>)
        return flat_log_i(y, beta);
      else
        return fricke_log_i(y, beta);
    }();
    min_log = std::min(min_log, log_num - log_den);
  };
  record();
  for (const GroupElement& g : increments) {
    y = act_on_point(inverse(g), y);
    pd.apply_inverse(g);
    record();
  }
  return std::exp(min_log);
}

void write_comparison_csv(const ComparisonReport& rep, const std::string& path);

}  // namespace driftlab
