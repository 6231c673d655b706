#include "driftlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <tuple>

#include "driftlab/horoboundary.hpp"
#include "driftlab/parallel.hpp"

namespace driftlab {

namespace {

std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> support_set(
    const Measure& m) {
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> s;
  for (const auto& a : m.atoms) s.insert({a.g.a, a.g.b, a.g.c, a.g.d});
  return s;
}

void require_common_support(const MeasureFamily& family) {
  if (family.grid.empty()) throw std::invalid_argument("family: empty grid");
  auto ref = support_set(validate(family.generator(family.grid.front())));
  for (double t : family.grid)
    if (support_set(validate(family.generator(t))) != ref)
      throw std::invalid_argument("family: support varies across the grid (parameter " +
                                  std::to_string(t) + ")");
}

// |l(mu) - l(mu')| <= sum_g |mu - mu'|(g) * d_sym(b, gb); used as the
// per-step jump allowance in continuity verdicts.
template <class Point>
double lipschitz_allowance(const Point& base, const Measure& a, const Measure& b,
                           const SearchConfig& cfg) {
  double out = 0.0;
  auto weight = [](const Measure& m, const GroupElement& g) {
    for (const auto& at : m.atoms)
      if (at.g == g) return at.p;
    return 0.0;
  };
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> seen;
  for (const Measure* m : {&a, &b})
    for (const auto& at : m->atoms) {
      if (!seen.insert({at.g.a, at.g.b, at.g.c, at.g.d}).second) continue;
      Point gb = act_on_point(at.g, base);
      double dsym = distance(base, gb, cfg).log_sup + distance(gb, base, cfg).log_sup;
      out += std::abs(weight(a, at.g) - weight(b, at.g)) * dsym;
    }
  return out;
}

}  // namespace

MeasureFamily two_atom_mix(const GroupElement& g, const GroupElement& h,
                           std::vector<double> grid) {
  if (g == h) throw std::invalid_argument("two_atom_mix: atoms coincide");
  MeasureFamily fam;
  fam.grid = std::move(grid);
  fam.generator = [g, h](double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("two_atom_mix: t must be in (0,1)");
    return validate(Measure{{MeasureAtom{g, t}, MeasureAtom{h, 1.0 - t}}});
  };
  return fam;
}

bool ns_admissibility_check(const GroupElement& g, const GroupElement& h) {
  if (!is_hyperbolic(g)) throw std::invalid_argument("ns_admissibility_check: g not hyperbolic");
  auto [plus, minus] = eigendirections(g);
  const double tol = 1e-9;
  for (const ProjectiveDirection& fixed : {plus, minus})
    for (const ProjectiveDirection& moved : {act(h, plus), act(h, minus)})
      if (angular_distance(fixed, moved) <= tol) return false;
  return true;
}

bool certify_non_elementary(const Measure& mu, int max_word_len) {
  Measure m = validate(mu);
  std::vector<GroupElement> words{identity_element()};
  std::size_t begin = 0;
  for (int len = 1; len <= max_word_len; ++len) {
    std::size_t end = words.size();
    for (std::size_t i = (len == 1 ? 0 : begin); i < end; ++i)
      for (const auto& a : m.atoms) {
        try {
          words.push_back(mul(words[i], a.g));
        } catch (const overflow_error&) {
        }
      }
    begin = end;
  }
  for (const auto& g : words) {
    if (!is_hyperbolic(g)) continue;
    for (const auto& h : words) {
      if (h == identity_element()) continue;
      if (ns_admissibility_check(g, h)) return true;
    }
  }
  return false;
}

template <class Point>
SweepReport continuity_sweep(const Point& base, const MeasureFamily& family,
                             const WalkConfig& wc) {
  require_common_support(family);
  SweepReport rep;
  rep.kind = "continuity";
  for (double t : family.grid) {
    Measure m = validate(family.generator(t));
    if (!certify_non_elementary(m))
      throw std::invalid_argument("continuity_sweep: measure at parameter " + std::to_string(t) +
                                  " is not certified non-elementary");
    SweepPoint pt;
    pt.parameter = t;
    pt.estimate = kingman_drift(base, m, wc);
    rep.points.push_back(pt);
  }
  // No-jump verdict between adjacent grid points.
  for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
    const auto& a = rep.points[i];
    const auto& b = rep.points[i + 1];
    double allow =
        3.0 * std::hypot(a.estimate.stderr_, b.estimate.stderr_) +
        lipschitz_allowance(base, validate(family.generator(a.parameter)),
                            validate(family.generator(b.parameter)), wc.search);
    bool ok = std::abs(a.estimate.mean - b.estimate.mean) <= allow;
    rep.points[i + 1].verdict = ok;
    if (!ok) rep.pass = false;
  }
  rep.note = rep.pass ? "no jump exceeds 3 sigma + TV allowance" : "jump detected";
  return rep;
}

template <class Point>
SweepReport ns_degeneration(const Point& base, const GroupElement& g, const GroupElement& h,
                            const std::vector<long>& i_grid, const WalkConfig& wc,
                            long boundary_samples, double concentration_delta) {
  if (!ns_admissibility_check(g, h))
    throw std::invalid_argument("ns_degeneration: (g, h) pair is inadmissible");
  for (long i : i_grid)
    if (i < 2) throw std::invalid_argument("ns_degeneration: grid entries must be >= 2");

  auto [gamma_plus, gamma_minus] = eigendirections(g);
  (void)gamma_minus;
  double ref = translation_length(g);

  SweepReport rep;
  rep.kind = "ns-degeneration";
  for (long i : i_grid) {
    Measure m = validate(
        Measure{{MeasureAtom{g, 1.0 - 1.0 / static_cast<double>(i)},
                 MeasureAtom{h, 1.0 / static_cast<double>(i)}}});
    SweepPoint pt;
    pt.parameter = static_cast<double>(i);
    pt.estimate = kingman_drift(base, m, wc);
    pt.reference = ref;
    // Stationary-measure concentration near the attracting direction.
    auto bd = boundary_sample(m, wc.steps, boundary_samples, wc.seed ^ 0x9e3779b9ULL);
    long hits = 0;
    for (const auto& xi : bd.samples)
      if (angular_distance(xi, gamma_plus) <= concentration_delta) ++hits;
    pt.extra = static_cast<double>(hits) / static_cast<double>(bd.samples.size());
    rep.points.push_back(pt);
  }
  return rep;
}

namespace {

SweepReport zero_drift_core(const GroupElement& a, const GroupElement& g,
                            const std::vector<long>& i_grid, const WalkConfig& wc,
                            const FlatTorusPoint* flat_base_pt,
                            const FrickePoint* fricke_base_pt) {
  if (!is_elliptic(a)) throw std::invalid_argument("zero_drift_sweep: a must be elliptic");
  for (long i : i_grid)
    if (i < 2) throw std::invalid_argument("zero_drift_sweep: grid entries must be >= 2");
  SweepReport rep;
  rep.kind = "zero-drift";
  for (long i : i_grid) {
    Measure m = validate(Measure{{MeasureAtom{a, 1.0 - 1.0 / static_cast<double>(i)},
                                  MeasureAtom{g, 1.0 / static_cast<double>(i)}}});
    SweepPoint pt;
    pt.parameter = static_cast<double>(i);
    pt.reference = 0.0;
    if (flat_base_pt) {
      pt.estimate = kingman_drift(*flat_base_pt, m, wc);
      FlatTorusPoint gb = act_on_point(g, *flat_base_pt);
      pt.extra = (distance(*flat_base_pt, gb, wc.search).log_sup +
                  distance(gb, *flat_base_pt, wc.search).log_sup) /
                 static_cast<double>(i);  // L bound: mu_i(g) * d_sym(b, gb)
    } else {
      pt.estimate = kingman_drift(*fricke_base_pt, m, wc);
      FrickePoint gb = act_on_point(g, *fricke_base_pt);
      pt.extra = (distance(*fricke_base_pt, gb, wc.search).log_sup +
                  distance(gb, *fricke_base_pt, wc.search).log_sup) /
                 static_cast<double>(i);
    }
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace

SweepReport zero_drift_sweep_flat(const GroupElement& a, const GroupElement& g,
                                  const std::vector<long>& i_grid, const WalkConfig& wc) {
  if (!is_elliptic(a)) throw std::invalid_argument("zero_drift_sweep: a must be elliptic");
  FlatTorusPoint base = make_flat_point(elliptic_fixed_point(a));
  return zero_drift_core(a, g, i_grid, wc, &base, nullptr);
}

SweepReport zero_drift_sweep_fricke(const GroupElement& a, const GroupElement& g,
                                    const std::vector<long>& i_grid, const WalkConfig& wc) {
  if (!is_elliptic(a)) throw std::invalid_argument("zero_drift_sweep: a must be elliptic");
  // Known symmetric fixed points: the (3,3,3) triple for order-3 rotations,
  // (2 sqrt 2, 2 sqrt 2, 4) for the order-4 involution.
  double r2 = 2.0 * std::sqrt(2.0);
  for (FrickePoint cand : {fricke_base(), make_fricke_point(r2, r2, 4.0)}) {
    FrickePoint moved = act_on_point(a, cand);
    double err = std::abs(moved.triple.l10 - cand.triple.l10) +
                 std::abs(moved.triple.l01 - cand.triple.l01) +
                 std::abs(moved.triple.l11 - cand.triple.l11);
    if (err < 1e-9) return zero_drift_core(a, g, i_grid, wc, nullptr, &cand);
  }
  throw std::invalid_argument(
      "zero_drift_sweep_fricke: no catalogued fixed point for this elliptic");
}

DihedralElement dihedral_mul(const DihedralElement& x, const DihedralElement& y) {
  return DihedralElement{x.shift + (x.flip ? -y.shift : y.shift), x.flip ^ y.flip};
}

DihedralElement dihedral_inverse(const DihedralElement& x) {
  return x.flip ? x : DihedralElement{-x.shift, 0};
}

SweepReport dihedral_drift(const std::vector<long>& i_grid, long steps, long trials,
                           std::uint64_t seed) {
  if (steps < 4 || steps % 2 != 0)
    throw std::invalid_argument("dihedral_drift: steps must be even and >= 4");
  if (trials < 2) throw std::invalid_argument("dihedral_drift: trials must be >= 2");
  for (long i : i_grid)
    if (i < 2) throw std::invalid_argument("dihedral_drift: grid entries must be >= 2");

  CounterRng rng{seed};
  SweepReport rep;
  rep.kind = "dihedral";
  // |X_n|/n of the folded walk decays like n^{-1/2}; the two-horizon
  // extrapolation (sqrt2 m_{2h} - m_h)/(sqrt2 - 1) removes that term, is
  // exact on Dirac paths, and fluctuates around zero for the symmetric walk.
  const double s2 = std::sqrt(2.0);
  for (long i : i_grid) {
    double pg = 1.0 - 1.0 / static_cast<double>(i);
    std::vector<double> vals(trials);
    for (long t = 0; t < trials; ++t) {
      std::int64_t pos = 0;
      int sign = 1;
      double half = 0.0;
      for (long s = 0; s < steps; ++s) {
        if (rng.uniform(t, s, i) < pg)
          pos += sign;  // (1,0): translate
        else
          sign = -sign;  // (0,1): reflect
        if (s + 1 == steps / 2) half = std::abs(static_cast<double>(pos));
      }
      double m_half = half / (0.5 * static_cast<double>(steps));
      double m_full = std::abs(static_cast<double>(pos)) / static_cast<double>(steps);
      vals[t] = (s2 * m_full - m_half) / (s2 - 1.0);
    }
    SweepPoint pt;
    pt.parameter = static_cast<double>(i);
    std::tie(pt.estimate.mean, pt.estimate.stderr_) = mean_stderr(vals);
    pt.estimate.trials = trials;
    pt.estimate.steps = steps;
    pt.reference = 0.0;
    pt.verdict = std::abs(pt.estimate.mean) <= 3.0 * pt.estimate.stderr_;
    if (!pt.verdict) rep.pass = false;
    rep.points.push_back(pt);
  }
  // Dirac reference: deterministic translation has drift exactly 1.
  {
    SweepPoint ref;
    ref.parameter = std::numeric_limits<double>::infinity();
    ref.estimate.mean = 1.0;
    ref.estimate.stderr_ = 0.0;
    ref.estimate.trials = 1;
    ref.estimate.steps = steps;
    ref.reference = 1.0;
    ref.verdict = ref.estimate.mean == 1.0;
    rep.points.push_back(ref);
  }
  rep.note = rep.pass ? "all finite-i estimates within 3 sigma of zero" : "zero-drift check failed";
  return rep;
}

DriftEqualityReport drift_equality_crosscheck(const Measure& mu, const WalkConfig& wc) {
  Measure m = validate(mu);
  if (!certify_non_elementary(m))
    throw std::invalid_argument("drift_equality_crosscheck: measure not certified non-elementary");
  DriftEqualityReport rep;
  rep.teichmuller = kingman_drift(flat_base(), m, wc);
  rep.thurston = kingman_drift(fricke_base(), m, wc);
  rep.difference = std::abs(rep.teichmuller.mean - rep.thurston.mean);
  rep.combined_stderr = std::hypot(rep.teichmuller.stderr_, rep.thurston.stderr_);
  rep.pass = rep.difference <= 3.0 * rep.combined_stderr;
  return rep;
}

void write_sweep_csv(const SweepReport& rep, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_sweep_csv: cannot open " + path);
  std::fprintf(f, "parameter,mean,stderr,reference,verdict\n");
  for (const auto& pt : rep.points)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%d\n", pt.parameter, pt.estimate.mean,
                 pt.estimate.stderr_, pt.reference, pt.verdict ? 1 : 0);
  std::fclose(f);
}

template SweepReport continuity_sweep<FlatTorusPoint>(const FlatTorusPoint&, const MeasureFamily&,
                                                      const WalkConfig&);
template SweepReport continuity_sweep<FrickePoint>(const FrickePoint&, const MeasureFamily&,
                                                   const WalkConfig&);
template SweepReport ns_degeneration<FlatTorusPoint>(const FlatTorusPoint&, const GroupElement&,
                                                     const GroupElement&,
                                                     const std::vector<long>&, const WalkConfig&,
                                                     long, double);
template SweepReport ns_degeneration<FrickePoint>(const FrickePoint&, const GroupElement&,
                                                  const GroupElement&, const std::vector<long>&,
                                                  const WalkConfig&, long, double);

}  // namespace driftlab
