#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "driftlab/models.hpp"
#include "driftlab/rng.hpp"

using namespace driftlab;

namespace {

// Trace oracle for the symmetric cusped point: explicit SL(2,Z)-words with
// tr A = tr B = tr AB = 3, concatenated along the same Farey descent the
// production code walks in log space. Small slopes only.
struct Mat {
  long long a, b, c, d;
};
Mat mmul(const Mat& x, const Mat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

long long oracle_trace(const Slope& s) {
  Mat A{1, 1, 1, 2}, B{1, -1, -1, 2};
  Mat ma, mb, mm;
  long long alpha, beta;
  if (s.q == 0) return A.a + A.d;
  if (s.p >= 0) {
    ma = A;
    mb = B;
    mm = mmul(A, B);
    alpha = s.p;
    beta = s.q;
  } else {
    ma = Mat{2, -1, -1, 1};  // A^{-1}
    mb = B;
    mm = mmul(ma, B);
    alpha = -s.p;
    beta = s.q;
  }
  for (;;) {
    if (beta == 0) return ma.a + ma.d;
    if (alpha == 0) return mb.a + mb.d;
    if (alpha == beta) return mm.a + mm.d;
    if (alpha > beta) {
      Mat nm = mmul(ma, mm);
      mb = mm;
      mm = nm;
      alpha -= beta;
    } else {
      Mat nm = mmul(mm, mb);
      ma = mm;
      mm = nm;
      beta -= alpha;
    }
  }
}

GroupElement random_word(CounterRng& rng, std::uint64_t k, int len) {
  const GroupElement gens[4] = {
      make_group_element(1, 1, 0, 1), make_group_element(1, 0, 1, 1),
      make_group_element(1, -1, 0, 1), make_group_element(1, 0, -1, 1)};
  GroupElement g = identity_element();
  for (int i = 0; i < len; ++i) g = mul(g, gens[rng.bits(k, i) % 4]);
  return g;
}

}  // namespace

TEST_CASE("flat_log_i closed forms") {
  auto b = flat_base();
  CHECK(flat_log_i(b, Slope{1, 0}) == doctest::Approx(0.0));
  CHECK(flat_log_i(b, canonicalize(1, 1)) == doctest::Approx(0.5 * std::log(2.0)));
  auto x = make_flat_point({0.0, 2.0});
  CHECK(flat_log_i(x, canonicalize(0, 1)) == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("fricke lengths at the symmetric point") {
  auto b = fricke_base();
  double l10 = fricke_log_i(b, Slope{1, 0});
  CHECK(std::exp(l10) == doctest::Approx(2.0 * std::acosh(1.5)).epsilon(1e-12));
  CHECK(std::exp(l10) == doctest::Approx(1.9248473).epsilon(1e-6));

  // One Markoff move: (1,2) has trace 3*3 - 3 = 6.
  double l12 = fricke_log_i(b, canonicalize(1, 2));
  CHECK(std::exp(l12) == doctest::Approx(2.0 * std::acosh(3.0)).epsilon(1e-12));
  CHECK(std::exp(l12) == doctest::Approx(3.5254944).epsilon(1e-6));

  // Full symmetry of the base triple.
  CHECK(fricke_log_i(b, Slope{0, 1}) == doctest::Approx(l10));
  CHECK(fricke_log_i(b, Slope{1, 1}) == doctest::Approx(l10));

  CHECK_THROWS(make_fricke_point(3.0, 3.0, 4.0));  // relation violated
  CHECK_THROWS(make_fricke_point(1.5, 1.5, 1.5));  // traces too small
}

TEST_CASE("fricke traces match the explicit word oracle") {
  auto b = fricke_base();
  for (const Slope& s :
       {Slope{1, 0}, Slope{0, 1}, Slope{1, 1}, canonicalize(1, 2), canonicalize(2, 1),
        canonicalize(1, 3), canonicalize(3, 1), canonicalize(2, 3), canonicalize(3, 2),
        canonicalize(-1, 1), canonicalize(-1, 2), canonicalize(-2, 1), canonicalize(-3, 5),
        canonicalize(5, 8), canonicalize(7, 12), canonicalize(-7, 9)}) {
    double lt = log_trace_at(b.triple, s);
    double expect = static_cast<double>(oracle_trace(s));
    CHECK(std::exp(lt) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("trace descent depth guard") {
  auto b = fricke_base();
  CHECK_THROWS_WITH_AS(log_trace_at(b.triple, canonicalize(1, 3'000'000), 1000),
                       doctest::Contains("slope too deep"), std::runtime_error);
}

TEST_CASE("mobius_apply moves the raw coordinate") {
  auto b = flat_base();
  auto t = mobius_apply(make_group_element(1, 1, 0, 1), b);
  CHECK(t.tau.real() == doctest::Approx(1.0));
  CHECK(t.tau.imag() == doctest::Approx(1.0));

  auto s = mobius_apply(make_group_element(0, -1, 1, 0), b);
  CHECK(std::abs(s.tau - std::complex<double>(0.0, 1.0)) < 1e-15);

  auto g = mobius_apply(make_group_element(2, 1, 1, 1), b);
  CHECK(g.tau.real() == doctest::Approx(1.5));
  CHECK(g.tau.imag() == doctest::Approx(0.5));
  CHECK(g.marking == make_group_element(2, 1, 1, 1));
}

TEST_CASE("hyperbolic oracle values") {
  auto b = flat_base();
  CHECK(hyperbolic_oracle(b, b) == 0.0);
  CHECK(hyperbolic_oracle(b, make_flat_point({0.0, 2.0})) ==
        doctest::Approx(0.5 * std::log(2.0)));
  CHECK(hyperbolic_oracle(b, make_flat_point({1.0, 1.0})) ==
        doctest::Approx(0.5 * std::acosh(1.5)));
}

TEST_CASE("flat distance agrees with the closed form") {
  SearchConfig cfg;
  auto b = flat_base();

  auto same = distance(b, b, cfg);
  CHECK(same.log_sup == 0.0);

  auto r = distance(b, make_flat_point({0.0, 2.0}), cfg);
  CHECK(r.log_sup == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  CHECK(r.argmax == Slope{0, 1});

  CounterRng rng{99};
  for (int i = 0; i < 25; ++i) {
    auto x = make_flat_point({rng.uniform(0, i) - 0.5, 0.5 + 1.5 * rng.uniform(1, i)});
    auto y = make_flat_point({rng.uniform(2, i) - 0.5, 0.5 + 1.5 * rng.uniform(3, i)});
    auto d = distance(x, y, cfg);
    CHECK(d.log_sup == doctest::Approx(hyperbolic_oracle(x, y)).epsilon(1e-9));
    CHECK(d.truncation_bound >= 0.0);
  }
}

TEST_CASE("marked action is an isometry") {
  SearchConfig cfg;
  CounterRng rng{3};
  auto fb = flat_base();
  auto kb = fricke_base();
  for (int i = 0; i < 12; ++i) {
    GroupElement g = random_word(rng, i, 3);
    GroupElement wx = random_word(rng, 500 + i, 2), wy = random_word(rng, 900 + i, 2);

    auto x = act_on_point(wx, fb), y = act_on_point(wy, fb);
    double before = distance(x, y, cfg).log_sup;
    double after = distance(act_on_point(g, x), act_on_point(g, y), cfg).log_sup;
    CHECK(after == doctest::Approx(before).epsilon(1e-10));

    auto fx = act_on_point(wx, kb), fy = act_on_point(wy, kb);
    double fbefore = distance(fx, fy, cfg).log_sup;
    double fafter = distance(act_on_point(g, fx), act_on_point(g, fy), cfg).log_sup;
    CHECK(fafter == doctest::Approx(fbefore).epsilon(1e-9));
  }
}

TEST_CASE("fricke distance is asymmetric but vanishes on the diagonal") {
  SearchConfig cfg;
  auto b = fricke_base();
  CHECK(distance(b, b, cfg).log_sup == 0.0);

  // Search a few short words for an asymmetry witness.
  CounterRng rng{41};
  bool found = false;
  for (int i = 0; i < 20 && !found; ++i) {
    GroupElement g = random_word(rng, i, 3);
    auto gb = act_on_point(g, b);
    double fwd = distance(b, gb, cfg).log_sup;
    double rev = distance(gb, b, cfg).log_sup;
    CHECK(fwd >= -1e-12);
    CHECK(rev >= -1e-12);
    if (std::abs(fwd - rev) > 1e-6) found = true;
  }
  CHECK(found);
}

TEST_CASE("fricke action preserves the cubic relation") {
  auto b = fricke_base();
  CounterRng rng{17};
  auto p = b;
  for (int i = 0; i < 50; ++i) {
    p = act_on_point(random_word(rng, i, 1), p);
    CHECK(fricke_relation_error(p.triple) < 1e-6);
  }
}

TEST_CASE("translation length cross-check by iterate-and-divide") {
  SearchConfig cfg{128, 48, 64};
  for (const GroupElement& g :
       {make_group_element(2, 1, 1, 1), make_group_element(1, 1, 1, 2),
        make_group_element(5, 2, 2, 1)}) {
    double ref = translation_length(g);
    const int n = 64;
    GroupElement gi = inverse(g);

    auto yf = flat_base();
    for (int i = 0; i < n; ++i) yf = act_on_point(gi, yf);
    CHECK(distance(flat_base(), yf, cfg).log_sup / n == doctest::Approx(ref).epsilon(1e-9));

    auto yk = fricke_base();
    for (int i = 0; i < n; ++i) yk = act_on_point(gi, yk);
    CHECK(distance(fricke_base(), yk, cfg).log_sup / n == doctest::Approx(ref).epsilon(2e-2));
  }
}

TEST_CASE("sup search is monotone in max_height") {
  auto x = make_flat_point({0.3, 0.8});
  auto y = make_flat_point({-0.2, 1.7});
  auto fx = act_on_point(make_group_element(2, 1, 1, 1), fricke_base());

  double prev_flat = -1e300, prev_fricke = -1e300;
  for (std::int64_t h : {2, 4, 8, 16, 32}) {
    SearchConfig cfg{h, 8, 8};
    // Sweep-only searches are strictly nested.
    auto field = DiffField<FlatLogI, FlatLogI>{log_i_field(y), log_i_field(x)};
    double flat = farey_supremum(field, cfg, false).log_sup;
    CHECK(flat >= prev_flat);
    prev_flat = flat;

    auto kfield =
        DiffField<FrickeLogI, FrickeLogI>{log_i_field(fx), log_i_field(fricke_base())};
    double fk = farey_supremum(kfield, cfg, false).log_sup;
    CHECK(fk >= prev_fricke);
    prev_fricke = fk;
  }

  // Full searches agree up to truncation noise.
  for (std::int64_t h : {8, 16, 32}) {
    SearchConfig lo{h, 32, 32}, hi{h + 1, 32, 32};
    auto dlo = distance(x, y, lo), dhi = distance(x, y, hi);
    CHECK(dhi.log_sup + 1e-12 >= dlo.log_sup - dlo.truncation_bound);
  }
}

TEST_CASE("systole: enumerated i-values are bounded below") {
  auto b = flat_base();
  auto fb = fricke_base();
  double min_flat = 1e300, min_fricke = 1e300;
  for (const Slope& s : farey_enumerate(16)) {
    min_flat = std::min(min_flat, std::exp(flat_log_i(b, s)));
    min_fricke = std::min(min_fricke, std::exp(fricke_log_i(fb, s)));
  }
  CHECK(min_flat == doctest::Approx(1.0));           // unit square torus systole
  CHECK(min_fricke == doctest::Approx(2.0 * std::acosh(1.5)));
  CHECK(min_flat > 0.0);
  CHECK(min_fricke > 0.0);
}

TEST_CASE("elliptic fixed points") {
  auto z = elliptic_fixed_point(make_group_element(0, -1, 1, 0));
  CHECK(std::abs(z - std::complex<double>(0.0, 1.0)) < 1e-12);
  CHECK_THROWS(elliptic_fixed_point(make_group_element(2, 1, 1, 1)));

  // Order-3 rotation fixes the hexagonal point of its tau action.
  GroupElement r = make_group_element(0, -1, 1, -1);
  auto w = elliptic_fixed_point(r);
  auto moved = mobius(tau_action(r), w);
  CHECK(std::abs(moved - w) < 1e-12);
}

TEST_CASE("deep flat walks stop tracking the marking but keep moving") {
  GroupElement g = make_group_element(2, 1, 1, 1);
  auto y = flat_base();
  for (int i = 0; i < 200; ++i) y = act_on_point(g, y);
  CHECK(!y.marking_exact);
  CHECK(y.tau.imag() > 0.0);
  SearchConfig cfg;
  CHECK(distance(flat_base(), y, cfg).log_sup ==
        doctest::Approx(200.0 * translation_length(g)).epsilon(1e-9));
}
