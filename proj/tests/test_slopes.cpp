#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "driftlab/group.hpp"
#include "driftlab/rng.hpp"
#include "driftlab/slopes.hpp"

using namespace driftlab;

namespace {

// Independent enumeration oracle: plain double loop with gcd filtering.
std::set<std::pair<std::int64_t, std::int64_t>> brute_slopes(std::int64_t h) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t p = -h; p <= h; ++p)
    for (std::int64_t q = -h; q <= h; ++q) {
      if (p == 0 && q == 0) continue;
      if (std::max(std::abs(p), std::abs(q)) > h) continue;
      if (std::gcd(std::abs(p), std::abs(q)) != 1) continue;
      Slope s = canonicalize(p, q);
      out.insert({s.p, s.q});
    }
  return out;
}

GroupElement random_word(CounterRng& rng, std::uint64_t k, int len) {
  const GroupElement gens[4] = {
      make_group_element(1, 1, 0, 1), make_group_element(1, 0, 1, 1),
      make_group_element(1, -1, 0, 1), make_group_element(1, 0, -1, 1)};
  GroupElement g = identity_element();
  for (int i = 0; i < len; ++i)
    g = mul(g, gens[rng.bits(k, i) % 4]);
  return g;
}

}  // namespace

TEST_CASE("canonicalize reduces gcd and fixes the sign") {
  CHECK(canonicalize(2, 4) == Slope{1, 2});
  CHECK(canonicalize(-1, 0) == Slope{1, 0});
  CHECK(canonicalize(3, -6) == Slope{-1, 2});
  CHECK(driftlab::canonicalize(0, 5) == Slope{0, 1});
  CHECK_THROWS(driftlab::canonicalize(0, 0));
}

TEST_CASE("canonicalize is idempotent") {
  CounterRng rng{7};
  for (int i = 0; i < 200; ++i) {
    std::int64_t p = static_cast<std::int64_t>(rng.bits(0, i) % 2001) - 1000;
    std::int64_t q = static_cast<std::int64_t>(rng.bits(1, i) % 2001) - 1000;
    if (p == 0 && q == 0) continue;
    Slope s = canonicalize(p, q);
    CHECK(canonicalize(s.p, s.q) == s);
  }
}

TEST_CASE("intersection numbers") {
  CHECK(intersection_number(Slope{1, 0}, Slope{0, 1}) == 1);
  CHECK(intersection_number(canonicalize(1, 2), canonicalize(3, 5)) == 1);
  CHECK(intersection_number(canonicalize(2, 1), canonicalize(2, 1)) == 0);
  // Symmetric, nonnegative, zero iff equal.
  CounterRng rng{11};
  for (int i = 0; i < 200; ++i) {
    Slope a = canonicalize(static_cast<std::int64_t>(rng.bits(0, i) % 41) - 20,
                           static_cast<std::int64_t>(rng.bits(1, i) % 20) + 1);
    Slope b = canonicalize(static_cast<std::int64_t>(rng.bits(2, i) % 41) - 20,
                           static_cast<std::int64_t>(rng.bits(3, i) % 20) + 1);
    CHECK(intersection_number(a, b) == intersection_number(b, a));
    CHECK(intersection_number(a, b) >= 0);
    CHECK((intersection_number(a, b) == 0) == (a == b));
  }
}

TEST_CASE("farey_enumerate matches the brute-force oracle") {
  CHECK_THROWS(farey_enumerate(0));

  auto v1 = farey_enumerate(1);
  CHECK(v1.size() == 4);
  std::set<std::pair<std::int64_t, std::int64_t>> s1;
  for (const auto& s : v1) s1.insert({s.p, s.q});
  CHECK(s1 == std::set<std::pair<std::int64_t, std::int64_t>>{{1, 0}, {0, 1}, {1, 1}, {-1, 1}});

  auto v2 = farey_enumerate(2);
  CHECK(v2.size() == 8);

  for (std::int64_t h = 1; h <= 12; ++h) {
    auto got = farey_enumerate(h);
    std::set<std::pair<std::int64_t, std::int64_t>> gs;
    for (const auto& s : got) gs.insert({s.p, s.q});
    CHECK(gs.size() == got.size());  // no duplicates
    CHECK(gs == brute_slopes(h));
    CHECK(got.size() % 2 == 0);
  }

  // Nested and strictly growing.
  for (std::int64_t h = 1; h <= 8; ++h) {
    auto a = brute_slopes(h), b = brute_slopes(h + 1);
    CHECK(a.size() < b.size());
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("linear action on slopes") {
  GroupElement id = identity_element();
  CHECK(act(id, canonicalize(1, 2)) == Slope{1, 2});
  GroupElement g = make_group_element(2, 1, 1, 1);
  CHECK(act(g, Slope{1, 0}) == Slope{2, 1});

  // det 1 preserves intersection numbers.
  CounterRng rng{23};
  for (int i = 0; i < 200; ++i) {
    GroupElement w = random_word(rng, 100 + i, 4);
    Slope a = canonicalize(static_cast<std::int64_t>(rng.bits(4, i) % 31) - 15,
                           static_cast<std::int64_t>(rng.bits(5, i) % 16) + 1);
    Slope b = canonicalize(static_cast<std::int64_t>(rng.bits(6, i) % 31) - 15,
                           static_cast<std::int64_t>(rng.bits(7, i) % 16) + 1);
    CHECK(intersection_number(act(w, a), act(w, b)) == intersection_number(a, b));
  }
}

TEST_CASE("directions: canonical form and pairing") {
  auto d = make_direction(3.0, 4.0);
  CHECK(d.u == doctest::Approx(0.6));
  CHECK(d.v == doctest::Approx(0.8));
  auto neg = make_direction(-3.0, -4.0);
  CHECK(neg.u == d.u);
  CHECK(neg.v == d.v);
  CHECK_THROWS(make_direction(0.0, 0.0));

  // Power-of-two rescaling is bit-exact.
  auto scaled = make_direction(3.0 * 4.0, 4.0 * 4.0);
  CHECK(scaled.u == d.u);
  CHECK(scaled.v == d.v);
}

TEST_CASE("convergents") {
  // Rational direction terminates at itself.
  auto r = convergents(direction_of(Slope{1, 1}), 10);
  CHECK(r.back() == Slope{1, 1});

  // Golden ratio: continued fraction [1; 1, 1, ...].
  double phi = 0.5 * (1.0 + std::sqrt(5.0));
  auto c = convergents(make_direction(phi, 1.0), 5);
  REQUIRE(c.size() == 5);
  CHECK(c[0] == Slope{1, 1});
  CHECK(c[1] == Slope{2, 1});
  CHECK(c[2] == Slope{3, 2});
  CHECK(c[3] == Slope{5, 3});
  CHECK(c[4] == Slope{8, 5});

  // |u q - v p| strictly decreases along convergents of an irrational.
  auto d = make_direction(std::sqrt(2.0), 1.0);
  auto cs = convergents(d, 8);
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& s : cs) {
    double r2 = std::abs(pairing(d, s.p, s.q));
    CHECK(r2 < prev);
    prev = r2;
  }

  // Vertical direction.
  auto vert = convergents(direction_of(Slope{1, 0}), 3);
  CHECK(vert.size() == 1);
  CHECK(vert[0] == Slope{1, 0});
}

TEST_CASE("farey triangles") {
  auto t = make_farey_triangle(Slope{1, 0}, Slope{0, 1});
  CHECK(t.mediant == Slope{1, 1});
  CHECK_THROWS(make_farey_triangle(Slope{1, 0}, canonicalize(1, 2)));
  CHECK(intersection_number(t.left, t.right) == 1);
}

TEST_CASE("slope strings round-trip") {
  CHECK(to_string(canonicalize(-3, 6)) == "-1/2");
  CHECK(parse_slope("-1/2") == canonicalize(-1, 2));
  CHECK(parse_slope(to_string(Slope{1, 0})) == Slope{1, 0});
  CHECK_THROWS(parse_slope("nonsense"));
}

TEST_CASE("group element canonicalization and algebra") {
  CHECK_THROWS(make_group_element(1, 1, 1, 1));  // det 0
  GroupElement g = make_group_element(-2, -1, -1, -1);
  CHECK(g == make_group_element(2, 1, 1, 1));  // sign canonical

  GroupElement s = make_group_element(0, -1, 1, 0);
  CHECK(mul(s, inverse(s)) == identity_element());
  CHECK(trace(power(make_group_element(1, 1, 0, 1), 5)) == 2);

  CounterRng rng{5};
  for (int i = 0; i < 100; ++i) {
    GroupElement a = random_word(rng, i, 3), b = random_word(rng, 1000 + i, 3);
    CHECK(mul(mul(a, b), inverse(b)) == a);
  }
}

TEST_CASE("int64 overflow fails loudly") {
  GroupElement big = make_group_element((1LL << 40), 1, (1LL << 40) - 1, 1);
  CHECK_THROWS_AS(mul(mul(big, big), big), overflow_error);
  CHECK_THROWS_AS(act(big, canonicalize(1LL << 40, 1)), overflow_error);
}

TEST_CASE("eigendirections and translation length") {
  GroupElement g = make_group_element(2, 1, 1, 1);
  double phi = 0.5 * (1.0 + std::sqrt(5.0));
  CHECK(translation_length(g) == doctest::Approx(std::log(0.5 * (3 + std::sqrt(5.0)))));
  CHECK(translation_length(make_group_element(1, 1, 0, 1)) == 0.0);
  CHECK(translation_length(make_group_element(0, -1, 1, 0)) == 0.0);

  auto [plus, minus] = eigendirections(g);
  auto golden = make_direction(phi, 1.0);
  CHECK(angular_distance(plus, golden) < 1e-12);
  // Eigendirections are fixed by the action.
  CHECK(angular_distance(act(g, plus), plus) < 1e-12);
  CHECK(angular_distance(act(g, minus), minus) < 1e-12);
  CHECK(angular_distance(plus, minus) > 0.1);
}
