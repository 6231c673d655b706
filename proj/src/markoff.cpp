#include "driftlab/markoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace driftlab {

double markoff_flip(double la, double lb, double lold) {
  double d = lold - la - lb;
  if (d >= 0.0) throw std::runtime_error("markoff_flip: trace recursion lost positivity");
  return la + lb + std::log1p(-std::exp(d));
}

double log_trace_at(const FrickeTriple& t, const Slope& s, long max_flips) {
  // Walk the Farey tessellation from the base triangle towards s, tracking
  // the triangle (A, B, M) with M = A + B and s = alpha*A + beta*B.
  double la, lb, lm;
  std::int64_t alpha, beta;
  if (s.q == 0) return t.l10;
  if (s.p >= 0) {
    la = t.l10;
    lb = t.l01;
    lm = t.l11;
    alpha = s.p;
    beta = s.q;
  } else {
    // Negative-slope half: A = (-1,0), B = (0,1), M = (-1,1).
    la = t.l10;
    lb = t.l01;
    lm = markoff_flip(t.l10, t.l01, t.l11);
    alpha = -s.p;
    beta = s.q;
  }
  long flips = 0;
  for (;;) {
    if (beta == 0) return la;
    if (alpha == 0) return lb;
    if (alpha == beta) return lm;  // coprime, so alpha == beta == 1
    if (++flips > max_flips)
      throw std::runtime_error("log_trace_at: slope too deep (raise max_flips)");
    if (alpha > beta) {
      // Descend into (A, M); the old B is the vertex being flipped away.
      double nm = markoff_flip(la, lm, lb);
      lb = lm;
      lm = nm;
      alpha -= beta;
    } else {
      double nm = markoff_flip(lm, lb, la);
      la = lm;
      lm = nm;
      beta -= alpha;
    }
  }
}

double log_length_from_log_trace(double lt) {
  double ac;
  if (lt < 25.0) {
    ac = std::acosh(0.5 * std::exp(lt));
  } else {
    // acosh(t/2) = lt - log 2 + log(1 + sqrt(1 - 4 exp(-2 lt))); the sqrt term
    // is 1 to double precision once lt >= 25.
    ac = lt;
  }
  return std::log(2.0 * ac);
}

double fricke_relation_error(const FrickeTriple& t) {
  // log(x^2 + y^2 + z^2) via log-sum-exp, compared against log(xyz).
  double m = std::max({2.0 * t.l10, 2.0 * t.l01, 2.0 * t.l11});
  double sum = std::exp(2.0 * t.l10 - m) + std::exp(2.0 * t.l01 - m) + std::exp(2.0 * t.l11 - m);
  double lhs = m + std::log(sum);
  double rhs = t.l10 + t.l01 + t.l11;
  return std::abs(std::expm1(lhs - rhs));
}

}  // namespace driftlab
