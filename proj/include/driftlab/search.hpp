#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "driftlab/markoff.hpp"
#include "driftlab/slopes.hpp"

namespace driftlab {

struct SearchConfig {
  std::int64_t max_height = 64;    // exhaustive sweep covers max(|p|,|q|) <= this
  int beam_width = 48;             // candidates kept alive during tree descent
  int stabilization_window = 64;   // descent stops after this many expansions without gain

  void validate() const {
    if (max_height < 1 || beam_width < 1 || stabilization_window < 1)
      throw std::invalid_argument("SearchConfig: all fields must be positive");
  }
};

struct SupResult {
  double log_sup = 0.0;
  Slope argmax{1, 0};
  double truncation_bound = 0.0;  // window improvement (+ oracle gap where available)
  bool stabilized = true;
  long expansions = 0;
};

// ---------------------------------------------------------------------------
// Per-point evaluators carried along Farey triangles. Each provides a payload
// type, payloads for the two root triangles ((1,0),(0,1),(1,1)) and
// ((-1,0),(0,1),(-1,1)), payload propagation into child triangles, and the
// log i value at a triangle corner (0 = left, 1 = right, 2 = mediant).
// ---------------------------------------------------------------------------

// log Ext^(1/2) on the flat torus at half-plane coordinate tau: closed form,
// no per-triangle state.
struct FlatLogI {
  double re = 0.0, im = 1.0;

  struct Pay {};
  Pay root(int) const { return {}; }
  Pay child(const Pay&, bool) const { return {}; }

  double value(const SlopeVec& s) const {
    double p = static_cast<double>(s.p), q = static_cast<double>(s.q);
    double x = p + q * re;
    double y = q * im;
    return 0.5 * (std::log(x * x + y * y) - std::log(im));
  }
  double at(const SlopeVec& vu, const SlopeVec& vv, const SlopeVec& vm, const Pay&,
            int corner) const {
    return value(corner == 0 ? vu : corner == 1 ? vv : vm);
  }
};

// log of the hyperbolic length on the punctured torus; the payload carries the
// log traces of the current triangle and one Markoff move extends it.
struct FrickeLogI {
  FrickeTriple base;

  struct Pay {
    double la, lb, lm;
  };
  Pay root(int which) const {
    if (which == 0) return Pay{base.l10, base.l01, base.l11};
    return Pay{base.l10, base.l01, markoff_flip(base.l10, base.l01, base.l11)};
  }
  Pay child(const Pay& p, bool left) const {
    if (left) return Pay{p.la, p.lm, markoff_flip(p.la, p.lm, p.lb)};
    return Pay{p.lm, p.lb, markoff_flip(p.lm, p.lb, p.la)};
  }
  double at(const SlopeVec&, const SlopeVec&, const SlopeVec&, const Pay& p, int corner) const {
    return log_length_from_log_trace(corner == 0 ? p.la : corner == 1 ? p.lb : p.lm);
  }
};

// log |<xi, s>| for a boundary direction xi; -inf at the direction itself.
struct PairingLogI {
  double u = 1.0, v = 0.0;

  struct Pay {};
  Pay root(int) const { return {}; }
  Pay child(const Pay&, bool) const { return {}; }

  double at(const SlopeVec& vu, const SlopeVec& vv, const SlopeVec& vm, const Pay&,
            int corner) const {
    const SlopeVec& s = corner == 0 ? vu : corner == 1 ? vv : vm;
    double x = std::abs(pairing(ProjectiveDirection{u, v}, s.p, s.q));
    return x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
  }
};

// score(alpha) = num.log_i(alpha) - den.log_i(alpha); the supremum of this is
// what every ratio-metric quantity here reduces to.
template <class Num, class Den>
struct DiffField {
  Num num;
  Den den;

  struct Pay {
    typename Num::Pay n;
    typename Den::Pay d;
  };
  Pay root(int which) const { return Pay{num.root(which), den.root(which)}; }
  Pay child(const Pay& p, bool left) const {
    return Pay{num.child(p.n, left), den.child(p.d, left)};
  }
  double score(const SlopeVec& vu, const SlopeVec& vv, const SlopeVec& vm, const Pay& p,
               int corner) const {
    return num.at(vu, vv, vm, p.n, corner) - den.at(vu, vv, vm, p.d, corner);
  }
};

namespace detail {

inline std::int64_t slope_height(const SlopeVec& v) {
  std::int64_t ap = v.p < 0 ? -v.p : v.p;
  return ap > v.q ? ap : v.q;
}

inline bool mediant(const SlopeVec& a, const SlopeVec& b, SlopeVec& out) {
  return !__builtin_add_overflow(a.p, b.p, &out.p) && !__builtin_add_overflow(a.q, b.q, &out.q);
}

}  // namespace detail

// Truncated supremum of field.score over all slopes: exhaustive Farey sweep to
// cfg.max_height, then best-first mediant descent with a bounded beam,
// stopping once the running max stalls for a full stabilization window.
template <class Field>
SupResult farey_supremum(const Field& field, const SearchConfig& cfg, bool descend = true) {
  cfg.validate();

  struct Node {
    SlopeVec u, v, m;
    typename Field::Pay pay;
    double su, sv, sm;
    double best() const { return std::max(su, std::max(sv, sm)); }
  };

  SupResult res;
  double best = -std::numeric_limits<double>::infinity();
  SlopeVec best_vec{1, 0};
  auto consider = [&](const SlopeVec& s, double score) {
    if (score > best && std::isfinite(score)) {
      best = score;
      best_vec = s;
      return true;
    }
    return false;
  };

  auto make_root = [&](int which) {
    Node n;
    n.u = which == 0 ? SlopeVec{1, 0} : SlopeVec{-1, 0};
    n.v = SlopeVec{0, 1};
    n.m = which == 0 ? SlopeVec{1, 1} : SlopeVec{-1, 1};
    n.pay = field.root(which);
    n.su = field.score(n.u, n.v, n.m, n.pay, 0);
    n.sv = field.score(n.u, n.v, n.m, n.pay, 1);
    n.sm = field.score(n.u, n.v, n.m, n.pay, 2);
    consider(n.u, n.su);
    consider(n.v, n.sv);
    consider(n.m, n.sm);
    return n;
  };

  auto make_child = [&](const Node& n, bool left) -> std::optional<Node> {
    Node c;
    if (left) {
      c.u = n.u;
      c.v = n.m;
    } else {
      c.u = n.m;
      c.v = n.v;
    }
    if (!detail::mediant(c.u, c.v, c.m)) return std::nullopt;
    c.pay = field.child(n.pay, left);
    c.su = left ? n.su : n.sm;
    c.sv = left ? n.sm : n.sv;
    c.sm = field.score(c.u, c.v, c.m, c.pay, 2);
    return c;
  };

  // Phase 1: depth-first sweep of every slope with height <= max_height. The
  // out-of-height children form the descent frontier, trimmed to beam_width.
  auto frontier_less = [](const Node& a, const Node& b) { return a.best() > b.best(); };
  std::vector<Node> frontier;  // min-heap by best()
  auto offer_frontier = [&](Node&& n) {
    if (static_cast<int>(frontier.size()) < cfg.beam_width) {
      frontier.push_back(std::move(n));
      std::push_heap(frontier.begin(), frontier.end(), frontier_less);
    } else if (n.best() > frontier.front().best()) {
      std::pop_heap(frontier.begin(), frontier.end(), frontier_less);
      frontier.back() = std::move(n);
      std::push_heap(frontier.begin(), frontier.end(), frontier_less);
    }
  };

  std::vector<Node> stack;
  stack.push_back(make_root(0));
  stack.push_back(make_root(1));
  while (!stack.empty()) {
    Node n = std::move(stack.back());
    stack.pop_back();
    for (bool left : {false, true}) {
      auto c = make_child(n, left);
      if (!c) continue;
      consider(c->m, c->sm);
      if (detail::slope_height(c->m) <= cfg.max_height)
        stack.push_back(std::move(*c));
      else if (descend)
        offer_frontier(std::move(*c));
    }
  }

  double sweep_best = best;
  res.stabilized = true;

  // Phase 2: best-first refinement along the tree.
  if (descend && !frontier.empty()) {
    auto heap_less = [](const Node& a, const Node& b) { return a.best() < b.best(); };
    std::vector<Node> heap = std::move(frontier);
    std::make_heap(heap.begin(), heap.end(), heap_less);

    std::vector<std::pair<long, double>> gains;  // (expansion index, best after it)
    long expansions = 0;
    long last_gain = 0;
    const long hard_cap = 1L << 20;
    while (!heap.empty()) {
      if (expansions - last_gain >= cfg.stabilization_window) break;
      if (expansions >= hard_cap) break;
      std::pop_heap(heap.begin(), heap.end(), heap_less);
      Node n = std::move(heap.back());
      heap.pop_back();
      ++expansions;
      bool improved = false;
      for (bool left : {false, true}) {
        auto c = make_child(n, left);
        if (!c) continue;
        if (consider(c->m, c->sm)) improved = true;
        heap.push_back(std::move(*c));
        std::push_heap(heap.begin(), heap.end(), heap_less);
      }
      if (improved) {
        last_gain = expansions;
        gains.emplace_back(expansions, best);
      }
      if (static_cast<int>(heap.size()) > 4 * cfg.beam_width) {
        std::nth_element(heap.begin(), heap.begin() + cfg.beam_width, heap.end(),
                         [&](const Node& a, const Node& b) { return heap_less(b, a); });
        heap.resize(cfg.beam_width);
        std::make_heap(heap.begin(), heap.end(), heap_less);
      }
    }
    res.expansions = expansions;
    res.stabilized = expansions - last_gain >= cfg.stabilization_window;

    // Improvement observed during the last window, the honest epsilon for the
    // truncated sup.
    double baseline = sweep_best;
    for (const auto& [e, b] : gains)
      if (e <= expansions - cfg.stabilization_window) baseline = b;
    res.truncation_bound = std::max(0.0, best - baseline);
  }

  res.log_sup = best;
  res.argmax = canonicalize(best_vec);
  return res;
}

}  // namespace driftlab
