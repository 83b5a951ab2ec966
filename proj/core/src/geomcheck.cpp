#include "hypflow/geomcheck.hpp"

#include <algorithm>
#include <cmath>

#include "hypflow/error.hpp"

namespace hypflow::geomcheck {

namespace {

struct Geometry {
  const DiscreteCurve& curve;
  std::size_t n;
  std::size_t segments;
  double period;

  explicit Geometry(const DiscreteCurve& c) : curve(c), n(c.size()), segments(c.closed ? c.size() : c.size() - 1) {
    period = c.closed ? c.params.back() - c.params.front() + (c.params[1] - c.params[0]) : 0.0;
  }

  // Node index that may run past either end of a closed curve.
  cplx node(long i) const {
    const long m = static_cast<long>(n);
    return curve.nodes[static_cast<std::size_t>(((i % m) + m) % m)].z();
  }
  double param(long i) const {
    const long m = static_cast<long>(n);
    const long w = ((i % m) + m) % m;
    return curve.params[static_cast<std::size_t>(w)] + period * static_cast<double>((i - w) / m);
  }
  std::size_t cells_apart(std::size_t i, std::size_t j) const {
    const std::size_t d = i > j ? i - j : j - i;
    return curve.closed ? std::min(d, segments - d) : d;
  }
};

// Cubic Lagrange interpolant through four nodes around segment k.
struct Local {
  double t[4];
  cplx z[4];

  Local(const Geometry& g, std::size_t k) {
    long first = static_cast<long>(k) - 1;
    if (!g.curve.closed) first = std::clamp(first, 0L, static_cast<long>(g.n) - 4);
    for (int a = 0; a < 4; ++a) {
      t[a] = g.param(first + a);
      z[a] = g.node(first + a);
    }
  }
  cplx value(double s) const {
    cplx out = 0.0;
    for (int a = 0; a < 4; ++a) {
      double w = 1.0;
      for (int b = 0; b < 4; ++b)
        if (b != a) w *= (s - t[b]) / (t[a] - t[b]);
      out += w * z[a];
    }
    return out;
  }
  cplx slope(double s) const {
    cplx out = 0.0;
    for (int a = 0; a < 4; ++a) {
      double sum = 0.0;
      for (int c = 0; c < 4; ++c) {
        if (c == a) continue;
        double w = 1.0 / (t[a] - t[c]);
        for (int b = 0; b < 4; ++b)
          if (b != a && b != c) w *= (s - t[b]) / (t[a] - t[b]);
        sum += w;
      }
      out += sum * z[a];
    }
    return out;
  }
};

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Closest parameter on segment [a, b] to p, in [0, 1].
double project(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return 0.0;
  return std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
}

struct Candidate {
  std::size_t i, j;
  double alpha, beta;  // positions on the segments
  bool transversal;
};

bool test_segments(const Geometry& g, std::size_t i, std::size_t j, double tol, Candidate& out) {
  const cplx a0 = g.node(static_cast<long>(i)), a1 = g.node(static_cast<long>(i) + 1);
  const cplx b0 = g.node(static_cast<long>(j)), b1 = g.node(static_cast<long>(j) + 1);
  const cplx da = a1 - a0, db = b1 - b0;
  const double den = cross(da, db);
  if (den != 0.0) {
    const double alpha = cross(b0 - a0, db) / den;
    const double beta = cross(b0 - a0, da) / den;
    if (alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0) {
      out = {i, j, alpha, beta, true};
      return true;
    }
  }
  // Near touch: closest approach is attained at an endpoint of one segment.
  double best = INFINITY;
  auto consider = [&](double al, double be) {
    const double d = std::abs(a0 + al * da - (b0 + be * db));
    if (d < best) {
      best = d;
      out = {i, j, al, be, false};
    }
  };
  consider(0.0, project(a0, b0, b1));
  consider(1.0, project(a1, b0, b1));
  consider(project(b0, a0, a1), 0.0);
  consider(project(b1, a0, a1), 1.0);
  return best <= tol;
}

Crossing polish(const Geometry& g, const Candidate& c) {
  const double si0 = g.param(static_cast<long>(c.i)), si1 = g.param(static_cast<long>(c.i) + 1);
  const double tj0 = g.param(static_cast<long>(c.j)), tj1 = g.param(static_cast<long>(c.j) + 1);
  double s = si0 + c.alpha * (si1 - si0);
  double t = tj0 + c.beta * (tj1 - tj0);
  const Local A(g, c.i), B(g, c.j);
  if (c.transversal) {
    double ss = s, tt = t;
    bool ok = false;
    for (int it = 0; it < 30; ++it) {
      const cplx F = A.value(ss) - B.value(tt);
      const cplx P = A.slope(ss), Q = -B.slope(tt);
      const double det = cross(P, Q);
      if (std::abs(det) <= 1e-14 * std::abs(P) * std::abs(Q)) break;
      const double ds = cross(F, Q) / det;
      const double dt = cross(P, F) / det;
      ss -= ds;
      tt -= dt;
      if (std::abs(ds) + std::abs(dt) <= 1e-15 * (1.0 + std::abs(ss) + std::abs(tt))) {
        ok = true;
        break;
      }
    }
    const double hi = si1 - si0, hj = tj1 - tj0;
    if (ok && ss >= si0 - hi && ss <= si1 + hi && tt >= tj0 - hj && tt <= tj1 + hj) {
      s = ss;
      t = tt;
    }
  }
  if (g.curve.closed) {
    // Report parameters inside the base period.
    auto wrap = [&](double v) {
      const double a = g.curve.params.front();
      return a + std::fmod(std::fmod(v - a, g.period) + g.period, g.period);
    };
    s = wrap(s);
    t = wrap(t);
  } else {
    s = std::clamp(s, g.curve.params.front(), g.curve.params.back());
    t = std::clamp(t, g.curve.params.front(), g.curve.params.back());
  }
  const cplx zs = A.value(s), zt = B.value(t);
  Crossing out;
  out.s = std::min(s, t);
  out.t = std::max(s, t);
  out.point = HPoint::from(0.5 * (zs + zt));
  out.distance = std::abs(zs - zt);
  out.transversal = c.transversal;
  return out;
}

}  // namespace

double max_norm(const DiscreteCurve& curve) {
  double m = 0.0;
  for (const auto& p : curve.nodes) m = std::max(m, std::hypot(p.x, p.y));
  return m;
}

IntersectionReport self_intersections(const DiscreteCurve& curve, double tol) {
  curve.validate();
  require(curve.size() >= 4, ErrorKind::stencil, "self_intersections needs at least 4 nodes");
  const Geometry g(curve);

  struct Box {
    double x0, x1, y0, y1;
    std::size_t k;
  };
  std::vector<Box> boxes(g.segments);
  for (std::size_t k = 0; k < g.segments; ++k) {
    const cplx a = g.node(static_cast<long>(k)), b = g.node(static_cast<long>(k) + 1);
    boxes[k] = {std::min(a.real(), b.real()) - tol, std::max(a.real(), b.real()) + tol,
                std::min(a.imag(), b.imag()) - tol, std::max(a.imag(), b.imag()) + tol, k};
  }
  std::vector<Box> order = boxes;
  std::sort(order.begin(), order.end(), [](const Box& a, const Box& b) { return a.x0 < b.x0; });

  std::vector<Candidate> found;
  std::vector<Box> active;
  for (const Box& b : order) {
    std::erase_if(active, [&](const Box& a) { return a.x1 < b.x0; });
    for (const Box& a : active) {
      if (a.y1 < b.y0 || b.y1 < a.y0) continue;
      if (g.cells_apart(a.k, b.k) <= 2) continue;
      Candidate c;
      const std::size_t i = std::min(a.k, b.k), j = std::max(a.k, b.k);
      if (test_segments(g, i, j, tol, c)) found.push_back(c);
    }
    active.push_back(b);
  }

  // One crossing may be seen by neighbouring segment pairs.
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  std::vector<Candidate> merged;
  for (const Candidate& c : found) {
    bool dup = false;
    for (Candidate& m : merged) {
      if (g.cells_apart(c.i, m.i) <= 2 && g.cells_apart(c.j, m.j) <= 2) {
        if (c.transversal && !m.transversal) m = c;
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(c);
  }

  IntersectionReport report;
  for (const Candidate& c : merged) report.pairs.push_back(polish(g, c));
  std::sort(report.pairs.begin(), report.pairs.end(), [](const Crossing& a, const Crossing& b) { return a.s < b.s; });
  report.embedded = report.pairs.empty();
  report.min_height = hyp2::min_height(curve);
  report.max_norm = max_norm(curve);
  return report;
}

const char* to_string(LiYauVerdict v) {
  switch (v) {
    case LiYauVerdict::embedded_below:
      return "embedded";
    case LiYauVerdict::counterexample:
      return "counterexample";
    case LiYauVerdict::threshold:
      return "threshold";
    case LiYauVerdict::above:
      return "above";
  }
  return "unknown";
}

LiYauResult liyau_check(const DiscreteCurve& curve, double band) {
  LiYauResult r;
  r.energy = hyp2::elastic_energy(curve);
  r.report = self_intersections(curve);
  if (r.energy <= 8.0 - band) {
    r.verdict = r.report.embedded ? LiYauVerdict::embedded_below : LiYauVerdict::counterexample;
  } else if (r.energy < 8.0 + band) {
    r.verdict = LiYauVerdict::threshold;
  } else {
    r.verdict = LiYauVerdict::above;
  }
  r.implication_holds = r.verdict != LiYauVerdict::counterexample;
  return r;
}

MonitorReport height_bound_monitor(std::span<const DiscreteCurve> curves, double alpha) {
  MonitorReport out;
  out.value = INFINITY;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    out.value = std::min(out.value, hyp2::min_height(c));
    const bool ends = c.nodes.front().y >= alpha && c.nodes.back().y >= alpha;
    if (!ends || !(hyp2::elastic_energy(c) < 8.0)) out.violations.push_back(k);
  }
  return out;
}

MonitorReport norm_bound_monitor(std::span<const DiscreteCurve> curves) {
  MonitorReport out;
  if (curves.empty()) return out;
  const HPoint a = curves.front().nodes.front(), b = curves.front().nodes.back();
  auto same = [](HPoint p, HPoint q) { return std::hypot(p.x - q.x, p.y - q.y) <= 1e-9 * (1.0 + std::hypot(q.x, q.y)); };
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& c = curves[k];
    out.value = std::max(out.value, max_norm(c));
    const bool ends = same(c.nodes.front(), a) && same(c.nodes.back(), b);
    if (!ends || !(hyp2::elastic_energy(c) < 8.0)) out.violations.push_back(k);
  }
  return out;
}

}  // namespace hypflow::geomcheck
