#include "hypflow/ellip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypflow/error.hpp"

namespace hypflow::ellip {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 0.0008;

void check_modulus(double p) {
  if (!(p >= 0.0 && p < 1.0)) fail(ErrorKind::domain, "elliptic modulus must satisfy 0 <= p < 1");
}

double complement(double p) { return std::sqrt((1.0 - p) * (1.0 + p)); }

// Splits phi = j*pi + phi0 with phi0 in [-pi/2, pi/2].
double reduce(double phi, double& j) {
  j = std::nearbyint(phi / kPi);
  return phi - j * kPi;
}

}  // namespace

double carlson_rc(double x, double y) {
  double xt, yt, w;
  if (y > 0.0) {
    xt = x;
    yt = y;
    w = 1.0;
  } else {
    xt = x - y;
    yt = -y;
    w = std::sqrt(x) / std::sqrt(xt);
  }
  double ave, s;
  for (;;) {
    const double lam = 2.0 * std::sqrt(xt) * std::sqrt(yt) + yt;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    ave = (xt + yt + yt) / 3.0;
    s = (yt - ave) / ave;
    if (std::abs(s) <= kTol) break;
  }
  return w * (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) / std::sqrt(ave);
}

double carlson_rf(double x, double y, double z) {
  double xt = x, yt = y, zt = z, ave, dx, dy, dz;
  for (;;) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = (xt + yt + zt) / 3.0;
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= kTol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 / 44.0 * e3) * e2 + e3 / 14.0) / std::sqrt(ave);
}

double carlson_rd(double x, double y, double z) {
  double xt = x, yt = y, zt = z, sum = 0.0, fac = 1.0, ave, dx, dy, dz;
  for (;;) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lam));
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = 0.2 * (xt + yt + 3.0 * zt);
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= kTol) break;
  }
  constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0, c4 = 3.0 / 26.0;
  constexpr double c5 = 0.25 * c3, c6 = 1.5 * c4;
  const double ea = dx * dy, eb = dz * dz, ec = ea - eb, ed = ea - 6.0 * eb, ee = ed + ec + ec;
  return 3.0 * sum + fac * (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                         (ave * std::sqrt(ave));
}

double carlson_rj(double x, double y, double z, double p) {
  double xt, yt, zt, pt, a = 0.0, b = 0.0, rcx = 0.0;
  if (p > 0.0) {
    xt = x;
    yt = y;
    zt = z;
    pt = p;
  } else {
    // Cauchy principal value.
    xt = std::min({x, y, z});
    zt = std::max({x, y, z});
    yt = x + y + z - xt - zt;
    a = 1.0 / (yt - p);
    b = a * (zt - yt) * (yt - xt);
    pt = yt + b;
    const double rho = xt * zt / yt;
    const double tau = p * pt / yt;
    rcx = carlson_rc(rho, tau);
  }
  double sum = 0.0, fac = 1.0, ave, dx, dy, dz, dp;
  for (;;) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    const double alpha = std::pow(pt * (sx + sy + sz) + sx * sy * sz, 2);
    const double beta = pt * (pt + lam) * (pt + lam);
    sum += fac * carlson_rc(alpha, beta);
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    pt = 0.25 * (pt + lam);
    ave = 0.2 * (xt + yt + zt + pt + pt);
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    dp = (ave - pt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz), std::abs(dp)}) <= kTol) break;
  }
  constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 3.0, c3 = 3.0 / 22.0, c4 = 3.0 / 26.0;
  constexpr double c5 = 0.75 * c3, c6 = 1.5 * c4, c7 = 0.5 * c2, c8 = c3 + c3;
  const double ea = dx * (dy + dz) + dy * dz;
  const double eb = dx * dy * dz;
  const double ec = dp * dp;
  const double ed = ea - 3.0 * ec;
  const double ee = eb + 2.0 * dp * (ea - ec);
  double ans = 3.0 * sum + fac *
                               (1.0 + ed * (-c1 + c5 * ed - c6 * ee) + eb * (c7 + dp * (-c8 + dp * c4)) +
                                dp * ea * (c2 - dp * c3) - c2 * dp * ec) /
                               (ave * std::sqrt(ave));
  if (p <= 0.0) ans = a * (b * ans + 3.0 * (rcx - carlson_rf(xt, yt, zt)));
  return ans;
}

double complete_K(double p) {
  check_modulus(p);
  double a = 1.0, b = complement(p);
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

double complete_E(double p) {
  check_modulus(p);
  double a = 1.0, b = complement(p), c = p;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  for (int i = 0; i < 64 && std::abs(c) > 1e-17; ++i) {
    c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

double complete_Pi(double alpha2, double p) {
  check_modulus(p);
  if (alpha2 >= 1.0) fail(ErrorKind::singular_integral, "complete Pi: pole at alpha^2 sin^2 = 1 on the path");
  const double kc2 = (1.0 - p) * (1.0 + p);
  return carlson_rf(0.0, kc2, 1.0) + alpha2 / 3.0 * carlson_rj(0.0, kc2, 1.0, 1.0 - alpha2);
}

double ellint_F(double phi, double p) {
  check_modulus(p);
  double j;
  const double phi0 = reduce(phi, j);
  const double s = std::sin(phi0), c = std::cos(phi0);
  const double part = s * carlson_rf(c * c, 1.0 - p * p * s * s, 1.0);
  return j == 0.0 ? part : 2.0 * j * complete_K(p) + part;
}

double ellint_E(double phi, double p) {
  check_modulus(p);
  double j;
  const double phi0 = reduce(phi, j);
  const double s = std::sin(phi0), c = std::cos(phi0);
  const double q = 1.0 - p * p * s * s;
  const double part = s * carlson_rf(c * c, q, 1.0) - p * p * s * s * s / 3.0 * carlson_rd(c * c, q, 1.0);
  return j == 0.0 ? part : 2.0 * j * complete_E(p) + part;
}

double ellint_Pi(double phi, double alpha2, double p) {
  check_modulus(p);
  if (alpha2 >= 1.0) {
    const double pole = std::asin(1.0 / std::sqrt(alpha2));
    if (std::abs(phi) >= pole) fail(ErrorKind::singular_integral, "Pi: pole 1 - alpha^2 sin^2 = 0 on the path");
  }
  double j;
  const double phi0 = reduce(phi, j);
  const double s = std::sin(phi0), c = std::cos(phi0);
  const double q = 1.0 - p * p * s * s;
  const double part =
      s * carlson_rf(c * c, q, 1.0) + alpha2 / 3.0 * s * s * s * carlson_rj(c * c, q, 1.0, 1.0 - alpha2 * s * s);
  return j == 0.0 ? part : 2.0 * j * complete_Pi(alpha2, p) + part;
}

double jacobi_am(double x, double p) {
  check_modulus(p);
  if (p == 0.0) return x;
  const double K = complete_K(p);
  const double j = std::nearbyint(x / (2.0 * K));
  const double x0 = x - 2.0 * j * K;
  double lo = -0.5 * kPi, hi = 0.5 * kPi;
  double phi = std::clamp(x0 * kPi / (2.0 * K), lo, hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double s = std::sin(phi);
    const double r = ellint_F(phi, p) - x0;
    if (r == 0.0) break;
    if (r > 0.0) hi = phi;
    else lo = phi;
    double next = phi - r * std::sqrt(1.0 - p * p * s * s);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - phi);
    phi = next;
    if (step <= 4e-16 * std::max(1.0, std::abs(phi))) break;
  }
  return j * kPi + phi;
}

SnCnDn jacobi_sn_cn_dn(double x, double p) {
  const double phi = jacobi_am(x, p);
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  return {sn, cn, std::sqrt(1.0 - p * p * sn * sn)};
}

double complete_K_asymptotics(double p) { return complement(p) * complete_K(p); }

}  // namespace hypflow::ellip
