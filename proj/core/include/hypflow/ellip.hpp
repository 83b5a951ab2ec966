#pragma once

// Elliptic integrals and Jacobi elliptic functions with modulus p (not the
// parameter m = p^2):
//   F(phi, p)         = int_0^phi dt / sqrt(1 - p^2 sin^2 t)
//   E(phi, p)         = int_0^phi sqrt(1 - p^2 sin^2 t) dt
//   Pi(phi, a2, p)    = int_0^phi dt / ((1 - a2 sin^2 t) sqrt(1 - p^2 sin^2 t))
//   am(., p)          = inverse of phi -> F(phi, p)
//   sn = sin am, cn = cos am, dn = sqrt(1 - p^2 sn^2).

namespace hypflow::ellip {

// Carlson symmetric forms.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
double carlson_rj(double x, double y, double z, double p);
double carlson_rc(double x, double y);

// Complete integrals by the arithmetic-geometric mean.
double complete_K(double p);
double complete_E(double p);
double complete_Pi(double alpha2, double p);

double ellint_F(double phi, double p);
double ellint_E(double phi, double p);
double ellint_Pi(double phi, double alpha2, double p);

double jacobi_am(double x, double p);

struct SnCnDn {
  double sn;
  double cn;
  double dn;
};
SnCnDn jacobi_sn_cn_dn(double x, double p);

// sqrt(1 - p^2) K(p); tends to 0 logarithmically as p -> 1.
double complete_K_asymptotics(double p);

}  // namespace hypflow::ellip
