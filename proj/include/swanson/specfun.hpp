#ifndef SWANSON_SPECFUN_HPP
#define SWANSON_SPECFUN_HPP

#include <cmath>
#include <complex>

#include "swanson/errors.hpp"

namespace swanson {

using cdouble = std::complex<double>;

enum class PolyKind { Jacobi, Laguerre, Hermite };

// Polynomial family attached to a closed-form wavefunction. Parameters are
// complex because two of the model tables carry conjugate complex exponents.
struct PolynomialFamily {
  PolyKind kind = PolyKind::Hermite;
  cdouble a{0.0, 0.0};
  cdouble b{0.0, 0.0};
};

namespace detail {

inline bool near_zero(const cdouble& z, double tol = 1e-13) {
  return std::abs(z) < tol;
}

// Explicit finite sum for the Jacobi polynomial; denominator-free, used when
// the three-term recurrence hits a vanishing coefficient denominator.
inline cdouble jacobi_sum(int n, cdouble a, cdouble b, cdouble y) {
  cdouble acc{0.0, 0.0};
  double nfact = 1.0;
  for (int k = 2; k <= n; ++k) nfact *= k;
  const cdouble half = (y - 1.0) / 2.0;
  for (int m = 0; m <= n; ++m) {
    double binom = 1.0;
    for (int j = 0; j < m; ++j) binom = binom * (n - j) / (j + 1);
    cdouble poch1{1.0, 0.0};  // (a+m+1)_{n-m}
    for (int j = 0; j < n - m; ++j) poch1 *= a + cdouble(m + 1 + j, 0.0);
    cdouble poch2{1.0, 0.0};  // (a+b+n+1)_m
    for (int j = 0; j < m; ++j) poch2 *= a + b + cdouble(n + 1 + j, 0.0);
    cdouble pw{1.0, 0.0};
    for (int j = 0; j < m; ++j) pw *= half;
    acc += binom * poch1 * poch2 * pw;
  }
  return acc / nfact;
}

inline cdouble jacobi_recurrence(int n, cdouble a, cdouble b, cdouble y) {
  if (n == 0) return cdouble{1.0, 0.0};
  cdouble pkm1{1.0, 0.0};
  cdouble pk = (a - b) / 2.0 + (a + b + 2.0) / 2.0 * y;
  for (int k = 2; k <= n; ++k) {
    const cdouble kk{double(k), 0.0};
    const cdouble c1 = 2.0 * kk * (kk + a + b) * (2.0 * kk + a + b - 2.0);
    if (near_zero(kk + a + b) || near_zero(2.0 * kk + a + b - 2.0))
      raise(ErrorCode::DegenerateRecurrence, "jacobi recurrence denominator vanished");
    const cdouble c2 = 2.0 * kk + a + b - 1.0;
    const cdouble c3 = (2.0 * kk + a + b) * (2.0 * kk + a + b - 2.0);
    const cdouble c4 = a * a - b * b;
    const cdouble c5 = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * (2.0 * kk + a + b);
    const cdouble pnew = (c2 * (c3 * y + c4) * pk - c5 * pkm1) / c1;
    pkm1 = pk;
    pk = pnew;
  }
  return pk;
}

}  // namespace detail

inline cdouble jacobi(int n, cdouble a, cdouble b, cdouble y) {
  if (n < 0) raise(ErrorCode::InvalidConfig, "polynomial degree must be nonnegative");
  try {
    return detail::jacobi_recurrence(n, a, b, y);
  } catch (const SwansonError& e) {
    if (e.code() != ErrorCode::DegenerateRecurrence) throw;
    return detail::jacobi_sum(n, a, b, y);
  }
}

inline cdouble laguerre(int n, cdouble a, cdouble y) {
  if (n < 0) raise(ErrorCode::InvalidConfig, "polynomial degree must be nonnegative");
  if (n == 0) return cdouble{1.0, 0.0};
  cdouble lkm1{1.0, 0.0};
  cdouble lk = 1.0 + a - y;
  for (int k = 2; k <= n; ++k) {
    const cdouble lnew = ((cdouble(2 * k - 1, 0.0) + a - y) * lk - (cdouble(k - 1, 0.0) + a) * lkm1) / double(k);
    lkm1 = lk;
    lk = lnew;
  }
  return lk;
}

// Physicists' convention: H_{k+1} = 2y H_k - 2k H_{k-1}.
inline double hermite(int n, double y) {
  if (n < 0) raise(ErrorCode::InvalidConfig, "polynomial degree must be nonnegative");
  if (n == 0) return 1.0;
  double hkm1 = 1.0;
  double hk = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double hnew = 2.0 * y * hk - 2.0 * k * hkm1;
    hkm1 = hk;
    hk = hnew;
  }
  return hk;
}

// Derivative identities used by the wavefunction assembly and the ODE checks.
inline cdouble jacobi_deriv(int n, cdouble a, cdouble b, cdouble y) {
  if (n == 0) return cdouble{0.0, 0.0};
  return (cdouble(n, 0.0) + a + b + 1.0) / 2.0 * jacobi(n - 1, a + 1.0, b + 1.0, y);
}

inline cdouble laguerre_deriv(int n, cdouble a, cdouble y) {
  if (n == 0) return cdouble{0.0, 0.0};
  return -laguerre(n - 1, a + 1.0, y);
}

inline double hermite_deriv(int n, double y) {
  if (n == 0) return 0.0;
  return 2.0 * n * hermite(n - 1, y);
}

inline cdouble eval_family(const PolynomialFamily& fam, int n, cdouble y) {
  switch (fam.kind) {
    case PolyKind::Jacobi:   return jacobi(n, fam.a, fam.b, y);
    case PolyKind::Laguerre: return laguerre(n, fam.a, y);
    case PolyKind::Hermite:  return cdouble{hermite(n, y.real()), 0.0};
  }
  return cdouble{0.0, 0.0};
}

}  // namespace swanson

#endif  // SWANSON_SPECFUN_HPP
