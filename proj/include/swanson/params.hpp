#ifndef SWANSON_PARAMS_HPP
#define SWANSON_PARAMS_HPP

#include <cmath>
#include <sstream>

#include "swanson/errors.hpp"

namespace swanson {

// Coupling pair (alpha, beta) of the non-Hermitian quadratic model,
// plus the derived combinations used everywhere downstream:
//   s  = 1 - alpha - beta
//   mu = (alpha - beta) / s        (gauge exponent)
//   r  = (1 - 4 alpha beta) / s^2  (spectral weight)
struct SwansonCouple {
  double alpha = 0.0;
  double beta = 0.0;
  double s = 1.0;
  double mu = 0.0;
  double r = 1.0;
  bool limit = false;  // true only for the hermitian_limit constructor
};

inline SwansonCouple new_couple(double alpha, double beta) {
  if (!(std::isfinite(alpha) && std::isfinite(beta)))
    raise(ErrorCode::InvalidConfig, "alpha and beta must be finite");
  if (alpha == beta) {
    std::ostringstream os;
    os << "alpha == beta == " << alpha << "; use hermitian_limit for the symmetric point";
    raise(ErrorCode::EqualParameters, os.str());
  }
  if (alpha + beta >= 1.0)
    raise(ErrorCode::SumExceedsOne, "alpha + beta must stay below 1");
  if (4.0 * alpha * beta >= 1.0)
    raise(ErrorCode::ProductBoundViolated, "4*alpha*beta must stay below 1");
  SwansonCouple c;
  c.alpha = alpha;
  c.beta = beta;
  c.s = 1.0 - alpha - beta;
  c.mu = (alpha - beta) / c.s;
  c.r = (1.0 - 4.0 * alpha * beta) / (c.s * c.s);
  c.limit = false;
  return c;
}

// alpha = beta = 0 oracle point: the model is plain Hermitian SUSY QM and the
// similarity gauge is the identity. Kept behind its own constructor so the
// generic path can reject alpha == beta outright.
inline SwansonCouple hermitian_limit() {
  SwansonCouple c;
  c.alpha = 0.0;
  c.beta = 0.0;
  c.s = 1.0;
  c.mu = 0.0;
  c.r = 1.0;
  c.limit = true;
  return c;
}

inline double spectral_weight(const SwansonCouple& c) { return c.r; }

// E = s * eps: the gauge map rescales every grid eigenvalue by s.
inline double physical_energy(const SwansonCouple& c, double eps) { return c.s * eps; }

}  // namespace swanson

#endif  // SWANSON_PARAMS_HPP
