#ifndef SWANSON_EIGENFUNCTIONS_HPP
#define SWANSON_EIGENFUNCTIONS_HPP

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "swanson/catalog.hpp"
#include "swanson/errors.hpp"
#include "swanson/potentials.hpp"
#include "swanson/specfun.hpp"

namespace swanson {

// limit-consistent: gauge factor e^{mu*intW} built from the base couple;
// as-printed: transcribed verbatim from the model tables, typos included
enum class Interpretation { LimitConsistent, AsPrinted };

namespace stablelog {

constexpr double kLn2 = 0.6931471805599453;

inline double one_minus_tanh(double x) {
  return x >= 0.0 ? kLn2 - 2.0 * x - std::log1p(std::exp(-2.0 * x))
                  : kLn2 - std::log1p(std::exp(2.0 * x));
}
inline double one_plus_tanh(double x) { return one_minus_tanh(-x); }
// the coth forms need x > 0
inline double coth_minus_one(double x) {
  return kLn2 - 2.0 * x - std::log1p(-std::exp(-2.0 * x));
}
inline double coth_plus_one(double x) {
  return kLn2 - std::log1p(-std::exp(-2.0 * x));
}
inline double ln_cosh(double x) {
  return std::abs(x) + std::log1p(std::exp(-2.0 * std::abs(x))) - kLn2;
}
inline double cosh_minus_one(double x) {
  return kLn2 + 2.0 * std::log(std::abs(std::sinh(x / 2.0)));
}
inline double cosh_plus_one(double x) { return kLn2 + 2.0 * ln_cosh(x / 2.0); }
inline double one_minus_sin(double x) {
  return kLn2 + 2.0 * std::log(std::abs(std::sin(x / 2.0 - M_PI / 4.0)));
}
inline double one_plus_sin(double x) {
  return kLn2 + 2.0 * std::log(std::abs(std::sin(x / 2.0 + M_PI / 4.0)));
}

}  // namespace stablelog

// couple-level decay conditions for the gauged-back wavefunctions
inline void normalizability_check(const ModelSpec& m) {
  const SwansonCouple& c = m.couple;
  switch (m.id) {
    case ModelId::RosenMorseI:
      if (c.mu < 0.0)
        raise(ErrorCode::NormalizabilityViolated, "rosen-morse-1 requires alpha > beta");
      break;
    case ModelId::RosenMorseII:
    case ModelId::Eckart:
    case ModelId::PoschlTeller:
      if (c.mu > 0.0)
        raise(ErrorCode::NormalizabilityViolated,
              std::string(model_id_string(m.id)) + " requires alpha < beta");
      break;
    case ModelId::ShiftedOscillator:
      if (std::abs(c.alpha + c.beta) >= 1.0)
        raise(ErrorCode::NormalizabilityViolated,
              "shifted-oscillator requires |alpha + beta| < 1");
      break;
    default:
      break;
  }
}

inline void level_check(const ModelSpec& m, const PartnerParameters& p, int n) {
  if (n < 0) raise(ErrorCode::InvalidConfig, "level index must be nonnegative");
  const int bm = bound_max_index(m, p);
  if (n > bm) {
    std::ostringstream os;
    os << "level " << n << " beyond the " << (bm + 1) << " bound state(s) of "
       << model_id_string(m.id);
    raise(ErrorCode::BeyondBoundStates, os.str());
  }
}

namespace detail {

struct ClosedParts {
  cdouble logpref;   // log of the exponential prefactor
  cdouble poly;      // polynomial factor
  cdouble dlogpref;  // d/dx of logpref
  cdouble dpoly;     // d/dx of poly
};

inline ClosedParts closed_parts(const ModelSpec& m, const PartnerParameters& p, int n,
                                double x) {
  ClosedParts out;
  const double lam1 = p.lambda1, dlt1 = p.delta1;
  const cdouble iu{0.0, 1.0};
  switch (m.id) {
    case ModelId::RosenMorseI: {
      auto [a1, b1] = native_partner(m, lam1, dlt1);
      const double c = a1 + n;
      const cdouble sp = -c - iu * (b1 / c), sm = -c + iu * (b1 / c);
      const double sn = std::sin(x), ct = std::cos(x) / sn;
      const cdouble z = iu * ct;
      out.logpref = c * std::log(sn) + b1 * x / c;
      out.poly = jacobi(n, sp, sm, z);
      out.dlogpref = c * ct + b1 / c;
      out.dpoly = jacobi_deriv(n, sp, sm, z) * (-iu / (sn * sn));
      break;
    }
    case ModelId::RosenMorseII: {
      auto [a1, b1] = native_partner(m, lam1, dlt1);
      const double c = a1 - n;
      const double sp = c + b1 / c, sm = c - b1 / c;
      const double z = std::tanh(x), ch = std::cosh(x);
      out.logpref = 0.5 * sp * stablelog::one_minus_tanh(x) +
                    0.5 * sm * stablelog::one_plus_tanh(x);
      out.poly = jacobi(n, sp, sm, z);
      out.dlogpref = -b1 / c - c * z;
      out.dpoly = jacobi_deriv(n, sp, sm, z) / (ch * ch);
      break;
    }
    case ModelId::Eckart: {
      auto [a1, b1] = native_partner(m, lam1, dlt1);
      const double c = a1 + n;
      const double sp = b1 / c - c, sm = -b1 / c - c;
      const double sh = std::sinh(x), z = std::cosh(x) / sh;
      out.logpref = 0.5 * sp * stablelog::coth_minus_one(x) +
                    0.5 * sm * stablelog::coth_plus_one(x);
      out.poly = jacobi(n, sp, sm, z);
      out.dlogpref = c * z - b1 / c;
      out.dpoly = jacobi_deriv(n, sp, sm, z) * (-1.0 / (sh * sh));
      break;
    }
    case ModelId::ScarfI: {
      const double sn = std::sin(x), cs = std::cos(x);
      const double ja = lam1 - dlt1 - 0.5, jb = lam1 + dlt1 - 0.5;
      out.logpref = 0.5 * (lam1 - dlt1) * stablelog::one_minus_sin(x) +
                    0.5 * (lam1 + dlt1) * stablelog::one_plus_sin(x);
      out.poly = jacobi(n, ja, jb, sn);
      out.dlogpref = dlt1 / cs - lam1 * sn / cs;
      out.dpoly = jacobi_deriv(n, ja, jb, sn) * cs;
      break;
    }
    case ModelId::ScarfII: {
      const double sh = std::sinh(x), ch = std::cosh(x);
      const cdouble ja = -iu * dlt1 - lam1 - 0.5, jb = iu * dlt1 - lam1 - 0.5;
      const cdouble z = iu * sh;
      out.logpref = -lam1 * stablelog::ln_cosh(x) - dlt1 * std::atan(sh);
      out.poly = jacobi(n, ja, jb, z);
      out.dlogpref = -lam1 * sh / ch - dlt1 / ch;
      out.dpoly = jacobi_deriv(n, ja, jb, z) * (iu * ch);
      break;
    }
    case ModelId::PoschlTeller: {
      const double sh = std::sinh(x), z = std::cosh(x);
      const double ja = dlt1 - lam1 - 0.5, jb = -dlt1 - lam1 - 0.5;
      out.logpref = 0.5 * (dlt1 - lam1) * stablelog::cosh_minus_one(x) -
                    0.5 * (dlt1 + lam1) * stablelog::cosh_plus_one(x);
      out.poly = jacobi(n, ja, jb, z);
      out.dlogpref = dlt1 / sh - lam1 * z / sh;
      out.dpoly = jacobi_deriv(n, ja, jb, z) * sh;
      break;
    }
    case ModelId::Morse: {
      auto [a1, b1] = native_partner(m, lam1, dlt1);
      const double y = 2.0 * b1 * std::exp(-x);
      out.logpref = (a1 - n) * std::log(y) - y / 2.0;
      out.poly = laguerre(n, 2.0 * (a1 - n), y);
      out.dlogpref = y / 2.0 - (a1 - n);
      out.dpoly = laguerre_deriv(n, 2.0 * (a1 - n), y) * (-y);
      break;
    }
    case ModelId::ShiftedOscillator: {
      auto [a1, b1] = native_partner(m, lam1, dlt1);
      const double t = x - 2.0 * b1 / a1;
      const double scale = std::sqrt(a1 / 2.0);
      out.logpref = -a1 * t * t / 4.0;
      out.poly = cdouble{hermite(n, scale * t), 0.0};
      out.dlogpref = -a1 * t / 2.0;
      out.dpoly = cdouble{hermite_deriv(n, scale * t) * scale, 0.0};
      break;
    }
  }
  return out;
}

}  // namespace detail

// gauge-removed (Hermitian-like) eigenfunction of h_-, unnormalized
inline cdouble phi_minus(const ModelSpec& m, const PartnerParameters& p, int n,
                         double x) {
  level_check(m, p, n);
  if (!inside_domain(m, x)) {
    std::ostringstream os;
    os << "x = " << x << " outside the open domain of " << model_id_string(m.id);
    raise(ErrorCode::OutOfDomain, os.str());
  }
  auto parts = detail::closed_parts(m, p, n, x);
  return std::exp(parts.logpref) * parts.poly;
}

inline cdouble phi_minus_deriv(const ModelSpec& m, const PartnerParameters& p, int n,
                               double x) {
  level_check(m, p, n);
  if (!inside_domain(m, x)) {
    std::ostringstream os;
    os << "x = " << x << " outside the open domain of " << model_id_string(m.id);
    raise(ErrorCode::OutOfDomain, os.str());
  }
  auto parts = detail::closed_parts(m, p, n, x);
  return std::exp(parts.logpref) * (parts.dlogpref * parts.poly + parts.dpoly);
}

namespace detail {

inline cdouble psi_printed(const ModelSpec& m, const PartnerParameters& p, int n,
                           double x) {
  const double mu = m.couple.mu;
  switch (m.id) {
    case ModelId::RosenMorseI: {
      // table exponents mix the partner parameters into the gauge constants
      auto [a1, b1] = native_partner(m, p.lambda1, p.delta1);
      const double mu1 = mu * a1, mu2 = mu * b1 / a1;
      const double c = a1 + n;
      const cdouble iu{0.0, 1.0};
      const cdouble sp = -c - iu * (b1 / c), sm = -c + iu * (b1 / c);
      const double sn = std::sin(x);
      return std::exp(cdouble{(a1 + n + mu2) * std::log(sn) + (b1 / c - mu1) * x, 0.0}) *
             jacobi(n, sp, sm, iu * std::cos(x) / sn);
    }
    case ModelId::ShiftedOscillator: {
      // printed gauge exponent carries the opposite sign on the linear term
      auto [a1, b1] = native_partner(m, p.lambda1, p.delta1);
      const double a2 = native_a2(m), b2 = native_b2(m);
      const double t = x - 2.0 * b1 / a1;
      const double phi = std::exp(-a1 * t * t / 4.0) * hermite(n, std::sqrt(a1 / 2.0) * t);
      return cdouble{phi * std::exp(mu * (a2 * x * x / 4.0 + b2 * x)), 0.0};
    }
    case ModelId::Morse: {
      // table row swaps lambda1 for the native width in the power of y
      auto [a1, b1] = native_partner(m, p.lambda1, p.delta1);
      const double lam1_lit = -b1;
      const double mu1_lit = mu * (-native_b2(m));
      const double y = 2.0 * a1 * std::exp(-x);
      return std::exp((lam1_lit - mu1_lit - n) * std::log(cdouble{y, 0.0}) - y / 2.0) *
             laguerre(n, 2.0 * lam1_lit - 2.0 * n, y);
    }
    default:
      break;
  }
  // remaining families print the same expression the gauge map produces
  StructureValues sv = structure_eval(m, x);
  auto parts = closed_parts(m, p, n, x);
  return std::exp(parts.logpref + mu * sv.intW) * parts.poly;
}

}  // namespace detail

// eigenfunction of H_- itself, unnormalized: psi = e^{+mu*intW} phi
inline cdouble psi_minus(const ModelSpec& m, const PartnerParameters& p, int n, double x,
                         Interpretation interp = Interpretation::LimitConsistent) {
  normalizability_check(m);
  level_check(m, p, n);
  if (!inside_domain(m, x)) {
    std::ostringstream os;
    os << "x = " << x << " outside the open domain of " << model_id_string(m.id);
    raise(ErrorCode::OutOfDomain, os.str());
  }
  if (interp == Interpretation::AsPrinted) return detail::psi_printed(m, p, n, x);
  StructureValues sv = structure_eval(m, x);
  auto parts = detail::closed_parts(m, p, n, x);
  return std::exp(parts.logpref + m.couple.mu * sv.intW) * parts.poly;
}

// plus-sector gauged eigenfunction via the annihilation map on level n+1
inline cdouble phi_plus(const ModelSpec& m, const PartnerParameters& p, int n, double x) {
  auto sv = susy_superpotential(p, m, x);
  return phi_minus_deriv(m, p, n + 1, x) + sv.w * phi_minus(m, p, n + 1, x);
}

inline std::vector<cdouble> phase_fix(std::vector<cdouble> v) {
  std::size_t k = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > best) {
      best = std::abs(v[i]);
      k = i;
    }
  if (best == 0.0) return v;
  const cdouble ph = v[k] / std::abs(v[k]);
  for (auto& z : v) z /= ph;
  return v;
}

inline std::vector<cdouble> normalize_max_abs(std::vector<cdouble> v) {
  double best = 0.0;
  for (const auto& z : v) best = std::max(best, std::abs(z));
  if (best == 0.0) return v;
  for (auto& z : v) z /= best;
  return v;
}

inline std::vector<cdouble> psi_minus_grid(const ModelSpec& m, const PartnerParameters& p,
                                           int n, const std::vector<double>& xs,
                                           Interpretation interp =
                                               Interpretation::LimitConsistent) {
  std::vector<cdouble> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(psi_minus(m, p, n, x, interp));
  return phase_fix(std::move(out));
}

inline std::vector<cdouble> phi_minus_grid(const ModelSpec& m, const PartnerParameters& p,
                                           int n, const std::vector<double>& xs) {
  std::vector<cdouble> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(phi_minus(m, p, n, x));
  return phase_fix(std::move(out));
}

inline std::vector<cdouble> phi_plus_grid(const ModelSpec& m, const PartnerParameters& p,
                                          int n, const std::vector<double>& xs) {
  std::vector<cdouble> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(phi_plus(m, p, n, x));
  return normalize_max_abs(phase_fix(std::move(out)));
}

// pointwise multiplication by rho = e^{-mu*intW}, done in log space
inline std::vector<cdouble> phi_from_psi(const ModelSpec& m, const SwansonCouple& couple,
                                         const std::vector<cdouble>& psi,
                                         const std::vector<double>& xs) {
  if (psi.size() != xs.size())
    raise(ErrorCode::InvalidConfig, "psi and xs must have matching lengths");
  std::vector<cdouble> out(psi.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    StructureValues sv = structure_eval(m, xs[i]);
    const double g = couple.mu * sv.intW;
    if (std::abs(g) > 600.0) {
      std::ostringstream os;
      os << "gauge exponent |mu*intW| = " << std::abs(g) << " at x = " << xs[i]
         << " exceeds the overflow guard";
      raise(ErrorCode::GaugeOverflow, os.str());
    }
    out[i] = std::exp(-g) * psi[i];
  }
  return out;
}

struct WaveformSpec {
  ModelSpec model;
  PartnerParameters partner;
  int n = 0;
  Interpretation interpretation = Interpretation::LimitConsistent;
  PolynomialFamily family;
  double mu1 = 0.0, mu2 = 0.0;  // gauge constants as the tables name them
  std::string argument;         // polynomial argument map
};

inline WaveformSpec waveform_spec(const ModelSpec& m, const PartnerParameters& p, int n,
                                  Interpretation interp =
                                      Interpretation::LimitConsistent) {
  WaveformSpec w;
  w.model = m;
  w.partner = p;
  w.n = n;
  w.interpretation = interp;
  const double mu = m.couple.mu;
  auto [a1, b1] = native_partner(m, p.lambda1, p.delta1);
  const cdouble iu{0.0, 1.0};
  switch (m.id) {
    case ModelId::RosenMorseI: {
      const double c = a1 + n;
      w.family = {PolyKind::Jacobi, -c - iu * (b1 / c), -c + iu * (b1 / c)};
      w.argument = "i*cot(x)";
      w.mu1 = mu * a1;
      w.mu2 = mu * b1 / a1;
      break;
    }
    case ModelId::RosenMorseII: {
      const double c = a1 - n;
      w.family = {PolyKind::Jacobi, cdouble{c + b1 / c, 0.0}, cdouble{c - b1 / c, 0.0}};
      w.argument = "tanh(x)";
      w.mu1 = mu * a1;
      w.mu2 = mu * b1 / a1;
      break;
    }
    case ModelId::Eckart: {
      const double c = a1 + n;
      w.family = {PolyKind::Jacobi, cdouble{b1 / c - c, 0.0}, cdouble{-b1 / c - c, 0.0}};
      w.argument = "coth(x)";
      w.mu1 = mu * a1;
      w.mu2 = mu * b1 / a1;
      break;
    }
    case ModelId::ScarfI:
      w.family = {PolyKind::Jacobi, cdouble{p.lambda1 - p.delta1 - 0.5, 0.0},
                  cdouble{p.lambda1 + p.delta1 - 0.5, 0.0}};
      w.argument = "sin(x)";
      w.mu1 = mu * m.lambda2;
      w.mu2 = mu * m.delta2;
      break;
    case ModelId::ScarfII:
      w.family = {PolyKind::Jacobi, -iu * p.delta1 - p.lambda1 - 0.5,
                  iu * p.delta1 - p.lambda1 - 0.5};
      w.argument = "i*sinh(x)";
      w.mu1 = mu * m.lambda2;
      w.mu2 = mu * m.delta2;
      break;
    case ModelId::PoschlTeller:
      w.family = {PolyKind::Jacobi, cdouble{p.delta1 - p.lambda1 - 0.5, 0.0},
                  cdouble{-p.delta1 - p.lambda1 - 0.5, 0.0}};
      w.argument = "cosh(x)";
      w.mu1 = mu * m.lambda2;
      w.mu2 = mu * m.delta2;
      break;
    case ModelId::Morse:
      w.family = {PolyKind::Laguerre, cdouble{2.0 * (a1 - n), 0.0}, cdouble{}};
      w.argument = "2*b1*exp(-x)";
      w.mu1 = mu * m.lambda2;
      w.mu2 = mu * m.delta2;
      break;
    case ModelId::ShiftedOscillator:
      w.family = {PolyKind::Hermite, cdouble{}, cdouble{}};
      w.argument = "sqrt(a1/2)*(x - 2*b1/a1)";
      w.mu1 = mu * native_a2(m);
      w.mu2 = mu * native_b2(m);
      break;
  }
  return w;
}

}  // namespace swanson

#endif  // SWANSON_EIGENFUNCTIONS_HPP
