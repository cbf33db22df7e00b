#ifndef SWANSON_CATALOG_HPP
#define SWANSON_CATALOG_HPP

#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "swanson/errors.hpp"
#include "swanson/params.hpp"

namespace swanson {

enum class ModelId {
  RosenMorseI,
  RosenMorseII,
  Eckart,
  ScarfI,
  ScarfII,
  PoschlTeller,
  Morse,
  ShiftedOscillator,
};

constexpr std::array<ModelId, 8> kAllModels = {
    ModelId::RosenMorseI, ModelId::RosenMorseII, ModelId::Eckart,
    ModelId::ScarfI,      ModelId::ScarfII,      ModelId::PoschlTeller,
    ModelId::Morse,       ModelId::ShiftedOscillator,
};

// Structure classes of the shape-invariance ansatz W = lambda2*f + delta2*g:
//   Case1: g constant, f^2 = c1*f' + c2
//   Case2: f^2 = c1 + c2*g^2, f' = c3*g^2, g' = c4*f*g
//   Case3: g = 1, f' = -f
//   Case4: g = 1, f = x
enum class CaseId { Case1, Case2, Case3, Case4 };

enum class EndpointKind { FiniteSingular, FiniteRegular, Infinite };

struct Domain {
  double lo = 0.0;
  double hi = 0.0;
  EndpointKind left = EndpointKind::Infinite;
  EndpointKind right = EndpointKind::Infinite;
  bool finite() const {
    return left != EndpointKind::Infinite && right != EndpointKind::Infinite;
  }
  bool semi_infinite() const {
    return left != EndpointKind::Infinite && right == EndpointKind::Infinite;
  }
};

struct ModelSpec {
  ModelId id = ModelId::ShiftedOscillator;
  CaseId case_id = CaseId::Case4;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double lambda2 = 0.0, delta2 = 0.0;
  // native parameters as the model tables name them ("a2","b2" or "lambda2","delta2")
  std::array<std::pair<const char*, double>, 2> native{};
  Domain domain;
  SwansonCouple couple;
  double (*f)(double) = nullptr;
  double (*fp)(double) = nullptr;
  double (*g)(double) = nullptr;
  double (*gp)(double) = nullptr;
  double (*F)(double) = nullptr;  // antiderivative of f
  double (*G)(double) = nullptr;  // antiderivative of g
  double xref = 0.0;              // anchor: intW(xref) = 0
};

// Partner superpotential w = lambda1*f + delta1*g, solved by coefficient
// matching; the offset is the x-independent remainder of the matching
// relation (the factorization energy freedom).
struct PartnerParameters {
  double lambda1 = 0.0;
  double delta1 = 0.0;
  std::string branch;
  double factorization_offset = 0.0;
  // max |printed - solved| over the per-case printed closed forms;
  // NaN when the printed expression has no real value in this regime
  double printed_form_discrepancy = 0.0;
};

enum class Sector { Minus, Plus };

inline const char* model_id_string(ModelId id) {
  switch (id) {
    case ModelId::RosenMorseI:       return "rosen-morse-1";
    case ModelId::RosenMorseII:      return "rosen-morse-2";
    case ModelId::Eckart:            return "eckart";
    case ModelId::ScarfI:            return "scarf-1";
    case ModelId::ScarfII:           return "scarf-2";
    case ModelId::PoschlTeller:      return "poschl-teller";
    case ModelId::Morse:             return "morse";
    case ModelId::ShiftedOscillator: return "shifted-oscillator";
  }
  return "?";
}

inline ModelId model_id_from_string(const std::string& s) {
  for (ModelId id : kAllModels)
    if (s == model_id_string(id)) return id;
  raise(ErrorCode::InvalidConfig, "unknown model id '" + s + "'");
}

namespace detail {

inline double require_param(const std::map<std::string, double>& p, const char* name,
                            const char* model) {
  auto it = p.find(name);
  if (it == p.end())
    raise(ErrorCode::UnknownParameter,
          std::string(model) + " needs parameter '" + name + "'");
  if (!std::isfinite(it->second))
    raise(ErrorCode::InvalidConfig, std::string("parameter '") + name + "' must be finite");
  return it->second;
}

inline void reject_strays(const std::map<std::string, double>& p, const char* n1,
                          const char* n2, const char* model) {
  for (const auto& kv : p)
    if (kv.first != n1 && kv.first != n2)
      raise(ErrorCode::UnknownParameter,
            std::string(model) + " does not take parameter '" + kv.first + "'");
}

}  // namespace detail

inline ModelSpec instantiate(ModelId id, const std::map<std::string, double>& params,
                             const SwansonCouple& couple) {
  const char* name = model_id_string(id);
  ModelSpec m;
  m.id = id;
  m.couple = couple;
  const double inf = std::numeric_limits<double>::infinity();
  auto take_ab = [&]() {
    detail::reject_strays(params, "a2", "b2", name);
    double a2 = detail::require_param(params, "a2", name);
    double b2 = detail::require_param(params, "b2", name);
    m.native = {{{"a2", a2}, {"b2", b2}}};
    return std::pair<double, double>(a2, b2);
  };
  auto take_ld = [&]() {
    detail::reject_strays(params, "lambda2", "delta2", name);
    double l = detail::require_param(params, "lambda2", name);
    double d = detail::require_param(params, "delta2", name);
    m.native = {{{"lambda2", l}, {"delta2", d}}};
    return std::pair<double, double>(l, d);
  };
  switch (id) {
    case ModelId::RosenMorseI: {
      auto [a2, b2] = take_ab();
      if (!(a2 > 0.0) || !(b2 > 0.0))
        raise(ErrorCode::ConstraintViolated, "rosen-morse-1 needs a2 > 0 and b2 > 0");
      m.case_id = CaseId::Case1;
      m.c1 = -1.0; m.c2 = -1.0;
      m.lambda2 = -a2; m.delta2 = -b2 / a2;
      m.domain = {0.0, M_PI, EndpointKind::FiniteSingular, EndpointKind::FiniteSingular};
      m.f = +[](double x) { return 1.0 / std::tan(x); };
      m.fp = +[](double x) { double s = std::sin(x); return -1.0 / (s * s); };
      m.g = +[](double) { return 1.0; };
      m.gp = +[](double) { return 0.0; };
      m.F = +[](double x) { return std::log(std::sin(x)); };
      m.G = +[](double x) { return x; };
      m.xref = M_PI / 2.0;
      break;
    }
    case ModelId::RosenMorseII: {
      auto [a2, b2] = take_ab();
      if (!(a2 > 0.0) || !(b2 > 0.0))
        raise(ErrorCode::ConstraintViolated, "rosen-morse-2 needs a2 > 0 and b2 > 0");
      if (!(b2 < a2 * a2))
        raise(ErrorCode::ConstraintViolated, "rosen-morse-2 needs b2 < a2^2");
      m.case_id = CaseId::Case1;
      m.c1 = -1.0; m.c2 = 1.0;
      m.lambda2 = a2; m.delta2 = b2 / a2;
      m.domain = {-inf, inf, EndpointKind::Infinite, EndpointKind::Infinite};
      m.f = +[](double x) { return std::tanh(x); };
      m.fp = +[](double x) { double c = std::cosh(x); return 1.0 / (c * c); };
      m.g = +[](double) { return 1.0; };
      m.gp = +[](double) { return 0.0; };
      m.F = +[](double x) { return std::abs(x) + std::log1p(std::exp(-2.0 * std::abs(x))) - std::log(2.0); };
      m.G = +[](double x) { return x; };
      m.xref = 0.0;
      break;
    }
    case ModelId::Eckart: {
      auto [a2, b2] = take_ab();
      if (!(a2 > 0.0) || !(b2 > 0.0))
        raise(ErrorCode::ConstraintViolated, "eckart needs a2 > 0 and b2 > 0");
      if (!(b2 > a2 * a2))
        raise(ErrorCode::ConstraintViolated, "eckart needs b2 > a2^2");
      m.case_id = CaseId::Case1;
      m.c1 = -1.0; m.c2 = 1.0;
      m.lambda2 = -a2; m.delta2 = b2 / a2;
      m.domain = {0.0, inf, EndpointKind::FiniteSingular, EndpointKind::Infinite};
      m.f = +[](double x) { return 1.0 / std::tanh(x); };
      m.fp = +[](double x) { double s = std::sinh(x); return -1.0 / (s * s); };
      m.g = +[](double) { return 1.0; };
      m.gp = +[](double) { return 0.0; };
      m.F = +[](double x) { return std::log(std::sinh(x)); };
      m.G = +[](double x) { return x; };
      m.xref = 1.0;
      break;
    }
    case ModelId::ScarfI: {
      auto [l2, d2] = take_ld();
      m.case_id = CaseId::Case2;
      m.c1 = -1.0; m.c2 = 1.0; m.c3 = 1.0; m.c4 = 1.0;
      m.lambda2 = l2; m.delta2 = d2;
      m.domain = {-M_PI / 2.0, M_PI / 2.0, EndpointKind::FiniteSingular,
                  EndpointKind::FiniteSingular};
      m.f = +[](double x) { return std::tan(x); };
      m.fp = +[](double x) { double c = std::cos(x); return 1.0 / (c * c); };
      m.g = +[](double x) { return -1.0 / std::cos(x); };
      m.gp = +[](double x) { return -std::tan(x) / std::cos(x); };
      m.F = +[](double x) { return -std::log(std::cos(x)); };
      m.G = +[](double x) { return -std::log(1.0 / std::cos(x) + std::tan(x)); };
      m.xref = 0.0;
      break;
    }
    case ModelId::ScarfII: {
      auto [l2, d2] = take_ld();
      m.case_id = CaseId::Case2;
      m.c1 = 1.0; m.c2 = -1.0; m.c3 = 1.0; m.c4 = -1.0;
      m.lambda2 = l2; m.delta2 = d2;
      m.domain = {-inf, inf, EndpointKind::Infinite, EndpointKind::Infinite};
      m.f = +[](double x) { return std::tanh(x); };
      m.fp = +[](double x) { double c = std::cosh(x); return 1.0 / (c * c); };
      m.g = +[](double x) { return 1.0 / std::cosh(x); };
      m.gp = +[](double x) { return -std::tanh(x) / std::cosh(x); };
      m.F = +[](double x) { return std::abs(x) + std::log1p(std::exp(-2.0 * std::abs(x))) - std::log(2.0); };
      m.G = +[](double x) { return std::atan(std::sinh(x)); };
      m.xref = 0.0;
      break;
    }
    case ModelId::PoschlTeller: {
      auto [l2, d2] = take_ld();
      if (!(l2 < d2))
        raise(ErrorCode::ConstraintViolated, "poschl-teller needs lambda2 < delta2");
      m.case_id = CaseId::Case2;
      m.c1 = 1.0; m.c2 = 1.0; m.c3 = -1.0; m.c4 = -1.0;
      m.lambda2 = l2; m.delta2 = d2;
      m.domain = {0.0, inf, EndpointKind::FiniteSingular, EndpointKind::Infinite};
      m.f = +[](double x) { return 1.0 / std::tanh(x); };
      m.fp = +[](double x) { double s = std::sinh(x); return -1.0 / (s * s); };
      m.g = +[](double x) { return -1.0 / std::sinh(x); };
      m.gp = +[](double x) { double s = std::sinh(x); return std::cosh(x) / (s * s); };
      m.F = +[](double x) { return std::log(std::sinh(x)); };
      m.G = +[](double x) { return -std::log(std::tanh(x / 2.0)); };
      m.xref = 1.0;
      break;
    }
    case ModelId::Morse: {
      auto [a2, b2] = take_ab();
      if (!(a2 > 0.0) || !(b2 > 0.0))
        raise(ErrorCode::ConstraintViolated, "morse needs a2 > 0 and b2 > 0");
      m.case_id = CaseId::Case3;
      m.lambda2 = -b2; m.delta2 = a2;
      m.domain = {-inf, inf, EndpointKind::Infinite, EndpointKind::Infinite};
      m.f = +[](double x) { return std::exp(-x); };
      m.fp = +[](double x) { return -std::exp(-x); };
      m.g = +[](double) { return 1.0; };
      m.gp = +[](double) { return 0.0; };
      m.F = +[](double x) { return -std::exp(-x); };
      m.G = +[](double x) { return x; };
      m.xref = 0.0;
      break;
    }
    case ModelId::ShiftedOscillator: {
      auto [a2, b2] = take_ab();
      if (!(a2 > 0.0))
        raise(ErrorCode::ConstraintViolated, "shifted-oscillator needs a2 > 0");
      m.case_id = CaseId::Case4;
      m.lambda2 = a2 / 2.0; m.delta2 = -b2;
      m.domain = {-inf, inf, EndpointKind::Infinite, EndpointKind::Infinite};
      m.f = +[](double x) { return x; };
      m.fp = +[](double) { return 1.0; };
      m.g = +[](double) { return 1.0; };
      m.gp = +[](double) { return 0.0; };
      m.F = +[](double x) { return x * x / 2.0; };
      m.G = +[](double x) { return x; };
      m.xref = 0.0;
      break;
    }
  }
  return m;
}

struct StructureValues {
  double f, g, fp, gp, W, Wp, intW;
};

inline bool inside_domain(const ModelSpec& m, double x) {
  if (m.domain.left != EndpointKind::Infinite && !(x > m.domain.lo)) return false;
  if (m.domain.right != EndpointKind::Infinite && !(x < m.domain.hi)) return false;
  return std::isfinite(x);
}

inline StructureValues structure_eval(const ModelSpec& m, double x) {
  if (!inside_domain(m, x)) {
    std::ostringstream os;
    os << "x = " << x << " outside the open domain of " << model_id_string(m.id);
    raise(ErrorCode::OutOfDomain, os.str());
  }
  StructureValues v;
  v.f = m.f(x);
  v.g = m.g(x);
  v.fp = m.fp(x);
  v.gp = m.gp(x);
  v.W = m.lambda2 * v.f + m.delta2 * v.g;
  v.Wp = m.lambda2 * v.fp + m.delta2 * v.gp;
  v.intW = m.lambda2 * (m.F(x) - m.F(m.xref)) + m.delta2 * (m.G(x) - m.G(m.xref));
  return v;
}

inline double case_structure_check(const ModelSpec& m, const std::vector<double>& xs) {
  double worst = 0.0;
  auto rel = [](double resid, double scale) {
    return std::abs(resid) / std::max(1.0, std::abs(scale));
  };
  for (double x : xs) {
    StructureValues v = structure_eval(m, x);
    switch (m.case_id) {
      case CaseId::Case1:
        worst = std::max(worst, rel(v.f * v.f - m.c1 * v.fp - m.c2, v.f * v.f));
        worst = std::max(worst, std::abs(v.g - 1.0));
        worst = std::max(worst, std::abs(v.gp));
        break;
      case CaseId::Case2:
        worst = std::max(worst, rel(v.f * v.f - m.c1 - m.c2 * v.g * v.g, v.f * v.f));
        worst = std::max(worst, rel(v.fp - m.c3 * v.g * v.g, v.fp));
        worst = std::max(worst, rel(v.gp - m.c4 * v.f * v.g, v.gp));
        break;
      case CaseId::Case3:
        worst = std::max(worst, rel(v.fp + v.f, v.f));
        worst = std::max(worst, std::abs(v.g - 1.0));
        break;
      case CaseId::Case4:
        worst = std::max(worst, rel(v.f - x, x));
        worst = std::max(worst, std::abs(v.fp - 1.0));
        worst = std::max(worst, std::abs(v.g - 1.0));
        break;
    }
  }
  return worst;
}

// map (lambda1, delta1) back to the model's native (a1, b1) convention
inline std::pair<double, double> native_partner(const ModelSpec& m, double lam1,
                                                double dlt1) {
  switch (m.id) {
    case ModelId::RosenMorseI:       return {-lam1, dlt1 * lam1};
    case ModelId::RosenMorseII:      return {lam1, dlt1 * lam1};
    case ModelId::Eckart:            return {-lam1, -dlt1 * lam1};
    case ModelId::Morse:             return {dlt1, -lam1};
    case ModelId::ShiftedOscillator: return {2.0 * lam1, -dlt1};
    default:                         return {lam1, dlt1};  // case 2: native is (lambda, delta)
  }
}

inline double native_a2(const ModelSpec& m) { return m.native[0].second; }
inline double native_b2(const ModelSpec& m) { return m.native[1].second; }

// largest admissible level index; unbounded families report the hard cap
inline int bound_max_index(const ModelSpec& m, double lam1, double dlt1,
                           int hard_cap = 64) {
  auto [a1, b1] = native_partner(m, lam1, dlt1);
  switch (m.id) {
    case ModelId::RosenMorseI:
    case ModelId::ScarfI:
    case ModelId::ShiftedOscillator:
      return hard_cap;
    default: break;
  }
  auto ok = [&](int n) {
    switch (m.id) {
      case ModelId::RosenMorseII: return n < a1 && (a1 - n) * (a1 - n) > b1;
      case ModelId::Eckart:       return (a1 + n) * (a1 + n) < b1;
      case ModelId::Morse:        return n < a1;
      case ModelId::ScarfII:
      case ModelId::PoschlTeller: return double(n) < lam1;
      default:                    return false;
    }
  };
  int n = 0;
  while (n < hard_cap && ok(n)) ++n;
  return n - 1;
}

inline int bound_max_index(const ModelSpec& m, const PartnerParameters& p,
                           int hard_cap = 64) {
  return bound_max_index(m, p.lambda1, p.delta1, hard_cap);
}

inline double closed_spectrum_minus(const ModelSpec& m, double lam1, double dlt1, int n) {
  const double r = m.couple.r, s = m.couple.s;
  auto [a1, b1] = native_partner(m, lam1, dlt1);
  const double a2 = m.native[0].second, b2 = m.native[1].second;
  switch (m.id) {
    case ModelId::RosenMorseI:
      return -(a2 * a2 - b2 * b2 / (a2 * a2)) * r + (a1 + n) * (a1 + n) -
             b1 * b1 / ((a1 + n) * (a1 + n));
    case ModelId::RosenMorseII:
      return (a2 * a2 + b2 * b2 / (a2 * a2)) * r - (a1 - n) * (a1 - n) -
             b1 * b1 / ((a1 - n) * (a1 - n));
    case ModelId::Eckart:
      return (a2 * a2 + b2 * b2 / (a2 * a2)) * r - (a1 + n) * (a1 + n) -
             b1 * b1 / ((a1 + n) * (a1 + n));
    case ModelId::ScarfI:
      return -m.lambda2 * m.lambda2 * r - lam1 * lam1 + (lam1 + n) * (lam1 + n);
    case ModelId::ScarfII:
    case ModelId::PoschlTeller:
      return m.lambda2 * m.lambda2 * r + lam1 * lam1 - (lam1 - n) * (lam1 - n);
    case ModelId::Morse:
      return a1 * a1 - (a1 - n) * (a1 - n) + a2 * a2 * r;
    case ModelId::ShiftedOscillator:
      return a1 * n - a2 / (2.0 * s);
  }
  return 0.0;
}

inline double closed_spectrum(const ModelSpec& m, const PartnerParameters& p, int n,
                              Sector sector) {
  if (n < 0) raise(ErrorCode::InvalidConfig, "level index must be nonnegative");
  const int shift = sector == Sector::Plus ? 1 : 0;
  const int bm = bound_max_index(m, p);
  if (n + shift > bm) {
    std::ostringstream os;
    os << "level " << n << (sector == Sector::Plus ? " (plus sector)" : "")
       << " beyond the " << (bm + 1) << " bound state(s) of " << model_id_string(m.id);
    raise(ErrorCode::BeyondBoundStates, os.str());
  }
  return closed_spectrum_minus(m, p.lambda1, p.delta1, n + shift);
}

// report-only constants of the expanded base potential W^2 - W' for case-2
// models, as the model tables display them
inline std::pair<double, double> display_constants(const ModelSpec& m) {
  const double l2 = m.lambda2, d2 = m.delta2;
  return {l2 * l2 * m.c2 + d2 * d2 - l2 * m.c3, d2 * (2.0 * l2 - m.c4)};
}

}  // namespace swanson

#endif  // SWANSON_CATALOG_HPP
