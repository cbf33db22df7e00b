#ifndef SWANSON_POTENTIALS_HPP
#define SWANSON_POTENTIALS_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "swanson/catalog.hpp"
#include "swanson/errors.hpp"

namespace swanson {

// superpotential of the partner pair and its derivative
struct SuperpotentialValues {
  double w, wp;
};

inline SuperpotentialValues susy_superpotential(const PartnerParameters& p,
                                                const ModelSpec& m, double x) {
  StructureValues v = structure_eval(m, x);
  return {p.lambda1 * v.f + p.delta1 * v.g, p.lambda1 * v.fp + p.delta1 * v.gp};
}

// gauge-transformed base potential r*W^2 - W'/s
inline double v_base(const ModelSpec& m, double x) {
  StructureValues v = structure_eval(m, x);
  return m.couple.r * v.W * v.W - v.Wp / m.couple.s;
}

namespace detail {

// shared additive constant of the tabulated partner potentials
inline double table_constant(const ModelSpec& m, double lam1, double dlt1) {
  const double r = m.couple.r;
  switch (m.case_id) {
    case CaseId::Case1:
      return r * (m.c2 * m.lambda2 * m.lambda2 + m.delta2 * m.delta2);
    case CaseId::Case2:
      return m.c1 * (lam1 * lam1 + m.lambda2 * m.lambda2 * r);
    case CaseId::Case3: {
      auto [a1, b1] = native_partner(m, lam1, dlt1);
      (void)b1;
      return a1 * a1 + native_a2(m) * native_a2(m) * r;
    }
    case CaseId::Case4:
      return -native_a2(m) / (2.0 * m.couple.s);
  }
  return 0.0;
}

inline double table_potential(const ModelSpec& m, double lam1, double dlt1, double x,
                              Sector sector) {
  const double sg = sector == Sector::Plus ? -1.0 : 1.0;  // sign of the -/+ split
  StructureValues v = structure_eval(m, x);
  const double K = table_constant(m, lam1, dlt1);
  switch (m.case_id) {
    case CaseId::Case1:
      return (lam1 * lam1 * m.c1 - sg * lam1) * v.fp + 2.0 * lam1 * dlt1 * v.f + K;
    case CaseId::Case2:
      return (lam1 * lam1 * m.c2 + dlt1 * dlt1 - sg * lam1 * m.c3) * v.g * v.g +
             (2.0 * lam1 * dlt1 - sg * dlt1 * m.c4) * v.f * v.g + K;
    case CaseId::Case3: {
      auto [a1, b1] = native_partner(m, lam1, dlt1);
      const double y = std::exp(-x);
      return b1 * b1 * y * y - b1 * (2.0 * a1 + sg) * y + K;
    }
    case CaseId::Case4: {
      auto [a1, b1] = native_partner(m, lam1, dlt1);
      const double t = x - 2.0 * b1 / a1;
      return 0.25 * a1 * a1 * t * t - sg * a1 / 2.0 + K;
    }
  }
  return 0.0;
}

// moderate interior sample for constancy checks; the residuals being probed
// are x-independent, so only numerical conditioning matters here
inline std::vector<double> constancy_sample(const ModelSpec& m, double lam1,
                                            double dlt1, int npts = 200) {
  double lo, hi;
  if (m.domain.finite()) {
    lo = m.domain.lo;
    hi = m.domain.hi;
  } else if (m.id == ModelId::Morse) {
    auto [a1, b1] = native_partner(m, lam1, dlt1);
    lo = -std::log(80.0 / (2.0 * b1));
    hi = 25.0 / std::max(0.5, a1 - 3.0);
  } else if (m.domain.semi_infinite()) {
    lo = 0.0;
    hi = 12.0;
  } else {
    lo = -12.0;
    hi = 12.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo += pad;
  hi -= pad;
  std::vector<double> xs(npts);
  for (int i = 0; i < npts; ++i)
    xs[i] = lo + (hi - lo) * double(i) / double(npts - 1);
  return xs;
}

struct MeanStd {
  double mean, stddev;
};

inline MeanStd mean_std(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= double(v.size());
  return {mean, std::sqrt(var)};
}

}  // namespace detail

struct PotentialPair {
  ModelSpec model;
  PartnerParameters partner;
  std::function<double(double)> v_minus;
  std::function<double(double)> v_plus;
  double additive_constant = 0.0;
  double convention_offset = 0.0;
};

// offset between the tabulated minus potential and v_base; must be constant
inline double convention_offset(const ModelSpec& m, const PartnerParameters& p,
                                const std::vector<double>& xs) {
  std::vector<double> diff(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    diff[i] = detail::table_potential(m, p.lambda1, p.delta1, xs[i], Sector::Minus) -
              v_base(m, xs[i]);
  auto ms = detail::mean_std(diff);
  const double scale = std::max(1.0, std::abs(ms.mean));
  if (!(ms.stddev / scale <= 1e-9))
    raise(ErrorCode::NotConstant,
          "tabulated minus potential does not differ from the base potential by a constant");
  return ms.mean;
}

inline PotentialPair v_pair(const ModelSpec& m, const PartnerParameters& p) {
  PotentialPair pp;
  pp.model = m;
  pp.partner = p;
  const double lam1 = p.lambda1, dlt1 = p.delta1;
  ModelSpec mc = m;
  pp.v_minus = [mc, lam1, dlt1](double x) {
    return detail::table_potential(mc, lam1, dlt1, x, Sector::Minus);
  };
  pp.v_plus = [mc, lam1, dlt1](double x) {
    return detail::table_potential(mc, lam1, dlt1, x, Sector::Plus);
  };
  pp.additive_constant = detail::table_constant(m, lam1, dlt1);
  pp.convention_offset =
      convention_offset(m, p, detail::constancy_sample(m, lam1, dlt1));
  return pp;
}

}  // namespace swanson

#endif  // SWANSON_POTENTIALS_HPP
