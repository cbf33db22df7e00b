#include <cmath>

#include "swanson/potentials.hpp"
#include "swanson/riccati.hpp"
#include "test_support.hpp"

using namespace swanson;

TEST_SUITE("potentials") {
  TEST_CASE("base potential worked values") {
    ModelSpec so = testref::sho_golden();
    CHECK(v_base(so, 0.0) == doctest::Approx(-1.0 / 0.6).epsilon(1e-12));
    ModelSpec rm2 = testref::ref_model(ModelId::RosenMorseII);
    // r*W(0)^2 - W'(0)/s with W(0)=0.5, W'(0)=1
    const double r = rm2.couple.r, s = rm2.couple.s;
    CHECK(v_base(rm2, 0.0) == doctest::Approx(r * 0.25 - 1.0 / s).epsilon(1e-12));
    CHECK(v_base(rm2, 0.0) == doctest::Approx(-0.83737).epsilon(1e-4));
  }

  TEST_CASE("partner pair worked values for the quadratic fixture") {
    ModelSpec so = testref::sho_golden();
    PartnerParameters p = solve_partner(so);
    CHECK(p.lambda1 == doctest::Approx(1.5634719199).epsilon(1e-9));
    PotentialPair pair = v_pair(so, p);
    CHECK(pair.v_minus(0.0) == doctest::Approx(-3.2301386).epsilon(1e-6));
    CHECK(pair.v_plus(0.0) == doctest::Approx(-0.1031947).epsilon(1e-5));
    CHECK(pair.convention_offset == doctest::Approx(-p.lambda1).epsilon(1e-10));
  }

  TEST_CASE("superpotential values") {
    ModelSpec rm2 = testref::ref_model(ModelId::RosenMorseII);
    PartnerParameters p2 = solve_partner(rm2);
    CHECK(susy_superpotential(p2, rm2, 0.0).w == doctest::Approx(0.58055).epsilon(1e-4));
    ModelSpec mo = testref::ref_model(ModelId::Morse);
    PartnerParameters pm = solve_partner(mo);
    CHECK(susy_superpotential(pm, mo, 40.0).w == doctest::Approx(3.49901).epsilon(1e-4));
  }

  TEST_CASE("the pair differs by twice the superpotential derivative") {
    std::size_t count = 0;
    const testref::RefCase* cases = testref::ref_cases(count);
    for (std::size_t i = 0; i < count; ++i) {
      ModelSpec m = testref::ref_model(cases[i].id);
      PartnerParameters p = solve_partner(m);
      PotentialPair pair = v_pair(m, p);
      auto xs = detail::constancy_sample(m, p.lambda1, p.delta1, 60);
      for (double x : xs) {
        const SuperpotentialValues sw = susy_superpotential(p, m, x);
        const double lhs = pair.v_plus(x) - pair.v_minus(x);
        CHECK_MESSAGE(std::abs(lhs - 2.0 * sw.wp) <=
                          1e-10 * std::max(1.0, std::abs(lhs)),
                      model_id_string(cases[i].id) << " at x = " << x);
      }
    }
  }

  TEST_CASE("table potentials are the base potential plus a constant") {
    struct Row {
      ModelId id;
      double conv;
    };
    const Row rows[] = {
        {ModelId::RosenMorseI, 0.0},
        {ModelId::RosenMorseII, 0.0},
        {ModelId::Eckart, 0.0},
        {ModelId::ScarfI, -12.16514313},
        {ModelId::ScarfII, 5.44568492},
        {ModelId::PoschlTeller, 1.37000523},
        {ModelId::Morse, 12.24311060},
        {ModelId::ShiftedOscillator, -1.56347192},
    };
    for (const Row& row : rows) {
      ModelSpec m = testref::ref_model(row.id);
      PartnerParameters p = solve_partner(m);
      auto xs = detail::constancy_sample(m, p.lambda1, p.delta1);
      const double co = convention_offset(m, p, xs);
      CHECK_MESSAGE(std::abs(co - row.conv) < 1e-6, model_id_string(row.id));
      PotentialPair pair = v_pair(m, p);
      CHECK(pair.convention_offset == doctest::Approx(co).epsilon(1e-10));
      // spot check the decomposition away from the sample used for the fit
      const double x = m.domain.finite() ? 0.5 * (m.domain.lo + m.domain.hi) + 0.11
                                         : (m.domain.semi_infinite() ? 1.37 : 0.41);
      CHECK(pair.v_minus(x) == doctest::Approx(v_base(m, x) + co).epsilon(1e-9));
    }
  }

  TEST_CASE("a detuned partner is caught by the constancy guard") {
    ModelSpec m = testref::ref_model(ModelId::RosenMorseII);
    PartnerParameters p = solve_partner(m);
    PartnerParameters wrong = p;
    wrong.lambda1 += 0.1;
    auto xs = detail::constancy_sample(m, wrong.lambda1, wrong.delta1);
    CHECK_RAISES(NotConstant, convention_offset(m, wrong, xs));
  }
}
