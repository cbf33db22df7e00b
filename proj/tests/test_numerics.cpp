#include <cmath>

#include "swanson/numerics.hpp"
#include "swanson/riccati.hpp"
#include "test_support.hpp"

using namespace swanson;

namespace {

GridOperator wrap(Eigen::MatrixXd M, bool symmetric) {
  GridOperator op;
  const int n = int(M.rows());
  op.grid = detail::make_grid(0.0, 1.0, n, Domain{0.0, 1.0, EndpointKind::FiniteRegular,
                                          EndpointKind::FiniteRegular});
  op.matrix = std::move(M);
  op.symmetric = symmetric;
  op.tag = OperatorTag::Custom;
  return op;
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("grid layout on a finite box") {
    ModelSpec rm1 = testref::ref_model(ModelId::RosenMorseI);
    Grid g = build_grid(rm1, 1000, std::nullopt, nullptr, 3);
    CHECK(g.N == 1000);
    CHECK(g.h == doctest::Approx(M_PI / 1001.0).epsilon(1e-14));
    CHECK(g.x.front() == doctest::Approx(g.h).epsilon(1e-13));
    CHECK(g.x.back() == doctest::Approx(M_PI - g.h).epsilon(1e-12));
    CHECK_RAISES(InvalidConfig, build_grid(rm1, 8, std::nullopt, nullptr, 3));
    CHECK_RAISES(InvalidConfig,
                 build_grid(rm1, 100, std::make_pair(2.0, 1.0), nullptr, 3));
  }

  TEST_CASE("window convergence for unbounded models") {
    ModelSpec rm2 = testref::ref_model(ModelId::RosenMorseII);
    PartnerParameters p2 = solve_partner(rm2);
    Grid g2 = build_grid(rm2, 64, std::nullopt, &p2, 3);
    CHECK(g2.x1 == doctest::Approx(48.0));
    CHECK(g2.x0 == doctest::Approx(-48.0));
    ModelSpec sc = testref::ref_model(ModelId::ScarfII);
    PartnerParameters psc = solve_partner(sc);
    Grid gsc = build_grid(sc, 64, std::nullopt, &psc, 3);
    CHECK(gsc.x1 == doctest::Approx(96.0));
    ModelSpec so = testref::ref_model(ModelId::ShiftedOscillator);
    PartnerParameters pso = solve_partner(so);
    Grid gso = build_grid(so, 64, std::nullopt, &pso, 3);
    CHECK(gso.x1 == doctest::Approx(12.0));
    ModelSpec ek = testref::ref_model(ModelId::Eckart);
    PartnerParameters pek = solve_partner(ek);
    Grid gek = build_grid(ek, 64, std::nullopt, &pek, 3);
    CHECK(gek.x0 == doctest::Approx(0.0));
    CHECK(gek.x1 == doctest::Approx(12.0));
    ModelSpec mo = testref::ref_model(ModelId::Morse);
    PartnerParameters pmo = solve_partner(mo);
    Grid gmo = build_grid(mo, 64, std::nullopt, &pmo, 3);
    CHECK(gmo.x0 == doctest::Approx(-std::log(80.0 / (2.0 * 1.1646464631))).epsilon(1e-6));
    CHECK(gmo.x1 == doctest::Approx(25.0 / 0.5).epsilon(1e-6));
  }

  TEST_CASE("box eigenvalues converge at second order") {
    ModelSpec rm1 = testref::ref_model(ModelId::RosenMorseI);
    Grid g = build_grid(rm1, 2000, std::nullopt, nullptr, 3);
    auto zero = [](double) { return 0.0; };
    EigResult eig = eig_symmetric(discretize_hermitian(zero, g), 3, false);
    const double expect[3] = {1.0, 4.0, 9.0};
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(eig.values[i].real() - expect[i]) <= 5e-5 * expect[i]);
  }

  TEST_CASE("harmonic levels on a wide window") {
    ModelSpec so = testref::sho_golden();
    Grid g = build_grid(so, 2000, std::make_pair(-12.0, 12.0), nullptr, 3);
    auto V = [](double x) { return x * x; };
    EigResult eig = eig_symmetric(discretize_hermitian(V, g), 5, false);
    for (int i = 0; i < 5; ++i)
      CHECK(std::abs(eig.values[i].real() - (2.0 * i + 1.0)) <= 1e-4 * (2.0 * i + 1.0));
  }

  TEST_CASE("fourth order stencil tightens the box ground state") {
    ModelSpec rm1 = testref::ref_model(ModelId::RosenMorseI);
    Grid g = build_grid(rm1, 200, std::nullopt, nullptr, 3);
    auto zero = [](double) { return 0.0; };
    EigResult e2 = eig_symmetric(discretize_hermitian(zero, g, false), 1, false);
    EigResult e4 = eig_symmetric(discretize_hermitian(zero, g, true), 1, false);
    const double err2 = std::abs(e2.values[0].real() - 1.0);
    const double err4 = std::abs(e4.values[0].real() - 1.0);
    CHECK(err4 < 1e-6);
    CHECK(err4 < 0.05 * err2);
  }

  TEST_CASE("non-finite potential is rejected") {
    ModelSpec rm1 = testref::ref_model(ModelId::RosenMorseI);
    Grid g = build_grid(rm1, 64, std::nullopt, nullptr, 3);
    auto bad = [&](double x) { return x > 1.5 && x < 1.6 ? std::nan("") : 0.0; };
    CHECK_RAISES(NonFiniteValue, discretize_hermitian(bad, g));
  }

  TEST_CASE("hermitian limit collapses the full operator onto the gauged one") {
    ModelSpec m = instantiate(ModelId::ScarfII, {{"lambda2", 2.0}, {"delta2", 1.0}},
                              hermitian_limit());
    PartnerParameters p = solve_partner(m);
    Grid g = build_grid(m, 128, std::make_pair(-8.0, 8.0), &p, 3);
    PotentialPair pair = v_pair(m, p);
    Eigen::MatrixXd full =
        discretize_swanson(m, pair.v_minus, g, OperatorTag::SwansonHMinus).matrix;
    Eigen::MatrixXd gauged = discretize_hermitian(pair.v_minus, g).matrix;
    CHECK((full - gauged).cwiseAbs().maxCoeff() <= 1e-12 * gauged.cwiseAbs().maxCoeff());
  }

  TEST_CASE("first order factors and the sign convention switch") {
    ModelSpec sc = testref::ref_model(ModelId::ScarfII);
    PartnerParameters p = solve_partner(sc);
    Grid g = build_grid(sc, 64, std::make_pair(-6.0, 6.0), &p, 3);
    Eigen::MatrixXd dm = first_order_operator(sc, p, FirstOrderKind::DMinus, g).matrix;
    Eigen::MatrixXd dm_neg =
        first_order_operator(sc, p, FirstOrderKind::DMinus, g, true).matrix;
    CHECK((dm + dm_neg).cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd at = first_order_operator(sc, p, FirstOrderKind::Atilde, g).matrix;
    Eigen::MatrixXd atd =
        first_order_operator(sc, p, FirstOrderKind::AtildeDagger, g).matrix;
    // Atilde + AtildeDagger = 2 diag(w)
    Eigen::MatrixXd sum = at + atd;
    for (int i = 0; i < g.N; ++i)
      CHECK(sum(i, i) ==
            doctest::Approx(2.0 * susy_superpotential(p, sc, g.x[i]).w).epsilon(1e-12));
    sum.diagonal().setZero();
    CHECK(sum.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("gauge diagonal worked value") {
    ModelSpec so = testref::sho_golden();
    Grid g = build_grid(so, 23, std::make_pair(-12.0, 12.0), nullptr, 3);
    CHECK(g.x[14] == doctest::Approx(3.0).epsilon(1e-13));
    GridOperator rho = gauge_diagonal(so, g, 1);
    CHECK(rho.matrix(14, 14) == doctest::Approx(std::exp(1.5)).epsilon(1e-12));
    GridOperator rho_inv = gauge_diagonal(so, g, -1);
    CHECK(rho.matrix(14, 14) * rho_inv.matrix(14, 14) == doctest::Approx(1.0).epsilon(1e-13));
    GridOperator eta = gauge_diagonal(so, g, 2);
    CHECK(eta.matrix(14, 14) == doctest::Approx(std::exp(3.0)).epsilon(1e-12));
  }

  TEST_CASE("gauge overflow guard") {
    ModelSpec mo = testref::ref_model(ModelId::Morse);
    Grid g = detail::make_grid(3000.0, 4200.0, 64, mo.domain);
    CHECK_RAISES(GaugeOverflow, gauge_diagonal(mo, g, 2));
  }

  TEST_CASE("general eigensolver orders complex pairs deterministically") {
    Eigen::MatrixXd M(2, 2);
    M << 0.0, 1.0, -1.0, 0.0;
    EigResult eig = eig_general(wrap(M, false), 2);
    CHECK(eig.values[0].real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.values[0].imag() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eig.values[1].imag() == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("size guard on the dense general path") {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(1601, 1601);
    CHECK_RAISES(SizeGuard, eig_general(wrap(M, false), 2));
  }

  TEST_CASE("symmetry guard and noise tolerance") {
    Eigen::MatrixXd M(3, 3);
    M << 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0;
    CHECK_RAISES(NotSymmetric, eig_symmetric(wrap(M, true), 1));
    // noise far below the guard threshold is symmetrized away
    ModelSpec rm1 = testref::ref_model(ModelId::RosenMorseI);
    Grid g = build_grid(rm1, 128, std::nullopt, nullptr, 3);
    auto zero = [](double) { return 0.0; };
    GridOperator clean = discretize_hermitian(zero, g);
    GridOperator noisy = clean;
    noisy.matrix(0, 1) += 1e-14;
    EigResult a = eig_symmetric(clean, 2, false);
    EigResult b = eig_symmetric(noisy, 2, false);
    CHECK(std::abs(a.values[0].real() - b.values[0].real()) < 1e-10);
  }

  TEST_CASE("symmetric and general paths agree on a gauged operator") {
    ModelSpec so = testref::ref_model(ModelId::ShiftedOscillator);
    PartnerParameters p = solve_partner(so);
    Grid g = build_grid(so, 400, std::nullopt, &p, 3);
    PotentialPair pair = v_pair(so, p);
    GridOperator hm = discretize_hermitian(pair.v_minus, g);
    EigResult es = eig_symmetric(hm, 4, false);
    GridOperator hg = hm;
    hg.symmetric = false;
    EigResult eg = eig_general(hg, 4, false);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(es.values[i].real() - eg.values[i].real()) <=
            1e-9 * std::max(1.0, std::abs(es.values[i].real())));
      CHECK(eg.values[i].imag() == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  TEST_CASE("tridiagonal fast path returns usable eigenvectors") {
    ModelSpec rm1 = testref::ref_model(ModelId::RosenMorseI);
    Grid g = build_grid(rm1, 500, std::nullopt, nullptr, 3);
    auto zero = [](double) { return 0.0; };
    EigResult eig = eig_symmetric(discretize_hermitian(zero, g), 2, true);
    REQUIRE(eig.vectors.cols() >= 2);
    double worst = 0.0;
    double scale = 0.0;
    for (int i = 0; i < g.N; ++i) scale = std::max(scale, std::abs(eig.vectors(i, 0)));
    for (int i = 0; i < g.N; ++i) {
      const double expect = std::sin(g.x[i]) / 1.0;
      const double got = eig.vectors(i, 0).real() / scale *
                         (std::sin(g.x[g.N / 2]) /
                          (eig.vectors(g.N / 2, 0).real() / scale));
      worst = std::max(worst, std::abs(got - expect));
    }
    CHECK(worst < 1e-4);
    CHECK(eig.residuals[0] <= 1e-8 * (2.0 / (g.h * g.h) + 1.0));
  }

  TEST_CASE("similarity transform relates the two operator forms at second order") {
    ModelSpec so = testref::ref_model(ModelId::ShiftedOscillator);
    PartnerParameters p = solve_partner(so);
    PotentialPair pair = v_pair(so, p);
    auto defect = [&](int N) {
      Grid g = build_grid(so, N, std::make_pair(-10.0, 10.0), &p, 3);
      Eigen::MatrixXd Hm =
          discretize_swanson(so, pair.v_minus, g, OperatorTag::SwansonHMinus).matrix;
      Eigen::MatrixXd hm = discretize_hermitian(pair.v_minus, g).matrix;
      Eigen::VectorXd rho = gauge_diagonal(so, g, 1).matrix.diagonal();
      Eigen::MatrixXd lhs = rho.asDiagonal() * Hm * rho.cwiseInverse().asDiagonal();
      Eigen::MatrixXd rhs = so.couple.s * hm;
      return (lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
    };
    const double d500 = defect(500);
    const double d1000 = defect(1000);
    CHECK(d500 < 5e-2);
    CHECK(d1000 < 0.45 * d500);
  }
}
