#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sfc/operator.hpp"

using namespace sfc;

namespace {

double uniform_pm1(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1p-53 * 2.0 - 1.0;
}

Eigen::MatrixXd random_matrix(int r, int c, std::mt19937_64& gen) {
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = uniform_pm1(gen);
  return m;
}

ParavectorOperator random_operator(const Algebra& alg, int d,
                                   std::mt19937_64& gen) {
  std::vector<Eigen::MatrixXd> comps;
  for (int c = 0; c < alg.point_dim(); ++c)
    comps.push_back(random_matrix(d, d, gen));
  return ParavectorOperator(alg, std::move(comps));
}

Paravector random_point(const Algebra& alg, std::mt19937_64& gen) {
  Eigen::VectorXd p(alg.point_dim());
  for (int i = 0; i < alg.point_dim(); ++i) p[i] = uniform_pm1(gen);
  return Paravector(alg, std::move(p));
}

// A scalar comfortably outside the S-spectrum: its slice distance to the
// disk of radius operator_norm_bound(T) is at least 0.1.
Paravector safe_scalar(const ParavectorOperator& T, std::mt19937_64& gen) {
  const Algebra& alg = T.algebra();
  const double bound = operator_norm_bound(T);
  Eigen::VectorXd dir(alg.point_dim() - 1);
  for (int i = 0; i < dir.size(); ++i) dir[i] = uniform_pm1(gen);
  ImaginaryUnit I = ImaginaryUnit::normalized(alg, dir);
  const double u = (bound + 0.5 + uniform_pm1(gen) * 0.4) *
                   (uniform_pm1(gen) > 0 ? 1.0 : -1.0);
  const double v = 0.5 * (uniform_pm1(gen) + 1.0);
  return slice_point(u, v, I);
}

// Direct action of the tuple on a module vector in basis-major layout,
// written against the algebra table instead of the Kronecker lift.
Eigen::VectorXd direct_apply(const ParavectorOperator& T,
                             const Eigen::VectorXd& v) {
  const Algebra& alg = T.algebra();
  const int d = T.block_dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int c = 0; c < alg.point_dim(); ++c) {
    const int pc = alg.point_position(c);
    for (int b = 0; b < alg.dim(); ++b) {
      const int pos = alg.product_position(pc, b);
      const double sign = alg.product_sign(pc, b);
      out.segment(pos * d, d) += sign * (T.component(c) * v.segment(b * d, d));
    }
  }
  return out;
}

// Direct left multiplication of a module vector by a scalar.
Eigen::VectorXd direct_scalar_apply(const Multivector& a,
                                    const Eigen::VectorXd& v, int d) {
  const Algebra& alg = a.algebra();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int i = 0; i < alg.dim(); ++i) {
    if (a.coeff(i) == 0.0) continue;
    for (int b = 0; b < alg.dim(); ++b) {
      const int pos = alg.product_position(i, b);
      out.segment(pos * d, d) +=
          alg.product_sign(i, b) * a.coeff(i) * v.segment(b * d, d);
    }
  }
  return out;
}

Multivector random_mv(const Algebra& alg, std::mt19937_64& gen) {
  Eigen::VectorXd c(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) c[i] = uniform_pm1(gen);
  return Multivector(alg, std::move(c));
}

}  // namespace

TEST_CASE("rep_matrix agrees with the direct table action") {
  std::mt19937_64 gen(301);
  std::vector<Algebra> algebras = {Algebra::clifford(2), Algebra::clifford(3),
                                   Algebra::quaternions()};
  for (const Algebra& alg : algebras) {
    for (int d : {1, 3}) {
      ParavectorOperator T = random_operator(alg, d, gen);
      OperatorMatrix r = rep_matrix(T);
      for (int t = 0; t < 10; ++t) {
        Eigen::VectorXd v = random_matrix(alg.dim() * d, 1, gen);
        CHECK((r.matrix() * v - direct_apply(T, v)).norm() <= 1e-13);
      }
    }
  }
}

TEST_CASE("rep_matrix of the single-generator shift") {
  Algebra alg = Algebra::clifford(1);
  std::vector<Eigen::MatrixXd> comps(2, Eigen::MatrixXd::Zero(1, 1));
  comps[1](0, 0) = 1.0;
  OperatorMatrix r = rep_matrix(ParavectorOperator(alg, comps));
  Eigen::MatrixXd want(2, 2);
  want << 0.0, -1.0, 1.0, 0.0;
  CHECK((r.matrix() - want).norm() == 0.0);
}

TEST_CASE("rep commutes with every right scalar action") {
  std::mt19937_64 gen(302);
  Algebra alg = Algebra::clifford(3);
  ParavectorOperator T = random_operator(alg, 2, gen);
  OperatorMatrix r = rep_matrix(T);
  for (int t = 0; t < 20; ++t) {
    OperatorMatrix ra = right_action_matrix(random_mv(alg, gen), 2);
    CHECK((r * ra - ra * r).matrix().norm() <= 1e-12);
  }
}

TEST_CASE("scalar composition sides") {
  std::mt19937_64 gen(303);
  Algebra alg = Algebra::clifford(2);
  const int d = 3;
  ParavectorOperator T = random_operator(alg, d, gen);
  OperatorMatrix x = rep_matrix(T);
  for (int t = 0; t < 10; ++t) {
    Multivector a = random_mv(alg, gen);
    Eigen::VectorXd v = random_matrix(alg.dim() * d, 1, gen);
    // (aX)(v) = a X(v).
    Eigen::VectorXd lhs = scalar_compose(x, a, Side::left).matrix() * v;
    Eigen::VectorXd rhs = direct_scalar_apply(a, x.matrix() * v, d);
    CHECK((lhs - rhs).norm() <= 1e-12);
    // (Xa)(v) = X(a v).
    lhs = scalar_compose(x, a, Side::right).matrix() * v;
    rhs = x.matrix() * direct_scalar_apply(a, v, d);
    CHECK((lhs - rhs).norm() <= 1e-12);
  }
}

TEST_CASE("pseudo resolvent of the zero tuple") {
  Algebra alg = Algebra::clifford(2);
  std::vector<Eigen::MatrixXd> comps(3, Eigen::MatrixXd::Zero(2, 2));
  ParavectorOperator T(alg, comps);
  PseudoResolvent q = pseudo_resolvent(T, Paravector::real(alg, 2.0));
  // (0 - 0 + 4)^{-1} = I/4.
  CHECK((q.value.matrix() - 0.25 * Eigen::MatrixXd::Identity(8, 8)).norm() <=
        1e-15);
}

TEST_CASE("pseudo resolvent inverts the characteristic operator") {
  std::mt19937_64 gen(304);
  for (const Algebra& alg : {Algebra::clifford(2), Algebra::quaternions()}) {
    ParavectorOperator T = random_operator(alg, 3, gen);
    Paravector s = safe_scalar(T, gen);
    PseudoResolvent q = pseudo_resolvent(T, s);
    const OperatorMatrix rm = rep_matrix(T);
    const Eigen::MatrixXd& r = rm.matrix();
    const int sz = static_cast<int>(r.rows());
    Eigen::MatrixXd a = r * r - 2.0 * s.real_part() * r +
                        s.squared_norm() * Eigen::MatrixXd::Identity(sz, sz);
    CHECK((a * q.value.matrix() - Eigen::MatrixXd::Identity(sz, sz)).norm() <=
          1e-12 * q.cond);
    CHECK(q.cond >= 1.0);
  }
}

TEST_CASE("scalar on the spectrum is rejected") {
  Algebra alg = Algebra::clifford(1);
  std::vector<Eigen::MatrixXd> comps(2, Eigen::MatrixXd::Zero(1, 1));
  comps[1](0, 0) = 1.0;
  ParavectorOperator T(alg, comps);
  // The S-spectrum of left multiplication by e1 is the unit sphere (0, 1).
  Paravector s = slice_point(0.0, 1.0, ImaginaryUnit::axis(alg, 1));
  CHECK_THROWS_AS(pseudo_resolvent(T, s), SpectralPointError);
}

TEST_CASE("one-sided resolvent equations hold") {
  std::mt19937_64 gen(305);
  for (const Algebra& alg : {Algebra::clifford(1), Algebra::clifford(3),
                             Algebra::quaternions()}) {
    for (int t = 0; t < 5; ++t) {
      ParavectorOperator T = random_operator(alg, 3, gen);
      Paravector s = safe_scalar(T, gen);
      ClassicalResiduals res = resolvent_equation_residuals(T, s);
      CHECK(res.left <= 1e-11 * res.cond);
      CHECK(res.right <= 1e-11 * res.cond);
    }
  }
}

TEST_CASE("resolvent power series converges to the closed form") {
  std::mt19937_64 gen(42);
  Algebra alg = Algebra::clifford(2);
  ParavectorOperator raw = random_operator(alg, 4, gen);
  Paravector s = slice_point(2.0, 1.0, ImaginaryUnit::axis(alg, 1));
  // Scale the tuple so the series ratio is 1/2: bound = |s| / 2.
  const double target = s.norm() / 2.0;
  const double scale = target / operator_norm_bound(raw);
  std::vector<Eigen::MatrixXd> comps = raw.components();
  for (Eigen::MatrixXd& c : comps) c *= scale;
  ParavectorOperator T(alg, std::move(comps));

  for (Side side : {Side::left, Side::right}) {
    OperatorMatrix closed = s_resolvent(T, s, side);
    std::vector<double> errs;
    for (int m = 10; m <= 100; m += 10) {
      errs.push_back(
          two_norm_estimate(resolvent_series(T, s, m, side) - closed));
    }
    // Monotone decrease down to the rounding floor, then at least 1e-10.
    for (std::size_t i = 1; i < errs.size(); ++i) {
      CHECK(errs[i] <= errs[i - 1] * 1.01 + 1e-14);
    }
    CHECK(errs[3] < errs[0]);
    CHECK(errs.back() <= 1e-10);
  }
}

TEST_CASE("finite geometric sums collapse to the closed form") {
  Algebra alg = Algebra::clifford(1);
  // Real example: A = I, p = 1, s = 3; the sum is sum_j 3^{-1-j} times I.
  OperatorMatrix id = OperatorMatrix::identity(alg, 2);
  Paravector p1 = Paravector::real(alg, 1.0);
  Paravector s3 = Paravector::real(alg, 3.0);
  CHECK(finite_sum_residual(id, s3, p1, 5, Side::left) <= 1e-14);
  // Hand value of the scalar sum: (1 - 3^{-6}) / 2.
  OperatorMatrix lhs = OperatorMatrix::zero(alg, 2);
  for (int j = 0; j <= 5; ++j) {
    lhs += left_action_matrix(point_power(p1, j), 2) * id *
           left_action_matrix(point_power(s3, -1 - j), 2);
  }
  const double hand = (1.0 - std::pow(3.0, -6.0)) / 2.0;
  CHECK((lhs.matrix() - hand * Eigen::MatrixXd::Identity(4, 4)).norm() <=
        1e-15);

  std::mt19937_64 gen(306);
  for (const Algebra& a : {Algebra::clifford(2), Algebra::quaternions()}) {
    for (int t = 0; t < 4; ++t) {
      const int d = 2;
      Eigen::MatrixXd m = random_matrix(a.dim() * d, a.dim() * d, gen);
      OperatorMatrix A(a, d, std::move(m));
      Paravector p = random_point(a, gen);
      Paravector s = random_point(a, gen);
      if (sphere_point_distance(p, sphere_of(s)) < 0.3) continue;
      if (s.norm() < 0.3) continue;
      const double scale = two_norm_estimate(A) *
                           std::pow(std::max(1.0, p.norm()), 9) *
                           std::pow(std::min(1.0, s.norm()), -9);
      for (int m_terms : {0, 3, 8}) {
        CHECK(finite_sum_residual(A, s, p, m_terms, Side::left) <=
              1e-13 * scale);
        CHECK(finite_sum_residual(A, s, p, m_terms, Side::right) <=
              1e-13 * scale);
      }
    }
  }
}

TEST_CASE("two-sided resolvent equation holds in both forms") {
  std::mt19937_64 gen(307);
  for (const Algebra& alg : {Algebra::clifford(2), Algebra::clifford(3),
                             Algebra::quaternions()}) {
    for (int t = 0; t < 5; ++t) {
      ParavectorOperator T = random_operator(alg, 3, gen);
      Paravector s = safe_scalar(T, gen);
      Paravector p = safe_scalar(T, gen);
      if (sphere_point_distance(p, sphere_of(s)) < 0.3) continue;
      EquationResidual r1 = two_sided_resolvent_residual(T, s, p, EquationForm::one);
      EquationResidual r2 = two_sided_resolvent_residual(T, s, p, EquationForm::two);
      CHECK(r1.residual <= 1e-11 * r1.cond);
      CHECK(r2.residual <= 1e-11 * r2.cond);
    }
  }
}

TEST_CASE("pseudo resolvents commute inside the sandwich") {
  std::mt19937_64 gen(308);
  Algebra alg = Algebra::clifford(3);
  for (int t = 0; t < 5; ++t) {
    ParavectorOperator T = random_operator(alg, 2, gen);
    Paravector s = safe_scalar(T, gen);
    Paravector p = safe_scalar(T, gen);
    EquationResidual r = pseudo_commutation_residual(T, s, p);
    CHECK(r.residual <= 1e-12 * r.cond);
  }
}

TEST_CASE("commutative symmetric resolvent matches the general one") {
  std::mt19937_64 gen(309);
  for (const Algebra& alg : {Algebra::clifford(2), Algebra::quaternions()}) {
    // Commuting tuple: shared eigenbasis with random spectra.
    const int d = 3;
    Eigen::MatrixXd basis = random_matrix(d, d, gen);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    Eigen::MatrixXd q = qr.householderQ();
    std::vector<Eigen::MatrixXd> comps;
    for (int c = 0; c < alg.point_dim(); ++c) {
      Eigen::VectorXd diag(d);
      for (int i = 0; i < d; ++i) diag[i] = uniform_pm1(gen);
      comps.push_back(q * diag.asDiagonal() * q.transpose());
    }
    ParavectorOperator T(alg, std::move(comps));
    REQUIRE(T.commuting());

    Paravector s = safe_scalar(T, gen);
    for (Side side : {Side::left, Side::right}) {
      SResolvent sym = sc_resolvent_full(T, s, side);
      OperatorMatrix gen_res = s_resolvent(T, s, side);
      CHECK(two_norm_estimate(sym.value - gen_res) <= 1e-10 * sym.cond);
    }
  }

  // Non-commuting input is rejected.
  std::mt19937_64 gen2(310);
  ParavectorOperator bad = random_operator(Algebra::clifford(2), 3, gen2);
  REQUIRE(!bad.commuting());
  CHECK_THROWS_AS(sc_resolvent(bad, Paravector::real(bad.algebra(), 9.0),
                               Side::left),
                  InputError);
}

TEST_CASE("norm bound dominates the representation norm") {
  std::mt19937_64 gen(311);
  for (const Algebra& alg : {Algebra::clifford(1), Algebra::clifford(3),
                             Algebra::quaternions()}) {
    for (int t = 0; t < 5; ++t) {
      ParavectorOperator T = random_operator(alg, 3, gen);
      CHECK(two_norm_estimate(rep_matrix(T)) <=
            operator_norm_bound(T) + 1e-12);
    }
  }
}

TEST_CASE("conjugate tuple negates the imaginary components") {
  std::mt19937_64 gen(312);
  ParavectorOperator T = random_operator(Algebra::clifford(2), 2, gen);
  ParavectorOperator tc = conjugate(T);
  CHECK((tc.component(0) - T.component(0)).norm() == 0.0);
  CHECK((tc.component(1) + T.component(1)).norm() == 0.0);
  CHECK((tc.component(2) + T.component(2)).norm() == 0.0);
}

TEST_CASE("quaternion-entry matrices act like their component lift") {
  std::mt19937_64 gen(313);
  const int d = 2;
  std::vector<std::vector<Quaternion>> entries(d, std::vector<Quaternion>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      entries[i][j] = Quaternion{uniform_pm1(gen), uniform_pm1(gen),
                                 uniform_pm1(gen), uniform_pm1(gen)};
  ParavectorOperator T = from_quaternion_matrix(entries);
  OperatorMatrix r = rep_matrix(T);

  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd v = random_matrix(4 * d, 1, gen);
    // Entrywise quaternion product oracle; blocks are coefficient-major.
    std::vector<Quaternion> vq(d), outq(d);
    for (int j = 0; j < d; ++j)
      vq[j] = Quaternion{v[0 * d + j], v[1 * d + j], v[2 * d + j], v[3 * d + j]};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) outq[i] += entries[i][j] * vq[j];
    Eigen::VectorXd want(4 * d);
    for (int j = 0; j < d; ++j) {
      want[0 * d + j] = outq[j].w;
      want[1 * d + j] = outq[j].x;
      want[2 * d + j] = outq[j].y;
      want[3 * d + j] = outq[j].z;
    }
    CHECK((r.matrix() * v - want).norm() <= 1e-13);
  }

  // The resolvent equations hold in the quaternionic lane as well.
  Paravector s = safe_scalar(T, gen);
  ClassicalResiduals res = resolvent_equation_residuals(T, s);
  CHECK(res.left <= 1e-11 * res.cond);
  CHECK(res.right <= 1e-11 * res.cond);
}

TEST_CASE("module dimension guards") {
  Algebra alg = Algebra::clifford(2);
  std::vector<Eigen::MatrixXd> comps(2, Eigen::MatrixXd::Zero(2, 2));
  CHECK_THROWS_AS(ParavectorOperator(alg, comps), DimensionError);
  CHECK_THROWS_AS(OperatorMatrix(alg, 2, Eigen::MatrixXd::Zero(3, 3)),
                  DimensionError);
  std::vector<Eigen::MatrixXd> mixed = {Eigen::MatrixXd::Zero(2, 2),
                                        Eigen::MatrixXd::Zero(2, 2),
                                        Eigen::MatrixXd::Zero(3, 3)};
  CHECK_THROWS_AS(ParavectorOperator(alg, mixed), DimensionError);
}
