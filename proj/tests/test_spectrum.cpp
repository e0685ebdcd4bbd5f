#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sfc/spectrum.hpp"
#include "spectral_scan.hpp"

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

Eigen::MatrixXd random_orthogonal(int d, std::mt19937_64& gen) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(d, d, gen));
  return qr.householderQ();
}

// Commuting tuple sharing one orthogonal eigenbasis; returns the operator
// and the per-eigenvector diagonal values of each component.
struct CommutingInstance {
  ParavectorOperator op;
  std::vector<Eigen::VectorXd> diagonals;
};

CommutingInstance commuting_operator(const Algebra& alg, int d,
                                     std::mt19937_64& gen) {
  const Eigen::MatrixXd q = random_orthogonal(d, gen);
  std::vector<Eigen::MatrixXd> comps;
  std::vector<Eigen::VectorXd> diags;
  for (int c = 0; c < alg.point_dim(); ++c) {
    Eigen::VectorXd lam(d);
    for (int i = 0; i < d; ++i) lam(i) = uniform_pm1(gen);
    comps.push_back(q * lam.asDiagonal() * q.transpose());
    diags.push_back(lam);
  }
  return {ParavectorOperator(alg, std::move(comps)), std::move(diags)};
}

ImaginaryUnit random_unit(const Algebra& alg, std::mt19937_64& gen) {
  Eigen::VectorXd dir(alg.point_dim() - 1);
  do {
    for (int i = 0; i < dir.size(); ++i) dir(i) = uniform_pm1(gen);
  } while (dir.norm() < 0.3);
  return ImaginaryUnit::normalized(alg, dir);
}

Spectrum hand_spectrum(std::vector<SpectralSphere> s) {
  Spectrum out;
  out.spheres = std::move(s);
  return out;
}

// (1/2pi) sum_k w_k (s_k)^{-1} over the contour nodes, as a multivector.
Multivector reciprocal_residue(const Contour& c, int nodes) {
  Multivector acc = Multivector::zero(c.unit.algebra());
  for (const ContourNode& node : contour_nodes(c, nodes))
    acc += node.weight.embed() * paravector_inverse(node.point).embed();
  return acc * (1.0 / (2.0 * std::numbers::pi));
}

}  // namespace

TEST_CASE("generator multiplication has the unit sphere as spectrum") {
  const Algebra alg = Algebra::clifford(2);
  std::vector<Eigen::MatrixXd> comps(3, Eigen::MatrixXd::Zero(1, 1));
  comps[1](0, 0) = 1.0;  // x -> e1 x
  const ParavectorOperator T(alg, comps);
  const Spectrum spec = s_spectrum(T);
  REQUIRE(spec.spheres.size() == 1);
  CHECK(spec.spheres[0].u == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spec.spheres[0].v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.spheres[0].multiplicity == 4);
  CHECK(spec.source == "S");
  CHECK(spec.bounding_radius() == doctest::Approx(1.0));
}

TEST_CASE("diagonal real tuples have real spheres with multiplicity") {
  const Algebra alg = Algebra::clifford(1);
  Eigen::MatrixXd t0 = Eigen::MatrixXd::Zero(2, 2);
  t0(0, 0) = 1.0;
  t0(1, 1) = -1.0;
  const ParavectorOperator T(alg, {t0, Eigen::MatrixXd::Zero(2, 2)});
  const Spectrum spec = s_spectrum(T);
  REQUIRE(spec.spheres.size() == 2);
  CHECK(spec.spheres[0].u == doctest::Approx(-1.0));
  CHECK(spec.spheres[0].v == doctest::Approx(0.0));
  CHECK(spec.spheres[0].multiplicity == 2);
  CHECK(spec.spheres[1].u == doctest::Approx(1.0));
  CHECK(spec.spheres[1].multiplicity == 2);
}

TEST_CASE("eigenvalue clusters merge into one sphere") {
  const Algebra alg = Algebra::clifford(1);
  const ParavectorOperator T(
      alg, {Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 2)});
  const Spectrum spec = s_spectrum(T);
  REQUIRE(spec.spheres.size() == 1);
  CHECK(spec.spheres[0].u == doctest::Approx(1.0));
  CHECK(spec.spheres[0].multiplicity == 4);
}

TEST_CASE("hand values of the hausdorff distance") {
  const Spectrum a = hand_spectrum({{0.0, 0.0, 1}});
  const Spectrum b = hand_spectrum({{3.0, 4.0, 1}});
  const Spectrum c = hand_spectrum({{0.0, 0.0, 1}, {3.0, 4.0, 1}});
  CHECK(spectrum_hausdorff(a, b) == doctest::Approx(5.0));
  CHECK(spectrum_hausdorff(a, c) == doctest::Approx(5.0));
  CHECK(spectrum_hausdorff(c, c) == doctest::Approx(0.0));
  CHECK(b.bounding_radius() == doctest::Approx(5.0));
}

TEST_CASE("component norm sum bounds the spectrum") {
  std::mt19937_64 gen(21);
  for (const Algebra& alg : {Algebra::clifford(2), Algebra::clifford(3),
                             Algebra::quaternions()}) {
    for (int d : {2, 4}) {
      const ParavectorOperator T = random_operator(alg, d, gen);
      CHECK(s_spectrum(T).bounding_radius() <=
            operator_norm_bound(T) + 1e-9);
    }
  }
}

TEST_CASE("singularity margin matches hand values for the shift") {
  const Algebra alg = Algebra::clifford(1);
  Eigen::MatrixXd one(1, 1);
  one(0, 0) = 1.0;
  const ParavectorOperator T(alg, {Eigen::MatrixXd::Zero(1, 1), one});
  // rep(T) rotates the plane, rep^2 = -I, so the margin at (0, 1) is exact.
  CHECK(q_singularity_margin(T, 0.0, 1.0) == 0.0);
  CHECK(q_singularity_margin(T, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q_singularity_margin(T, 2.0, 0.0) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("grid scan of the singularity margin recovers the spectrum") {
  std::mt19937_64 gen(5);
  const Algebra alg = Algebra::clifford(2);
  const ParavectorOperator T = random_operator(alg, 2, gen);
  const Spectrum spec = s_spectrum(T);
  const double bound = operator_norm_bound(T);
  const double scale = (1.0 + bound) * (1.0 + bound);
  const std::vector<ScanMinimum> minima = scan_minima(T, spec, bound + 0.5, 33, 17);

  for (const SpectralSphere& s : spec.spheres) {
    double best = 1e300;
    for (const ScanMinimum& m : minima)
      best = std::min(best, std::hypot(m.u - s.u, m.v - s.v));
    CHECK(best <= 1e-4);
  }
  for (const ScanMinimum& m : minima) {
    if (m.margin > 1e-6 * scale) continue;
    double best = 1e300;
    for (const SpectralSphere& s : spec.spheres)
      best = std::min(best, std::hypot(m.u - s.u, m.v - s.v));
    CHECK(best <= 1e-4);
  }

  // Away from every sphere the characteristic operator stays invertible.
  int far_points = 0;
  for (int k = 0; k < 60; ++k) {
    const double u = uniform_pm1(gen) * (bound + 0.5);
    const double v = std::abs(uniform_pm1(gen)) * (bound + 0.5);
    double dist = 1e300;
    for (const SpectralSphere& s : spec.spheres)
      dist = std::min(dist, std::hypot(u - s.u, v - s.v));
    if (dist < 0.3) continue;
    ++far_points;
    CHECK(q_singularity_margin(T, u, v) > 1e-8);
  }
  CHECK(far_points > 10);
}

TEST_CASE("spheres are singular along every slice unit") {
  std::mt19937_64 gen(9);
  const Algebra alg = Algebra::clifford(2);
  const ParavectorOperator T = random_operator(alg, 3, gen);
  const Spectrum spec = s_spectrum(T);
  REQUIRE(!spec.spheres.empty());
  const SpectralSphere s = spec.spheres.back();
  for (int k = 0; k < 8; ++k) {
    const ImaginaryUnit J = random_unit(alg, gen);
    CHECK_THROWS_AS((void)pseudo_resolvent(T, slice_point(s.u, s.v, J)),
                    SpectralPointError);
  }
}

TEST_CASE("companion pencil reproduces the eigenvalue spectrum for commuting tuples") {
  std::mt19937_64 gen(11);
  for (const Algebra& alg : {Algebra::clifford(2), Algebra::quaternions()}) {
    const CommutingInstance inst = commuting_operator(alg, 3, gen);
    REQUIRE(inst.op.commuting());

    // Independent oracle: each joint eigenvector carries the sphere
    // (lambda_0, |lambda_imaginary|).
    std::vector<SpectralSphere> expected;
    for (int i = 0; i < 3; ++i) {
      double nsq = 0.0;
      for (std::size_t c = 1; c < inst.diagonals.size(); ++c)
        nsq += inst.diagonals[c](i) * inst.diagonals[c](i);
      expected.push_back({inst.diagonals[0](i), std::sqrt(nsq), 1});
    }
    const Spectrum want = hand_spectrum(std::move(expected));

    const Spectrum s = s_spectrum(inst.op);
    const Spectrum f = f_spectrum(inst.op);
    CHECK(f.source == "F");
    CHECK(spectrum_hausdorff(s, want) <= 1e-10);
    CHECK(spectrum_hausdorff(f, want) <= 1e-10);
    CHECK(spectrum_hausdorff(s, f) <= 1e-8);
  }
}

TEST_CASE("companion pencil rejects non-commuting tuples") {
  std::mt19937_64 gen(2);
  const ParavectorOperator T = random_operator(Algebra::clifford(2), 3, gen);
  REQUIRE(!T.commuting());
  CHECK_THROWS_AS((void)f_spectrum(T), InputError);
}

TEST_CASE("contour around one sphere is a symmetric pair") {
  const Spectrum spec = hand_spectrum({{0.0, 1.0, 1}});
  const ImaginaryUnit I = ImaginaryUnit::axis(Algebra::clifford(2), 1);
  const Contour c = build_contour(spec, {0}, I);
  REQUIRE(c.circles.size() == 2);
  CHECK(c.circles[0].center_u == doctest::Approx(0.0));
  CHECK(c.circles[0].center_v == doctest::Approx(1.0));
  CHECK(c.circles[0].radius == doctest::Approx(0.25));
  CHECK(c.circles[1].center_v == doctest::Approx(-1.0));
  CHECK(contour_encloses(c, 0.0, 1.0));
  CHECK(!contour_encloses(c, 2.0, 0.0));
  CHECK(contour_curve_distance(c, 0.0, 0.0) == doctest::Approx(0.75));
  CHECK(contour_min_radius(c) == doctest::Approx(0.25));
  CHECK(contour_nodes(c).size() == 2 * 512);
}

TEST_CASE("near-real spheres get one merged circle") {
  const ImaginaryUnit I = ImaginaryUnit::axis(Algebra::clifford(2), 1);

  const Contour origin = build_contour(hand_spectrum({{0.0, 0.0, 1}}), {0}, I);
  REQUIRE(origin.circles.size() == 1);
  CHECK(origin.circles[0].center_u == doctest::Approx(0.0));
  CHECK(origin.circles[0].center_v == doctest::Approx(0.0));
  CHECK(origin.circles[0].radius == doctest::Approx(0.25));

  const Contour low = build_contour(hand_spectrum({{0.5, 0.1, 1}}), {0}, I);
  REQUIRE(low.circles.size() == 1);
  CHECK(low.circles[0].center_u == doctest::Approx(0.5));
  CHECK(low.circles[0].center_v == doctest::Approx(0.0));
  CHECK(low.circles[0].radius == doctest::Approx(0.35));
  CHECK(contour_encloses(low, 0.5, 0.1));
}

TEST_CASE("contours separate selected spheres from the rest") {
  const Spectrum spec = hand_spectrum({{-1.0, 0.0, 1}, {1.0, 0.0, 1}});
  const ImaginaryUnit I = ImaginaryUnit::axis(Algebra::clifford(2), 1);
  const Contour c = build_contour(spec, {1}, I);
  REQUIRE(c.circles.size() == 1);
  CHECK(c.circles[0].center_u == doctest::Approx(1.0));
  CHECK(c.circles[0].radius == doctest::Approx(0.25));
  CHECK(contour_encloses(c, 1.0, 0.0));
  CHECK(!contour_encloses(c, -1.0, 0.0));

  // Tight but still separable pair: the radius shrinks to a third of the gap.
  const Spectrum tight = hand_spectrum({{0.0, 0.5, 1}, {0.01, 0.5, 1}});
  const Contour ct = build_contour(tight, {0}, I);
  REQUIRE(ct.circles.size() == 2);
  CHECK(ct.circles[0].radius == doctest::Approx(0.01 / 3.0));

  const Contour both = build_contour(spec, {0, 1}, I);
  CHECK(both.circles.size() == 2);
  CHECK(contour_encloses(both, -1.0, 0.0));
  CHECK(contour_encloses(both, 1.0, 0.0));
}

TEST_CASE("non-separable and invalid selections are rejected") {
  const ImaginaryUnit I = ImaginaryUnit::axis(Algebra::clifford(2), 1);
  const Spectrum close = hand_spectrum({{0.0, 0.5, 1}, {5e-7, 0.5, 1}});
  CHECK_THROWS_AS((void)build_contour(close, {0}, I), GeometryError);

  const Spectrum spec = hand_spectrum({{0.0, 1.0, 1}});
  CHECK_THROWS_AS((void)build_contour(spec, {}, I), InputError);
  CHECK_THROWS_AS((void)build_contour(spec, {1}, I), InputError);
  CHECK_THROWS_AS((void)build_contour(spec, {0, 0}, I), InputError);
  CHECK_THROWS_AS((void)build_contour(spec, {0}, I, 0.0), InputError);
  CHECK_THROWS_AS((void)build_contour(spec, {0}, I, 0.25, 2), InputError);
}

TEST_CASE("contour nodes integrate constants to zero and the reciprocal to one") {
  const Algebra alg = Algebra::clifford(2);
  Eigen::VectorXd dir(2);
  dir << 1.0, 1.0;
  const ImaginaryUnit I = ImaginaryUnit::normalized(alg, dir);
  const Contour c = build_contour(hand_spectrum({{0.0, 0.0, 1}}), {0}, I, 0.3);

  for (int nodes : {16, 64}) {
    Multivector wsum = Multivector::zero(alg);
    for (const ContourNode& node : contour_nodes(c, nodes))
      wsum += node.weight.embed();
    CHECK(wsum.norm() <= 1e-13);

    // Exact at every node count: the integrand of the reciprocal residue is
    // constant along a circle centered at the origin.
    const Multivector res = reciprocal_residue(c, nodes);
    CHECK((res - Multivector::one(alg)).norm() <= 1e-13);
  }
}

TEST_CASE("reciprocal residue is stable under off-center circles") {
  const Algebra alg = Algebra::clifford(3);
  const ImaginaryUnit I = ImaginaryUnit::axis(alg, 2);

  // Pole enclosed off-center: trapezoidal quadrature converges geometrically.
  const Contour in = build_contour(hand_spectrum({{0.1, 0.0, 1}}), {0}, I, 0.3);
  CHECK((reciprocal_residue(in, 64) - Multivector::one(alg)).norm() <= 1e-13);

  // Pole outside: the integral vanishes.
  const Contour out = build_contour(hand_spectrum({{0.9, 0.0, 1}}), {0}, I, 0.25);
  CHECK(reciprocal_residue(out, 64).norm() <= 1e-13);
}
