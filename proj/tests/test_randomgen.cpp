#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sfc/randomgen.hpp"

using namespace sfc;

TEST_CASE("streams are reproducible and children ignore draw order") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());

  Rng parent(7);
  const Rng c1 = parent.child(3);
  (void)parent.uniform();
  (void)parent.uniform();
  Rng c2 = parent.child(3);
  Rng c1copy = c1;
  for (int i = 0; i < 10; ++i) CHECK(c1copy.uniform() == c2.uniform());

  // Distinct children disagree immediately.
  Rng d1 = parent.child(1), d2 = parent.child(2);
  CHECK(d1.uniform() != d2.uniform());
}

TEST_CASE("uniform draws stay in range with a centered mean") {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = rng.uniform_pm1();
    REQUIRE(x >= -1.0);
    REQUIRE(x <= 1.0);
    sum += x;
  }
  CHECK(std::abs(sum / 20000.0) <= 0.02);
}

TEST_CASE("operators hit a requested norm bound exactly") {
  Rng rng(5);
  const Algebra alg = Algebra::clifford(2);
  const ParavectorOperator T = random_operator(alg, 3, rng, 0.5);
  CHECK(operator_norm_bound(T) == doctest::Approx(0.5).epsilon(1e-12));

  // The quaternionic mirror: one component per basis element of H.
  Rng qrng(5);
  const ParavectorOperator Q = random_operator(Algebra::quaternions(), 4, qrng);
  CHECK(static_cast<int>(Q.components().size()) == 4);
  CHECK(Q.block_dim() == 4);
}

TEST_CASE("structured families have the advertised shape") {
  Rng rng(11);
  const Algebra alg = Algebra::clifford(2);

  const ParavectorOperator C = commuting_operator(alg, 4, rng);
  CHECK(C.commuting());
  for (const Eigen::MatrixXd& m : C.components())
    CHECK((m - m.transpose()).norm() <= 1e-12);

  const ParavectorOperator G = two_group_operator(alg, 2, rng);
  int low = 0, high = 0;
  for (const SpectralSphere& s : s_spectrum(G).spheres)
    (s.u < 0 ? low : high) += 1;
  CHECK(low >= 1);
  CHECK(high >= 1);
}

TEST_CASE("margin-respecting scalars clear every sphere") {
  Rng rng(9);
  const Algebra alg = Algebra::clifford(2);
  const ParavectorOperator T = random_operator(alg, 3, rng);
  const Spectrum spec = s_spectrum(T);
  const double reach = spec.bounding_radius() + 1.0;

  const auto margin_of = [&](const Paravector& x) {
    const SliceCoords c = slice_coords(x);
    double best = 1e300;
    for (const SpectralSphere& s : spec.spheres)
      best = std::min(best, std::hypot(c.u - s.u, c.v - s.v));
    return best;
  };

  for (int i = 0; i < 200; ++i) {
    const Paravector s = scalar_with_margin(spec, alg, rng);
    const SliceCoords c = slice_coords(s);
    CHECK(margin_of(s) >= 0.1);
    CHECK(std::abs(c.u) <= reach);
    CHECK(c.v <= reach);
  }

  for (int i = 0; i < 100; ++i) {
    const auto [s, p] = scalar_pair_with_margin(spec, alg, rng);
    CHECK(margin_of(s) >= 0.1);
    CHECK(margin_of(p) >= 0.1);
    const SpectralSphere ss = sphere_of(s);
    const SliceCoords pc = slice_coords(p);
    CHECK(std::hypot(pc.u - ss.u, pc.v - ss.v) >= 0.1);
  }
}
