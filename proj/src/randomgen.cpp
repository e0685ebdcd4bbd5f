#include "sfc/randomgen.hpp"

#include <Eigen/QR>
#include <cmath>
#include <limits>

#include "sfc/errors.hpp"

namespace sfc {
namespace {

// splitmix64 step; decorrelates child seeds from the parent stream.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double sphere_distance(const SpectralSphere& s, double u, double v) {
  return std::hypot(u - s.u, v - s.v);
}

double spectrum_margin(const Spectrum& spec, double u, double v) {
  double best = std::numeric_limits<double>::infinity();
  for (const SpectralSphere& s : spec.spheres)
    best = std::min(best, sphere_distance(s, u, v));
  return best;
}

}  // namespace

Rng Rng::child(std::uint64_t index) const {
  return Rng(mix(seed_ ^ mix(index + 1)));
}

Eigen::MatrixXd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform_pm1();
  return m;
}

Multivector random_multivector(const Algebra& alg, Rng& rng) {
  Multivector m = Multivector::zero(alg);
  for (int i = 0; i < alg.dim(); ++i)
    m += Multivector::basis(alg, i) * rng.uniform_pm1();
  return m;
}

Paravector random_paravector(const Algebra& alg, Rng& rng, double box) {
  Eigen::VectorXd parts(alg.point_dim());
  for (int i = 0; i < parts.size(); ++i) parts(i) = box * rng.uniform_pm1();
  return Paravector(alg, parts);
}

ImaginaryUnit random_imaginary_unit(const Algebra& alg, Rng& rng) {
  Eigen::VectorXd dir(alg.point_dim() - 1);
  do {
    for (int i = 0; i < dir.size(); ++i) dir(i) = rng.uniform_pm1();
  } while (dir.norm() < 0.3);
  return ImaginaryUnit::normalized(alg, dir);
}

ParavectorOperator random_operator(const Algebra& alg, int d, Rng& rng) {
  std::vector<Eigen::MatrixXd> comps;
  comps.reserve(static_cast<std::size_t>(alg.point_dim()));
  for (int c = 0; c < alg.point_dim(); ++c)
    comps.push_back(random_matrix(d, d, rng));
  return ParavectorOperator(alg, std::move(comps));
}

ParavectorOperator random_operator(const Algebra& alg, int d, Rng& rng,
                                   double norm_bound) {
  ParavectorOperator raw = random_operator(alg, d, rng);
  const double bound = operator_norm_bound(raw);
  if (bound == 0.0) return raw;
  const double scale = norm_bound / bound;
  std::vector<Eigen::MatrixXd> comps;
  comps.reserve(raw.components().size());
  for (const Eigen::MatrixXd& m : raw.components()) comps.push_back(scale * m);
  return ParavectorOperator(alg, std::move(comps));
}

ParavectorOperator random_quaternion_operator(int d, Rng& rng) {
  std::vector<std::vector<Quaternion>> entries(static_cast<std::size_t>(d));
  for (auto& row : entries) {
    row.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      row.push_back(Quaternion(rng.uniform_pm1(), rng.uniform_pm1(),
                               rng.uniform_pm1(), rng.uniform_pm1()));
  }
  return from_quaternion_matrix(entries);
}

ParavectorOperator commuting_operator(const Algebra& alg, int d, Rng& rng) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(d, d, rng));
  const Eigen::MatrixXd q = qr.householderQ();
  std::vector<Eigen::MatrixXd> comps;
  for (int c = 0; c < alg.point_dim(); ++c) {
    Eigen::VectorXd diag(d);
    for (int i = 0; i < d; ++i) diag(i) = rng.uniform_pm1();
    comps.push_back(q * diag.asDiagonal() * q.transpose());
  }
  return ParavectorOperator(alg, std::move(comps));
}

ParavectorOperator two_group_operator(const Algebra& alg, int half, Rng& rng,
                                      double separation, double scale) {
  std::vector<Eigen::MatrixXd> comps;
  for (int c = 0; c < alg.point_dim(); ++c) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * half, 2 * half);
    m.topLeftCorner(half, half) = scale * random_matrix(half, half, rng);
    m.bottomRightCorner(half, half) = scale * random_matrix(half, half, rng);
    if (c == 0) {
      m.topLeftCorner(half, half) -=
          separation * Eigen::MatrixXd::Identity(half, half);
      m.bottomRightCorner(half, half) +=
          separation * Eigen::MatrixXd::Identity(half, half);
    }
    comps.push_back(std::move(m));
  }
  return ParavectorOperator(alg, std::move(comps));
}

Paravector scalar_with_margin(const Spectrum& spec, const Algebra& alg,
                              Rng& rng, double margin) {
  const double reach = spec.bounding_radius() + 1.0;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double u = reach * rng.uniform_pm1();
    const double v = reach * rng.uniform();
    if (spectrum_margin(spec, u, v) < margin) continue;
    return slice_point(u, v, random_imaginary_unit(alg, rng));
  }
  throw NumericalError("no scalar clears the spectral margin");
}

std::pair<Paravector, Paravector> scalar_pair_with_margin(
    const Spectrum& spec, const Algebra& alg, Rng& rng, double margin) {
  const Paravector s = scalar_with_margin(spec, alg, rng, margin);
  const SpectralSphere ss = sphere_of(s);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Paravector p = scalar_with_margin(spec, alg, rng, margin);
    const SliceCoords pc = slice_coords(p);
    if (sphere_distance(ss, pc.u, pc.v) < margin) continue;
    return {s, p};
  }
  throw NumericalError("no pair clears the separation margin");
}

}  // namespace sfc
