#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "sfc/operator.hpp"
#include "sfc/spectrum.hpp"

namespace sfc {

/// Deterministic uniform sampler behind every randomized instance.  Seeds are
/// always explicit, and doubles come from the top 53 bits of the engine so
/// the stream is reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }

  /// Uniform on [-1, 1].
  double uniform_pm1() { return uniform() * 2.0 - 1.0; }

  std::uint64_t bits() { return gen_(); }

  /// Generator for sub-task `index`, derived from the original seed alone so
  /// instances stay reproducible no matter how work is scheduled.
  Rng child(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

Eigen::MatrixXd random_matrix(int rows, int cols, Rng& rng);

Multivector random_multivector(const Algebra& alg, Rng& rng);

/// Paravector with coordinates uniform on [-box, box].
Paravector random_paravector(const Algebra& alg, Rng& rng, double box = 1.0);

ImaginaryUnit random_imaginary_unit(const Algebra& alg, Rng& rng);

/// Tuple with entries uniform on [-1, 1]; the second form rescales all
/// components so the spectral norm bound hits `norm_bound` exactly.
ParavectorOperator random_operator(const Algebra& alg, int d, Rng& rng);
ParavectorOperator random_operator(const Algebra& alg, int d, Rng& rng,
                                   double norm_bound);

/// d x d matrix of quaternion entries uniform on [-1, 1], acting on H^d.
ParavectorOperator random_quaternion_operator(int d, Rng& rng);

/// Commuting tuple: diagonal components conjugated by one shared random
/// orthogonal matrix.
ParavectorOperator commuting_operator(const Algebra& alg, int d, Rng& rng);

/// Block-diagonal tuple whose two d/2-sized groups of spectral spheres sit
/// near real part -separation and +separation.
ParavectorOperator two_group_operator(const Algebra& alg, int half, Rng& rng,
                                      double separation = 2.0,
                                      double scale = 0.3);

/// Scalar in a random slice, kept at least `margin` away from every spectral
/// sphere and inside the bounding radius plus one.
Paravector scalar_with_margin(const Spectrum& spec, const Algebra& alg,
                              Rng& rng, double margin = 0.1);

/// Pair (s, p) where both points keep `margin` from the spectrum and p stays
/// `margin` away from the sphere of s, so every factor of the two-sided
/// resolvent identities is invertible.
std::pair<Paravector, Paravector> scalar_pair_with_margin(
    const Spectrum& spec, const Algebra& alg, Rng& rng, double margin = 0.1);

}  // namespace sfc
