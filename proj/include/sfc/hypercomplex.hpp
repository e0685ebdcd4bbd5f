#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "sfc/errors.hpp"

namespace sfc {

/// A sphere of hypercomplex points sharing real part `u` and imaginary
/// magnitude `v >= 0`.  Spheres with `v == 0` degenerate to a single real
/// point.  `multiplicity` counts coincident spectral spheres.
struct SpectralSphere {
  double u = 0.0;
  double v = 0.0;
  int multiplicity = 1;
};

/// Distance between two spheres in the closed half-plane model (u, v).
double sphere_distance(const SpectralSphere& a, const SpectralSphere& b);

namespace detail {
struct AlgebraTable;
}

/// A finite-dimensional real associative algebra with a distinguished basis:
/// either the Clifford algebra over R^n with generators e_1..e_n satisfying
/// e_i e_j + e_j e_i = 0 (i != j) and e_i^2 = -1, or the quaternions.
///
/// Basis elements are ordered by grade and then lexicographically by index
/// tuple, so the scalar unit comes first and the generators follow in order.
/// The quaternion basis is (1, i, j, k).
///
/// An Algebra also fixes which basis positions span "points": paravectors
/// x0 + x1 e_1 + ... + xn e_n in the Clifford case, and full quaternions in
/// the quaternionic case.  Instances are cheap to copy (shared table).
class Algebra {
 public:
  /// Clifford algebra with n generators, 1 <= n <= 5.
  static Algebra clifford(int n);

  /// The quaternions.
  static Algebra quaternions();

  /// Number of basis elements (2^n, or 4 for quaternions).
  int dim() const;

  /// Number of coordinates of a point (n + 1, or 4 for quaternions).
  int point_dim() const;

  /// Number of generators (n, or 2 for quaternions' underlying table).
  int generators() const;

  bool is_quaternionic() const;

  /// Grade (number of generator factors) of the basis element at `pos`.
  int grade(int pos) const;

  /// Human-readable name of the basis element at `pos` ("1", "e12", "k", ...).
  const std::string& basis_name(int pos) const;

  /// Basis position of the k-th point coordinate, 0 <= k < point_dim().
  int point_position(int k) const;

  /// Product of basis elements: e[a] * e[b] = product_sign(a,b) * e[index].
  int product_position(int a, int b) const;
  double product_sign(int a, int b) const;

  bool operator==(const Algebra& other) const;
  bool operator!=(const Algebra& other) const { return !(*this == other); }

 private:
  explicit Algebra(std::shared_ptr<const detail::AlgebraTable> t);
  std::shared_ptr<const detail::AlgebraTable> t_;
};

/// General element of an Algebra: a real coefficient per basis element, in
/// the algebra's fixed basis order.
class Multivector {
 public:
  Multivector(Algebra alg, Eigen::VectorXd coeffs);

  static Multivector zero(const Algebra& alg);
  static Multivector one(const Algebra& alg);
  static Multivector basis(const Algebra& alg, int pos);

  const Algebra& algebra() const { return alg_; }
  const Eigen::VectorXd& coeffs() const { return c_; }
  double coeff(int pos) const { return c_[pos]; }
  double scalar_part() const { return c_[0]; }

  /// Euclidean norm of the coefficient vector.
  double norm() const { return c_.norm(); }

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);

 private:
  Algebra alg_;
  Eigen::VectorXd c_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);

/// Algebra product of two elements of the same algebra.
Multivector clifford_mul(const Multivector& a, const Multivector& b);
Multivector operator*(const Multivector& a, const Multivector& b);

/// Matrix of left multiplication by `a` in the basis order: column p holds
/// the coefficients of a * e[p].
Eigen::MatrixXd left_regular_matrix(const Multivector& a);

/// Matrix of right multiplication by `a`: column p holds e[p] * a.
Eigen::MatrixXd right_regular_matrix(const Multivector& a);

class ImaginaryUnit;

/// A point of the algebra: x0 + x1 e_1 + ... + xn e_n in the Clifford case
/// (a paravector), or a full quaternion.  Coordinates are stored as a dense
/// vector of length point_dim().
class Paravector {
 public:
  Paravector(Algebra alg, Eigen::VectorXd parts);

  static Paravector zero(const Algebra& alg);
  static Paravector real(const Algebra& alg, double u);

  const Algebra& algebra() const { return alg_; }
  const Eigen::VectorXd& parts() const { return p_; }
  int size() const { return static_cast<int>(p_.size()); }

  double real_part() const { return p_[0]; }

  /// Euclidean norm of the imaginary coordinates.
  double imaginary_norm() const { return p_.tail(p_.size() - 1).norm(); }

  double squared_norm() const { return p_.squaredNorm(); }
  double norm() const { return p_.norm(); }

  /// Embeds the point into the full algebra.
  Multivector embed() const;

  Paravector operator-() const;
  Paravector& operator+=(const Paravector& rhs);
  Paravector& operator-=(const Paravector& rhs);
  Paravector& operator*=(double s);

 private:
  Algebra alg_;
  Eigen::VectorXd p_;
};

Paravector operator+(Paravector a, const Paravector& b);
Paravector operator-(Paravector a, const Paravector& b);
Paravector operator*(Paravector a, double s);
Paravector operator*(double s, Paravector a);

/// Conjugate point: real part kept, every imaginary coordinate negated.
Paravector conjugate(const Paravector& x);

/// Inverse of a nonzero point: conjugate(x) / |x|^2.  The inverse of a point
/// is again a point.  Throws SingularElementError when |x| is numerically
/// zero.
Paravector paravector_inverse(const Paravector& x);

/// The sphere [x] = { x0 + J |x_vec| : J any imaginary unit } through x.
SpectralSphere sphere_of(const Paravector& x);

/// A unit imaginary direction: point coordinates (0, d1, ..., dn) with
/// Euclidean norm 1, so the embedded element squares to -1.
class ImaginaryUnit {
 public:
  /// Requires |direction| == 1 up to 1e-9; throws InvalidUnitError otherwise.
  ImaginaryUnit(Algebra alg, Eigen::VectorXd direction);

  /// Normalizes a nonzero direction; throws InvalidUnitError on a null one.
  static ImaginaryUnit normalized(Algebra alg, Eigen::VectorXd direction);

  /// The j-th coordinate axis, 1 <= j <= point_dim() - 1 (e_j, or i/j/k).
  static ImaginaryUnit axis(const Algebra& alg, int j);

  const Algebra& algebra() const { return alg_; }
  const Eigen::VectorXd& direction() const { return d_; }

  Paravector as_paravector() const;
  Multivector embed() const { return as_paravector().embed(); }

 private:
  Algebra alg_;
  Eigen::VectorXd d_;
};

/// The point u + v I on the complex slice spanned by 1 and I.
Paravector slice_point(double u, double v, const ImaginaryUnit& I);

/// Coordinates (u, v) of x in its own slice: u = Re(x), v = |x_vec| >= 0.
struct SliceCoords {
  double u = 0.0;
  double v = 0.0;
};
SliceCoords slice_coords(const Paravector& x);
std::complex<double> to_slice(const Paravector& x);

/// The imaginary unit of x's slice, or `fallback` when x is real (any slice
/// contains a real point).
ImaginaryUnit slice_unit(const Paravector& x, const ImaginaryUnit& fallback);

/// Lifts a slice-complex value along I: u + i v maps to u + v I.
Paravector from_slice(std::complex<double> z, const ImaginaryUnit& I);

/// Distance from the point s to the sphere [x] in slice coordinates.
double sphere_point_distance(const Paravector& s, const SpectralSphere& sphere);

/// Integer power of a point, computed in its complex slice (exact for
/// negative exponents away from zero; throws SingularElementError at zero).
Paravector point_power(const Paravector& x, int k);

/// The characteristic polynomial of the sphere [s], evaluated at the point
/// `arg`: arg^2 - 2 Re(s) arg + |s|^2.  Vanishes exactly when arg lies on
/// [s]; the result is again a point (in the slice of `arg`).
Paravector sphere_quadratic(const Paravector& arg, const Paravector& s);

/// Algebraic form of a Cauchy kernel.
enum class KernelForm { one, two };

/// Left Cauchy kernel at (s, x), for x not on the sphere of s (form one)
/// or s not on the sphere of x (form two):
///   form one:  -(x^2 - 2 Re(s) x + |s|^2)^{-1} (x - conj(s))
///   form two:   (s - conj(x)) (s^2 - 2 Re(x) s + |x|^2)^{-1}
Multivector cauchy_kernel_left(const Paravector& s, const Paravector& x,
                               KernelForm form);

/// Right Cauchy kernel at (s, x):
///   form one:  -(x - conj(s)) (x^2 - 2 Re(s) x + |s|^2)^{-1}
///   form two:   (s^2 - 2 Re(x) s + |x|^2)^{-1} (s - conj(x))
Multivector cauchy_kernel_right(const Paravector& s, const Paravector& x,
                                KernelForm form);

/// A quaternion w + x i + y j + z k, kept as a distinct scalar type.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  double norm() const;
  double squared_norm() const;
  Quaternion conjugate() const;
  Quaternion inverse() const;  // throws SingularElementError on zero

  /// Coordinates as a point of Algebra::quaternions().
  Paravector as_paravector() const;
  static Quaternion from_paravector(const Paravector& p);

  Quaternion& operator+=(const Quaternion& r);
  Quaternion& operator-=(const Quaternion& r);
};

Quaternion operator+(Quaternion a, const Quaternion& b);
Quaternion operator-(Quaternion a, const Quaternion& b);
Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator*(double s, const Quaternion& a);

}  // namespace sfc
