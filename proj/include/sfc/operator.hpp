#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sfc/hypercomplex.hpp"

namespace sfc {

/// Which side a scalar acts on, or which one-sided resolvent is meant.
enum class Side { left, right };

/// The two algebraic forms of the two-sided resolvent equation.
enum class EquationForm { one, two };

/// An (n+1)-tuple of real d x d matrices T_0..T_n acting on V^d as the
/// point operator T = T_0 + e_1 T_1 + ... + e_n T_n (or a quaternionic
/// operator T_w + i T_x + j T_y + k T_z).  The tuple is "commuting" when all
/// pairwise commutators vanish below 1e-12.
class ParavectorOperator {
 public:
  ParavectorOperator(Algebra alg, std::vector<Eigen::MatrixXd> components);

  const Algebra& algebra() const { return alg_; }
  int block_dim() const { return d_; }
  const std::vector<Eigen::MatrixXd>& components() const { return comps_; }
  const Eigen::MatrixXd& component(int c) const { return comps_[c]; }

  bool commuting() const { return commutator_norm_ <= 1e-12; }
  double commutator_norm() const { return commutator_norm_; }

 private:
  Algebra alg_;
  int d_;
  std::vector<Eigen::MatrixXd> comps_;
  double commutator_norm_;
};

/// Conjugate tuple: T_0 kept, every imaginary component negated.
ParavectorOperator conjugate(const ParavectorOperator& T);

/// Sum of the component spectral norms; bounds the norm of the full matrix
/// representation, hence every S-spectral sphere.
double operator_norm_bound(const ParavectorOperator& T);

/// A dense matrix on the module V^d tensored with the algebra, in
/// basis-major layout: coordinate (b*d + i) is the i-th vector entry of the
/// b-th basis coefficient.
class OperatorMatrix {
 public:
  OperatorMatrix(Algebra alg, int d, Eigen::MatrixXd m);

  static OperatorMatrix identity(const Algebra& alg, int d);
  static OperatorMatrix zero(const Algebra& alg, int d);

  const Algebra& algebra() const { return alg_; }
  int block_dim() const { return d_; }
  int size() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  OperatorMatrix& operator-=(const OperatorMatrix& rhs);
  OperatorMatrix& operator*=(double s);
  OperatorMatrix operator-() const;

 private:
  Algebra alg_;
  int d_;
  Eigen::MatrixXd m_;
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(OperatorMatrix a, double s);
OperatorMatrix operator*(double s, OperatorMatrix a);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

/// Spectral-norm estimate by 50 rounds of power iteration on M^T M with a
/// fixed deterministic start vector.
double two_norm_estimate(const Eigen::MatrixXd& m);
double two_norm_estimate(const OperatorMatrix& m);

double frobenius_norm(const Eigen::MatrixXd& m);

/// Full matrix representation sum_c kron(L(basis_c), T_c) of the tuple on
/// the tensor module.
OperatorMatrix rep_matrix(const ParavectorOperator& T);

/// Left action of the scalar a on the module: kron(L(a), I_d).
OperatorMatrix left_action_matrix(const Multivector& a, int d);
OperatorMatrix left_action_matrix(const Paravector& a, int d);

/// Right action of the scalar a on the module: kron(R(a), I_d).
OperatorMatrix right_action_matrix(const Multivector& a, int d);
OperatorMatrix right_action_matrix(const Paravector& a, int d);

/// Composition of an operator with a scalar: (aX)(v) = a X(v) composes the
/// left action after X; (Xa)(v) = X(a v) composes X after the left action.
OperatorMatrix scalar_compose(const OperatorMatrix& X, const Multivector& a,
                              Side side);
OperatorMatrix scalar_compose(const OperatorMatrix& X, const Paravector& a,
                              Side side);

/// Inverse of the characteristic operator rep(T)^2 - 2 Re(s) rep(T) + |s|^2,
/// with the reciprocal condition estimate of the factored matrix.  Throws
/// SpectralPointError when s lies numerically on the S-spectrum
/// (reciprocal condition below 1e-13).
struct PseudoResolvent {
  OperatorMatrix value;
  double cond;
};
PseudoResolvent pseudo_resolvent(const ParavectorOperator& T,
                                 const Paravector& s);

/// One-sided S-resolvent:
///   left:  -Q_s (rep(T) - L_conj(s))
///   right: -(rep(T) - L_conj(s)) Q_s
struct SResolvent {
  OperatorMatrix value;
  double cond;
};
SResolvent s_resolvent_full(const ParavectorOperator& T, const Paravector& s,
                            Side side);
OperatorMatrix s_resolvent(const ParavectorOperator& T, const Paravector& s,
                           Side side);

/// Truncated resolvent power series sum_{k=0}^m of rep(T)^k against the
/// scalar s^{-1-k}: composed on the right for the left resolvent and on the
/// left for the right resolvent.  Valid as an approximation only when
/// operator_norm_bound(T) < |s|.
OperatorMatrix resolvent_series(const ParavectorOperator& T,
                                const Paravector& s, int m, Side side);

/// Residuals of the classical one-sided resolvent equations
///   left:  S_L s - T S_L = I,   right: s S_R - S_R T = I
/// in the module convention above.  `cond` scales attainable accuracy.
struct ClassicalResiduals {
  double left;
  double right;
  double cond;
};
ClassicalResiduals resolvent_equation_residuals(const ParavectorOperator& T,
                                                const Paravector& s);

/// Residual and conditioning of one identity instance.
struct EquationResidual {
  double residual;
  double cond;
};

/// Residual of the two-sided resolvent equation relating S_R(s) S_L(p) to
/// the weighted difference of the resolvents:
///   form one: [ (S_R(s)-S_L(p)) p - conj(s) (S_R(s)-S_L(p)) ]
///             (p^2 - 2 Re(s) p + |s|^2)^{-1}
///   form two: (s^2 - 2 Re(p) s + |p|^2)^{-1}
///             [ (S_R(s)-S_L(p)) conj(p) - s (S_R(s)-S_L(p)) ]
/// Requires p off the sphere [s] (form one) and s off [p] (form two).
EquationResidual two_sided_resolvent_residual(const ParavectorOperator& T,
                                        const Paravector& s,
                                        const Paravector& p,
                                        EquationForm form);

/// Distance between the right-hand sides of the two forms above; both share
/// one left-hand side, so this is a direct witness of their agreement.
EquationResidual two_sided_resolvent_agreement(const ParavectorOperator& T,
                                         const Paravector& s,
                                         const Paravector& p);

/// Residual of the pseudo-resolvent commutation identity
///   (rep(T) - L_conj(s)) Q_s Q_p (rep(T) - L_conj(p))
///     = (rep(T) - L_conj(s)) Q_p Q_s (rep(T) - L_conj(p)).
EquationResidual pseudo_commutation_residual(const ParavectorOperator& T,
                                             const Paravector& s,
                                             const Paravector& p);

/// Residual of the truncated geometric identity
///   left:  sum_{j=0}^m p^j A s^{-1-j} = -B + p^{m+1} B s^{-1-m},
///          B = (p^2 - 2 Re(s) p + |s|^2)^{-1} (p A - A conj(s))
///   right: sum_{j=0}^m s^{-1-j} A p^j = -B' + s^{-1-m} B' p^{m+1},
///          B' = (A p - conj(s) A) (p^2 - 2 Re(s) p + |s|^2)^{-1}
/// for an arbitrary module operator A.  Exact for every m.
double finite_sum_residual(const OperatorMatrix& A, const Paravector& s,
                           const Paravector& p, int m, Side side);

/// One-sided resolvent of a commuting tuple through the commutative symmetric
/// form (L_s - rep(conj T)) P_s^{-1} (left) or P_s^{-1} (L_s - rep(conj T))
/// (right), with P_s = L_{s^2} - L_s rep(T + conj T) + rep(T) rep(conj T).
/// Throws InputError when the tuple does not commute.
SResolvent sc_resolvent_full(const ParavectorOperator& T, const Paravector& s,
                             Side side);
OperatorMatrix sc_resolvent(const ParavectorOperator& T, const Paravector& s,
                            Side side);

/// Tuple whose entries are quaternions, given row-major as a dense matrix of
/// Quaternion values; acts on H^d by left multiplication entrywise.
ParavectorOperator from_quaternion_matrix(
    const std::vector<std::vector<Quaternion>>& entries);

}  // namespace sfc
