#include "sfc/operator.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>
#include <utility>

namespace sfc {

namespace {

void require_compatible(const OperatorMatrix& a, const OperatorMatrix& b,
                        const char* what) {
  if (a.algebra() != b.algebra() || a.block_dim() != b.block_dim()) {
    throw DimensionError(std::string(what) +
                         ": operands live on different modules");
  }
}

Eigen::MatrixXd kron_identity(const Eigen::MatrixXd& a, int d) {
  return Eigen::kroneckerProduct(a, Eigen::MatrixXd::Identity(d, d));
}

}  // namespace

ParavectorOperator::ParavectorOperator(Algebra alg,
                                       std::vector<Eigen::MatrixXd> components)
    : alg_(std::move(alg)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != alg_.point_dim()) {
    throw DimensionError("ParavectorOperator: expected " +
                         std::to_string(alg_.point_dim()) +
                         " components, got " + std::to_string(comps_.size()));
  }
  if (comps_[0].rows() == 0 || comps_[0].rows() != comps_[0].cols()) {
    throw DimensionError("ParavectorOperator: components must be square");
  }
  d_ = static_cast<int>(comps_[0].rows());
  for (const Eigen::MatrixXd& c : comps_) {
    if (c.rows() != d_ || c.cols() != d_) {
      throw DimensionError("ParavectorOperator: component sizes differ");
    }
  }
  commutator_norm_ = 0.0;
  for (std::size_t a = 0; a < comps_.size(); ++a) {
    for (std::size_t b = a + 1; b < comps_.size(); ++b) {
      const double nrm = (comps_[a] * comps_[b] - comps_[b] * comps_[a]).norm();
      commutator_norm_ = std::max(commutator_norm_, nrm);
    }
  }
}

ParavectorOperator conjugate(const ParavectorOperator& T) {
  std::vector<Eigen::MatrixXd> comps = T.components();
  for (std::size_t c = 1; c < comps.size(); ++c) comps[c] = -comps[c];
  return ParavectorOperator(T.algebra(), std::move(comps));
}

double operator_norm_bound(const ParavectorOperator& T) {
  double bound = 0.0;
  for (const Eigen::MatrixXd& c : T.components()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
    bound += svd.singularValues()(0);
  }
  return bound;
}

OperatorMatrix::OperatorMatrix(Algebra alg, int d, Eigen::MatrixXd m)
    : alg_(std::move(alg)), d_(d), m_(std::move(m)) {
  const int sz = alg_.dim() * d_;
  if (d_ < 1 || m_.rows() != sz || m_.cols() != sz) {
    throw DimensionError("OperatorMatrix: expected a " + std::to_string(sz) +
                         " square matrix");
  }
}

OperatorMatrix OperatorMatrix::identity(const Algebra& alg, int d) {
  const int sz = alg.dim() * d;
  return OperatorMatrix(alg, d, Eigen::MatrixXd::Identity(sz, sz));
}

OperatorMatrix OperatorMatrix::zero(const Algebra& alg, int d) {
  const int sz = alg.dim() * d;
  return OperatorMatrix(alg, d, Eigen::MatrixXd::Zero(sz, sz));
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  require_compatible(*this, rhs, "OperatorMatrix+");
  m_ += rhs.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
  require_compatible(*this, rhs, "OperatorMatrix-");
  m_ -= rhs.m_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

OperatorMatrix OperatorMatrix::operator-() const {
  return OperatorMatrix(alg_, d_, -m_);
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) {
  return a += b;
}
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) {
  return a -= b;
}
OperatorMatrix operator*(OperatorMatrix a, double s) { return a *= s; }
OperatorMatrix operator*(double s, OperatorMatrix a) { return a *= s; }

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_compatible(a, b, "OperatorMatrix*");
  return OperatorMatrix(a.algebra(), a.block_dim(), a.matrix() * b.matrix());
}

double two_norm_estimate(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::VectorXd v(m.cols());
  for (int i = 0; i < m.cols(); ++i) v[i] = std::sin(i + 1.0);
  v.normalize();
  for (int it = 0; it < 50; ++it) {
    Eigen::VectorXd w = m.transpose() * (m * v);
    const double nw = w.norm();
    if (nw < 1e-300) return 0.0;
    v = w / nw;
  }
  return (m * v).norm();
}

double two_norm_estimate(const OperatorMatrix& m) {
  return two_norm_estimate(m.matrix());
}

double frobenius_norm(const Eigen::MatrixXd& m) { return m.norm(); }

OperatorMatrix rep_matrix(const ParavectorOperator& T) {
  const Algebra& alg = T.algebra();
  const int d = T.block_dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(alg.dim() * d, alg.dim() * d);
  for (int c = 0; c < alg.point_dim(); ++c) {
    Multivector basis = Multivector::basis(alg, alg.point_position(c));
    m += Eigen::kroneckerProduct(left_regular_matrix(basis), T.component(c));
  }
  return OperatorMatrix(alg, d, std::move(m));
}

OperatorMatrix left_action_matrix(const Multivector& a, int d) {
  return OperatorMatrix(a.algebra(), d,
                        kron_identity(left_regular_matrix(a), d));
}

OperatorMatrix left_action_matrix(const Paravector& a, int d) {
  return left_action_matrix(a.embed(), d);
}

OperatorMatrix right_action_matrix(const Multivector& a, int d) {
  return OperatorMatrix(a.algebra(), d,
                        kron_identity(right_regular_matrix(a), d));
}

OperatorMatrix right_action_matrix(const Paravector& a, int d) {
  return right_action_matrix(a.embed(), d);
}

OperatorMatrix scalar_compose(const OperatorMatrix& X, const Multivector& a,
                              Side side) {
  OperatorMatrix L = left_action_matrix(a, X.block_dim());
  return (side == Side::left) ? L * X : X * L;
}

OperatorMatrix scalar_compose(const OperatorMatrix& X, const Paravector& a,
                              Side side) {
  return scalar_compose(X, a.embed(), side);
}

PseudoResolvent pseudo_resolvent(const ParavectorOperator& T,
                                 const Paravector& s) {
  if (T.algebra() != s.algebra()) {
    throw DimensionError("pseudo_resolvent: mixed algebras");
  }
  const OperatorMatrix rm = rep_matrix(T);
  const Eigen::MatrixXd& r = rm.matrix();
  const int sz = static_cast<int>(r.rows());
  Eigen::MatrixXd a = r * r - 2.0 * s.real_part() * r +
                      s.squared_norm() * Eigen::MatrixXd::Identity(sz, sz);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rc = lu.rcond();
  if (!std::isfinite(rc) || !(rc > 1e-13)) {
    throw SpectralPointError(
        "pseudo_resolvent: scalar lies on the S-spectrum (rcond " +
        std::to_string(rc) + ")");
  }
  Eigen::MatrixXd q = lu.solve(Eigen::MatrixXd::Identity(sz, sz));
  return PseudoResolvent{OperatorMatrix(T.algebra(), T.block_dim(), std::move(q)),
                         1.0 / rc};
}

SResolvent s_resolvent_full(const ParavectorOperator& T, const Paravector& s,
                            Side side) {
  PseudoResolvent q = pseudo_resolvent(T, s);
  OperatorMatrix b = rep_matrix(T) - left_action_matrix(conjugate(s),
                                                        T.block_dim());
  OperatorMatrix value =
      (side == Side::left) ? -(q.value * b) : -(b * q.value);
  return SResolvent{std::move(value), q.cond};
}

OperatorMatrix s_resolvent(const ParavectorOperator& T, const Paravector& s,
                           Side side) {
  return s_resolvent_full(T, s, side).value;
}

OperatorMatrix resolvent_series(const ParavectorOperator& T,
                                const Paravector& s, int m, Side side) {
  const int d = T.block_dim();
  OperatorMatrix r = rep_matrix(T);
  OperatorMatrix acc = OperatorMatrix::zero(T.algebra(), d);
  OperatorMatrix rpow = OperatorMatrix::identity(T.algebra(), d);
  for (int k = 0; k <= m; ++k) {
    OperatorMatrix l = left_action_matrix(point_power(s, -1 - k), d);
    acc += (side == Side::left) ? rpow * l : l * rpow;
    if (k < m) rpow = rpow * r;
  }
  return acc;
}

ClassicalResiduals resolvent_equation_residuals(const ParavectorOperator& T,
                                                const Paravector& s) {
  const int d = T.block_dim();
  OperatorMatrix r = rep_matrix(T);
  OperatorMatrix id = OperatorMatrix::identity(T.algebra(), d);
  OperatorMatrix ls = left_action_matrix(s, d);
  SResolvent sl = s_resolvent_full(T, s, Side::left);
  SResolvent sr = s_resolvent_full(T, s, Side::right);
  const double left = two_norm_estimate(sl.value * ls - r * sl.value - id);
  const double right = two_norm_estimate(ls * sr.value - sr.value * r - id);
  return ClassicalResiduals{left, right, std::max(sl.cond, sr.cond)};
}

EquationResidual two_sided_resolvent_residual(const ParavectorOperator& T,
                                        const Paravector& s,
                                        const Paravector& p,
                                        EquationForm form) {
  const int d = T.block_dim();
  SResolvent sr = s_resolvent_full(T, s, Side::right);
  SResolvent sl = s_resolvent_full(T, p, Side::left);
  OperatorMatrix diff = sr.value - sl.value;
  OperatorMatrix lhs = sr.value * sl.value;
  OperatorMatrix rhs = OperatorMatrix::zero(T.algebra(), d);
  if (form == EquationForm::one) {
    Paravector w = paravector_inverse(sphere_quadratic(p, s));
    rhs = (diff * left_action_matrix(p, d) -
           left_action_matrix(conjugate(s), d) * diff) *
          left_action_matrix(w, d);
  } else {
    Paravector w = paravector_inverse(sphere_quadratic(s, p));
    rhs = left_action_matrix(w, d) *
          (diff * left_action_matrix(conjugate(p), d) -
           left_action_matrix(s, d) * diff);
  }
  return EquationResidual{two_norm_estimate(lhs - rhs),
                          std::max(sr.cond, sl.cond)};
}

EquationResidual two_sided_resolvent_agreement(const ParavectorOperator& T,
                                         const Paravector& s,
                                         const Paravector& p) {
  const int d = T.block_dim();
  SResolvent sr = s_resolvent_full(T, s, Side::right);
  SResolvent sl = s_resolvent_full(T, p, Side::left);
  OperatorMatrix diff = sr.value - sl.value;
  const Paravector w1 = paravector_inverse(sphere_quadratic(p, s));
  const OperatorMatrix rhs1 = (diff * left_action_matrix(p, d) -
                               left_action_matrix(conjugate(s), d) * diff) *
                              left_action_matrix(w1, d);
  const Paravector w2 = paravector_inverse(sphere_quadratic(s, p));
  const OperatorMatrix rhs2 = left_action_matrix(w2, d) *
                              (diff * left_action_matrix(conjugate(p), d) -
                               left_action_matrix(s, d) * diff);
  return EquationResidual{two_norm_estimate(rhs1 - rhs2),
                          std::max(sr.cond, sl.cond)};
}

EquationResidual pseudo_commutation_residual(const ParavectorOperator& T,
                                             const Paravector& s,
                                             const Paravector& p) {
  const int d = T.block_dim();
  OperatorMatrix r = rep_matrix(T);
  PseudoResolvent qs = pseudo_resolvent(T, s);
  PseudoResolvent qp = pseudo_resolvent(T, p);
  OperatorMatrix bs = r - left_action_matrix(conjugate(s), d);
  OperatorMatrix bp = r - left_action_matrix(conjugate(p), d);
  OperatorMatrix x1 = bs * qs.value * qp.value * bp;
  OperatorMatrix x2 = bs * qp.value * qs.value * bp;
  return EquationResidual{two_norm_estimate(x1 - x2),
                          std::max(qs.cond, qp.cond)};
}

double finite_sum_residual(const OperatorMatrix& A, const Paravector& s,
                           const Paravector& p, int m, Side side) {
  if (A.algebra() != s.algebra() || A.algebra() != p.algebra()) {
    throw DimensionError("finite_sum_residual: mixed algebras");
  }
  const int d = A.block_dim();
  OperatorMatrix lhs = OperatorMatrix::zero(A.algebra(), d);
  for (int j = 0; j <= m; ++j) {
    OperatorMatrix lp = left_action_matrix(point_power(p, j), d);
    OperatorMatrix ls = left_action_matrix(point_power(s, -1 - j), d);
    lhs += (side == Side::left) ? lp * A * ls : ls * A * lp;
  }
  OperatorMatrix lw =
      left_action_matrix(paravector_inverse(sphere_quadratic(p, s)), d);
  OperatorMatrix lp1 = left_action_matrix(p, d);
  OperatorMatrix lsb = left_action_matrix(conjugate(s), d);
  OperatorMatrix ptop = left_action_matrix(point_power(p, m + 1), d);
  OperatorMatrix stop = left_action_matrix(point_power(s, -1 - m), d);
  OperatorMatrix rhs = OperatorMatrix::zero(A.algebra(), d);
  if (side == Side::left) {
    OperatorMatrix b = lw * (lp1 * A - A * lsb);
    rhs = -b + ptop * b * stop;
  } else {
    OperatorMatrix b = (A * lp1 - lsb * A) * lw;
    rhs = -b + stop * b * ptop;
  }
  return two_norm_estimate(lhs - rhs);
}

SResolvent sc_resolvent_full(const ParavectorOperator& T, const Paravector& s,
                             Side side) {
  if (!T.commuting()) {
    throw InputError(
        "sc_resolvent: tuple components do not commute (commutator norm " +
        std::to_string(T.commutator_norm()) + ")");
  }
  const int d = T.block_dim();
  ParavectorOperator tc = conjugate(T);
  OperatorMatrix r = rep_matrix(T);
  OperatorMatrix rc = rep_matrix(tc);
  OperatorMatrix ls = left_action_matrix(s, d);
  OperatorMatrix p = left_action_matrix(point_power(s, 2), d) -
                     ls * (r + rc) + r * rc;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(p.matrix());
  const double rcnd = lu.rcond();
  if (!std::isfinite(rcnd) || !(rcnd > 1e-13)) {
    throw SpectralPointError(
        "sc_resolvent: scalar lies on the S-spectrum (rcond " +
        std::to_string(rcnd) + ")");
  }
  Eigen::MatrixXd pinv =
      lu.solve(Eigen::MatrixXd::Identity(p.size(), p.size()));
  OperatorMatrix pim(T.algebra(), d, std::move(pinv));
  OperatorMatrix num = ls - rc;
  OperatorMatrix value = (side == Side::left) ? num * pim : pim * num;
  return SResolvent{std::move(value), 1.0 / rcnd};
}

OperatorMatrix sc_resolvent(const ParavectorOperator& T, const Paravector& s,
                            Side side) {
  return sc_resolvent_full(T, s, side).value;
}

ParavectorOperator from_quaternion_matrix(
    const std::vector<std::vector<Quaternion>>& entries) {
  const int d = static_cast<int>(entries.size());
  if (d == 0) throw DimensionError("from_quaternion_matrix: empty matrix");
  std::vector<Eigen::MatrixXd> comps(4, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(entries[i].size()) != d) {
      throw DimensionError("from_quaternion_matrix: matrix must be square");
    }
    for (int j = 0; j < d; ++j) {
      comps[0](i, j) = entries[i][j].w;
      comps[1](i, j) = entries[i][j].x;
      comps[2](i, j) = entries[i][j].y;
      comps[3](i, j) = entries[i][j].z;
    }
  }
  return ParavectorOperator(Algebra::quaternions(), std::move(comps));
}

}  // namespace sfc
