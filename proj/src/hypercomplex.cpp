#include "sfc/hypercomplex.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace sfc {

namespace detail {

struct AlgebraTable {
  int n = 0;
  bool quaternionic = false;
  int dim = 0;
  int point_dim = 0;
  std::vector<int> pos_to_mask;
  std::vector<int> mask_to_pos;
  std::vector<int> prod_pos;
  std::vector<double> prod_sign;
  std::vector<int> point_pos;
  std::vector<std::string> names;
  std::vector<int> grade;
};

namespace {

std::vector<int> mask_bits(int mask) {
  std::vector<int> bits;
  for (int b = 0; mask >> b; ++b) {
    if ((mask >> b) & 1) bits.push_back(b);
  }
  return bits;
}

// Sign of the canonical reordering in e[a] * e[b]: counts generator swaps,
// then applies e_i^2 = -1 for each generator the two factors share.
double blade_sign(int a, int b) {
  int swaps = 0;
  for (int aa = a >> 1; aa != 0; aa >>= 1) {
    swaps += std::popcount(static_cast<unsigned>(aa & b));
  }
  int squares = std::popcount(static_cast<unsigned>(a & b));
  return ((swaps + squares) % 2 == 0) ? 1.0 : -1.0;
}

std::shared_ptr<AlgebraTable> build_clifford_table(int n) {
  auto t = std::make_shared<AlgebraTable>();
  t->n = n;
  t->dim = 1 << n;
  t->point_dim = n + 1;

  // Grade-then-lexicographic order of index tuples; within a grade this is
  // not ascending-mask order once n >= 4 (e.g. {1,4} precedes {2,3}).
  t->pos_to_mask.resize(t->dim);
  for (int m = 0; m < t->dim; ++m) t->pos_to_mask[m] = m;
  std::sort(t->pos_to_mask.begin(), t->pos_to_mask.end(), [](int a, int b) {
    int ga = std::popcount(static_cast<unsigned>(a));
    int gb = std::popcount(static_cast<unsigned>(b));
    if (ga != gb) return ga < gb;
    auto ta = mask_bits(a);
    auto tb = mask_bits(b);
    return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(),
                                        tb.end());
  });
  t->mask_to_pos.resize(t->dim);
  for (int p = 0; p < t->dim; ++p) t->mask_to_pos[t->pos_to_mask[p]] = p;

  t->grade.resize(t->dim);
  t->names.resize(t->dim);
  for (int p = 0; p < t->dim; ++p) {
    int mask = t->pos_to_mask[p];
    t->grade[p] = std::popcount(static_cast<unsigned>(mask));
    if (mask == 0) {
      t->names[p] = "1";
    } else {
      std::string nm = "e";
      for (int b : mask_bits(mask)) nm += std::to_string(b + 1);
      t->names[p] = nm;
    }
  }

  t->prod_pos.resize(t->dim * t->dim);
  t->prod_sign.resize(t->dim * t->dim);
  for (int i = 0; i < t->dim; ++i) {
    for (int j = 0; j < t->dim; ++j) {
      int ma = t->pos_to_mask[i];
      int mb = t->pos_to_mask[j];
      t->prod_pos[i * t->dim + j] = t->mask_to_pos[ma ^ mb];
      t->prod_sign[i * t->dim + j] = blade_sign(ma, mb);
    }
  }

  t->point_pos.resize(t->point_dim);
  t->point_pos[0] = t->mask_to_pos[0];
  for (int j = 1; j <= n; ++j) t->point_pos[j] = t->mask_to_pos[1 << (j - 1)];
  return t;
}

// The quaternions share the Clifford R_2 multiplication table under the
// identification (1, i, j, k) = (1, e1, e2, e12); only the point structure
// differs: every quaternion coordinate is a point coordinate.
std::shared_ptr<AlgebraTable> build_quaternion_table() {
  auto t = build_clifford_table(2);
  t->quaternionic = true;
  t->point_dim = 4;
  t->point_pos = {0, 1, 2, 3};
  t->names = {"1", "i", "j", "k"};
  return t;
}

}  // namespace
}  // namespace detail

Algebra::Algebra(std::shared_ptr<const detail::AlgebraTable> t)
    : t_(std::move(t)) {}

Algebra Algebra::clifford(int n) {
  if (n < 1 || n > 5) {
    throw DimensionError("Clifford generator count must be in [1, 5], got " +
                         std::to_string(n));
  }
  static std::array<std::shared_ptr<const detail::AlgebraTable>, 6> cache;
  if (!cache[n]) cache[n] = detail::build_clifford_table(n);
  return Algebra(cache[n]);
}

Algebra Algebra::quaternions() {
  static std::shared_ptr<const detail::AlgebraTable> cache =
      detail::build_quaternion_table();
  return Algebra(cache);
}

int Algebra::dim() const { return t_->dim; }
int Algebra::point_dim() const { return t_->point_dim; }
int Algebra::generators() const { return t_->n; }
bool Algebra::is_quaternionic() const { return t_->quaternionic; }
int Algebra::grade(int pos) const { return t_->grade[pos]; }
const std::string& Algebra::basis_name(int pos) const {
  return t_->names[pos];
}
int Algebra::point_position(int k) const { return t_->point_pos[k]; }
int Algebra::product_position(int a, int b) const {
  return t_->prod_pos[a * t_->dim + b];
}
double Algebra::product_sign(int a, int b) const {
  return t_->prod_sign[a * t_->dim + b];
}

bool Algebra::operator==(const Algebra& other) const {
  return t_->quaternionic == other.t_->quaternionic && t_->n == other.t_->n;
}

namespace {

void require_same_algebra(const Algebra& a, const Algebra& b,
                          const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) +
                         ": operands belong to different algebras");
  }
}

}  // namespace

Multivector::Multivector(Algebra alg, Eigen::VectorXd coeffs)
    : alg_(std::move(alg)), c_(std::move(coeffs)) {
  if (c_.size() != alg_.dim()) {
    throw DimensionError("Multivector: expected " +
                         std::to_string(alg_.dim()) + " coefficients, got " +
                         std::to_string(c_.size()));
  }
}

Multivector Multivector::zero(const Algebra& alg) {
  return Multivector(alg, Eigen::VectorXd::Zero(alg.dim()));
}

Multivector Multivector::one(const Algebra& alg) {
  return basis(alg, 0);
}

Multivector Multivector::basis(const Algebra& alg, int pos) {
  if (pos < 0 || pos >= alg.dim()) {
    throw DimensionError("Multivector::basis: position out of range");
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(alg.dim());
  c[pos] = 1.0;
  return Multivector(alg, std::move(c));
}

Multivector Multivector::operator-() const {
  return Multivector(alg_, -c_);
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  require_same_algebra(alg_, rhs.alg_, "Multivector+");
  c_ += rhs.c_;
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  require_same_algebra(alg_, rhs.alg_, "Multivector-");
  c_ -= rhs.c_;
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  c_ *= s;
  return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }

Multivector clifford_mul(const Multivector& a, const Multivector& b) {
  require_same_algebra(a.algebra(), b.algebra(), "clifford_mul");
  const Algebra& alg = a.algebra();
  const int dim = alg.dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    const double ai = a.coeff(i);
    if (ai == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      const double bj = b.coeff(j);
      if (bj == 0.0) continue;
      out[alg.product_position(i, j)] += alg.product_sign(i, j) * ai * bj;
    }
  }
  return Multivector(alg, std::move(out));
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  return clifford_mul(a, b);
}

Eigen::MatrixXd left_regular_matrix(const Multivector& a) {
  const Algebra& alg = a.algebra();
  const int dim = alg.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int p = 0; p < dim; ++p) {
    for (int i = 0; i < dim; ++i) {
      m(alg.product_position(i, p), p) += alg.product_sign(i, p) * a.coeff(i);
    }
  }
  return m;
}

Eigen::MatrixXd right_regular_matrix(const Multivector& a) {
  const Algebra& alg = a.algebra();
  const int dim = alg.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int p = 0; p < dim; ++p) {
    for (int i = 0; i < dim; ++i) {
      m(alg.product_position(p, i), p) += alg.product_sign(p, i) * a.coeff(i);
    }
  }
  return m;
}

Paravector::Paravector(Algebra alg, Eigen::VectorXd parts)
    : alg_(std::move(alg)), p_(std::move(parts)) {
  if (p_.size() != alg_.point_dim()) {
    throw DimensionError("Paravector: expected " +
                         std::to_string(alg_.point_dim()) +
                         " coordinates, got " + std::to_string(p_.size()));
  }
}

Paravector Paravector::zero(const Algebra& alg) {
  return Paravector(alg, Eigen::VectorXd::Zero(alg.point_dim()));
}

Paravector Paravector::real(const Algebra& alg, double u) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(alg.point_dim());
  p[0] = u;
  return Paravector(alg, std::move(p));
}

Multivector Paravector::embed() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(alg_.dim());
  for (int k = 0; k < alg_.point_dim(); ++k) c[alg_.point_position(k)] = p_[k];
  return Multivector(alg_, std::move(c));
}

Paravector Paravector::operator-() const { return Paravector(alg_, -p_); }

Paravector& Paravector::operator+=(const Paravector& rhs) {
  require_same_algebra(alg_, rhs.alg_, "Paravector+");
  p_ += rhs.p_;
  return *this;
}

Paravector& Paravector::operator-=(const Paravector& rhs) {
  require_same_algebra(alg_, rhs.alg_, "Paravector-");
  p_ -= rhs.p_;
  return *this;
}

Paravector& Paravector::operator*=(double s) {
  p_ *= s;
  return *this;
}

Paravector operator+(Paravector a, const Paravector& b) { return a += b; }
Paravector operator-(Paravector a, const Paravector& b) { return a -= b; }
Paravector operator*(Paravector a, double s) { return a *= s; }
Paravector operator*(double s, Paravector a) { return a *= s; }

Paravector conjugate(const Paravector& x) {
  Eigen::VectorXd p = -x.parts();
  p[0] = x.parts()[0];
  return Paravector(x.algebra(), std::move(p));
}

Paravector paravector_inverse(const Paravector& x) {
  const double sq = x.squared_norm();
  if (sq < 1e-300) {
    throw SingularElementError("paravector_inverse: null element");
  }
  Paravector c = conjugate(x);
  c *= 1.0 / sq;
  return c;
}

SpectralSphere sphere_of(const Paravector& x) {
  return SpectralSphere{x.real_part(), x.imaginary_norm(), 1};
}

double sphere_distance(const SpectralSphere& a, const SpectralSphere& b) {
  return std::hypot(a.u - b.u, a.v - b.v);
}

ImaginaryUnit::ImaginaryUnit(Algebra alg, Eigen::VectorXd direction)
    : alg_(std::move(alg)), d_(std::move(direction)) {
  if (d_.size() != alg_.point_dim() - 1) {
    throw DimensionError("ImaginaryUnit: expected " +
                         std::to_string(alg_.point_dim() - 1) +
                         " coordinates, got " + std::to_string(d_.size()));
  }
  const double nrm = d_.norm();
  if (std::abs(nrm - 1.0) > 1e-9) {
    throw InvalidUnitError("ImaginaryUnit: direction norm " +
                           std::to_string(nrm) + " is not 1");
  }
  d_ /= nrm;
}

ImaginaryUnit ImaginaryUnit::normalized(Algebra alg,
                                        Eigen::VectorXd direction) {
  const double nrm = direction.norm();
  if (nrm < 1e-12) {
    throw InvalidUnitError("ImaginaryUnit::normalized: null direction");
  }
  return ImaginaryUnit(std::move(alg), direction / nrm);
}

ImaginaryUnit ImaginaryUnit::axis(const Algebra& alg, int j) {
  if (j < 1 || j >= alg.point_dim()) {
    throw DimensionError("ImaginaryUnit::axis: index out of range");
  }
  Eigen::VectorXd d = Eigen::VectorXd::Zero(alg.point_dim() - 1);
  d[j - 1] = 1.0;
  return ImaginaryUnit(alg, std::move(d));
}

Paravector ImaginaryUnit::as_paravector() const {
  Eigen::VectorXd p(alg_.point_dim());
  p[0] = 0.0;
  p.tail(alg_.point_dim() - 1) = d_;
  return Paravector(alg_, std::move(p));
}

Paravector slice_point(double u, double v, const ImaginaryUnit& I) {
  const Algebra& alg = I.algebra();
  Eigen::VectorXd p(alg.point_dim());
  p[0] = u;
  p.tail(alg.point_dim() - 1) = v * I.direction();
  return Paravector(alg, std::move(p));
}

SliceCoords slice_coords(const Paravector& x) {
  return SliceCoords{x.real_part(), x.imaginary_norm()};
}

std::complex<double> to_slice(const Paravector& x) {
  return {x.real_part(), x.imaginary_norm()};
}

ImaginaryUnit slice_unit(const Paravector& x, const ImaginaryUnit& fallback) {
  require_same_algebra(x.algebra(), fallback.algebra(), "slice_unit");
  const double v = x.imaginary_norm();
  if (v <= 1e-14 * (1.0 + std::abs(x.real_part()))) return fallback;
  Eigen::VectorXd d = x.parts().tail(x.size() - 1) / v;
  return ImaginaryUnit(x.algebra(), std::move(d));
}

Paravector from_slice(std::complex<double> z, const ImaginaryUnit& I) {
  return slice_point(z.real(), z.imag(), I);
}

double sphere_point_distance(const Paravector& s, const SpectralSphere& sphere) {
  const SliceCoords c = slice_coords(s);
  return std::hypot(c.u - sphere.u, c.v - sphere.v);
}

Paravector point_power(const Paravector& x, int k) {
  const Algebra& alg = x.algebra();
  if (k == 0) return Paravector::real(alg, 1.0);
  std::complex<double> z = to_slice(x);
  std::complex<double> base = z;
  if (k < 0) {
    if (x.squared_norm() < 1e-300) {
      throw SingularElementError("point_power: negative power of zero");
    }
    base = 1.0 / z;
  }
  std::complex<double> acc = base;
  for (int i = 1; i < std::abs(k); ++i) acc *= base;
  // Lift back along the slice of x; a real x stays real (the fallback axis
  // never receives a nonzero coefficient).
  ImaginaryUnit I = slice_unit(x, ImaginaryUnit::axis(alg, 1));
  return from_slice(acc, I);
}

namespace {

// x^2 - 2 re s + nsq, evaluated on points: the square of a point is the
// point (u^2 - v^2, 2 u x_vec).
Paravector point_quadratic(const Paravector& x, double re, double nsq) {
  const double u = x.real_part();
  const double v = x.imaginary_norm();
  Eigen::VectorXd p = x.parts();
  p.tail(p.size() - 1) *= 2.0 * u - 2.0 * re;
  p[0] = u * u - v * v - 2.0 * re * u + nsq;
  return Paravector(x.algebra(), std::move(p));
}

}  // namespace

Paravector sphere_quadratic(const Paravector& arg, const Paravector& s) {
  require_same_algebra(arg.algebra(), s.algebra(), "sphere_quadratic");
  return point_quadratic(arg, s.real_part(), s.squared_norm());
}

Multivector cauchy_kernel_left(const Paravector& s, const Paravector& x,
                               KernelForm form) {
  require_same_algebra(s.algebra(), x.algebra(), "cauchy_kernel_left");
  if (form == KernelForm::one) {
    Paravector q = point_quadratic(x, s.real_part(), s.squared_norm());
    return -1.0 * (paravector_inverse(q).embed() * (x - conjugate(s)).embed());
  }
  Paravector q = point_quadratic(s, x.real_part(), x.squared_norm());
  return (s - conjugate(x)).embed() * paravector_inverse(q).embed();
}

Multivector cauchy_kernel_right(const Paravector& s, const Paravector& x,
                                KernelForm form) {
  require_same_algebra(s.algebra(), x.algebra(), "cauchy_kernel_right");
  if (form == KernelForm::one) {
    Paravector q = point_quadratic(x, s.real_part(), s.squared_norm());
    return -1.0 * ((x - conjugate(s)).embed() * paravector_inverse(q).embed());
  }
  Paravector q = point_quadratic(s, x.real_part(), x.squared_norm());
  return paravector_inverse(q).embed() * (s - conjugate(x)).embed();
}

double Quaternion::norm() const { return std::sqrt(squared_norm()); }

double Quaternion::squared_norm() const {
  return w * w + x * x + y * y + z * z;
}

Quaternion Quaternion::conjugate() const { return {w, -x, -y, -z}; }

Quaternion Quaternion::inverse() const {
  const double sq = squared_norm();
  if (sq < 1e-300) {
    throw SingularElementError("Quaternion::inverse: null element");
  }
  Quaternion c = conjugate();
  return {c.w / sq, c.x / sq, c.y / sq, c.z / sq};
}

Paravector Quaternion::as_paravector() const {
  Eigen::VectorXd p(4);
  p << w, x, y, z;
  return Paravector(Algebra::quaternions(), std::move(p));
}

Quaternion Quaternion::from_paravector(const Paravector& p) {
  if (!p.algebra().is_quaternionic()) {
    throw DimensionError("Quaternion::from_paravector: not quaternionic");
  }
  return {p.parts()[0], p.parts()[1], p.parts()[2], p.parts()[3]};
}

Quaternion& Quaternion::operator+=(const Quaternion& r) {
  w += r.w;
  x += r.x;
  y += r.y;
  z += r.z;
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& r) {
  w -= r.w;
  x -= r.x;
  y -= r.y;
  z -= r.z;
  return *this;
}

Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion operator*(double s, const Quaternion& a) {
  return {s * a.w, s * a.x, s * a.y, s * a.z};
}

}  // namespace sfc
