#include "sfc/slicefun.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>

#include "sfc/errors.hpp"

namespace sfc {
namespace {

bool real_scalar(const Multivector& m) {
  for (int i = 1; i < m.algebra().dim(); ++i)
    if (m.coeff(i) != 0.0) return false;
  return true;
}

std::complex<double> horner(const std::vector<double>& coeffs,
                            std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Guard against evaluating a rational stem next to a denominator root.
std::complex<double> safe_ratio(const std::vector<double>& num,
                                const std::vector<double>& den,
                                std::complex<double> z) {
  const std::complex<double> q = horner(den, z);
  double scale = 0.0;
  for (double c : den) scale = std::max(scale, std::abs(c));
  const double zmag = std::max(1.0, std::abs(z));
  if (std::abs(q) < 1e-12 * scale * std::pow(zmag, static_cast<double>(den.size() - 1)))
    throw NumericalError("rational stem evaluated too close to a pole");
  return horner(num, z) / q;
}

// Root spheres (u, |v|) of a real polynomial via its monic companion matrix;
// conjugate pairs collapse onto one sphere with doubled multiplicity.
std::vector<SpectralSphere> real_poly_spheres(std::vector<double> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  const int deg = static_cast<int>(coeffs.size()) - 1;
  std::vector<SpectralSphere> raw;
  if (deg < 1) return raw;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i)
    comp(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalError("polynomial root finding failed");
  for (int i = 0; i < deg; ++i) {
    const std::complex<double> r = es.eigenvalues()(i);
    raw.push_back({r.real(), std::abs(r.imag()), 1});
  }
  return raw;
}

std::vector<SpectralSphere> merge_root_spheres(std::vector<SpectralSphere> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const SpectralSphere& a, const SpectralSphere& b) {
              return a.u != b.u ? a.u < b.u : a.v < b.v;
            });
  std::vector<SpectralSphere> out;
  for (const SpectralSphere& s : raw) {
    if (!out.empty() &&
        std::hypot(s.u - out.back().u, s.v - out.back().v) <= 1e-8) {
      out.back().multiplicity += s.multiplicity;
      continue;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

SliceFunction::SliceFunction(Kind kind, Algebra alg, FunctionSide side)
    : kind_(kind), algebra_(std::move(alg)), side_(side) {}

SliceFunction SliceFunction::series(FunctionSide side,
                                    std::vector<Multivector> coeffs) {
  if (coeffs.empty()) throw InputError("series needs at least one coefficient");
  for (const Multivector& c : coeffs)
    if (!(c.algebra() == coeffs.front().algebra()))
      throw InputError("series coefficients must share one algebra");
  if (side == FunctionSide::intrinsic)
    for (const Multivector& c : coeffs)
      if (!real_scalar(c))
        throw InputError("intrinsic series needs real scalar coefficients");
  SliceFunction f(Kind::series, coeffs.front().algebra(), side);
  f.coeffs_ = std::move(coeffs);
  return f;
}

SliceFunction SliceFunction::polynomial(const Algebra& alg,
                                        std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return rational(alg, std::move(coeffs), {1.0});
}

SliceFunction SliceFunction::rational(const Algebra& alg,
                                      std::vector<double> num,
                                      std::vector<double> den) {
  if (num.empty()) num.push_back(0.0);
  while (den.size() > 1 && den.back() == 0.0) den.pop_back();
  if (den.empty() || (den.size() == 1 && den[0] == 0.0))
    throw InputError("rational function needs a nonzero denominator");
  SliceFunction f(Kind::rational, alg, FunctionSide::intrinsic);
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.pole_spheres_ = merge_root_spheres(real_poly_spheres(f.den_));
  f.zero_spheres_ = merge_root_spheres(real_poly_spheres(f.num_));
  return f;
}

SliceFunction SliceFunction::exponential(const Algebra& alg) {
  return SliceFunction(Kind::exponential, alg, FunctionSide::intrinsic);
}

SliceFunction SliceFunction::sine(const Algebra& alg) {
  return SliceFunction(Kind::sine, alg, FunctionSide::intrinsic);
}

SliceFunction SliceFunction::cosine(const Algebra& alg) {
  return SliceFunction(Kind::cosine, alg, FunctionSide::intrinsic);
}

SliceFunction SliceFunction::product(const SliceFunction& f,
                                     const SliceFunction& g) {
  if (!(f.algebra() == g.algebra()))
    throw InputError("product factors must share one algebra");
  if (!f.intrinsic())
    throw InputError("left factor of a pointwise product must be intrinsic");
  SliceFunction out(Kind::product, g.algebra(), g.side());
  out.lhs_ = std::make_shared<SliceFunction>(f);
  out.rhs_ = std::make_shared<SliceFunction>(g);
  return out;
}

bool SliceFunction::intrinsic() const {
  switch (kind_) {
    case Kind::series:
      return std::all_of(coeffs_.begin(), coeffs_.end(), real_scalar);
    case Kind::product:
      return lhs_->intrinsic() && rhs_->intrinsic();
    default:
      return true;
  }
}

std::vector<SpectralSphere> SliceFunction::poles() const {
  if (kind_ != Kind::product) return pole_spheres_;
  std::vector<SpectralSphere> raw = lhs_->poles();
  const std::vector<SpectralSphere> more = rhs_->poles();
  raw.insert(raw.end(), more.begin(), more.end());
  return merge_root_spheres(std::move(raw));
}

std::vector<SpectralSphere> SliceFunction::zeros() const {
  if (kind_ != Kind::product) return zero_spheres_;
  std::vector<SpectralSphere> raw = lhs_->zeros();
  const std::vector<SpectralSphere> more = rhs_->zeros();
  raw.insert(raw.end(), more.begin(), more.end());
  return merge_root_spheres(std::move(raw));
}

std::complex<double> SliceFunction::stem(std::complex<double> z) const {
  switch (kind_) {
    case Kind::exponential:
      return std::exp(z);
    case Kind::sine:
      return std::sin(z);
    case Kind::cosine:
      return std::cos(z);
    case Kind::rational:
      for (const SpectralSphere& p : pole_spheres_)
        if (std::hypot(z.real() - p.u, std::abs(z.imag()) - p.v) < 1e-6)
          throw NumericalError("rational stem evaluated too close to a pole");
      return safe_ratio(num_, den_, z);
    case Kind::product:
      return lhs_->stem(z) * rhs_->stem(z);
    case Kind::series: {
      if (!intrinsic())
        throw InputError("stem is defined for intrinsic functions only");
      std::complex<double> acc(0.0, 0.0);
      std::complex<double> zp(1.0, 0.0);
      for (const Multivector& c : coeffs_) {
        acc += c.scalar_part() * zp;
        zp *= z;
      }
      return acc;
    }
  }
  throw NumericalError("unreachable function kind");
}

Multivector SliceFunction::eval(const Paravector& x) const {
  if (!(x.algebra() == algebra_))
    throw InputError("argument algebra does not match the function");
  if (kind_ == Kind::product) return lhs_->eval(x) * rhs_->eval(x);

  const SliceCoords sc = slice_coords(x);
  const ImaginaryUnit I = slice_unit(x, ImaginaryUnit::axis(algebra_, 1));
  const std::complex<double> z(sc.u, sc.v);

  if (kind_ == Kind::series) {
    Multivector acc = Multivector::zero(algebra_);
    std::complex<double> zp(1.0, 0.0);
    for (const Multivector& c : coeffs_) {
      const Multivector xm = slice_point(zp.real(), zp.imag(), I).embed();
      acc += side_ == FunctionSide::right ? c * xm : xm * c;
      zp *= z;
    }
    return acc;
  }
  const std::complex<double> w = stem(z);
  return slice_point(w.real(), w.imag(), I).embed();
}

Multivector representation_formula_eval(
    const std::function<Multivector(const Paravector&)>& f, FunctionSide side,
    double u, double v, const ImaginaryUnit& J, const ImaginaryUnit& I) {
  const Multivector fp = f(slice_point(u, v, J));
  const Multivector fm = f(slice_point(u, -v, J));
  const Multivector alpha = (fp + fm) * 0.5;
  const Multivector jm = J.embed();
  if (side == FunctionSide::right) {
    const Multivector beta = (fm - fp) * jm * 0.5;
    return alpha + beta * I.embed();
  }
  const Multivector beta = jm * (fm - fp) * 0.5;
  return alpha + I.embed() * beta;
}

Multivector representation_formula_eval(const SliceFunction& f, double u,
                                        double v, const ImaginaryUnit& J,
                                        const ImaginaryUnit& I) {
  return representation_formula_eval(
      [&f](const Paravector& p) { return f.eval(p); },
      f.side() == FunctionSide::right ? FunctionSide::right : FunctionSide::left,
      u, v, J, I);
}

double stem_residual(const std::function<Multivector(const Paravector&)>& f,
                     FunctionSide side, const Paravector& x) {
  const ImaginaryUnit I = slice_unit(x, ImaginaryUnit::axis(x.algebra(), 1));
  const SliceCoords sc = slice_coords(x);
  const double h = 1e-5;
  const auto at = [&](double u, double v) { return f(slice_point(u, v, I)); };
  const Multivector du = (at(sc.u + h, sc.v) - at(sc.u - h, sc.v)) * (0.5 / h);
  const Multivector dv = (at(sc.u, sc.v + h) - at(sc.u, sc.v - h)) * (0.5 / h);
  const Multivector res = side == FunctionSide::right
                              ? du + dv * I.embed()
                              : du + I.embed() * dv;
  return 0.5 * res.norm();
}

double stem_residual(const SliceFunction& f, const Paravector& x) {
  return stem_residual(
      [&f](const Paravector& p) { return f.eval(p); },
      f.side() == FunctionSide::right ? FunctionSide::right : FunctionSide::left,
      x);
}

}  // namespace sfc
