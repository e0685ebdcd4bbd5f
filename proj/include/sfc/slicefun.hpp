#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "sfc/hypercomplex.hpp"

namespace sfc {

/// Which slice regularity a function carries: left means the slice
/// Cauchy-Riemann operator annihilates it from the left (series sum x^m a_m),
/// right the mirror (series sum a_m x^m), intrinsic means real stem
/// coefficients so both hold and values stay in the slice of the argument.
enum class FunctionSide { left, right, intrinsic };

/// A slice-regular function given by a power series, a closed-form stem, a
/// real rational stem, or a pointwise product with an intrinsic left factor.
/// Evaluation runs through the complex stem of the argument's slice, which
/// is exact for every representation below.
class SliceFunction {
 public:
  /// Power series around 0 with multivector coefficients; coefficient m
  /// multiplies x^m from the side named by `side`.  FunctionSide::intrinsic
  /// demands real scalar coefficients.
  static SliceFunction series(FunctionSide side, std::vector<Multivector> coeffs);

  /// Real polynomial sum_k coeffs[k] x^k (intrinsic).
  static SliceFunction polynomial(const Algebra& alg, std::vector<double> coeffs);

  /// Real rational num(x) den(x)^{-1} (intrinsic); the spheres of the
  /// numerator and denominator roots are computed up front and reported by
  /// zeros() and poles().  Evaluation refuses points whose slice coordinates
  /// come within 1e-6 of a pole sphere.
  static SliceFunction rational(const Algebra& alg, std::vector<double> num,
                                std::vector<double> den);

  static SliceFunction exponential(const Algebra& alg);
  static SliceFunction sine(const Algebra& alg);
  static SliceFunction cosine(const Algebra& alg);

  /// Pointwise product x -> f(x) g(x); f must be intrinsic for the product
  /// to stay slice-regular on g's side.
  static SliceFunction product(const SliceFunction& f, const SliceFunction& g);

  const Algebra& algebra() const { return algebra_; }
  FunctionSide side() const { return side_; }

  /// True when values commute with the slice unit of the argument (real
  /// stem): closed forms, real polynomials/rationals, real series, products
  /// of such.
  bool intrinsic() const;

  /// Spheres of the denominator roots of every rational factor.
  std::vector<SpectralSphere> poles() const;

  /// Spheres of the numerator roots of every rational factor.
  std::vector<SpectralSphere> zeros() const;

  Multivector eval(const Paravector& x) const;

  /// Complex stem value at z; defined for intrinsic functions only.
  std::complex<double> stem(std::complex<double> z) const;

 private:
  enum class Kind { series, exponential, sine, cosine, rational, product };

  SliceFunction(Kind kind, Algebra alg, FunctionSide side);

  Kind kind_;
  Algebra algebra_;
  FunctionSide side_;
  std::vector<Multivector> coeffs_;
  std::vector<double> num_, den_;
  std::vector<SpectralSphere> pole_spheres_, zero_spheres_;
  std::shared_ptr<const SliceFunction> lhs_, rhs_;
};

/// Evaluates f at u + Iv from its values at u +- Jv through the
/// representation formula; side picks whether the reconstructing unit
/// multiplies from the left or the right.
Multivector representation_formula_eval(
    const std::function<Multivector(const Paravector&)>& f, FunctionSide side,
    double u, double v, const ImaginaryUnit& J, const ImaginaryUnit& I);
Multivector representation_formula_eval(const SliceFunction& f, double u,
                                        double v, const ImaginaryUnit& J,
                                        const ImaginaryUnit& I);

/// Central-difference norm of the slice Cauchy-Riemann operator at x (step
/// 1e-5): 0.5 |d_u f + I d_v f| for the left side, 0.5 |d_u f + (d_v f) I|
/// for the right.  Vanishes to discretization error on slice-regular
/// functions; order 1 on genuinely non-regular ones such as conjugation.
double stem_residual(const std::function<Multivector(const Paravector&)>& f,
                     FunctionSide side, const Paravector& x);
double stem_residual(const SliceFunction& f, const Paravector& x);

}  // namespace sfc
