#pragma once

#include "sfc/operator.hpp"
#include "sfc/slicefun.hpp"
#include "sfc/spectrum.hpp"

namespace sfc {

/// Value of a contour-integral evaluation together with its node count per
/// circle and an a-posteriori error estimate (distance to the half-node
/// value, floored at the rounding level of the accumulated terms).
struct CalculusResult {
  OperatorMatrix value;
  int nodes = 0;
  double err_estimate = 0.0;
};

/// Functional calculus of f on the tuple over the given contour:
///   left:  (1/2pi) sum_k S_L^{-1}(s_k, T) (w_k f(s_k))
///   right: (1/2pi) sum_k (f(s_k) w_k) S_R^{-1}(s_k, T)
/// f must be regular on the requested side (intrinsic works on both).  The
/// contour has to enclose every spectral sphere, each sphere and each pole of
/// f has to keep a tenth of the smallest circle radius away from the curve,
/// and poles must stay outside; violations raise GeometryError.
CalculusResult func_calc(const ParavectorOperator& T, const SliceFunction& f,
                         const Contour& contour, Side side);

/// Two-norm of f(T) computed through the left calculus minus f(T) through
/// the right one; f has to be intrinsic for both sides to be defined.
double left_right_agreement(const ParavectorOperator& T, const SliceFunction& f,
                            const Contour& contour);

/// Riesz projector data of the spectral subset enclosed by the contour: the
/// projector integrates the constant 1, the compression integrates x.  The
/// subset overload builds the contour around the selected spectral spheres
/// (indices into s_spectrum(T).spheres) in the slice of I.
struct RieszData {
  CalculusResult projector;
  CalculusResult compression;
};
RieszData riesz_projector(const ParavectorOperator& T, const Contour& contour);
RieszData riesz_projector(const ParavectorOperator& T,
                          const std::vector<int>& subset,
                          const ImaginaryUnit& I, double radius_cap = 0.25,
                          int nodes = 512);

/// Operator-valued reproducing integral
///   (1/2pi) sum_k (f(s_k) w_k) (conj(s_k) B - B p) (p^2 - 2 Re(s_k) p + |s_k|^2)^{-1}
/// which recovers B f(p) when the contour encloses the sphere of p (and B
/// itself for f = 1).  Throws GeometryError when the sphere of p is not
/// safely inside.
OperatorMatrix reproducing_integral(const OperatorMatrix& B, const Paravector& p,
                              const Contour& contour);
OperatorMatrix reproducing_integral(const OperatorMatrix& B, const Paravector& p,
                              const Contour& contour, const SliceFunction& f);

/// Two-norm of (f g)(T) - f(T) g(T) with f intrinsic and g left regular;
/// (f g)(T) and g(T) integrate over circles capped at radius_cap, f(T) over
/// the doubled cap, so agreement also witnesses contour independence.
double product_rule_residual(const ParavectorOperator& T,
                             const SliceFunction& f, const SliceFunction& g,
                             const ImaginaryUnit& I, double radius_cap = 0.25,
                             int nodes = 512);

/// Laplace representation of the S-resolvent at s with Re(s) beyond the
/// spectral norm bound:
///   left:  integral_0^inf exp(t (rep(T) - Re(s))) (cos(t v) - I_s sin(t v)) dt
///   right: the scalar factor composed before the exponential,
/// truncated where the integrand decays below rounding and evaluated by
/// composite 8-point Gauss-Legendre panels.  Throws InputError when Re(s)
/// does not dominate the norm bound.
OperatorMatrix laplace_resolvent(const ParavectorOperator& T,
                                 const Paravector& s, Side side,
                                 int panels = 64);

/// Point-level Cauchy reproduction of f at x over the contour, using the
/// second kernel form; the sphere of x must be safely enclosed.
Multivector cauchy_eval(const SliceFunction& f, const Paravector& x,
                        const Contour& contour, Side side);

}  // namespace sfc
