#include "sfc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "sfc/errors.hpp"

namespace sfc {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Geometry failure message carrying the offending margins.
std::string geometry_report(const char* what, double clearance, double needed) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s (clearance %.6e, required %.6e)", what,
                clearance, needed);
  return std::string(buf);
}

void require_side(const SliceFunction& f, Side side) {
  if (f.intrinsic()) return;
  if (side == Side::left && f.side() != FunctionSide::left)
    throw InputError("left calculus needs a left slice-regular function");
  if (side == Side::right && f.side() != FunctionSide::right)
    throw InputError("right calculus needs a right slice-regular function");
}

// Every spectral sphere keeps clear of the curve (and is enclosed when the
// full calculus is requested); poles stay outside the enclosed region.
void require_safe_contour(const ParavectorOperator& T, const Contour& c,
                          const std::vector<SpectralSphere>& poles,
                          bool enclose_all) {
  const double safe = contour_min_radius(c) / 10.0;
  for (const SpectralSphere& s : s_spectrum(T).spheres) {
    const double dist = contour_curve_distance(c, s.u, s.v);
    if (dist < safe)
      throw GeometryError(geometry_report(
          "contour passes too close to the spectrum", dist, safe));
    if (enclose_all && !contour_encloses(c, s.u, s.v))
      throw GeometryError("contour must enclose the whole spectrum");
  }
  for (const SpectralSphere& p : poles) {
    if (contour_encloses(c, p.u, p.v))
      throw GeometryError("contour encloses a pole of the function");
    const double dist = contour_curve_distance(c, p.u, p.v);
    if (dist < safe)
      throw GeometryError(
          geometry_report("contour passes too close to a pole", dist, safe));
  }
}

struct Quadrature {
  OperatorMatrix value;
  double term_norms = 0.0;
};

Quadrature integrate_calculus(const ParavectorOperator& T,
                              const SliceFunction& f, const Contour& c,
                              Side side, int nodes) {
  const int d = T.block_dim();
  Quadrature q{OperatorMatrix::zero(T.algebra(), d), 0.0};
  for (const ContourNode& node : contour_nodes(c, nodes)) {
    const Multivector fv = f.eval(node.point);
    const OperatorMatrix res = s_resolvent(T, node.point, side);
    const OperatorMatrix term =
        side == Side::left
            ? res * left_action_matrix(node.weight.embed() * fv, d)
            : left_action_matrix(fv * node.weight.embed(), d) * res;
    q.term_norms += frobenius_norm(term.matrix());
    q.value += term;
  }
  q.value *= 1.0 / two_pi;
  q.term_norms /= two_pi;
  return q;
}

// Shared core; the public entry point insists on full spectral enclosure
// while the Riesz path integrates over a partial contour on purpose.
CalculusResult calc_over_contour(const ParavectorOperator& T,
                                 const SliceFunction& f, const Contour& contour,
                                 Side side, bool enclose_all) {
  if (!(T.algebra() == f.algebra()) ||
      !(T.algebra() == contour.unit.algebra()))
    throw InputError("operator, function, and contour algebras differ");
  require_side(f, side);
  require_safe_contour(T, contour, f.poles(), enclose_all);

  const int nodes = contour.nodes_per_circle;
  const Quadrature full = integrate_calculus(T, f, contour, side, nodes);
  const Quadrature half =
      integrate_calculus(T, f, contour, side, std::max(4, nodes / 2));
  const double floor =
      std::numeric_limits<double>::epsilon() * full.term_norms;
  const double err = std::max(
      frobenius_norm((full.value - half.value).matrix()), floor);
  return {full.value, nodes, err};
}

}  // namespace

CalculusResult func_calc(const ParavectorOperator& T, const SliceFunction& f,
                         const Contour& contour, Side side) {
  return calc_over_contour(T, f, contour, side, true);
}

double left_right_agreement(const ParavectorOperator& T, const SliceFunction& f,
                            const Contour& contour) {
  if (!f.intrinsic())
    throw InputError("left/right comparison needs an intrinsic function");
  const CalculusResult lhs = func_calc(T, f, contour, Side::left);
  const CalculusResult rhs = func_calc(T, f, contour, Side::right);
  return two_norm_estimate(lhs.value - rhs.value);
}

RieszData riesz_projector(const ParavectorOperator& T, const Contour& contour) {
  const SliceFunction one = SliceFunction::polynomial(T.algebra(), {1.0});
  const SliceFunction x = SliceFunction::polynomial(T.algebra(), {0.0, 1.0});
  return {calc_over_contour(T, one, contour, Side::left, false),
          calc_over_contour(T, x, contour, Side::left, false)};
}

RieszData riesz_projector(const ParavectorOperator& T,
                          const std::vector<int>& subset,
                          const ImaginaryUnit& I, double radius_cap,
                          int nodes) {
  const Contour c = build_contour(s_spectrum(T), subset, I, radius_cap, nodes);
  return riesz_projector(T, c);
}

OperatorMatrix reproducing_integral(const OperatorMatrix& B, const Paravector& p,
                              const Contour& contour, const SliceFunction& f) {
  if (!(B.algebra() == p.algebra()) ||
      !(B.algebra() == contour.unit.algebra()) ||
      !(B.algebra() == f.algebra()))
    throw InputError("operand algebras differ");
  const SpectralSphere sp = sphere_of(p);
  if (!contour_encloses(contour, sp.u, sp.v))
    throw GeometryError("contour must enclose the sphere of the point");
  if (contour_curve_distance(contour, sp.u, sp.v) <
      contour_min_radius(contour) / 10.0)
    throw GeometryError("contour passes too close to the sphere of the point");

  const int d = B.block_dim();
  OperatorMatrix acc = OperatorMatrix::zero(B.algebra(), d);
  for (const ContourNode& node : contour_nodes(contour)) {
    const Multivector fw = f.eval(node.point) * node.weight.embed();
    const OperatorMatrix mid =
        left_action_matrix(conjugate(node.point), d) * B -
        B * left_action_matrix(p, d);
    const Paravector w = paravector_inverse(sphere_quadratic(p, node.point));
    acc += left_action_matrix(fw, d) * mid * left_action_matrix(w, d);
  }
  return acc * (1.0 / two_pi);
}

OperatorMatrix reproducing_integral(const OperatorMatrix& B, const Paravector& p,
                              const Contour& contour) {
  return reproducing_integral(B, p, contour,
                        SliceFunction::polynomial(B.algebra(), {1.0}));
}

double product_rule_residual(const ParavectorOperator& T,
                             const SliceFunction& f, const SliceFunction& g,
                             const ImaginaryUnit& I, double radius_cap,
                             int nodes) {
  const Spectrum spec = s_spectrum(T);
  std::vector<int> all(spec.spheres.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
  const Contour inner = build_contour(spec, all, I, radius_cap, nodes);
  const Contour outer = build_contour(spec, all, I, 2.0 * radius_cap, nodes);

  const SliceFunction fg = SliceFunction::product(f, g);
  const OperatorMatrix lhs = func_calc(T, fg, inner, Side::left).value;
  const OperatorMatrix rhs = func_calc(T, f, outer, Side::left).value *
                             func_calc(T, g, inner, Side::left).value;
  return two_norm_estimate(lhs - rhs);
}

OperatorMatrix laplace_resolvent(const ParavectorOperator& T,
                                 const Paravector& s, Side side, int panels) {
  if (panels < 1) throw InputError("need at least one quadrature panel");
  const double bound = operator_norm_bound(T);
  const SliceCoords sc = slice_coords(s);
  if (!(sc.u > bound))
    throw InputError("Laplace representation needs Re(s) above the norm bound");
  const ImaginaryUnit I = slice_unit(s, ImaginaryUnit::axis(s.algebra(), 1));

  const int d = T.block_dim();
  const OperatorMatrix rm = rep_matrix(T);
  Eigen::MatrixXd decayed = rm.matrix();
  decayed.diagonal().array() -= sc.u;
  const double t_max = 40.0 / (sc.u - bound);

  // 8-point Gauss-Legendre abscissae and weights on [-1, 1].
  static const double gl_x[8] = {
      -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
      -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
      0.7966664774136267,  0.9602898564975363};
  static const double gl_w[8] = {
      0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
      0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
      0.2223810344533745, 0.1012285362903763};

  OperatorMatrix acc = OperatorMatrix::zero(T.algebra(), d);
  const double h = t_max / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int k = 0; k < 8; ++k) {
      const double t = mid + 0.5 * h * gl_x[k];
      // exp(t (rep - Re(s))) carries the e^{-t Re(s)} decay; the slice
      // rotation cos(t v) - I sin(t v) is the rest of e^{-t s}.
      const Eigen::MatrixXd em = (t * decayed).exp();
      const Paravector rot = slice_point(std::cos(t * sc.v),
                                         -std::sin(t * sc.v), I);
      const OperatorMatrix term =
          side == Side::left
              ? OperatorMatrix(T.algebra(), d, em) * left_action_matrix(rot, d)
              : left_action_matrix(rot, d) * OperatorMatrix(T.algebra(), d, em);
      acc += term * (0.5 * h * gl_w[k]);
    }
  }
  return acc;
}

Multivector cauchy_eval(const SliceFunction& f, const Paravector& x,
                        const Contour& contour, Side side) {
  require_side(f, side);
  const SpectralSphere sx = sphere_of(x);
  if (!contour_encloses(contour, sx.u, sx.v))
    throw GeometryError("contour must enclose the sphere of the point");
  if (contour_curve_distance(contour, sx.u, sx.v) <
      contour_min_radius(contour) / 10.0)
    throw GeometryError("contour passes too close to the sphere of the point");

  const Algebra& alg = x.algebra();
  Multivector acc = Multivector::zero(alg);
  for (const ContourNode& node : contour_nodes(contour)) {
    const Multivector fv = f.eval(node.point);
    if (side == Side::left) {
      const Multivector kernel =
          cauchy_kernel_left(node.point, x, KernelForm::two);
      acc += kernel * (node.weight.embed() * fv);
    } else {
      const Multivector kernel =
          cauchy_kernel_right(node.point, x, KernelForm::two);
      acc += (fv * node.weight.embed()) * kernel;
    }
  }
  return acc * (1.0 / two_pi);
}

}  // namespace sfc
