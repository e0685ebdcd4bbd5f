#pragma once

#include <string>
#include <vector>

#include "sfc/operator.hpp"

namespace sfc {

/// A finite set of spectral spheres, sorted by (u, v), with the reduction
/// that produced it ("S" for the eigenvalue reduction of the full matrix
/// representation, "F" for the commuting companion pencil).
struct Spectrum {
  std::vector<SpectralSphere> spheres;
  std::string source = "S";

  /// Largest distance of a sphere from the origin of the (u, v) half-plane.
  double bounding_radius() const;
};

/// S-spectrum of the tuple: every eigenvalue a + ib of rep(T) contributes to
/// the sphere (a, |b|); spheres within 1e-8 merge, multiplicities add (a
/// conjugate pair contributes 2).  Throws NumericalError if the eigenvalue
/// iteration fails.
Spectrum s_spectrum(const ParavectorOperator& T);

/// Smallest singular value of rep(T)^2 - 2 u rep(T) + (u^2 + v^2); vanishes
/// exactly when the sphere point (u, v) meets the S-spectrum.
double q_singularity_margin(const ParavectorOperator& T, double u, double v);

/// F-spectrum of a commuting tuple through the companion linearization of
/// the pencil z^2 - 2 z T_0 + sum_c T_c^2.  Throws InputError when the tuple
/// does not commute.  Equals the S-spectrum as a sphere set.
Spectrum f_spectrum(const ParavectorOperator& T);

/// Hausdorff distance between the two sphere sets (multiplicity ignored).
double spectrum_hausdorff(const Spectrum& a, const Spectrum& b);

/// One counterclockwise circle in the slice C_I; center_v < 0 names the
/// mirror circle of a symmetric pair.
struct ContourCircle {
  double center_u = 0.0;
  double center_v = 0.0;
  double radius = 0.0;
};

/// A quadrature contour: disjoint ccw circles in a fixed slice, symmetric
/// under v -> -v, enclosing a chosen subset of spectral spheres.
struct Contour {
  ImaginaryUnit unit;
  std::vector<ContourCircle> circles;
  int nodes_per_circle = 512;
};

/// One trapezoidal node: the slice point s_k and the weight carrying the
/// slice line element (r e^{I theta} d theta, without the 1/(2 pi)).
struct ContourNode {
  Paravector point;
  Paravector weight;
  int circle = 0;
};

/// Builds circles around the selected spheres (indices into spec.spheres):
/// a symmetric circle pair per sphere, merged into one circle around
/// (u, 0) when the sphere sits too close to the real axis.  The radius is
/// min(radius_cap, one third of the slice gap to every other sphere).
/// Selected spheres whose circles would collide fuse into one axis-centered
/// circle covering the whole group, so any separable selection succeeds.
/// Throws GeometryError when a non-selected sphere sits closer than 1e-6 to
/// a selected one (non-separable) or when the circles cannot stay disjoint.
Contour build_contour(const Spectrum& spec, const std::vector<int>& selected,
                      const ImaginaryUnit& I, double radius_cap = 0.25,
                      int nodes_per_circle = 512);

/// Trapezoidal nodes of every circle (`nodes` overrides nodes_per_circle).
std::vector<ContourNode> contour_nodes(const Contour& c);
std::vector<ContourNode> contour_nodes(const Contour& c, int nodes);

/// True when both slice points (u, +-v) lie inside the union of the disks.
bool contour_encloses(const Contour& c, double u, double v);

/// Distance from the sphere's slice points to the nearest circle curve.
double contour_curve_distance(const Contour& c, double u, double v);

double contour_min_radius(const Contour& c);

}  // namespace sfc
