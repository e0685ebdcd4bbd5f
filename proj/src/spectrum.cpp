#include "sfc/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "sfc/errors.hpp"

namespace sfc {
namespace {

// Sort eigenvalue-derived spheres by (u, v), then merge clusters whose
// members sit within 1e-8 of the running centroid.  Centroid averaging keeps
// the merged representative independent of tiny eigenvalue perturbations.
Spectrum merge_spheres(std::vector<SpectralSphere> raw, std::string source) {
  std::sort(raw.begin(), raw.end(), [](const SpectralSphere& a, const SpectralSphere& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  Spectrum out;
  out.source = std::move(source);
  for (const SpectralSphere& s : raw) {
    if (!out.spheres.empty()) {
      SpectralSphere& last = out.spheres.back();
      if (std::hypot(s.u - last.u, s.v - last.v) <= 1e-8) {
        const double total = static_cast<double>(last.multiplicity + s.multiplicity);
        last.u = (last.u * last.multiplicity + s.u * s.multiplicity) / total;
        last.v = (last.v * last.multiplicity + s.v * s.multiplicity) / total;
        last.multiplicity += s.multiplicity;
        continue;
      }
    }
    out.spheres.push_back(s);
  }
  return out;
}

Spectrum spheres_of_eigenvalues(const Eigen::MatrixXd& m, std::string source) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigenvalue iteration failed");
  std::vector<SpectralSphere> raw;
  raw.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const std::complex<double> lambda = es.eigenvalues()(i);
    raw.push_back({lambda.real(), std::abs(lambda.imag()), 1});
  }
  return merge_spheres(std::move(raw), std::move(source));
}

// Distance between the slice points (u1, +-v1) and (u2, +-v2); the cross
// pairing (v1, -v2) gives the v1 + v2 branch.
double slice_gap(const SpectralSphere& a, const SpectralSphere& b) {
  const double du = a.u - b.u;
  return std::min(std::hypot(du, a.v - b.v), std::hypot(du, a.v + b.v));
}

// Geometry failure message carrying the offending margins.
std::string geometry_report(const char* what, double clearance, double needed) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s (clearance %.6e, required %.6e)", what,
                clearance, needed);
  return std::string(buf);
}

}  // namespace

double Spectrum::bounding_radius() const {
  double r = 0.0;
  for (const SpectralSphere& s : spheres) r = std::max(r, std::hypot(s.u, s.v));
  return r;
}

Spectrum s_spectrum(const ParavectorOperator& T) {
  return spheres_of_eigenvalues(rep_matrix(T).matrix(), "S");
}

double q_singularity_margin(const ParavectorOperator& T, double u, double v) {
  const OperatorMatrix rm = rep_matrix(T);
  const Eigen::MatrixXd& r = rm.matrix();
  const Eigen::MatrixXd a =
      r * r - 2.0 * u * r +
      (u * u + v * v) * Eigen::MatrixXd::Identity(r.rows(), r.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Spectrum f_spectrum(const ParavectorOperator& T) {
  if (!T.commuting())
    throw InputError("F-spectrum needs a commuting tuple");
  const int d = T.block_dim();
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(d, d);
  for (const Eigen::MatrixXd& c : T.components()) sq += c * c;
  // Companion form of z^2 I - z (2 T_0) + sum_c T_c^2.
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  comp.topRightCorner(d, d) = Eigen::MatrixXd::Identity(d, d);
  comp.bottomLeftCorner(d, d) = -sq;
  comp.bottomRightCorner(d, d) = 2.0 * T.components()[0];
  return spheres_of_eigenvalues(comp, "F");
}

double spectrum_hausdorff(const Spectrum& a, const Spectrum& b) {
  const auto directed = [](const Spectrum& x, const Spectrum& y) {
    double worst = 0.0;
    for (const SpectralSphere& s : x.spheres) {
      double best = std::numeric_limits<double>::infinity();
      for (const SpectralSphere& t : y.spheres)
        best = std::min(best, std::hypot(s.u - t.u, s.v - t.v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (a.spheres.empty() && b.spheres.empty()) return 0.0;
  if (a.spheres.empty() || b.spheres.empty())
    return std::numeric_limits<double>::infinity();
  return std::max(directed(a, b), directed(b, a));
}

Contour build_contour(const Spectrum& spec, const std::vector<int>& selected,
                      const ImaginaryUnit& I, double radius_cap,
                      int nodes_per_circle) {
  if (selected.empty()) throw InputError("contour needs at least one selected sphere");
  if (!(radius_cap > 0.0)) throw InputError("radius cap must be positive");
  if (nodes_per_circle < 4) throw InputError("need at least 4 nodes per circle");
  const int count = static_cast<int>(spec.spheres.size());
  std::vector<bool> chosen(static_cast<std::size_t>(count), false);
  for (int k : selected) {
    if (k < 0 || k >= count) throw InputError("selected sphere index out of range");
    if (chosen[static_cast<std::size_t>(k)]) throw InputError("duplicate sphere selection");
    chosen[static_cast<std::size_t>(k)] = true;
  }

  constexpr double inf = std::numeric_limits<double>::infinity();

  // Selected spheres start as singleton groups; whenever two groups' circles
  // would collide, the groups fuse and share one axis-centered circle, so
  // arbitrarily entangled (but separable) spectra still get a contour with
  // winding number one around every selected sphere.
  std::vector<std::vector<int>> groups;
  for (int k = 0; k < count; ++k)
    if (chosen[static_cast<std::size_t>(k)]) groups.push_back({k});

  struct TaggedCircle {
    ContourCircle circle;
    std::size_t group;
  };
  std::vector<TaggedCircle> circles;

  const auto build_circles = [&] {
    circles.clear();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const std::vector<int>& members = groups[g];
      std::vector<bool> in_group(static_cast<std::size_t>(count), false);
      for (int k : members) in_group[static_cast<std::size_t>(k)] = true;

      if (members.size() == 1) {
        const SpectralSphere& s =
            spec.spheres[static_cast<std::size_t>(members[0])];
        double gap_all = inf;  // slice gap to every other sphere
        double gap_unselected = inf;
        for (int j = 0; j < count; ++j) {
          if (j == members[0]) continue;
          const SpectralSphere& t = spec.spheres[static_cast<std::size_t>(j)];
          const double gp = slice_gap(s, t);
          gap_all = std::min(gap_all, gp);
          if (!chosen[static_cast<std::size_t>(j)])
            gap_unselected = std::min(gap_unselected, gp);
        }
        if (gap_unselected < 1e-6)
          throw GeometryError(geometry_report(
              "selected sphere is not separable from the rest", gap_unselected,
              1e-6));
        const double r = std::min(radius_cap, gap_all / 3.0);
        if (s.v >= 1.1 * r) {
          // Construction keeps every other slice point at least 3r away, so
          // excluded spheres clear the circles by 2r; bail out if that
          // margin ever erodes below 1.9r.
          if (gap_unselected < 2.9 * r)
            throw GeometryError(geometry_report(
                "contour passes too close to an excluded sphere",
                gap_unselected, 2.9 * r));
          circles.push_back({{s.u, s.v, r}, g});
          circles.push_back({{s.u, -s.v, r}, g});
          continue;
        }
      }

      // One circle around the group's real-axis midpoint, covering every
      // member slice point, with a third of the remaining clearance as its
      // margin.  (A singleton near-real sphere is the one-member case.)
      double lo = inf, hi = -inf;
      for (int k : members) {
        lo = std::min(lo, spec.spheres[static_cast<std::size_t>(k)].u);
        hi = std::max(hi, spec.spheres[static_cast<std::size_t>(k)].u);
      }
      const double uc = 0.5 * (lo + hi);
      double core = 0.0;
      for (int k : members) {
        const SpectralSphere& t = spec.spheres[static_cast<std::size_t>(k)];
        core = std::max(core, std::hypot(t.u - uc, t.v));
      }
      double d_other = inf, d_excluded = inf;
      for (int j = 0; j < count; ++j) {
        if (in_group[static_cast<std::size_t>(j)]) continue;
        const SpectralSphere& t = spec.spheres[static_cast<std::size_t>(j)];
        const double dist = std::hypot(t.u - uc, t.v);
        d_other = std::min(d_other, dist);
        if (!chosen[static_cast<std::size_t>(j)])
          d_excluded = std::min(d_excluded, dist);
      }
      if (d_excluded - core < 3e-6)
        throw GeometryError(geometry_report(
            "selected sphere is not separable from the rest",
            d_excluded - core, 3e-6));
      const double margin =
          std::max(0.0, std::min(radius_cap, (d_other - core) / 3.0));
      if (d_excluded - (core + margin) < 1.9 * margin)
        throw GeometryError(geometry_report(
            "contour passes too close to an excluded sphere",
            d_excluded - (core + margin), 1.9 * margin));
      circles.push_back({{uc, 0.0, core + margin}, g});
    }
  };

  const std::size_t max_rounds = groups.size() + 1;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    build_circles();
    std::size_t merge_a = groups.size(), merge_b = groups.size();
    for (std::size_t i = 0; i < circles.size() && merge_a == groups.size(); ++i)
      for (std::size_t j = i + 1; j < circles.size(); ++j) {
        if (circles[i].group == circles[j].group) continue;
        const ContourCircle& a = circles[i].circle;
        const ContourCircle& b = circles[j].circle;
        if (std::hypot(a.center_u - b.center_u, a.center_v - b.center_v) <=
            a.radius + b.radius + 1e-9) {
          merge_a = std::min(circles[i].group, circles[j].group);
          merge_b = std::max(circles[i].group, circles[j].group);
          break;
        }
      }
    if (merge_a == groups.size()) break;
    std::vector<int>& into = groups[merge_a];
    into.insert(into.end(), groups[merge_b].begin(), groups[merge_b].end());
    std::sort(into.begin(), into.end());
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(merge_b));
  }

  Contour out{I, {}, nodes_per_circle};
  for (const TaggedCircle& c : circles) out.circles.push_back(c.circle);

  for (std::size_t i = 0; i < out.circles.size(); ++i)
    for (std::size_t j = i + 1; j < out.circles.size(); ++j) {
      const ContourCircle& a = out.circles[i];
      const ContourCircle& b = out.circles[j];
      const double dist =
          std::hypot(a.center_u - b.center_u, a.center_v - b.center_v);
      if (dist < a.radius + b.radius + 1e-12)
        throw GeometryError(geometry_report("contour circles intersect", dist,
                                            a.radius + b.radius));
    }

  for (int k = 0; k < count; ++k) {
    const SpectralSphere& s = spec.spheres[static_cast<std::size_t>(k)];
    if (chosen[static_cast<std::size_t>(k)]) {
      if (!contour_encloses(out, s.u, s.v))
        throw GeometryError("contour fails to enclose a selected sphere");
    } else {
      for (const ContourCircle& c : out.circles) {
        const double d = std::min(std::hypot(s.u - c.center_u, s.v - c.center_v),
                                  std::hypot(s.u - c.center_u, -s.v - c.center_v));
        if (d <= c.radius)
          throw GeometryError("contour fails to exclude a de-selected sphere");
      }
    }
  }
  return out;
}

std::vector<ContourNode> contour_nodes(const Contour& c) {
  return contour_nodes(c, c.nodes_per_circle);
}

std::vector<ContourNode> contour_nodes(const Contour& c, int nodes) {
  if (nodes < 4) throw InputError("need at least 4 nodes per circle");
  std::vector<ContourNode> out;
  out.reserve(c.circles.size() * static_cast<std::size_t>(nodes));
  const double h = 2.0 * std::numbers::pi / nodes;
  for (std::size_t ci = 0; ci < c.circles.size(); ++ci) {
    const ContourCircle& circ = c.circles[ci];
    for (int k = 0; k < nodes; ++k) {
      const double theta = h * k;
      const double ct = std::cos(theta);
      const double st = std::sin(theta);
      // Slice line element of the ccw circle: r e^{I theta} d theta.
      out.push_back(ContourNode{
          slice_point(circ.center_u + circ.radius * ct,
                      circ.center_v + circ.radius * st, c.unit),
          slice_point(circ.radius * ct * h, circ.radius * st * h, c.unit),
          static_cast<int>(ci)});
    }
  }
  return out;
}

bool contour_encloses(const Contour& c, double u, double v) {
  const auto inside = [&](double pu, double pv) {
    for (const ContourCircle& circ : c.circles)
      if (std::hypot(pu - circ.center_u, pv - circ.center_v) < circ.radius)
        return true;
    return false;
  };
  return inside(u, v) && inside(u, -v);
}

double contour_curve_distance(const Contour& c, double u, double v) {
  double best = std::numeric_limits<double>::infinity();
  for (const ContourCircle& circ : c.circles)
    for (double sv : {v, -v}) {
      const double d = std::hypot(u - circ.center_u, sv - circ.center_v);
      best = std::min(best, std::abs(d - circ.radius));
    }
  return best;
}

double contour_min_radius(const Contour& c) {
  double r = std::numeric_limits<double>::infinity();
  for (const ContourCircle& circ : c.circles) r = std::min(r, circ.radius);
  return r;
}

}  // namespace sfc
