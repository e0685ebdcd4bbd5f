#include "sfc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sfc/calculus.hpp"
#include "sfc/io.hpp"
#include "sfc/randomgen.hpp"

namespace sfc {
namespace {

// Worst case over a batch of probes, remembering which probe attained it.
struct Worst {
  double residual = -1.0;
  double cond = 1.0;
  std::optional<Paravector> s;
  std::optional<Paravector> p;
  bool all_within = true;

  void feed(double r, double c, double base_tol,
            const std::optional<Paravector>& sp,
            const std::optional<Paravector>& pp, bool cond_scaled) {
    if (r > residual) {
      residual = r;
      cond = c;
      s = sp;
      p = pp;
    }
    if (r > base_tol * (cond_scaled ? c : 1.0)) all_within = false;
  }
};

class InstanceSuite {
 public:
  InstanceSuite(const VerifyConfig& config, int index)
      : config_(config),
        rng_(Rng(config.seed).child(static_cast<std::uint64_t>(index))),
        lane_((index / 3) % 4),
        alg_(lane_ == 3 ? Algebra::quaternions() : Algebra::clifford(lane_ + 1)),
        d_(lane_ == 3 ? 4 : 2 + index % 3),
        T_(lane_ == 3 ? random_quaternion_operator(d_, rng_)
                      : random_operator(alg_, d_, rng_)),
        spec_(s_spectrum(T_)) {}

  std::vector<VerifyRecord> run() {
    classical();
    two_sided();
    finite_sums();
    kernel_forms();
    commuting_cross_checks();
    reproducing_integrals();
    projector_suite();
    product_rule();
    laplace();
    slice_independence();
    return std::move(records_);
  }

 private:
  double base_tol(double documented) const {
    return config_.tol_override.value_or(documented);
  }

  void push(const std::string& identity, const Worst& w, double documented,
            bool cond_scaled) {
    const double base = base_tol(documented);
    VerifyRecord rec;
    rec.identity = identity;
    rec.seed = rng_.seed();
    rec.s = w.s;
    rec.p = w.p;
    rec.residual = w.residual;
    rec.cond = w.cond;
    rec.tol = base * (cond_scaled ? w.cond : 1.0);
    // With an override in force, re-judge against it; otherwise every probe
    // already passed its own condition-scaled bound.
    rec.pass = config_.tol_override
                   ? w.residual <= rec.tol
                   : w.all_within;
    records_.push_back(std::move(rec));
  }

  void push_single(const std::string& identity, double residual, double cond,
                   double documented, bool cond_scaled,
                   std::optional<Paravector> s = std::nullopt,
                   std::optional<Paravector> p = std::nullopt) {
    Worst w;
    w.feed(residual, cond, base_tol(documented), s, p, cond_scaled);
    push(identity, w, documented, cond_scaled);
  }

  void classical() {
    Worst left, right;
    for (int i = 0; i < config_.scalars_per_instance; ++i) {
      const Paravector s = scalar_with_margin(spec_, alg_, rng_);
      const ClassicalResiduals r = resolvent_equation_residuals(T_, s);
      left.feed(r.left, r.cond, base_tol(1e-9), s, std::nullopt, true);
      right.feed(r.right, r.cond, base_tol(1e-9), s, std::nullopt, true);
    }
    push("classical_left", left, 1e-9, true);
    push("classical_right", right, 1e-9, true);
  }

  void two_sided() {
    Worst f1, f2, agree, pseudo;
    for (int i = 0; i < config_.scalars_per_instance; ++i) {
      const auto [s, p] = scalar_pair_with_margin(spec_, alg_, rng_);
      const EquationResidual r1 =
          two_sided_resolvent_residual(T_, s, p, EquationForm::one);
      const EquationResidual r2 =
          two_sided_resolvent_residual(T_, s, p, EquationForm::two);
      const EquationResidual ra = two_sided_resolvent_agreement(T_, s, p);
      const EquationResidual rp = pseudo_commutation_residual(T_, s, p);
      f1.feed(r1.residual, r1.cond, base_tol(1e-9), s, p, true);
      f2.feed(r2.residual, r2.cond, base_tol(1e-9), s, p, true);
      agree.feed(ra.residual, ra.cond, base_tol(1e-9), s, p, true);
      pseudo.feed(rp.residual, rp.cond, base_tol(1e-10), s, p, true);
    }
    push("two_sided_form_one", f1, 1e-9, true);
    push("two_sided_form_two", f2, 1e-9, true);
    push("two_sided_forms_agree", agree, 1e-9, true);
    push("pseudo_commutation", pseudo, 1e-10, true);
  }

  void finite_sums() {
    const OperatorMatrix A(
        alg_, d_, random_matrix(alg_.dim() * d_, alg_.dim() * d_, rng_));
    // The truncated-sum identity needs |p| < |s| so the powers of p stay
    // dominated; swap the sampled pair into that order.
    auto [s, p] = scalar_pair_with_margin(spec_, alg_, rng_);
    if (p.norm() > s.norm()) std::swap(s, p);
    push_single("finite_sum_left", finite_sum_residual(A, s, p, 8, Side::left),
                1.0, 1e-11, false, s, p);
    push_single("finite_sum_right",
                finite_sum_residual(A, s, p, 8, Side::right), 1.0, 1e-11,
                false, s, p);
  }

  void kernel_forms() {
    Worst w;
    for (int i = 0; i < 50; ++i) {
      Paravector x = random_paravector(alg_, rng_, 1.5);
      Paravector s = random_paravector(alg_, rng_, 1.5);
      const auto apart = [&] {
        const SpectralSphere ss = sphere_of(s);
        const SliceCoords xc = slice_coords(x);
        return std::hypot(xc.u - ss.u, xc.v - ss.v) >= 0.05;
      };
      while (!apart()) s = random_paravector(alg_, rng_, 1.5);
      const double r =
          (cauchy_kernel_left(s, x, KernelForm::one) -
           cauchy_kernel_left(s, x, KernelForm::two))
              .norm();
      w.feed(r, 1.0, base_tol(1e-11), s, x, false);
    }
    push("kernel_forms", w, 1e-11, false);
  }

  void commuting_cross_checks() {
    const ParavectorOperator C = commuting_operator(alg_, d_, rng_);
    const Spectrum sc = s_spectrum(C);
    Worst left, right;
    for (int i = 0; i < config_.scalars_per_instance; ++i) {
      const Paravector s = scalar_with_margin(sc, alg_, rng_);
      const SResolvent plain_l = s_resolvent_full(C, s, Side::left);
      const SResolvent sym_l = sc_resolvent_full(C, s, Side::left);
      const SResolvent plain_r = s_resolvent_full(C, s, Side::right);
      const SResolvent sym_r = sc_resolvent_full(C, s, Side::right);
      left.feed(two_norm_estimate(plain_l.value - sym_l.value),
                std::max(plain_l.cond, sym_l.cond), base_tol(1e-10), s,
                std::nullopt, true);
      right.feed(two_norm_estimate(plain_r.value - sym_r.value),
                 std::max(plain_r.cond, sym_r.cond), base_tol(1e-10), s,
                 std::nullopt, true);
    }
    push("sc_resolvent_left", left, 1e-10, true);
    push("sc_resolvent_right", right, 1e-10, true);

    push_single("f_spectrum_match",
                spectrum_hausdorff(s_spectrum(C), f_spectrum(C)), 1.0, 1e-8,
                false);
  }

  void reproducing_integrals() {
    const OperatorMatrix B(
        alg_, d_, random_matrix(alg_.dim() * d_, alg_.dim() * d_, rng_));
    const Paravector p =
        slice_point(rng_.uniform_pm1(), 0.2 + 0.8 * rng_.uniform(),
                    random_imaginary_unit(alg_, rng_));
    Spectrum around;
    around.spheres.push_back(sphere_of(p));
    const Contour c = build_contour(around, {0}, ImaginaryUnit::axis(alg_, 1),
                                    0.25, config_.nodes);

    push_single("reproducing_recovery", two_norm_estimate(reproducing_integral(B, p, c) - B),
                1.0, 1e-9, false, std::nullopt, p);

    Worst w;
    for (const SliceFunction& f :
         {SliceFunction::polynomial(alg_, {0.0, 0.0, 1.0}),
          SliceFunction::exponential(alg_)}) {
      const OperatorMatrix want = B * left_action_matrix(f.eval(p), d_);
      w.feed(two_norm_estimate(reproducing_integral(B, p, c, f) - want), 1.0,
             base_tol(1e-9), std::nullopt, p, false);
    }
    push("reproducing_compose", w, 1e-9, false);
  }

  void projector_suite() {
    const ParavectorOperator G = two_group_operator(alg_, 2, rng_);
    const Spectrum spec = s_spectrum(G);
    std::vector<int> low, high;
    for (std::size_t k = 0; k < spec.spheres.size(); ++k)
      (spec.spheres[k].u < 0 ? low : high).push_back(static_cast<int>(k));
    const ImaginaryUnit I = ImaginaryUnit::axis(alg_, 1);
    const RieszData a = riesz_projector(
        G, build_contour(spec, low, I, 0.25, config_.nodes));
    const RieszData b = riesz_projector(
        G, build_contour(spec, high, I, 0.25, config_.nodes));
    const OperatorMatrix& p1 = a.projector.value;
    const OperatorMatrix& p2 = b.projector.value;
    const OperatorMatrix rm = rep_matrix(G);

    double r = two_norm_estimate(p1 * p1 - p1);
    r = std::max(r, two_norm_estimate(p2 * p2 - p2));
    r = std::max(r, two_norm_estimate(p1 + p2 - OperatorMatrix::identity(
                                                    alg_, G.block_dim())));
    r = std::max(r, two_norm_estimate(p1 * rm - rm * p1));
    r = std::max(r, two_norm_estimate(a.compression.value - rm * p1));
    r = std::max(r, two_norm_estimate(b.compression.value - rm * p2));
    push_single("projector_suite", r, 1.0, 1e-8, false);
  }

  void product_rule() {
    const ImaginaryUnit I = ImaginaryUnit::axis(alg_, 1);
    const SliceFunction x = SliceFunction::polynomial(alg_, {0.0, 1.0});
    const SliceFunction x2 = SliceFunction::polynomial(alg_, {0.0, 0.0, 1.0});
    const SliceFunction xe1 = SliceFunction::series(
        FunctionSide::left,
        {Multivector::basis(alg_, 1), Multivector::one(alg_)});
    // R_1 has no second generator; fall back to e1 there.
    const int blade = alg_.dim() > 2 ? 2 : 1;
    const SliceFunction xe2 = SliceFunction::series(
        FunctionSide::left,
        {Multivector::zero(alg_), Multivector::basis(alg_, blade)});

    Worst w;
    w.feed(product_rule_residual(T_, x, x, I, 0.25, config_.nodes), 1.0,
           base_tol(1e-7), std::nullopt, std::nullopt, false);
    w.feed(product_rule_residual(T_, SliceFunction::exponential(alg_), xe1, I,
                                 0.25, config_.nodes),
           1.0, base_tol(1e-7), std::nullopt, std::nullopt, false);
    w.feed(product_rule_residual(T_, x2, xe2, I, 0.25, config_.nodes), 1.0,
           base_tol(1e-7), std::nullopt, std::nullopt, false);
    push("product_rule", w, 1e-7, false);
  }

  void laplace() {
    const double bound = operator_norm_bound(T_);
    const Paravector s = slice_point(2.0 * bound + 0.5, 0.7,
                                     random_imaginary_unit(alg_, rng_));
    Worst w;
    for (Side side : {Side::left, Side::right}) {
      const double r = two_norm_estimate(laplace_resolvent(T_, s, side) -
                                         s_resolvent(T_, s, side));
      w.feed(r, 1.0, base_tol(1e-6), s, std::nullopt, false);
    }
    push("laplace", w, 1e-6, false);
  }

  void slice_independence() {
    const SliceFunction f = SliceFunction::exponential(alg_);
    const auto contour = [&](const ImaginaryUnit& I, double cap) {
      std::vector<int> all(spec_.spheres.size());
      for (std::size_t k = 0; k < all.size(); ++k)
        all[k] = static_cast<int>(k);
      return build_contour(spec_, all, I, cap, config_.nodes);
    };
    const CalculusResult a =
        func_calc(T_, f, contour(ImaginaryUnit::axis(alg_, 1), 0.25),
                  Side::left);
    const CalculusResult b =
        func_calc(T_, f, contour(random_imaginary_unit(alg_, rng_), 0.18),
                  Side::left);
    const double gap = two_norm_estimate(a.value - b.value);
    const double documented = 2.0 * (a.err_estimate + b.err_estimate);
    VerifyRecord rec;
    rec.identity = "slice_independence";
    rec.seed = rng_.seed();
    rec.residual = gap;
    rec.cond = 1.0;
    rec.tol = config_.tol_override.value_or(documented);
    rec.pass = gap <= rec.tol;
    records_.push_back(std::move(rec));
  }

  const VerifyConfig& config_;
  Rng rng_;
  int lane_;
  Algebra alg_;
  int d_;
  ParavectorOperator T_;
  Spectrum spec_;
  std::vector<VerifyRecord> records_;
};

}  // namespace

std::vector<VerifyRecord> run_verification(const VerifyConfig& config) {
  std::vector<VerifyRecord> out;
  for (int k = 0; k < config.instances; ++k) {
    InstanceSuite suite(config, k);
    std::vector<VerifyRecord> part = suite.run();
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

bool all_pass(const std::vector<VerifyRecord>& records) {
  return std::all_of(records.begin(), records.end(),
                     [](const VerifyRecord& r) { return r.pass; });
}

nlohmann::json records_to_json(const std::vector<VerifyRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const VerifyRecord& r : records) {
    nlohmann::json e;
    e["identity"] = r.identity;
    e["seed"] = r.seed;
    e["s"] = r.s ? io::paravector_to_json(*r.s) : nlohmann::json();
    e["p"] = r.p ? io::paravector_to_json(*r.p) : nlohmann::json();
    e["residual"] = r.residual;
    e["cond"] = r.cond;
    e["tol"] = r.tol;
    e["pass"] = r.pass;
    out.push_back(std::move(e));
  }
  return out;
}

std::string report_to_string(const std::vector<VerifyRecord>& records) {
  return records_to_json(records).dump() + "\n";
}

}  // namespace sfc
