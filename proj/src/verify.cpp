#include "verify.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "bounds.hpp"
#include "finite_difference.hpp"
#include "power_series.hpp"
#include "sequences.hpp"
#include "special.hpp"

namespace ellik {

namespace {

// Margins live on the Real side; the report carries a double. A positive
// margin must stay positive through the conversion even when it underflows.
template <class Real>
double to_margin(const Real& value) {
  double d = RealOps<Real>::to_double(value);
  if (value > 0 && d <= 0) d = std::numeric_limits<double>::denorm_min();
  if (value < 0 && d >= 0) d = -std::numeric_limits<double>::denorm_min();
  return d;
}

template <class Real>
std::string loc(const char* what, const Real& at, unsigned digits = 12) {
  return std::string(what) + "=" + RealOps<Real>::format(at, digits);
}

struct PrintedConstant {
  const char* name;
  double printed;
  double tolerance;
};

// The published decimal prefixes; the theta..zeta block carries six decimals,
// beta_star only four.
constexpr PrintedConstant printed_constants[] = {
    {"theta", 0.126845, 1e-6},  {"lambda", 0.213705, 1e-6},    {"alpha", 0.544425, 1e-6},
    {"beta", 1.364397, 1e-6},   {"delta", 1.389763, 1e-6},     {"zeta", -0.569791, 1e-6},
    {"alpha_star", 0.000893, 1e-6}, {"beta_star", 0.0459, 1e-4},
};

} // namespace

std::vector<VerificationReport> verify_constants(const PrecisionContext& ctx) {
  return with_real(ctx, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const auto c = BoundConstants<Real>::evaluate();
    const Real values[] = {c.theta, c.lambda, c.alpha,      c.beta,
                           c.delta, c.zeta,   c.alpha_star, c.beta_star};

    MarginTracker printed;
    for (std::size_t i = 0; i < std::size(printed_constants); ++i) {
      const auto& expect = printed_constants[i];
      const Real deviation = abs(values[i] - Real(expect.printed));
      printed.observe(expect.tolerance - RealOps<Real>::to_double(deviation), expect.name);
    }

    MarginTracker identity;
    const Real lhs = c.beta - c.alpha;
    const Real rhs = c.delta + c.zeta;
    const Real slack = pow(Real(10), 5 - static_cast<int>(ctx.digits()));
    identity.observe(to_margin(Real(slack - abs(lhs - rhs))), "beta-alpha vs delta+zeta");

    std::vector<VerificationReport> out;
    out.push_back(printed.report("constants/printed", "8 constants", ctx.digits()));
    out.push_back(identity.report("constants/identity", "beta-alpha = delta+zeta", ctx.digits()));
    return out;
  });
}

VerificationReport verify_lemma(unsigned long n_max, const PrecisionContext& ctx) {
  if (n_max < 1) throw InvalidArgument("verify_lemma requires n_max >= 1");
  return with_real(ctx, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    MarginTracker tracker;
    LemmaWalker<Real> walker;
    for (;;) {
      const unsigned long n = walker.index();
      const Real err = walker.error_bound();
      const Real prefactor = detail::coefficient_prefactor<Real>(n);
      const std::string at = "n=" + std::to_string(n);
      tracker.observe(to_margin(walker.p()), "p_n at " + at);
      tracker.observe(to_margin(Real(walker.q() - walker.p())), "q_n-p_n at " + at);
      tracker.observe(to_margin(prefactor), "5pi n^2-16n+4 at " + at);
      if (!(walker.p() > err) || !(walker.q() - walker.p() > err) || !(prefactor > 0))
        tracker.flag("margin within evaluation error at " + at);
      if (n == n_max) break;
      walker.advance();
    }
    return tracker.report("lemma/positivity", "n=1.." + std::to_string(n_max), ctx.digits());
  });
}

std::vector<VerificationReport> verify_coefficients(unsigned long n_max,
                                                    const PrecisionContext& ctx) {
  if (n_max < 3) throw InvalidArgument("verify_coefficients requires n_max >= 3");
  return with_real(ctx, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const auto c = BoundConstants<Real>::evaluate();
    const unsigned long oracle_max = std::min<unsigned long>(n_max, 64);
    const Real rel_tol = pow(Real(10), 8 - static_cast<int>(ctx.digits()));

    MarginTracker positivity;
    Real partial_sum = 0;
    std::vector<Real> closed(oracle_max + 1, Real(0));
    LemmaWalker<Real> walker;
    walker.advance();
    walker.advance();
    for (;;) {
      const unsigned long n = walker.index();
      const Real cn = walker.c();
      const Real err = 3 * walker.error_bound(); // prefactor/(2n^2) < 5pi/2 < 8
      positivity.observe(to_margin(cn), "c_n at n=" + std::to_string(n));
      if (!(cn > err)) positivity.flag("margin within evaluation error at n=" + std::to_string(n));
      partial_sum += cn;
      if (n <= oracle_max) closed[n] = cn;
      if (n == n_max) break;
      walker.advance();
    }

    // Cauchy-product assembly for both expansions, checked term by term.
    MarginTracker oracle;
    MarginTracker g_signs;
    try {
      const auto f_coeffs = f_coefficients_by_assembly<Real>(oracle_max);
      const auto g_coeffs = g_coefficients_by_assembly<Real>(oracle_max);
      for (unsigned long n = 3; n <= oracle_max; ++n) {
        const Real rel = abs(f_coeffs[n] - closed[n]) / closed[n];
        oracle.observe(to_margin(Real(rel_tol - rel)), "f coefficient n=" + std::to_string(n));
        const Real rel_g = abs(g_coeffs[n] + closed[n]) / closed[n];
        g_signs.observe(to_margin(Real(rel_tol - rel_g)), "g coefficient n=" + std::to_string(n));
      }
    } catch (const AssemblyError& e) {
      oracle.flag(e.what());
      g_signs.flag(e.what());
    }
    g_signs.observe(to_margin(Real(-c.zeta)), "zeta < 0");

    // Partial sums pin the endpoint limits: f_1(1) - f_1(0) = beta - alpha
    // and g_1(1) = 0, both reached at O(1/n_max). The deviation must stay
    // inside the proven tail envelope C/n_max; 1e-3 is the floor the
    // n_max = 10^4 acceptance run is held to.
    MarginTracker limits;
    const double envelope =
        RealOps<Real>::to_double(detail::coefficient_envelope<Real>());
    const double sum_tol = std::max(1e-3, envelope / static_cast<double>(n_max));
    limits.observe(sum_tol - RealOps<Real>::to_double(Real(abs(partial_sum - (c.beta - c.alpha)))),
                   "sum c_n vs beta-alpha");
    limits.observe(sum_tol - RealOps<Real>::to_double(Real(abs(c.delta + c.zeta - partial_sum))),
                   "sum c_n vs delta+zeta");

    const std::string range = "n=3.." + std::to_string(n_max);
    std::vector<VerificationReport> out;
    out.push_back(positivity.report("coefficients/positivity", range, ctx.digits()));
    out.push_back(oracle.report("coefficients/oracle_match",
                                "n=3.." + std::to_string(oracle_max), ctx.digits()));
    out.push_back(g_signs.report("coefficients/g_signs", "n=3.." + std::to_string(oracle_max),
                                 ctx.digits()));
    out.push_back(limits.report("coefficients/partial_sum_limits", range, ctx.digits()));
    return out;
  });
}

namespace {

// One grid point's margins at extended precision, each required to clear the
// extended noise gate.
std::array<double, sandwich_margin_count> extended_margins(const GridSpec& grid, std::size_t i,
                                                           unsigned digits, bool& certified) {
  ExtendedScope scope(digits);
  const auto c = BoundConstants<BigFloat>::evaluate();
  const BigFloat r = grid.point<BigFloat>(i);
  const auto sample = sample_bounds(Modulus<BigFloat>(r, ModulusRange::open), c);
  const auto margins = sandwich_margins(sample);
  const BigFloat gate = 64 * RealOps<BigFloat>::eps() * sample.k;
  certified = true;
  std::array<double, sandwich_margin_count> out{};
  for (int m = 0; m < sandwich_margin_count; ++m) {
    if (!(margins[m] > gate)) certified = false;
    out[m] = to_margin(margins[m]);
  }
  return out;
}

} // namespace

std::vector<VerificationReport> verify_sandwich(const GridSpec& grid,
                                                const PrecisionContext& ctx) {
  const unsigned escalation_digits =
      ctx.mode() == Mode::extended ? ctx.digits() : PrecisionContext::default_extended_digits;

  std::array<MarginTracker, sandwich_margin_count> trackers;

  if (ctx.mode() == Mode::hardware) {
    std::vector<std::size_t> escalate;
    {
      const auto c = BoundConstants<double>::evaluate();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.point<double>(i);
        const auto sample = sample_bounds(Modulus<double>(r, ModulusRange::open), c);
        const auto margins = sandwich_margins(sample);
        const double gate = 64 * RealOps<double>::eps() * std::max(sample.k, 1.0);
        bool noisy = false;
        for (int m = 0; m < sandwich_margin_count; ++m) noisy = noisy || !(margins[m] > gate);
        if (noisy) {
          escalate.push_back(i);
          continue;
        }
        for (int m = 0; m < sandwich_margin_count; ++m)
          trackers[m].observe(margins[m], loc("r", r));
      }
    }
    // Points whose hardware margin sits inside rounding noise get decided at
    // extended precision instead of being called violations (or passes) on
    // the strength of double roundoff.
    for (std::size_t i : escalate) {
      bool certified = false;
      const auto margins = extended_margins(grid, i, escalation_digits, certified);
      const std::string at = loc("r", grid.point<double>(i)) + " (escalated)";
      for (int m = 0; m < sandwich_margin_count; ++m) trackers[m].observe(margins[m], at);
      if (!certified)
        for (auto& t : trackers) t.flag(at);
    }
    // Extended spot checks on grid points drawn with a fixed seed.
    std::mt19937_64 rng(20260810u);
    for (int s = 0; s < 100; ++s) {
      const std::size_t i = static_cast<std::size_t>(rng() % grid.size());
      bool certified = false;
      const auto margins = extended_margins(grid, i, escalation_digits, certified);
      const std::string at = loc("r", grid.point<double>(i)) + " (spot)";
      for (int m = 0; m < sandwich_margin_count; ++m) trackers[m].observe(margins[m], at);
      if (!certified)
        for (auto& t : trackers) t.flag(at);
    }
  } else {
    ExtendedScope scope(ctx.digits());
    const auto c = BoundConstants<BigFloat>::evaluate();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const BigFloat r = grid.point<BigFloat>(i);
      const auto sample = sample_bounds(Modulus<BigFloat>(r, ModulusRange::open), c);
      const auto margins = sandwich_margins(sample);
      const BigFloat gate = 64 * RealOps<BigFloat>::eps() * sample.k;
      const std::string at = loc("r", RealOps<BigFloat>::to_double(r));
      for (int m = 0; m < sandwich_margin_count; ++m) {
        trackers[m].observe(to_margin(margins[m]), at);
        if (!(margins[m] > gate)) trackers[m].flag(at);
      }
    }
  }

  std::vector<VerificationReport> out;
  for (int m = 0; m < sandwich_margin_count; ++m)
    out.push_back(trackers[m].report(std::string("sandwich/") + sandwich_margin_name(m),
                                     grid.text(), escalation_digits));
  return out;
}

std::vector<VerificationReport> verify_shape(const GridSpec& grid, const PrecisionContext& ctx) {
  if (grid.size() < 3) throw InvalidArgument("verify_shape needs at least 3 grid points");
  return with_real(ctx, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const auto c = BoundConstants<Real>::evaluate();

    std::vector<Real> rs, f1s, g1s;
    rs.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Real r = grid.point<Real>(i);
      rs.push_back(r);
      f1s.push_back(f1_direct(Modulus<Real>(r, ModulusRange::open), c));
      g1s.push_back(g1_direct(Modulus<Real>(r, ModulusRange::open), c));
    }

    MarginTracker f1_up, f1_convex, f1_range, g1_down, g1_concave, g1_range;
    std::vector<Real> df, dg; // first divided differences
    for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
      const Real h = rs[i + 1] - rs[i];
      df.push_back((f1s[i + 1] - f1s[i]) / h);
      dg.push_back((g1s[i + 1] - g1s[i]) / h);
      f1_up.observe(to_margin(df.back()), loc("r", RealOps<Real>::to_double(rs[i])));
      g1_down.observe(to_margin(Real(-dg.back())), loc("r", RealOps<Real>::to_double(rs[i])));
    }
    for (std::size_t i = 0; i + 1 < df.size(); ++i) {
      const Real span = rs[i + 2] - rs[i];
      f1_convex.observe(to_margin(Real((df[i + 1] - df[i]) / span)),
                        loc("r", RealOps<Real>::to_double(rs[i + 1])));
      g1_concave.observe(to_margin(Real(-(dg[i + 1] - dg[i]) / span)),
                         loc("r", RealOps<Real>::to_double(rs[i + 1])));
    }
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const std::string at = loc("r", RealOps<Real>::to_double(rs[i]));
      f1_range.observe(to_margin(Real(f1s[i] - c.alpha)), "f1-alpha at " + at);
      f1_range.observe(to_margin(Real(c.beta - f1s[i])), "beta-f1 at " + at);
      g1_range.observe(to_margin(g1s[i]), "g1 at " + at);
      g1_range.observe(to_margin(Real(c.delta - g1s[i])), "delta-g1 at " + at);
    }

    // Derivative check at the grid points whose +/- 1e-4 stencil stays in the
    // direct-evaluation band; tolerance and step are pinned.
    MarginTracker derivative;
    const Real step = Real(1) / 10000;
    const double fd_rel_tol = 1e-6;
    auto f1_at = [&](const Real& x) { return f1_direct(Modulus<Real>(x, ModulusRange::open), c); };
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i] < Real(1) / 10 || rs[i] > Real(9) / 10) continue;
      const Real fd = finite_difference(f1_at, rs[i], step, 1);
      const Real dseries = f1_series_derivative(rs[i], 4096, c).value;
      const Real rel = abs(fd - dseries) / abs(dseries);
      derivative.observe(fd_rel_tol - RealOps<Real>::to_double(rel),
                         loc("r", RealOps<Real>::to_double(rs[i])));
    }

    std::vector<VerificationReport> out;
    const std::string range = grid.text();
    out.push_back(f1_up.report("shape/f1_increasing", range, ctx.digits()));
    out.push_back(f1_convex.report("shape/f1_convex", range, ctx.digits()));
    out.push_back(f1_range.report("shape/f1_range", range, ctx.digits()));
    out.push_back(g1_down.report("shape/g1_decreasing", range, ctx.digits()));
    out.push_back(g1_concave.report("shape/g1_concave", range, ctx.digits()));
    out.push_back(g1_range.report("shape/g1_range", range, ctx.digits()));
    out.push_back(derivative.report("shape/f1_derivative_match", range, ctx.digits()));
    return out;
  });
}

std::optional<VerifyTarget> parse_verify_target(const std::string& name) {
  if (name == "constants") return VerifyTarget::constants;
  if (name == "lemma") return VerifyTarget::lemma;
  if (name == "coefficients") return VerifyTarget::coefficients;
  if (name == "sandwich") return VerifyTarget::sandwich;
  if (name == "shape") return VerifyTarget::shape;
  if (name == "all") return VerifyTarget::all;
  return std::nullopt;
}

VerifySuite run_verify(VerifyTarget target, const VerifyOptions& options,
                       const PrecisionContext& ctx) {
  VerifySuite suite;
  auto append = [&](std::vector<VerificationReport> reports) {
    for (auto& r : reports) {
      suite.all_passed = suite.all_passed && r.passed;
      suite.reports.push_back(std::move(r));
    }
  };
  auto append_one = [&](VerificationReport r) {
    suite.all_passed = suite.all_passed && r.passed;
    suite.reports.push_back(std::move(r));
  };

  const GridSpec sandwich_grid = options.grid.value_or(GridSpec("0.0001", "0.9999", "0.0001"));
  const GridSpec shape_grid = options.grid.value_or(GridSpec("0.05", "0.95", "0.05"));

  switch (target) {
    case VerifyTarget::constants: append(verify_constants(ctx)); break;
    case VerifyTarget::lemma: append_one(verify_lemma(options.n_max, ctx)); break;
    case VerifyTarget::coefficients: append(verify_coefficients(options.n_max, ctx)); break;
    case VerifyTarget::sandwich: append(verify_sandwich(sandwich_grid, ctx)); break;
    case VerifyTarget::shape: append(verify_shape(shape_grid, ctx)); break;
    case VerifyTarget::all:
      append(verify_constants(ctx));
      append_one(verify_lemma(options.n_max, ctx));
      append(verify_coefficients(options.n_max, ctx));
      append(verify_sandwich(sandwich_grid, ctx));
      append(verify_shape(shape_grid, ctx));
      break;
  }
  return suite;
}

} // namespace ellik
