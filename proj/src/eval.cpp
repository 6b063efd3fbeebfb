#include "eval.hpp"

#include "modulus.hpp"

namespace ellik {

namespace {

inline constexpr double quadrature_tol = 1e-12;

} // namespace

EvalResult eval_k(const std::string& r, KMethod method, const PrecisionContext& ctx) {
  return with_real(ctx, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const Modulus<Real> m(RealOps<Real>::parse(r));
    const Real eps = RealOps<Real>::eps();

    KMethod used = method;
    if (method == KMethod::automatic)
      used = m.value() > Real(9) / 10 ? KMethod::agm : KMethod::series;

    Real value;
    Real error;
    switch (used) {
      case KMethod::series: {
        const Real tol = 8 * eps;
        value = ellipk_series(m, tol);
        error = tol + 8 * eps * value;
        break;
      }
      case KMethod::agm: {
        value = ellipk_agm(m);
        error = 8 * eps * value;
        break;
      }
      case KMethod::quadrature: {
        const Real tol = Real(quadrature_tol);
        const Real x2 = m.value() * m.value();
        auto integrand = [&](const Real& t) {
          const Real s = sin(t);
          return 1 / sqrt(1 - x2 * s * s);
        };
        if (m.value() > 1 - Real(1) / 100000000)
          throw DomainError("ellipk_quadrature requires r <= 1 - 1e-8");
        const auto q = integrate_adaptive<Real>(integrand, Real(0), RealOps<Real>::pi() / 2, tol);
        value = q.value;
        error = q.error_estimate + 8 * eps * value;
        break;
      }
      case KMethod::automatic: throw InvalidArgument("unresolved method");
    }

    EvalResult out;
    out.value = RealOps<Real>::format(value, ctx.digits());
    out.abs_error_estimate = RealOps<Real>::format(error, 3);
    out.method_used = used;
    return out;
  });
}

} // namespace ellik
