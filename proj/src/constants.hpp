#ifndef ELLIK_CONSTANTS_HPP
#define ELLIK_CONSTANTS_HPP

#include "precision.hpp"

namespace ellik {

/// The constants behind the bound families, each evaluated from its exact
/// closed-form recipe at the active working precision. pi and log 2 come
/// from the context, never from decimal literals, so the digit count scales.
template <class Real>
struct BoundConstants {
  Real theta;      // pi (17 - 5 pi) / 32
  Real lambda;     // 8/5 - log 4
  Real alpha;      // 85 pi / 8 - 185 pi^2 / 32 + 25 pi^3 / 32
  Real beta;       // (8 - 10 log 2) pi - 85 pi^2 / 32 + 25 pi^3 / 32
  Real delta;      // 128/5 - 32 log 2 - 17 pi / 2 + 5 pi^2 / 2
  Real zeta;       // -128/5 + 32 log 2 + (47/8 - 10 log 2) pi + 5 pi^2 / 8
  Real alpha_star; // 9 pi / 128 - 11/50
  Real beta_star;  // 2/5 + log 5 - 5 pi / 8

  static BoundConstants evaluate() {
    const Real pi = RealOps<Real>::pi();
    const Real ln2 = RealOps<Real>::ln2();
    const Real pi2 = pi * pi;
    const Real pi3 = pi2 * pi;
    BoundConstants c;
    c.theta = pi * (17 - 5 * pi) / 32;
    c.lambda = Real(8) / 5 - 2 * ln2;
    c.alpha = Real(85) / 8 * pi - Real(185) / 32 * pi2 + Real(25) / 32 * pi3;
    c.beta = (8 - 10 * ln2) * pi - Real(85) / 32 * pi2 + Real(25) / 32 * pi3;
    c.delta = Real(128) / 5 - 32 * ln2 - Real(17) / 2 * pi + Real(5) / 2 * pi2;
    c.zeta = Real(-128) / 5 + 32 * ln2 + (Real(47) / 8 - 10 * ln2) * pi + Real(5) / 8 * pi2;
    c.alpha_star = Real(9) / 128 * pi - Real(11) / 50;
    c.beta_star = Real(2) / 5 + log(Real(5)) - Real(5) / 8 * pi;
    return c;
  }
};

} // namespace ellik

#endif
