#ifndef ELLIK_SEQUENCES_HPP
#define ELLIK_SEQUENCES_HPP

#include <utility>

#include "errors.hpp"
#include "precision.hpp"
#include "special.hpp"

namespace ellik {

namespace detail {

// 5 pi n / (5 pi n^2 - 16 n + 4); the rational half of both sequences.
template <class Real>
Real lemma_rational_term(unsigned long n) {
  const Real pi = RealOps<Real>::pi();
  return 5 * pi * Real(n) / (5 * pi * Real(n) * Real(n) - 16 * Real(n) + 4);
}

// 5 pi n^2 - 16 n + 4 > 0 for n >= 1; shows up as the c_n prefactor.
template <class Real>
Real coefficient_prefactor(unsigned long n) {
  const Real pi = RealOps<Real>::pi();
  return 5 * pi * Real(n) * Real(n) - 16 * Real(n) + 4;
}

} // namespace detail

/// Q_n = 5 pi n / (5 pi n^2 - 16 n + 4) - [Gamma(n-1/2)/Gamma(n)]^2.
/// Both terms are ~1/n and the difference is ~0.27/n^2, so roughly
/// log10(n) digits cancel; the walker's error bound accounts for that.
template <class Real>
Real q_n(unsigned long n) {
  if (n < 1) throw DomainError("q_n requires n >= 1");
  const Real ratio = gamma_half_ratio<Real>(n);
  return detail::lemma_rational_term<Real>(n) - ratio * ratio;
}

/// P_n = 5 pi n / (5 pi n^2 - 16 n + 4) - 4/(4n - 3), the rational minorant
/// of Q_n. Positivity reduces to (64 - 15 pi) n - 16 > 0.
template <class Real>
Real p_n(unsigned long n) {
  if (n < 1) throw DomainError("p_n requires n >= 1");
  return detail::lemma_rational_term<Real>(n) - Real(4) / Real(4 * n - 3);
}

/// Per-index record shared by the series machinery: (n, Q_n, P_n, c_n) with
/// c_n = (5 pi n^2 - 16 n + 4) Q_n / (2 n^2), defined for n >= 3.
template <class Real>
struct CoefficientTerm {
  unsigned long n;
  Real q;
  Real p;
  Real c;
};

template <class Real>
CoefficientTerm<Real> coefficient(unsigned long n) {
  if (n < 3) throw DomainError("coefficient requires n >= 3");
  CoefficientTerm<Real> term;
  term.n = n;
  term.q = q_n<Real>(n);
  term.p = p_n<Real>(n);
  term.c = detail::coefficient_prefactor<Real>(n) * term.q / (2 * Real(n) * Real(n));
  return term;
}

/// Incremental (Q_n, P_n, c_n) sweep; O(1) per index, so desk-scale batch
/// verification stays cheap even at extended precision.
template <class Real>
class LemmaWalker {
public:
  LemmaWalker() { refresh(); }

  unsigned long index() const { return ratio_.index(); }
  const Real& q() const { return q_; }
  const Real& p() const { return p_; }

  /// c_n; only meaningful for index() >= 3.
  Real c() const { return detail::coefficient_prefactor<Real>(index()) * q_ / (2 * Real(index()) * Real(index())); }

  /// Conservative bound on the absolute evaluation error of q/p at this
  /// index: a few ulps of the ~1/n terms whose difference is taken.
  Real error_bound() const { return 32 * RealOps<Real>::eps() * rational_; }

  void advance() {
    ratio_.advance();
    refresh();
  }

private:
  void refresh() {
    const unsigned long n = ratio_.index();
    rational_ = detail::lemma_rational_term<Real>(n);
    q_ = rational_ - ratio_.value() * ratio_.value();
    p_ = rational_ - Real(4) / Real(4 * n - 3);
  }

  GammaHalfRatioWalker<Real> ratio_;
  Real rational_;
  Real q_;
  Real p_;
};

/// Kershaw's two-sided bound on Gamma(x+1)/Gamma(x+s) for x > 0, 0 < s < 1:
/// (x + s/2)^{1-s} below, (x - 1/2 + sqrt(1/4 + s))^{1-s} above.
template <class Real>
std::pair<Real, Real> kershaw(const Real& x, const Real& s) {
  if (!(x > 0)) throw DomainError("kershaw requires x > 0");
  if (!(s > 0 && s < 1)) throw DomainError("kershaw requires 0 < s < 1");
  const Real one_minus_s = 1 - s;
  const Real lower = pow(x + s / 2, one_minus_s);
  const Real upper = pow(x - Real(1) / 2 + sqrt(Real(1) / 4 + s), one_minus_s);
  return {lower, upper};
}

} // namespace ellik

#endif
