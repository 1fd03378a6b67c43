#ifndef QSPECTRA_HIERARCHY_HPP
#define QSPECTRA_HIERARCHY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qspectra/partition.hpp"
#include "qspectra/report.hpp"
#include "qspectra/series.hpp"
#include "qspectra/spectral.hpp"

namespace qspectra::hier {

using spectral::SpectralParams;
using spectral::OmegaBar;

template <class Real>
struct NomeTriple {
  Cplx<Real> q, p, t;
  Cplx<Real> a, b, c; // periods: 2 pi i a = log q (principal), etc.

  static NomeTriple from_nomes(const Cplx<Real>& q, const Cplx<Real>& p,
                               const Cplx<Real>& t) {
    for (auto& n : {q, p, t})
      if (n == Cplx<Real>(0) || std::abs(n) >= Real(1))
        throw std::domain_error("nome moduli must lie in (0,1)");
    NomeTriple out;
    out.q = q;
    out.p = p;
    out.t = t;
    const Cplx<Real> twopii(0, Real(2) * pi_v<Real>);
    out.a = std::log(q) / twopii;
    out.b = std::log(p) / twopii;
    out.c = std::log(t) / twopii;
    return out;
  }

  static NomeTriple from_periods(const Cplx<Real>& a, const Cplx<Real>& b,
                                 const Cplx<Real>& c) {
    NomeTriple out;
    out.a = a;
    out.b = b;
    out.c = c;
    const Cplx<Real> twopii(0, Real(2) * pi_v<Real>);
    out.q = std::exp(twopii * a);
    out.p = std::exp(twopii * b);
    out.t = std::exp(twopii * c);
    return out;
  }
};

template <class Real>
struct ProductEval {
  Cplx<Real> value{1, 0};
  Real tail_bound = 0;
  long terms = 0;
  std::optional<long> vanishing_factor;
};

// Omega_kvec = q^{k_1 + ... + k_m}, the weight a multi-index contributes to
// the infinite products.
template <class Real>
struct OmegaWeight {
  Cplx<Real> value;
  std::vector<int> kvec;

  OmegaWeight(const std::vector<int>& k, const spectral::SpectralParams<Real>& p)
      : kvec(k) {
    long total = 0;
    for (int v : k) total += v;
    value = p.q_pow(Cplx<Real>(Real(total)));
  }
};

template <class Real>
Cplx<Real> spectral_pow(Cplx<Real> base, long e) {
  Cplx<Real> acc(1);
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

// G1(z;q) = prod_{n>=0} (1 - z q^n).  A factor hitting zero (z = q^{-j}) is
// a legitimate zero of the function and is flagged, not an error.
template <class Real>
ProductEval<Real> jackson_g1(const Cplx<Real>& z, const Cplx<Real>& q,
                             Real tail_tol = Real(1e-12)) {
  if (std::abs(q) >= Real(1)) throw std::domain_error("jackson_g1 needs |q| < 1");
  ProductEval<Real> out;
  const Real r = std::abs(q);
  Cplx<Real> zq = z;
  for (long n = 0; n < 100000; ++n) {
    Real mag = std::abs(zq);
    if (mag < Real(0.5)) {
      Real bound = Real(2) * mag / (Real(1) - r);
      if (bound < tail_tol) {
        out.tail_bound = bound;
        out.terms = n;
        return out;
      }
    }
    Cplx<Real> f = Cplx<Real>(1) - zq;
    if (std::abs(f) < Real(1e-14)) out.vanishing_factor = n;
    out.value *= f;
    zq *= q;
  }
  throw std::domain_error("jackson_g1 tail tolerance not reached");
}

// Two-nome double product prod_{n1,n2>=0} (1 - z q^{n1} p^{n2}); with
// `diagonal` the printed one-nome form prod (1 - z q^{n1+n2}) is used
// instead (multiplicity n+1 on exponent n).
template <class Real>
ProductEval<Real> jackson_g2(const Cplx<Real>& z, const Cplx<Real>& q,
                             const Cplx<Real>& p, Real tail_tol = Real(1e-12),
                             bool diagonal = false) {
  const Real rq = std::abs(q), rp = std::abs(p);
  if (rq >= Real(1) || rp >= Real(1))
    throw std::domain_error("jackson_g2 needs |q|,|p| < 1");
  ProductEval<Real> out;
  if (z == Cplx<Real>(0)) return out;
  if (diagonal) {
    for (long n = 0; n < 100000; ++n) {
      Cplx<Real> u = z * spectral_pow(q, n);
      Real mag = std::abs(u) * Real(n + 1);
      if (std::abs(u) < Real(0.5) && Real(2) * mag / ((Real(1) - rq) * (Real(1) - rq)) < tail_tol) {
        out.tail_bound = Real(2) * mag / ((Real(1) - rq) * (Real(1) - rq));
        out.terms = n;
        return out;
      }
      Cplx<Real> f = Cplx<Real>(1) - u;
      if (std::abs(f) < Real(1e-14)) out.vanishing_factor = n;
      for (int rep = 0; rep <= n; ++rep) out.value *= f;
    }
    throw std::domain_error("jackson_g2 tail tolerance not reached");
  }
  const Real zmag = std::abs(z);
  auto rows_needed = [&](Real r, Real budget) {
    long n = 0;
    Real m = zmag;
    while (m >= budget && n < 100000) {
      m *= r;
      ++n;
    }
    return n;
  };
  const Real budget = tail_tol * (Real(1) - rq) * (Real(1) - rp) / Real(8);
  const long N1 = rows_needed(rq, budget);
  const long N2 = rows_needed(rp, budget);
  for (long n1 = 0; n1 <= N1; ++n1)
    for (long n2 = 0; n2 <= N2; ++n2) {
      Cplx<Real> u = z * spectral_pow(q, n1) * spectral_pow(p, n2);
      Cplx<Real> f = Cplx<Real>(1) - u;
      if (std::abs(f) < Real(1e-14))
        out.vanishing_factor = n1 * (N2 + 1) + n2;
      out.value *= f;
    }
  out.terms = (N1 + 1) * (N2 + 1);
  out.tail_bound = Real(2) * zmag *
                   (std::pow(rq, Real(N1 + 1)) / ((Real(1) - rq) * (Real(1) - rp)) +
                    std::pow(rp, Real(N2 + 1)) / ((Real(1) - rq) * (Real(1) - rp)));
  return out;
}

// G1 against its Ruelle form: prod_{n>=0}(1-w q^n) = (1-w) R(s = (1+Omega(w))(1-i rho)).
template <class Real>
IdentityReport check_g1_spectral(const Cplx<Real>& w, const SpectralParams<Real>& p,
                                 double tol) {
  std::vector<std::pair<std::string, std::string>> params = {
      {"z", format_complex(Complex(double(w.real()), double(w.imag())))},
      {"q", format_complex(Complex(double(p.q.real()), double(p.q.imag())))}};
  try {
    auto direct = jackson_g1(w, p.q, Real(tol) * Real(1e-4));
    OmegaBar<Real> ob(w, p);
    Cplx<Real> s = (Cplx<Real>(1) + ob.value) * p.one_minus_i_rho();
    auto tailpart = spectral::ruelle_product(s, p, Real(1), false, Real(tol) * Real(1e-4));
    Cplx<Real> rhs = (Cplx<Real>(1) - w) * tailpart.value;
    return make_report("G1-spectral", params,
                       Complex(double(direct.value.real()), double(direct.value.imag())),
                       Complex(double(rhs.real()), double(rhs.imag())), tol,
                       double(direct.tail_bound + tailpart.tail_bound),
                       {{"lhs_terms", double(direct.terms)}, {"rhs_terms", double(tailpart.terms)}});
  } catch (const std::domain_error& e) {
    return make_domain_failure("G1-spectral", params, e.what());
  }
}

// First-order shift equations of the double product:
//   G2(w;q,p)/G2(qw;q,p) = G1(w;p)   and   G2(w;q,p)/G2(pw;q,p) = G1(w;q).
template <class Real>
IdentityReport check_g21(const Cplx<Real>& w, const Cplx<Real>& q, const Cplx<Real>& p,
                         bool second_form, double tol) {
  std::string name = second_form ? "G21b" : "G21a";
  std::vector<std::pair<std::string, std::string>> params = {
      {"Omega", format_complex(Complex(double(w.real()), double(w.imag())))},
      {"q", format_complex(Complex(double(q.real()), double(q.imag())))},
      {"p", format_complex(Complex(double(p.real()), double(p.imag())))}};
  try {
    auto num = jackson_g2(w, q, p, Real(tol) * Real(1e-4));
    auto den = jackson_g2(second_form ? p * w : q * w, q, p, Real(tol) * Real(1e-4));
    if (den.value == Cplx<Real>(0))
      return make_domain_failure(name, params, "denominator product vanished");
    auto g1 = jackson_g1(w, second_form ? q : p, Real(tol) * Real(1e-4));
    Cplx<Real> lhs = num.value / den.value;
    return make_report(name, params, Complex(double(lhs.real()), double(lhs.imag())),
                       Complex(double(g1.value.real()), double(g1.value.imag())), tol,
                       double(num.tail_bound + den.tail_bound + g1.tail_bound));
  } catch (const std::domain_error& e) {
    return make_domain_failure(name, params, e.what());
  }
}

// Inverse-argument shift equations, read with G1 on the right-hand side:
//   G2(qp(qw)^{-1})/G2(qp w^{-1}) = G1(p w^{-1}; p)
//   G2(qp(pw)^{-1})/G2(qp w^{-1}) = G1(q w^{-1}; q)
template <class Real>
IdentityReport check_g22(const Cplx<Real>& w, const Cplx<Real>& q, const Cplx<Real>& p,
                         bool second_form, double tol) {
  std::string name = second_form ? "G22b" : "G22a";
  std::vector<std::pair<std::string, std::string>> params = {
      {"Omega", format_complex(Complex(double(w.real()), double(w.imag())))},
      {"q", format_complex(Complex(double(q.real()), double(q.imag())))},
      {"p", format_complex(Complex(double(p.real()), double(p.imag())))}};
  try {
    Cplx<Real> winv = Cplx<Real>(1) / w;
    Cplx<Real> arg_num = second_form ? q * p * winv / p : q * p * winv / q;
    Cplx<Real> arg_den = q * p * winv;
    Cplx<Real> arg_g1 = second_form ? q * winv : p * winv;
    for (const Cplx<Real>& a : {arg_num, arg_den, arg_g1})
      if (std::abs(a) >= Real(1))
        return make_domain_failure(
            name, params,
            "factor argument has modulus >= 1: " +
                format_complex(Complex(double(a.real()), double(a.imag()))));
    auto num = jackson_g2(arg_num, q, p, Real(tol) * Real(1e-4));
    auto den = jackson_g2(arg_den, q, p, Real(tol) * Real(1e-4));
    if (den.value == Cplx<Real>(0))
      return make_domain_failure(name, params, "denominator product vanished");
    auto g1 = jackson_g1(arg_g1, second_form ? q : p, Real(tol) * Real(1e-4));
    Cplx<Real> lhs = num.value / den.value;
    return make_report(name, params, Complex(double(lhs.real()), double(lhs.imag())),
                       Complex(double(g1.value.real()), double(g1.value.imag())), tol,
                       double(num.tail_bound + den.tail_bound + g1.tail_bound));
  } catch (const std::domain_error& e) {
    return make_domain_failure(name, params, e.what());
  }
}

// Order-one and order-two elliptic gamma functions as convergent double and
// triple products.
template <class Real>
ProductEval<Real> elliptic_gamma1(const Cplx<Real>& z, const Cplx<Real>& q,
                                  const Cplx<Real>& p, Real tail_tol = Real(1e-12)) {
  const Real rq = std::abs(q), rp = std::abs(p);
  if (rq >= Real(1) || rp >= Real(1))
    throw std::domain_error("elliptic_gamma1 needs |q|,|p| < 1");
  if (z == Cplx<Real>(0)) throw std::domain_error("elliptic_gamma1 needs z != 0");
  Cplx<Real> zi = Cplx<Real>(1) / z;
  const Real scale = std::max(std::abs(z), std::abs(zi) * rq * rp);
  auto rows = [&](Real r) {
    long n = 0;
    Real m = scale;
    Real budget = tail_tol * (Real(1) - rq) * (Real(1) - rp) / Real(16);
    while (m >= budget && n < 100000) {
      m *= r;
      ++n;
    }
    return n;
  };
  const long N1 = rows(rq), N2 = rows(rp);
  ProductEval<Real> out;
  for (long n1 = 0; n1 <= N1; ++n1)
    for (long n2 = 0; n2 <= N2; ++n2) {
      Cplx<Real> numer =
          Cplx<Real>(1) - zi * spectral_pow(q, n1 + 1) * spectral_pow(p, n2 + 1);
      Cplx<Real> denom = Cplx<Real>(1) - z * spectral_pow(q, n1) * spectral_pow(p, n2);
      if (std::abs(denom) < Real(1e-14))
        throw std::domain_error("elliptic_gamma1 pole hit");
      out.value *= numer / denom;
    }
  out.terms = (N1 + 1) * (N2 + 1);
  out.tail_bound = Real(4) * scale *
                   (std::pow(rq, Real(N1 + 1)) + std::pow(rp, Real(N2 + 1))) /
                   ((Real(1) - rq) * (Real(1) - rp));
  return out;
}

template <class Real>
ProductEval<Real> elliptic_gamma2(const Cplx<Real>& z, const Cplx<Real>& q,
                                  const Cplx<Real>& p, const Cplx<Real>& t,
                                  Real tail_tol = Real(1e-12)) {
  const Real rq = std::abs(q), rp = std::abs(p), rt = std::abs(t);
  if (rq >= Real(1) || rp >= Real(1) || rt >= Real(1))
    throw std::domain_error("elliptic_gamma2 needs |q|,|p|,|t| < 1");
  if (z == Cplx<Real>(0)) throw std::domain_error("elliptic_gamma2 needs z != 0");
  Cplx<Real> zi = Cplx<Real>(1) / z;
  const Real scale = std::max(std::abs(z), std::abs(zi) * rq * rp * rt);
  const Real denom3 = (Real(1) - rq) * (Real(1) - rp) * (Real(1) - rt);
  auto rows = [&](Real r) {
    long n = 0;
    Real m = scale;
    Real budget = tail_tol * denom3 / Real(24);
    while (m >= budget && n < 100000) {
      m *= r;
      ++n;
    }
    return n;
  };
  const long N1 = rows(rq), N2 = rows(rp), N3 = rows(rt);
  ProductEval<Real> out;
  for (long n1 = 0; n1 <= N1; ++n1)
    for (long n2 = 0; n2 <= N2; ++n2)
      for (long n3 = 0; n3 <= N3; ++n3) {
        Cplx<Real> low = z * spectral_pow(q, n1) * spectral_pow(p, n2) * spectral_pow(t, n3);
        Cplx<Real> high = zi * spectral_pow(q, n1 + 1) * spectral_pow(p, n2 + 1) *
                          spectral_pow(t, n3 + 1);
        out.value *= (Cplx<Real>(1) - high) * (Cplx<Real>(1) - low);
      }
  out.terms = (N1 + 1) * (N2 + 1) * (N3 + 1);
  out.tail_bound = Real(6) * scale *
                   (std::pow(rq, Real(N1 + 1)) + std::pow(rp, Real(N2 + 1)) +
                    std::pow(rt, Real(N3 + 1))) /
                   denom3;
  return out;
}

// Reflection forced by the factor sets: Gamma1(z) Gamma1(pq/z) = 1.
template <class Real>
IdentityReport check_gamma1_reflection(const Cplx<Real>& z, const Cplx<Real>& q,
                                       const Cplx<Real>& p, double tol) {
  std::vector<std::pair<std::string, std::string>> params = {
      {"z", format_complex(Complex(double(z.real()), double(z.imag())))},
      {"q", format_complex(Complex(double(q.real()), double(q.imag())))},
      {"p", format_complex(Complex(double(p.real()), double(p.imag())))}};
  try {
    auto g = elliptic_gamma1(z, q, p, Real(tol) * Real(1e-4));
    auto h = elliptic_gamma1(p * q / z, q, p, Real(tol) * Real(1e-4));
    Cplx<Real> lhs = g.value * h.value;
    return make_report("gamma1-reflection", params,
                       Complex(double(lhs.real()), double(lhs.imag())), Complex(1, 0),
                       tol, double(g.tail_bound + h.tail_bound));
  } catch (const std::domain_error& e) {
    return make_domain_failure("gamma1-reflection", params, e.what());
  }
}

// Gamma1 at q = p against the Ruelle-ratio rows
//   prod_{n2>=0} R(s=(n2+2+Omega(1/z))(1-i rho)) / R(s=(n2+Omega(z))(1-i rho)).
template <class Real>
IdentityReport check_gamma1_qq_spectral(const Cplx<Real>& z, const SpectralParams<Real>& p,
                                        double tol) {
  std::vector<std::pair<std::string, std::string>> params = {
      {"z", format_complex(Complex(double(z.real()), double(z.imag())))},
      {"q", format_complex(Complex(double(p.q.real()), double(p.q.imag())))}};
  try {
    auto direct = elliptic_gamma1(z, p.q, p.q, Real(tol) * Real(1e-4));
    OmegaBar<Real> oz(z, p), ozi(Cplx<Real>(1) / z, p);
    Cplx<Real> acc(1);
    Real tail = Real(direct.tail_bound);
    const Real rq = std::abs(p.q);
    for (long n2 = 0; n2 < 100000; ++n2) {
      auto num = spectral::ruelle_product(
          (Cplx<Real>(Real(n2 + 2)) + ozi.value) * p.one_minus_i_rho(), p, Real(1),
          false, Real(tol) * Real(1e-5));
      auto den = spectral::ruelle_product(
          (Cplx<Real>(Real(n2)) + oz.value) * p.one_minus_i_rho(), p, Real(1), false,
          Real(tol) * Real(1e-5));
      acc *= num.value / den.value;
      tail += num.tail_bound + den.tail_bound;
      Real remainder = (std::abs(z) + std::abs(p.q_pow(ozi.value + Cplx<Real>(2)))) *
                       std::pow(rq, Real(n2 + 1)) / (Real(1) - rq);
      if (remainder * Real(4) < Real(tol) * Real(1e-3)) {
        tail += remainder * Real(4);
        break;
      }
    }
    return make_report("gamma1-qq-spectral", params,
                       Complex(double(direct.value.real()), double(direct.value.imag())),
                       Complex(double(acc.real()), double(acc.imag())), tol, double(tail));
  } catch (const std::domain_error& e) {
    return make_domain_failure("gamma1-qq-spectral", params, e.what());
  }
}

// Gamma2 at q = p = t against the two-Ruelle-factor rows
//   prod_{n2,n3} R(s=(n2+n3+3+Omega(1/z))(1-i rho)) R(s=(n2+n3+Omega(z))(1-i rho)).
template <class Real>
IdentityReport check_gamma2_qqq_spectral(const Cplx<Real>& z, const SpectralParams<Real>& p,
                                         double tol) {
  std::vector<std::pair<std::string, std::string>> params = {
      {"z", format_complex(Complex(double(z.real()), double(z.imag())))},
      {"q", format_complex(Complex(double(p.q.real()), double(p.q.imag())))}};
  try {
    auto direct = elliptic_gamma2(z, p.q, p.q, p.q, Real(tol) * Real(1e-4));
    OmegaBar<Real> oz(z, p), ozi(Cplx<Real>(1) / z, p);
    Cplx<Real> acc(1);
    Real tail = Real(direct.tail_bound);
    const Real rq = std::abs(p.q);
    for (long e = 0; e < 100000; ++e) { // e = n2+n3, multiplicity e+1
      auto num = spectral::ruelle_product(
          (Cplx<Real>(Real(e + 3)) + ozi.value) * p.one_minus_i_rho(), p, Real(1),
          false, Real(tol) * Real(1e-5));
      auto den = spectral::ruelle_product(
          (Cplx<Real>(Real(e)) + oz.value) * p.one_minus_i_rho(), p, Real(1), false,
          Real(tol) * Real(1e-5));
      Cplx<Real> row = num.value * den.value;
      for (long rep = 0; rep <= e; ++rep) acc *= row;
      tail += Real(e + 1) * (num.tail_bound + den.tail_bound);
      Real remainder = Real(e + 2) * Real(e + 2) *
                       (std::abs(z) + std::abs(p.q_pow(ozi.value + Cplx<Real>(3)))) *
                       std::pow(rq, Real(e + 1)) / ((Real(1) - rq) * (Real(1) - rq));
      if (remainder * Real(4) < Real(tol) * Real(1e-3)) {
        tail += remainder * Real(4);
        break;
      }
    }
    return make_report("gamma2-qqq-spectral", params,
                       Complex(double(direct.value.real()), double(direct.value.imag())),
                       Complex(double(acc.real()), double(acc.imag())), tol, double(tail));
  } catch (const std::domain_error& e) {
    return make_domain_failure("gamma2-qqq-spectral", params, e.what());
  }
}

// B44(z;a,b,c) = lim_{x->0} d^4/dx^4 [ x^4 e^{zx} / ((e^{ax}-1)(e^{bx}-1)(e^{cx}-1)) ],
// computed by truncated Taylor arithmetic: the bracket equals
// (x/(abc)) e^{zx} f(ax) f(bx) f(cx) with f(u) = u/(e^u - 1) analytic, so the
// limit is 4! times its x^4 coefficient.
template <class Real>
Cplx<Real> b44(const Cplx<Real>& z, const Cplx<Real>& a, const Cplx<Real>& b,
               const Cplx<Real>& c, int order = 8) {
  using S = Series<Real>;
  using C = Cplx<Real>;
  if (a == C(0) || b == C(0) || c == C(0))
    throw std::domain_error("b44 needs nonzero a, b, c");
  if (order < 4) throw std::invalid_argument("b44 needs Taylor order >= 4");
  S x({"x"}, order);
  auto f_of = [&](const C& w) {
    // (e^{wx} - 1)/(wx), inverted
    S g = S::zero_like(x);
    C pw(1);
    Real fact = 1;
    for (int n = 0; n <= order; ++n) {
      fact *= Real(n + 1);
      g.set_coeff({n}, pw / fact);
      pw *= w;
    }
    return g.inv();
  };
  S zx = S::zero_like(x);
  zx.set_coeff({1}, z);
  S bracket = zx.exp() * f_of(a) * f_of(b) * f_of(c);
  // one x from the quotient, then the 4th derivative at 0
  C coef = bracket.coeff({3}) / (a * b * c);
  return Real(24) * coef;
}

// Modularity of the double elliptic gamma in period form:
//   Gamma2(z;a,b,c) = Gamma2(z/a;-1/a,b/a,c/a) Gamma2(z/b;a/b,-1/b,c/b)
//                     Gamma2(z/c;a/c,b/c,-1/c) exp(i pi B44(z;a,b,c)/12),
// all arguments mapped to nomes by w -> e^{2 pi i w}.  Every period entering
// a product must have positive imaginary part, i.e. every nome modulus < 1;
// the derived parameters come in reciprocal pairs (b/a with a/b), which
// cannot both satisfy it, so convergent-product evaluation of all three
// right-hand factors is unreachable and the check reports the domain state
// instead of guessing.
template <class Real>
IdentityReport gamma2_modularity_check(const Cplx<Real>& z, const NomeTriple<Real>& tri,
                                       double tol) {
  const Cplx<Real> a = tri.a, b = tri.b, c = tri.c;
  std::vector<std::pair<std::string, std::string>> params = {
      {"z", format_complex(Complex(double(z.real()), double(z.imag())))},
      {"a", format_complex(Complex(double(a.real()), double(a.imag())))},
      {"b", format_complex(Complex(double(b.real()), double(b.imag())))},
      {"c", format_complex(Complex(double(c.real()), double(c.imag())))}};

  const std::vector<std::pair<std::string, Cplx<Real>>> derived = {
      {"-1/a", -Cplx<Real>(1) / a}, {"b/a", b / a}, {"c/a", c / a},
      {"a/b", a / b}, {"-1/b", -Cplx<Real>(1) / b}, {"c/b", c / b},
      {"a/c", a / c}, {"b/c", b / c}, {"-1/c", -Cplx<Real>(1) / c}};

  const Cplx<Real> twopii(0, Real(2) * pi_v<Real>);
  std::string nome_list;
  bool ok = true;
  for (const auto& [label, w] : derived) {
    Real mod = std::abs(std::exp(twopii * w));
    nome_list += label + " -> |nome| = " + format_real(double(mod)) + "; ";
    if (!(mod < Real(1) - Real(1e-9))) ok = false;
  }
  for (const Cplx<Real>& w : {a, b, c})
    if (!(std::abs(std::exp(twopii * w)) < Real(1) - Real(1e-9))) ok = false;

  if (!ok)
    return make_domain_failure("gamma2-modularity", params,
                               "derived nome moduli not all < 1 (reciprocal period "
                               "ratios cannot all sit in the upper half plane): " +
                                   nome_list);

  // Unreachable for full parameter sets; kept as the contract for any future
  // continuation-based evaluation path.
  auto nome = [&](const Cplx<Real>& w) { return std::exp(twopii * w); };
  auto lhs = elliptic_gamma2(nome(z), tri.q, tri.p, tri.t, Real(tol) * Real(1e-2));
  auto f1 = elliptic_gamma2(nome(z / a), nome(-Cplx<Real>(1) / a), nome(b / a),
                            nome(c / a), Real(tol) * Real(1e-2));
  auto f2 = elliptic_gamma2(nome(z / b), nome(a / b), nome(-Cplx<Real>(1) / b),
                            nome(c / b), Real(tol) * Real(1e-2));
  auto f3 = elliptic_gamma2(nome(z / c), nome(a / c), nome(b / c),
                            nome(-Cplx<Real>(1) / c), Real(tol) * Real(1e-2));
  Cplx<Real> kernel =
      std::exp(Cplx<Real>(0, pi_v<Real> / Real(12)) * b44(z, a, b, c, 12));
  Cplx<Real> rhs = f1.value * f2.value * f3.value * kernel;
  return make_report("gamma2-modularity", params,
                     Complex(double(lhs.value.real()), double(lhs.value.imag())),
                     Complex(double(rhs.real()), double(rhs.imag())), tol,
                     double(lhs.tail_bound + f1.tail_bound + f2.tail_bound + f3.tail_bound),
                     {}, nome_list);
}

// The (m+1)-fold product factorizes through G1 slices:
//   prod_{kvec, n} (1 - z q^{k1+..+km} q^n) = prod_{kvec} G1(z q^{k1+..+km}; q),
// equivalently prod_e (1 - z q^e)^{binom(e+m, m)}.
template <class Real>
IdentityReport check_factorized_hierarchy(const Cplx<Real>& z, int m, const Cplx<Real>& q,
                                          double tol) {
  std::vector<std::pair<std::string, std::string>> params = {
      {"z", format_complex(Complex(double(z.real()), double(z.imag())))},
      {"m", std::to_string(m)},
      {"q", format_complex(Complex(double(q.real()), double(q.imag())))}};
  try {
    if (z == Cplx<Real>(0))
      return make_report("factorized-hierarchy", params, Complex(1, 0), Complex(1, 0),
                         tol, 0.0);
    const Real rq = std::abs(q);
    // left: G1 slices over kvec grouped by total e with multiplicity binom(e+m-1,m-1)
    Cplx<Real> lhs(1);
    Real tail = 0;
    for (long e = 0; e < 100000; ++e) {
      long mult = binomial(int(e) + m - 1, m - 1);
      Real mag = Real(mult) * std::abs(z) * std::pow(rq, Real(e)) / (Real(1) - rq);
      if (std::abs(z) * std::pow(rq, Real(e)) < Real(0.5) &&
          Real(2) * mag < Real(tol) * Real(1e-4)) {
        tail += Real(2) * mag;
        break;
      }
      auto g = jackson_g1(z * spectral_pow(q, e), q, Real(tol) * Real(1e-6));
      lhs *= spectral_pow(g.value, mult);
      tail += Real(mult) * g.tail_bound;
    }
    // right: flat product over the combined exponent with its multiplicity
    Cplx<Real> rhs(1);
    for (long e = 0; e < 100000; ++e) {
      long mult = binomial(int(e) + m, m);
      Cplx<Real> u = z * spectral_pow(q, e);
      Real mag = Real(mult) * std::abs(u);
      if (std::abs(u) < Real(0.5) && Real(4) * mag / (Real(1) - rq) < Real(tol) * Real(1e-4)) {
        tail += Real(4) * mag / (Real(1) - rq);
        break;
      }
      rhs *= spectral_pow(Cplx<Real>(1) - u, mult);
    }
    return make_report("factorized-hierarchy", params,
                       Complex(double(lhs.real()), double(lhs.imag())),
                       Complex(double(rhs.real()), double(rhs.imag())), tol, double(tail));
  } catch (const std::domain_error& e) {
    return make_domain_failure("factorized-hierarchy", params, e.what());
  }
}

} // namespace qspectra::hier

#endif
