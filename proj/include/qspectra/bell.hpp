#ifndef QSPECTRA_BELL_HPP
#define QSPECTRA_BELL_HPP

#include <vector>

#include "qspectra/multipartite.hpp"
#include "qspectra/partition.hpp"
#include "qspectra/series.hpp"

namespace qspectra::bell {

// The Bell layer is generic over its coefficient ring: plain complex
// scalars or truncated series, so the same recurrences can run with
// q-series arguments.
template <class T>
struct RingOps;

template <class Real>
struct RingOps<Cplx<Real>> {
  using real_type = Real;
  static Cplx<Real> zero(const Cplx<Real>&) { return Cplx<Real>(0); }
  static Cplx<Real> one(const Cplx<Real>&) { return Cplx<Real>(1); }
  static Cplx<Real> scale(const Cplx<Real>& a, Real s) { return a * s; }
};

template <class Real>
struct RingOps<Series<Real>> {
  using real_type = Real;
  static Series<Real> zero(const Series<Real>& like) { return Series<Real>::zero_like(like); }
  static Series<Real> one(const Series<Real>& like) {
    return Series<Real>::constant(like, Cplx<Real>(1));
  }
  static Series<Real> scale(const Series<Real>& a, Real s) { return a * Cplx<Real>(s); }
};

// Complete Bell polynomials Y_0..Y_n from inputs g_1..g_n via the binomial
// recurrence, computed on the factorially rescaled sequence to stay well
// conditioned: with yt_k = Y_k/k! and gt_j = g_j/j!,
//   (k+1) yt_{k+1} = sum_{j=0..k} (j+1) gt_{j+1} yt_{k-j}.
template <class T>
std::vector<T> bell_recurrence(const std::vector<T>& g, int n) {
  using Ops = RingOps<T>;
  using Real = typename Ops::real_type;
  if (n < 0) throw std::invalid_argument("bell_recurrence: n must be >= 0");
  if (int(g.size()) < n)
    throw std::invalid_argument("bell_recurrence: need at least n inputs g_1..g_n");
  const T& like = g.empty() ? T{} : g.front();
  std::vector<T> gt;
  gt.reserve(g.size());
  Real fact = 1;
  for (std::size_t j = 0; j < g.size(); ++j) {
    fact *= Real(j + 1);
    gt.push_back(Ops::scale(g[j], Real(1) / fact));
  }
  std::vector<T> yt = {Ops::one(like)};
  for (int k = 0; k < n; ++k) {
    T acc = Ops::zero(like);
    for (int j = 0; j <= k; ++j)
      acc = acc + Ops::scale(gt[j] * yt[k - j], Real(j + 1));
    yt.push_back(Ops::scale(acc, Real(1) / Real(k + 1)));
  }
  std::vector<T> y;
  y.reserve(yt.size());
  fact = 1;
  for (int k = 0; k <= n; ++k) {
    y.push_back(Ops::scale(yt[k], fact));
    fact *= Real(k + 1);
  }
  return y;
}

// Y_n as the explicit sum over partitions of n: for multiplicity vectors
// (k_1..k_n) with sum j*k_j = n,
//   Y_n = sum n!/(k_1!...k_n!) prod_j (g_j/j!)^{k_j}.
template <class T>
T faa_di_bruno(const std::vector<T>& g, int n) {
  using Ops = RingOps<T>;
  using Real = typename Ops::real_type;
  if (n < 1) throw std::invalid_argument("faa_di_bruno: n must be >= 1");
  if (int(g.size()) < n)
    throw std::invalid_argument("faa_di_bruno: need at least n inputs g_1..g_n");
  const T& like = g.front();
  std::vector<T> gt;
  Real fact = 1;
  for (int j = 0; j < n; ++j) {
    fact *= Real(j + 1);
    gt.push_back(Ops::scale(g[j], Real(1) / fact));
  }
  Real nfact = 1;
  for (int j = 2; j <= n; ++j) nfact *= Real(j);

  T total = Ops::zero(like);
  for (const Partition& lam : partitions_of(n)) {
    auto mult = lam.multiplicities();
    Real coef = nfact;
    T prod = Ops::one(like);
    for (std::size_t j = 0; j < mult.size(); ++j) {
      Real kfact = 1;
      for (int t = 2; t <= mult[j]; ++t) kfact *= Real(t);
      coef /= kfact;
      for (int t = 0; t < mult[j]; ++t) prod = prod * gt[j];
    }
    total = total + Ops::scale(prod, coef);
  }
  return total;
}

// Coefficient extraction for the one-nome multipartite generating functions:
// P_j = Y_j(0! b(1), 1! b(2), ..., (j-1)! b(j)) / j!  with b(n) the beta
// q-series.  exclude_zero_part selects the variant matching products that
// omit the all-zero exponent tuple (see multipartite.hpp).
template <class Real>
std::vector<Series<Real>> p_coefficients(int jmax, int m, int qorder,
                                         mp::BetaConvention conv,
                                         bool exclude_zero_part = true) {
  using S = Series<Real>;
  std::vector<S> g;
  Real fact = 1;
  for (int i = 1; i <= jmax; ++i) {
    if (i > 1) fact *= Real(i - 1);
    g.push_back(mp::beta_series<Real>(i, m, qorder, conv, exclude_zero_part) *
                Cplx<Real>(fact));
  }
  auto y = bell_recurrence(g, jmax);
  std::vector<S> out;
  Real jfact = 1;
  for (int j = 1; j <= jmax; ++j) {
    jfact *= Real(j);
    out.push_back(y[j] * Cplx<Real>(Real(1) / jfact));
  }
  return out;
}

// Q_j = (-1)^j Y_j(-0! b(1), ..., -(j-1)! b(j)) / j!
template <class Real>
std::vector<Series<Real>> q_coefficients(int jmax, int m, int qorder,
                                         mp::BetaConvention conv,
                                         bool exclude_zero_part = true) {
  using S = Series<Real>;
  std::vector<S> g;
  Real fact = 1;
  for (int i = 1; i <= jmax; ++i) {
    if (i > 1) fact *= Real(i - 1);
    g.push_back(mp::beta_series<Real>(i, m, qorder, conv, exclude_zero_part) *
                Cplx<Real>(-fact));
  }
  auto y = bell_recurrence(g, jmax);
  std::vector<S> out;
  Real jfact = 1;
  for (int j = 1; j <= jmax; ++j) {
    jfact *= Real(j);
    Real sign = (j % 2 == 0) ? Real(1) : Real(-1);
    out.push_back(y[j] * Cplx<Real>(sign / jfact));
  }
  return out;
}

// Coefficients of prod_{k>=1} (1-q^k)^{-a_k} = 1 + sum_k B_k q^k through the
// divisor-sum recurrence  k B_k = sum_{j=1..k} D_j B_{k-j},
// D_j = sum_{d | j} d a_d.  Missing a_k entries count as zero; complex
// weights are accepted even though integer sequences are the usual case.
template <class Real>
std::vector<Cplx<Real>> product_expansion(const std::vector<Cplx<Real>>& a, int N) {
  using C = Cplx<Real>;
  if (N < 0) throw std::invalid_argument("product_expansion: N must be >= 0");
  auto a_of = [&](int k) { return k >= 1 && k <= int(a.size()) ? a[k - 1] : C(0); };
  std::vector<C> d(N + 1, C(0));
  for (int j = 1; j <= N; ++j)
    for (int div = 1; div <= j; ++div)
      if (j % div == 0) d[j] += Real(div) * a_of(div);
  std::vector<C> b(N + 1, C(0));
  b[0] = C(1);
  for (int k = 1; k <= N; ++k) {
    C acc(0);
    for (int j = 1; j <= k; ++j) acc += d[j] * b[k - j];
    b[k] = acc / Real(k);
  }
  return std::vector<C>(b.begin() + 1, b.end()); // B_1..B_N
}

// Direct route for the same product, for cross-checking: expand
// prod (1-q^k)^{-a_k} with truncated series arithmetic (integer a_k only).
template <class Real>
std::vector<Cplx<Real>> product_expansion_direct(const std::vector<long>& a, int N) {
  using S = Series<Real>;
  using C = Cplx<Real>;
  S acc({"q"}, N);
  acc.set_coeff({0}, C(1));
  for (int k = 1; k <= N && k <= int(a.size()); ++k) {
    if (a[k - 1] == 0) continue;
    S base = S::constant(acc, C(1));
    base.set_coeff({k}, C(-1));
    acc = acc * base.pow_int(-a[k - 1]);
  }
  std::vector<C> out;
  for (int k = 1; k <= N; ++k) out.push_back(acc.coeff({k}));
  return out;
}

} // namespace qspectra::bell

#endif
