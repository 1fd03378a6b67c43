#ifndef QSPECTRA_MULTIPARTITE_HPP
#define QSPECTRA_MULTIPARTITE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qspectra/partition.hpp"
#include "qspectra/series.hpp"

namespace qspectra::mp {

// An m-tuple of nonnegative integers.  Used both as a composition target and
// as a single part of a multipartite partition (parts must be nonzero).
using MultiIndex = std::vector<int>;

inline int mi_total(const MultiIndex& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

inline bool mi_is_zero(const MultiIndex& v) { return mi_total(v) == 0; }

inline bool mi_leq(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline MultiIndex mi_sub(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// colexicographic: compare from the last coordinate backwards
inline bool mi_colex_less(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// Every nonzero vector componentwise <= target, colexicographic order.
inline std::vector<MultiIndex> parts_below(const MultiIndex& target) {
  std::vector<MultiIndex> out;
  MultiIndex v(target.size(), 0);
  for (;;) {
    std::size_t i = 0;
    while (i < v.size() && v[i] == target[i]) v[i++] = 0;
    if (i == v.size()) break;
    v[i]++;
    out.push_back(v);
  }
  std::sort(out.begin(), out.end(), mi_colex_less);
  return out;
}

struct MultipartiteCount {
  MultiIndex target;
  long long unrestricted = 0;
  long long distinct = 0;
  std::map<int, long long> by_num_parts;          // unrestricted, j -> count
  std::map<int, long long> by_num_parts_distinct; // distinct parts, j -> count
};

namespace detail {

template <class Visit>
void walk_multipartitions(const std::vector<MultiIndex>& parts, bool distinct,
                          MultiIndex remaining, int max_idx,
                          std::vector<MultiIndex>& stack, Visit&& visit) {
  if (mi_is_zero(remaining)) {
    visit(stack);
    return;
  }
  for (int i = max_idx; i >= 0; --i) {
    if (!mi_leq(parts[i], remaining)) continue;
    stack.push_back(parts[i]);
    walk_multipartitions(parts, distinct, mi_sub(remaining, parts[i]),
                         distinct ? i - 1 : i, stack, visit);
    stack.pop_back();
  }
}

} // namespace detail

// Exhaustive enumeration of the decompositions of `target` into unordered
// sums of nonzero multi-indices.  Each decomposition is reported once, parts
// in non-increasing colexicographic order.
inline std::vector<std::vector<MultiIndex>>
enumerate_multipartitions(const MultiIndex& target, bool distinct_parts) {
  if (target.empty() || mi_is_zero(target))
    throw std::invalid_argument("multipartition target must have a positive entry");
  auto parts = parts_below(target);
  std::vector<std::vector<MultiIndex>> out;
  std::vector<MultiIndex> stack;
  detail::walk_multipartitions(parts, distinct_parts, target,
                               int(parts.size()) - 1, stack,
                               [&](const std::vector<MultiIndex>& s) { out.push_back(s); });
  return out;
}

inline MultipartiteCount count_multipartitions(const MultiIndex& target) {
  if (target.empty() || mi_is_zero(target))
    throw std::invalid_argument("multipartition target must have a positive entry");
  auto parts = parts_below(target);
  MultipartiteCount c;
  c.target = target;
  std::vector<MultiIndex> stack;
  detail::walk_multipartitions(parts, false, target, int(parts.size()) - 1, stack,
                               [&](const std::vector<MultiIndex>& s) {
                                 c.unrestricted++;
                                 c.by_num_parts[int(s.size())]++;
                               });
  detail::walk_multipartitions(parts, true, target, int(parts.size()) - 1, stack,
                               [&](const std::vector<MultiIndex>& s) {
                                 c.distinct++;
                                 c.by_num_parts_distinct[int(s.size())]++;
                               });
  return c;
}

inline std::vector<std::string> gf_vars(int m, bool graded_z) {
  std::vector<std::string> v;
  if (graded_z) v.push_back("z");
  for (int i = 1; i <= m; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

// Generating function of unrestricted multipartite partitions, with the part
// count tracked by the extra variable z: coefficient of z^j x^kvec counts the
// decompositions of kvec into exactly j nonzero parts.
template <class Real>
Series<Real> gf_unrestricted_graded(int m, int N) {
  using S = Series<Real>;
  using C = Cplx<Real>;
  if (m < 1 || N < 1) throw std::invalid_argument("need m >= 1, N >= 1");
  S acc(gf_vars(m, true), N);
  acc.set_coeff(std::vector<int>(m + 1, 0), C(1));
  MultiIndex cap(m, N);
  for (const auto& part : parts_below(cap)) {
    const int w = mi_total(part);
    if (w + 1 > N) continue;
    S factor = S::zero_like(acc); // sum_j z^j x^(j*part)
    for (int j = 0; j * (w + 1) <= N; ++j) {
      std::vector<int> e(m + 1, 0);
      e[0] = j;
      for (int i = 0; i < m; ++i) e[i + 1] = j * part[i];
      factor.set_coeff(e, C(1));
    }
    acc = acc * factor;
  }
  return acc;
}

template <class Real>
Series<Real> gf_distinct_graded(int m, int N) {
  using S = Series<Real>;
  using C = Cplx<Real>;
  if (m < 1 || N < 1) throw std::invalid_argument("need m >= 1, N >= 1");
  S acc(gf_vars(m, true), N);
  acc.set_coeff(std::vector<int>(m + 1, 0), C(1));
  MultiIndex cap(m, N);
  for (const auto& part : parts_below(cap)) {
    const int w = mi_total(part);
    if (w + 1 > N) continue;
    S factor = S::constant(acc, C(1));
    std::vector<int> e(m + 1, 0);
    e[0] = 1;
    for (int i = 0; i < m; ++i) e[i + 1] = part[i];
    factor.set_coeff(e, C(1));
    acc = acc * factor;
  }
  return acc;
}

template <class Real>
Series<Real> collapse_z(const Series<Real>& graded) {
  // sum the z-column into plain x-series
  Series<Real> out(gf_vars(int(graded.vars().size()) - 1, false), graded.order());
  graded.for_each_nonzero([&](const std::vector<int>& e, const Cplx<Real>& v) {
    std::vector<int> ex(e.begin() + 1, e.end());
    int total = 0;
    for (int t : ex) total += t;
    if (total > out.order()) return;
    out.set_coeff(ex, out.coeff(ex) + v);
  });
  return out;
}

// Same generating functions with z evaluated to a number.
template <class Real>
Series<Real> gf_unrestricted(const Cplx<Real>& z, int m, int N) {
  return collapse_z(gf_unrestricted_graded<Real>(m, N).scale_var(0, z));
}

template <class Real>
Series<Real> gf_distinct(const Cplx<Real>& z, int m, int N) {
  return collapse_z(gf_distinct_graded<Real>(m, N).scale_var(0, z));
}

template <class Real>
long long coefficient_count(const Series<Real>& s, const std::vector<int>& e,
                            Real round_tol = Real(1e-6)) {
  Cplx<Real> c = s.coeff(e);
  long long r = static_cast<long long>(std::llround(double(c.real())));
  if (std::abs(c.real() - Real(r)) > round_tol || std::abs(c.imag()) > round_tol)
    throw std::domain_error("series coefficient is not close to an integer");
  return r;
}

enum class BetaConvention { same_nome, distinct_powers };

// Multiplicity of the exponent n in the one-nome specialization of the
// multipartite product: compositions of n into m nonnegative parts for the
// same-nome map, partitions of n into parts <= m for the distinct-powers map.
inline long long specialized_multiplicity(int n, int m, BetaConvention conv) {
  if (n < 1) return 0;
  if (conv == BetaConvention::same_nome) return binomial(n + m - 1, m - 1);
  std::vector<long long> dp(n + 1, 0);
  dp[0] = 1;
  for (int part = 1; part <= m; ++part)
    for (int s = part; s <= n; ++s) dp[s] += dp[s - part];
  return dp[n];
}

// beta_m(n) as a q-series: 1/(1-q^n)^m for the same-nome map,
// prod_{j=1..m} 1/(1-q^{jn}) for the distinct-powers map.  With
// exclude_zero_part the constant 1 is removed, which matches products that
// omit the all-zero exponent tuple.
template <class Real>
Series<Real> beta_series(int n, int m, int qorder, BetaConvention conv,
                         bool exclude_zero_part) {
  using S = Series<Real>;
  using C = Cplx<Real>;
  if (n < 1 || m < 1) throw std::invalid_argument("beta_series: need n,m >= 1");
  S acc({"q"}, qorder);
  if (conv == BetaConvention::same_nome) {
    for (int j = 0; j * n <= qorder; ++j)
      acc.set_coeff({j * n}, C(Real(binomial(j + m - 1, m - 1))));
  } else {
    acc.set_coeff({0}, C(1));
    for (int j = 1; j <= m; ++j) {
      if (j * n > qorder) break;
      S f = S::constant(acc, C(1));
      f.set_coeff({j * n}, C(-1));
      acc = acc * f.inv();
    }
  }
  if (exclude_zero_part) acc.set_coeff({0}, acc.coeff({0}) - C(1));
  return acc;
}

template <class Real>
struct GfSpecialized {
  Series<Real> product_form; // truncated product over exponents n >= 1
  Series<Real> exp_form;     // exp of the weighted beta sums
  Real residual;             // max coefficient deviation between the two
};

// One-nome specialization of the multipartite generating functions, computed
// two independent ways and compared.  plus_sign selects the (1 + z q^n)
// product; otherwise (1 - z q^n)^{-1} factors are used.
template <class Real>
GfSpecialized<Real> gf_specialized(int m, int N, bool plus_sign, BetaConvention conv) {
  using S = Series<Real>;
  using C = Cplx<Real>;
  if (m < 1 || N < 1) throw std::invalid_argument("need m >= 1, N >= 1");
  S prod({"z", "q"}, N);
  prod.set_coeff({0, 0}, C(1));
  for (int n = 1; n + 1 <= N; ++n) {
    long long mult = specialized_multiplicity(n, m, conv);
    if (mult == 0) continue;
    S base = S::constant(prod, C(1));
    base.set_coeff({1, n}, plus_sign ? C(1) : C(-1));
    prod = prod * base.pow_int(plus_sign ? mult : -mult);
  }

  S logsum = S::zero_like(prod);
  for (int n = 1; 2 * n <= N; ++n) {
    S beta = beta_series<Real>(n, m, N, conv, /*exclude_zero_part=*/true);
    S term = S::zero_like(prod);
    beta.for_each_nonzero([&](const std::vector<int>& e, const C& v) {
      if (n + e[0] > N) return;
      term.set_coeff({n, e[0]}, v);
    });
    Real sign = plus_sign ? Real(n % 2 ? 1 : -1) : Real(1);
    logsum += term * C(sign / Real(n));
  }
  S expf = logsum.exp();
  return {prod, expf, max_abs_diff(prod, expf)};
}

template <class Real>
struct GfValue {
  Cplx<Real> product_value;
  Cplx<Real> exp_value;
  Real residual;
  int product_terms;
  Real tail_bound;
};

// Numeric evaluation of the specialized generating functions at a point,
// again via both routes.  Needs |z q| < 1.
template <class Real>
GfValue<Real> gf_specialized_value(const Cplx<Real>& z, const Cplx<Real>& q, int m,
                                   bool plus_sign, BetaConvention conv,
                                   Real tol = Real(1e-12)) {
  using C = Cplx<Real>;
  if (std::abs(q) >= Real(1)) throw std::domain_error("need |q| < 1");
  if (std::abs(z * q) >= Real(1)) throw std::domain_error("need |z q| < 1");
  C prod(1);
  int n = 0;
  Real tail = 0;
  for (n = 1; n < 100000; ++n) {
    Real mult = Real(specialized_multiplicity(n, m, conv));
    Real mag = mult * std::abs(z) * std::pow(std::abs(q), Real(n));
    if (mag < tol * Real(1e-4) && n > 4) {
      // geometric-style bound on the rest of the log
      Real r = std::abs(q);
      Real t = mag;
      while (t > Real(1e-30) && tail < Real(1e10)) {
        tail += t;
        t *= r * Real(2); // multiplicity growth is polynomial; factor 2 dominates it
        if (t < tail * Real(1e-18)) break;
      }
      break;
    }
    C u = z * pow_with_log(std::log(q), C(Real(n)));
    C base = plus_sign ? C(1) + u : C(1) - u;
    prod *= std::exp(C(plus_sign ? mult : -mult) * std::log(base));
  }

  C lsum(0);
  for (int k = 1; k < 100000; ++k) {
    C beta(1);
    if (conv == BetaConvention::same_nome) {
      beta = std::pow(C(1) - pow_with_log(std::log(q), C(Real(k))), C(-Real(m)));
    } else {
      for (int j = 1; j <= m; ++j)
        beta /= (C(1) - pow_with_log(std::log(q), C(Real(j * k))));
    }
    C zk = std::pow(z, Real(k));
    C term = zk / Real(k) * (beta - C(1));
    if (!plus_sign)
      lsum += term;
    else
      lsum -= std::pow(C(-1), Real(k)) * term;
    if (std::abs(term) < tol * Real(1e-6) && k > 4) break;
  }
  C ev = std::exp(lsum);
  Real resid = std::abs(prod - ev) / std::max(std::abs(ev), Real(1e-300));
  return {prod, ev, resid, n, tail};
}

} // namespace qspectra::mp

#endif
