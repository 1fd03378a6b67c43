#ifndef QSPECTRA_SYMMFUNC_HPP
#define QSPECTRA_SYMMFUNC_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qspectra/partition.hpp"
#include "qspectra/rational.hpp"
#include "qspectra/series.hpp"

namespace qspectra::symm {

// centralizer order of the conjugacy class of cycle type mu:
// z_mu = prod_j j^{m_j} m_j!
inline long long z_mu(const Partition& mu) {
  long long z = 1;
  auto mult = mu.multiplicities();
  for (std::size_t j = 0; j < mult.size(); ++j) {
    for (int t = 0; t < mult[j]; ++t) z *= static_cast<long long>(j + 1);
    for (int t = 2; t <= mult[j]; ++t) z *= t;
  }
  return z;
}

namespace detail {

// first-column hook lengths of the shape; a fixed-size distinct set that
// border-strip removal acts on
inline std::vector<int> beta_set(const Partition& lam) {
  const int L = lam.length();
  std::vector<int> b(L);
  for (int i = 0; i < L; ++i) b[i] = lam.parts[i] + (L - 1 - i);
  std::sort(b.begin(), b.end());
  return b;
}

inline long long strip_rec(std::vector<int>& betas, const std::vector<int>& mu,
                           std::size_t idx) {
  if (idx == mu.size()) return 1;
  const int r = mu[idx];
  long long total = 0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const int b = betas[i];
    const int target = b - r;
    if (target < 0) continue;
    bool occupied = false;
    int height = 0;
    for (int other : betas) {
      if (other == target) {
        occupied = true;
        break;
      }
      if (other > target && other < b) ++height;
    }
    if (occupied) continue;
    std::vector<int> next = betas;
    next[i] = target;
    std::sort(next.begin(), next.end());
    long long sub = strip_rec(next, mu, idx + 1);
    total += (height % 2 ? -sub : sub);
  }
  return total;
}

} // namespace detail

// irreducible symmetric-group character chi_A at the class of cycle type mu,
// by iterated border-strip removal (exact integers).
inline long long character(const Partition& A, const Partition& mu) {
  if (A.weight() != mu.weight())
    throw std::invalid_argument("character: |A| and |mu| must match");
  if (A.weight() == 0) return 1;
  auto betas = detail::beta_set(A);
  return detail::strip_rec(betas, mu.parts, 0);
}

struct CharacterTable {
  int n = 0;
  std::vector<Partition> shapes;  // row labels, descending lex
  std::vector<Partition> classes; // column labels, descending lex
  std::vector<std::vector<long long>> chi;
};

inline CharacterTable character_table(int n) {
  CharacterTable t;
  t.n = n;
  t.shapes = partitions_of(n);
  t.classes = t.shapes;
  for (const auto& A : t.shapes) {
    std::vector<long long> row;
    for (const auto& mu : t.classes) row.push_back(character(A, mu));
    t.chi.push_back(std::move(row));
  }
  return t;
}

// sum_mu chi_A(mu) chi_B(mu) / z_mu = delta_AB, checked in exact integers as
// sum_mu (n!/z_mu) chi_A chi_B = delta_AB n!
inline bool orthogonality_check(int n) {
  auto t = character_table(n);
  long long nfact = 1;
  for (int k = 2; k <= n; ++k) nfact *= k;
  std::vector<long long> class_size;
  for (const auto& mu : t.classes) class_size.push_back(nfact / z_mu(mu));
  for (std::size_t a = 0; a < t.shapes.size(); ++a)
    for (std::size_t b = a; b < t.shapes.size(); ++b) {
      long long acc = 0;
      for (std::size_t m = 0; m < t.classes.size(); ++m)
        acc += class_size[m] * t.chi[a][m] * t.chi[b][m];
      if (acc != (a == b ? nfact : 0)) return false;
    }
  return true;
}

// --- exact sparse polynomials over the rationals ---------------------------

struct ExactPoly {
  int nvars = 0;
  std::map<std::vector<int>, Rational> coeffs;

  explicit ExactPoly(int nv = 0) : nvars(nv) {}

  void add_term(const std::vector<int>& e, const Rational& c) {
    if (c.num == 0) return;
    auto it = coeffs.find(e);
    if (it == coeffs.end()) {
      coeffs.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.num == 0) coeffs.erase(it);
    }
  }

  static ExactPoly constant(int nv, const Rational& c) {
    ExactPoly p(nv);
    p.add_term(std::vector<int>(nv, 0), c);
    return p;
  }

  friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly r = a;
    for (const auto& [e, c] : b.coeffs) r.add_term(e, c);
    return r;
  }

  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly r(a.nvars);
    for (const auto& [ea, ca] : a.coeffs)
      for (const auto& [eb, cb] : b.coeffs) {
        std::vector<int> e(a.nvars);
        for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  ExactPoly scaled(const Rational& s) const {
    ExactPoly r(nvars);
    for (const auto& [e, c] : coeffs) r.add_term(e, c * s);
    return r;
  }

  // x_i -> x_i^d
  ExactPoly compose_power(int d) const {
    ExactPoly r(nvars);
    for (const auto& [e, c] : coeffs) {
      std::vector<int> s(e);
      for (auto& v : s) v *= d;
      r.add_term(s, c);
    }
    return r;
  }

  bool operator==(const ExactPoly& o) const {
    return nvars == o.nvars && coeffs == o.coeffs;
  }

  bool is_integral() const {
    for (const auto& [e, c] : coeffs)
      if (!c.is_integer()) return false;
    return true;
  }
};

// Newton power sum p_n over nv variables
inline ExactPoly power_sum(int n, int nv) {
  ExactPoly r(nv);
  for (int i = 0; i < nv; ++i) {
    std::vector<int> e(nv, 0);
    e[i] = n;
    r.add_term(e, Rational(1));
  }
  return r;
}

inline ExactPoly power_sum_product(const Partition& mu, int nv) {
  ExactPoly r = ExactPoly::constant(nv, Rational(1));
  for (int part : mu.parts) r = r * power_sum(part, nv);
  return r;
}

// Schur polynomial through the character expansion
//   s_A = sum_mu chi_A(mu)/z_mu p_mu;  the result always has integer
// coefficients, which is asserted.
inline ExactPoly schur_exact(const Partition& A, int nv) {
  const int n = A.weight();
  ExactPoly acc(nv);
  for (const auto& mu : partitions_of(n)) {
    long long chi = character(A, mu);
    if (chi == 0) continue;
    acc = acc + power_sum_product(mu, nv).scaled(Rational(chi, z_mu(mu)));
  }
  if (!acc.is_integral())
    throw std::logic_error("schur expansion produced non-integer coefficients");
  return acc;
}

// d-th Adams operation: s_A(X^d)
inline ExactPoly adams_exact(const Partition& A, int d, int nv) {
  if (d < 1) throw std::invalid_argument("adams: d must be >= 1");
  return schur_exact(A, nv).compose_power(d);
}

// the same Schur function with every power sum p_k replaced by p_{kd}
inline ExactPoly adams_via_power_sums(const Partition& A, int d, int nv) {
  const int n = A.weight();
  ExactPoly acc(nv);
  for (const auto& mu : partitions_of(n)) {
    long long chi = character(A, mu);
    if (chi == 0) continue;
    ExactPoly pm = ExactPoly::constant(nv, Rational(1));
    for (int part : mu.parts) pm = pm * power_sum(part * d, nv);
    acc = acc + pm.scaled(Rational(chi, z_mu(mu)));
  }
  return acc;
}

template <class Real>
Series<Real> to_series(const ExactPoly& p, const std::vector<std::string>& vars, int N) {
  Series<Real> s(vars, N);
  for (const auto& [e, c] : p.coeffs) {
    int deg = 0;
    for (int v : e) deg += v;
    if (deg > N) continue;
    s.set_coeff(e, Cplx<Real>(Real(c.num) / Real(c.den)));
  }
  return s;
}

} // namespace qspectra::symm

#endif
