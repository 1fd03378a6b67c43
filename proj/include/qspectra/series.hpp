#ifndef QSPECTRA_SERIES_HPP
#define QSPECTRA_SERIES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qspectra/scalar.hpp"

namespace qspectra {

// Multivariate power series truncated at a fixed total (weighted) degree.
// Coefficients live in a dense table indexed by a shared monomial layout;
// arithmetic walks non-zero entries only.  Values are plain value types:
// nothing is shared mutably, so instances may be used from several threads.
template <class Real>
class Series {
public:
  using C = Cplx<Real>;
  using Expt = std::vector<int>;

  struct ExptHash {
    std::size_t operator()(const Expt& e) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (int v : e) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  struct Layout {
    std::vector<std::string> vars;
    std::vector<int> weights; // per-variable degree weight, >= 1
    int order = 0;            // max weighted total degree
    std::vector<Expt> monos;  // sorted by (weighted degree, lexicographic)
    std::unordered_map<Expt, std::size_t, ExptHash> index;

    int wdeg(const Expt& e) const {
      long d = 0;
      for (std::size_t i = 0; i < e.size(); ++i) d += long(e[i]) * weights[i];
      return static_cast<int>(d);
    }
  };

  Series() = default;

  Series(std::vector<std::string> vars, int order)
      : Series(std::move(vars), order, {}) {}

  Series(std::vector<std::string> vars, int order, std::vector<int> weights) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    if (weights.empty()) weights.assign(vars.size(), 1);
    if (weights.size() != vars.size())
      throw std::invalid_argument("weights/variables size mismatch");
    for (int w : weights)
      if (w < 1) throw std::invalid_argument("variable weights must be >= 1");
    lay_ = build_layout(std::move(vars), order, std::move(weights));
    c_.assign(lay_->monos.size(), C(0));
  }

  static Series constant(const Series& like, const C& value) {
    Series r = zero_like(like);
    r.c_[0] = value;
    require_finite(value, "series coefficient");
    return r;
  }

  static Series zero_like(const Series& like) {
    Series r;
    r.lay_ = like.lay_;
    r.c_.assign(like.c_.size(), C(0));
    return r;
  }

  const std::vector<std::string>& vars() const { return lay_->vars; }
  const std::vector<int>& weights() const { return lay_->weights; }
  int order() const { return lay_->order; }
  std::size_t table_size() const { return c_.size(); }

  C coeff(const Expt& e) const {
    auto it = lay_->index.find(e);
    if (it == lay_->index.end())
      throw std::out_of_range("exponent outside truncation order");
    return c_[it->second];
  }

  void set_coeff(const Expt& e, const C& v) {
    require_finite(v, "series coefficient");
    auto it = lay_->index.find(e);
    if (it == lay_->index.end())
      throw std::out_of_range("exponent outside truncation order");
    c_[it->second] = v;
  }

  void add_coeff(const Expt& e, const C& v) { set_coeff(e, coeff(e) + v); }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != C(0)) return false;
    return true;
  }

  // Least weighted degree carrying a non-zero coefficient; order()+1 if zero.
  int min_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != C(0)) return lay_->wdeg(lay_->monos[i]);
    return lay_->order + 1;
  }

  void for_each_nonzero(const std::function<void(const Expt&, const C&)>& fn) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != C(0)) fn(lay_->monos[i], c_[i]);
  }

  std::vector<std::pair<Expt, C>> nonzero_terms() const {
    std::vector<std::pair<Expt, C>> out;
    for_each_nonzero([&](const Expt& e, const C& v) { out.emplace_back(e, v); });
    return out;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Series& operator+=(const Series& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Series& operator-=(const Series& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  Series& operator*=(const C& s) {
    require_finite(s, "scalar factor");
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Series operator*(Series a, const C& s) { return a *= s; }
  friend Series operator*(const C& s, Series a) { return a *= s; }
  Series& operator/=(const C& s) { return (*this) *= (C(1) / s); }
  friend Series operator/(Series a, const C& s) { return a /= s; }

  friend Series operator*(const Series& a, const Series& b) {
    a.check_compatible(b);
    Series r = zero_like(a);
    const auto& lay = *a.lay_;
    // walk the sparser operand outermost
    const Series& outer = (a.count_nonzero() <= b.count_nonzero()) ? a : b;
    const Series& inner = (&outer == &a) ? b : a;
    Expt sum(lay.vars.size());
    for (std::size_t i = 0; i < outer.c_.size(); ++i) {
      if (outer.c_[i] == C(0)) continue;
      const Expt& ei = lay.monos[i];
      const int di = lay.wdeg(ei);
      for (std::size_t j = 0; j < inner.c_.size(); ++j) {
        if (inner.c_[j] == C(0)) continue;
        const Expt& ej = lay.monos[j];
        if (di + lay.wdeg(ej) > lay.order) continue;
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = ei[k] + ej[k];
        auto it = lay.index.find(sum);
        r.c_[it->second] += outer.c_[i] * inner.c_[j];
      }
    }
    return r;
  }
  Series& operator*=(const Series& o) { return *this = (*this) * o; }

  // exp(a); requires zero constant term.
  Series exp() const {
    if (c_[0] != C(0))
      throw std::domain_error("series exp requires zero constant term");
    Series acc = constant(*this, C(1));
    const int md = min_degree();
    if (md > order()) return acc;
    Series term = constant(*this, C(1));
    const int kmax = order() / md;
    for (int k = 1; k <= kmax; ++k) {
      term = term * (*this);
      term /= C(Real(k));
      acc += term;
    }
    return acc;
  }

  // log(a); requires non-zero constant term.  The constant coefficient of the
  // result is the principal logarithm of a's constant term.
  Series log() const {
    const C c0 = c_[0];
    if (c0 == C(0))
      throw std::domain_error("series log requires non-zero constant term");
    Series u = (*this) / c0;
    u.c_[0] = C(0);
    Series acc = constant(*this, std::log(c0));
    const int md = u.min_degree();
    if (md > order()) return acc;
    Series term = constant(*this, C(1));
    const int kmax = order() / md;
    for (int k = 1; k <= kmax; ++k) {
      term = term * u;
      C w = C(Real(k % 2 ? 1 : -1) / Real(k));
      acc += term * w;
    }
    return acc;
  }

  // 1/a; requires non-zero constant term.
  Series inv() const {
    const C c0 = c_[0];
    if (c0 == C(0))
      throw std::domain_error("series inverse requires non-zero constant term");
    Series u = constant(*this, C(1)) - (*this) / c0; // min degree >= 1
    Series acc = constant(*this, C(1));
    const int md = u.min_degree();
    if (md <= order()) {
      Series term = constant(*this, C(1));
      const int kmax = order() / md;
      for (int k = 1; k <= kmax; ++k) {
        term = term * u;
        acc += term;
      }
    }
    return acc / c0;
  }

  Series pow_int(long e) const {
    if (e < 0) return inv().pow_int(-e);
    Series acc = constant(*this, C(1));
    Series base = *this;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
      if (n & 1ul) acc = acc * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return acc;
  }

  // Substitutes every variable x by x^d; terms pushed past the truncation
  // order are dropped.
  Series compose_power(int d) const {
    if (d < 1) throw std::invalid_argument("compose_power requires d >= 1");
    Series r = zero_like(*this);
    Expt scaled(lay_->vars.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == C(0)) continue;
      const Expt& e = lay_->monos[i];
      for (std::size_t k = 0; k < e.size(); ++k) scaled[k] = e[k] * d;
      if (lay_->wdeg(scaled) > lay_->order) continue;
      r.c_[lay_->index.at(scaled)] += c_[i];
    }
    return r;
  }

  // x_i -> s * x_i
  Series scale_var(std::size_t var_idx, const C& s) const {
    if (var_idx >= lay_->vars.size()) throw std::out_of_range("variable index");
    Series r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (r.c_[i] == C(0)) continue;
      int e = lay_->monos[i][var_idx];
      if (e) r.c_[i] *= pow_small(s, e);
    }
    return r;
  }

  Series truncated(int new_order) const {
    if (new_order > lay_->order)
      throw std::invalid_argument("cannot raise truncation order");
    Series r(lay_->vars, new_order, lay_->weights);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == C(0)) continue;
      const Expt& e = lay_->monos[i];
      auto it = r.lay_->index.find(e);
      if (it != r.lay_->index.end()) r.c_[it->second] = c_[i];
    }
    return r;
  }

  C eval(const std::vector<C>& point) const {
    if (point.size() != lay_->vars.size())
      throw std::invalid_argument("evaluation point arity mismatch");
    C acc(0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == C(0)) continue;
      C mono(1);
      const Expt& e = lay_->monos[i];
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k]) mono *= pow_small(point[k], e[k]);
      acc += c_[i] * mono;
    }
    return acc;
  }

  std::size_t count_nonzero() const {
    std::size_t n = 0;
    for (const auto& v : c_)
      if (v != C(0)) ++n;
    return n;
  }

  friend Real max_abs_diff(const Series& a, const Series& b) {
    a.check_compatible(b);
    Real m = 0;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      m = std::max(m, std::abs(a.c_[i] - b.c_[i]));
    return m;
  }

  Real max_abs() const {
    Real m = 0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < lay_->vars.size(); ++i)
      if (lay_->vars[i] == name) return i;
    throw std::invalid_argument("no variable named " + name);
  }

private:
  std::shared_ptr<const Layout> lay_;
  std::vector<C> c_;


  void check_compatible(const Series& o) const {
    if (lay_ == o.lay_) return;
    if (lay_->vars != o.lay_->vars)
      throw std::invalid_argument("series variable sets differ");
    if (lay_->order != o.lay_->order)
      throw std::invalid_argument("series truncation orders differ");
    if (lay_->weights != o.lay_->weights)
      throw std::invalid_argument("series variable weights differ");
  }

  static C pow_small(C base, int e) {
    C acc(1);
    while (e) {
      if (e & 1) acc *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return acc;
  }

  static std::shared_ptr<const Layout>
  build_layout(std::vector<std::string> vars, int order, std::vector<int> weights) {
    auto lay = std::make_shared<Layout>();
    lay->vars = std::move(vars);
    lay->weights = std::move(weights);
    lay->order = order;
    Expt e(lay->vars.size(), 0);
    enumerate(*lay, e, 0, 0);
    std::sort(lay->monos.begin(), lay->monos.end(),
              [&](const Expt& a, const Expt& b) {
                int da = lay->wdeg(a), db = lay->wdeg(b);
                if (da != db) return da < db;
                return a < b;
              });
    lay->index.reserve(lay->monos.size() * 2);
    for (std::size_t i = 0; i < lay->monos.size(); ++i)
      lay->index.emplace(lay->monos[i], i);
    return lay;
  }

  static void enumerate(Layout& lay, Expt& e, std::size_t pos, long deg) {
    if (lay.monos.size() > 4'000'000ul)
      throw std::length_error("series layout too large for this truncation");
    if (pos == e.size()) {
      lay.monos.push_back(e);
      return;
    }
    const int w = lay.weights[pos];
    for (int k = 0; deg + long(k) * w <= lay.order; ++k) {
      e[pos] = k;
      enumerate(lay, e, pos + 1, deg + long(k) * w);
    }
    e[pos] = 0;
  }
};

using SeriesD = Series<double>;

} // namespace qspectra

#endif
