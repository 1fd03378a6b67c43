#ifndef QSPECTRA_SUITE_HPP
#define QSPECTRA_SUITE_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qspectra/bell.hpp"
#include "qspectra/csgen.hpp"
#include "qspectra/hierarchy.hpp"
#include "qspectra/multipartite.hpp"
#include "qspectra/report.hpp"
#include "qspectra/series.hpp"
#include "qspectra/spectral.hpp"
#include "qspectra/symmfunc.hpp"

namespace qspectra::suite {

struct SuiteConfig {
  double tolerance = 1e-7;
  Complex q{0.2, 0.0};
  std::optional<Complex> theta;
  std::optional<std::pair<double, double>> alpha_beta;
  int order = 12;
  unsigned seed = 12345;
  bool strict = false;
  std::string precision = "double";
  std::vector<std::string> identities; // empty selects everything

  bool selected(const std::string& name) const {
    if (identities.empty()) return true;
    for (const auto& want : identities) {
      if (name == want) return true;
      // prefix match up to a bracketed qualifier
      if (name.size() > want.size() && name.compare(0, want.size(), want) == 0 &&
          name[want.size()] == '[')
        return true;
    }
    return false;
  }
};

template <class Real>
spectral::SpectralParams<Real> params_from(const SuiteConfig& cfg) {
  using P = spectral::SpectralParams<Real>;
  if (cfg.alpha_beta)
    return P::from_alpha_beta(Real(cfg.alpha_beta->first), Real(cfg.alpha_beta->second));
  if (cfg.theta)
    return P::from_theta(Cplx<Real>(Real(cfg.theta->real()), Real(cfg.theta->imag())));
  return P::from_nome(Cplx<Real>(Real(cfg.q.real()), Real(cfg.q.imag())));
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> seed_param(unsigned seed) {
  return {{"seed", std::to_string(seed)}};
}

// ---- multipartite -----------------------------------------------------------

inline IdentityReport partitions_oracle() {
  double worst = 0;
  long checked = 0;
  for (int m = 1; m <= 3; ++m) {
    auto gf = mp::gf_unrestricted_graded<double>(m, 12);
    auto gd = mp::gf_distinct_graded<double>(m, 12);
    auto gfx = mp::collapse_z(gf);
    auto gdx = mp::collapse_z(gd);
    mp::MultiIndex cap(m, 6);
    for (const auto& target : mp::parts_below(cap)) {
      if (mp::mi_total(target) > 6) continue;
      auto counts = mp::count_multipartitions(target);
      std::vector<int> e(target.begin(), target.end());
      worst = std::max(worst, std::abs(gfx.coeff(e) - Complex(double(counts.unrestricted))));
      worst = std::max(worst, std::abs(gdx.coeff(e) - Complex(double(counts.distinct))));
      for (auto& [j, cnt] : counts.by_num_parts) {
        std::vector<int> ez(m + 1, 0);
        ez[0] = j;
        for (int i = 0; i < m; ++i) ez[i + 1] = target[i];
        worst = std::max(worst, std::abs(gf.coeff(ez) - Complex(double(cnt))));
      }
      ++checked;
    }
  }
  // frozen sanity anchors
  auto c11 = mp::count_multipartitions({1, 1});
  auto c20 = mp::count_multipartitions({2, 0});
  auto c5 = mp::count_multipartitions({5});
  bool anchors = c11.unrestricted == 2 && c20.unrestricted == 2 && c20.distinct == 1 &&
                 c5.unrestricted == 7;
  auto rep = make_residual_report("partitions-oracle", {{"targets", std::to_string(checked)}},
                                  worst, 1e-9);
  if (!anchors) {
    rep.pass = false;
    rep.status = CheckStatus::fail;
    rep.notes = "frozen anchor counts violated";
  }
  return rep;
}

inline IdentityReport gf_product_collapse() {
  double worst = 0;
  for (int m = 1; m <= 3; ++m) {
    auto f = mp::gf_specialized<double>(m, 10, false, mp::BetaConvention::same_nome);
    auto g = mp::gf_specialized<double>(m, 10, true, mp::BetaConvention::same_nome);
    auto gm = g.product_form.scale_var(0, Complex(-1));
    auto diff = gm.log() + f.product_form.log();
    worst = std::max(worst, diff.max_abs());
  }
  return make_residual_report("gf-product-collapse", {{"m", "1..3"}}, worst, 1e-10, 0, {},
                              "checks G(-z) F(z) = 1 on the log scale");
}

inline IdentityReport gf_specialized_sweep(mp::BetaConvention conv) {
  std::string tag =
      conv == mp::BetaConvention::same_nome ? "same-nome" : "distinct-powers";
  double worst = 0;
  for (int m = 1; m <= 3; ++m) {
    worst = std::max(worst, double(mp::gf_specialized<double>(m, 12, false, conv).residual));
    worst = std::max(worst, double(mp::gf_specialized<double>(m, 12, true, conv).residual));
  }
  return make_residual_report("gf-specialized[" + tag + "]", {{"m", "1..3"}}, worst, 1e-9);
}

// ---- bell -------------------------------------------------------------------

inline IdentityReport bell_consistency(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Complex> g;
    for (int i = 0; i < 12; ++i) g.emplace_back(u(rng), u(rng));
    auto y = bell::bell_recurrence(g, 12);
    for (int n = 1; n <= 12; ++n) {
      Complex e = bell::faa_di_bruno(g, n);
      worst = std::max(worst, std::abs(e - y[n]) / std::max(1.0, std::abs(y[n])));
    }
  }
  return make_residual_report("bell-consistency", seed_param(seed), worst, 1e-9);
}

inline IdentityReport bell_gf_law(unsigned seed) {
  std::mt19937 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1, 1);
  const int N = 12;
  std::vector<Complex> g;
  for (int i = 0; i < N; ++i) g.emplace_back(u(rng), u(rng));
  auto y = bell::bell_recurrence(g, N);
  SeriesD expo({"z"}, N), lhs({"z"}, N);
  double fact = 1;
  lhs.set_coeff({0}, Complex(1));
  for (int n = 1; n <= N; ++n) {
    fact *= n;
    expo.set_coeff({n}, g[n - 1] / fact);
    lhs.set_coeff({n}, y[n] / fact);
  }
  return make_residual_report("bell-gf-law", seed_param(seed + 1),
                              max_abs_diff(lhs, expo.exp()), 1e-10);
}

inline IdentityReport pq_vs_expansion() {
  double worst = 0;
  for (int m = 1; m <= 3; ++m)
    for (auto conv : {mp::BetaConvention::same_nome, mp::BetaConvention::distinct_powers}) {
      auto F = mp::gf_specialized<double>(m, 12, false, conv);
      auto G = mp::gf_specialized<double>(m, 12, true, conv);
      auto Pc = bell::p_coefficients<double>(6, m, 12, conv);
      auto Qc = bell::q_coefficients<double>(6, m, 12, conv);
      for (int j = 1; j <= 6; ++j)
        for (int k = 0; j + k <= 12; ++k) {
          worst = std::max(worst, std::abs(Pc[j - 1].coeff({k}) - F.product_form.coeff({j, k})));
          worst = std::max(worst, std::abs(Qc[j - 1].coeff({k}) - G.product_form.coeff({j, k})));
        }
    }
  return make_residual_report("pq-coefficients", {{"m", "1..3"}, {"j", "1..6"}}, worst, 1e-8);
}

inline IdentityReport pq_example_p2() {
  double worst = 0;
  for (int m = 1; m <= 3; ++m) {
    auto P = bell::p_coefficients<double>(2, m, 12, mp::BetaConvention::same_nome);
    auto b1 = mp::beta_series<double>(1, m, 12, mp::BetaConvention::same_nome, true);
    auto b2 = mp::beta_series<double>(2, m, 12, mp::BetaConvention::same_nome, true);
    worst = std::max(worst, max_abs_diff(P[1] * Complex(2), b1 * b1 + b2));
  }
  return make_residual_report("pq-example-2P2", {{"m", "1..3"}}, worst, 1e-10, 0, {},
                              "2 P_2 = beta(1)^2 + beta(2) as q-series");
}

inline IdentityReport prodexp_check(const std::string& tag, const std::vector<long>& a) {
  std::vector<Complex> ac(a.begin(), a.end());
  auto rec = bell::product_expansion<double>(ac, 20);
  auto dir = bell::product_expansion_direct<double>(a, 20);
  double worst = 0;
  for (int k = 0; k < 20; ++k)
    worst = std::max(worst, std::abs(rec[k] - dir[k]) / std::max(1.0, std::abs(dir[k])));
  return make_residual_report("prodexp[" + tag + "]", {{"order", "20"}}, worst, 1e-9);
}

// ---- spectral ---------------------------------------------------------------

template <class Real>
IdentityReport zeta_cross_grid(double tol) {
  double worst = 0;
  double tails = 0;
  for (double alpha : {0.5, 1.0, 2.0})
    for (double beta : {0.0, 1.0, double(pi_v<double>)})
      for (double s : {2.0, 5.0}) {
        auto p = spectral::SpectralParams<Real>::from_alpha_beta(Real(alpha), Real(beta));
        auto rep = spectral::check_zeta_cross<Real>(Cplx<Real>(Real(s)), p, tol);
        worst = std::max(worst, rep.residual);
        tails = std::max(tails, rep.tail_bound);
      }
  return make_residual_report("zeta-cross-grid",
                              {{"alpha", "0.5,1,2"}, {"beta", "0,1,pi"}, {"s", "2,5"}},
                              worst, tol, tails);
}

template <class Real>
IdentityReport zeta_zero_sweep(const SuiteConfig& cfg) {
  auto p = spectral::SpectralParams<Real>::from_alpha_beta(Real(1), Real(1));
  double worst = 0, tails = 0;
  for (int n = -2; n <= 2; ++n)
    for (int k1 = 0; k1 <= 3; ++k1)
      for (int k2 = 0; k1 + k2 <= 3; ++k2) {
        auto rep = spectral::check_zeta_zero(n, k1, k2, p, 1e-6);
        worst = std::max(worst, rep.residual);
        tails = std::max(tails, rep.tail_bound);
      }
  (void)cfg;
  return make_residual_report("zeta-zero-lattice", {{"n", "|n|<=2"}, {"k", "k1+k2<=3"}},
                              worst, 1e-6, tails);
}

template <class Real>
IdentityReport zeta_conjugation() {
  auto p = spectral::SpectralParams<Real>::from_alpha_beta(Real(0.9), Real(0));
  Cplx<Real> s(Real(1.3), Real(0.7));
  auto a = spectral::zeta_product(s, p, 24);
  auto b = spectral::zeta_product(std::conj(s), p, 24);
  double resid = double(std::abs(std::conj(a.value) - b.value));
  return make_residual_report("zeta-conjugation", {{"beta", "0"}}, resid, 1e-12);
}

// ---- cs ---------------------------------------------------------------------

inline cs::LinkData random_link_table(int L, int max_total, std::mt19937& rng) {
  cs::LinkData link;
  link.L = L;
  std::uniform_int_distribution<int> val(-3, 3);
  for (const auto& prof : cs::profiles_up_to(L, max_total))
    for (const auto& A : cs::tuples_of_profile(prof)) link.P[A] = Complex(double(val(rng)));
  return link;
}

inline IdentityReport cs_basis_agreement(unsigned seed, int tables) {
  std::mt19937 rng(seed);
  double worst = 0;
  for (int trial = 0; trial < tables; ++trial) {
    int L = 1 + int(rng() % 2);
    std::vector<int> sizes(L, 2);
    auto link = random_link_table(L, 4, rng);
    auto zs = cs::partition_function(link, sizes, 4, cs::Basis::schur);
    auto zp = cs::partition_function(link, sizes, 4, cs::Basis::powersum);
    worst = std::max(worst, double(max_abs_diff(zs, zp)));
  }
  return make_residual_report("cs-basis-agreement",
                              {{"seed", std::to_string(seed)},
                               {"tables", std::to_string(tables)}},
                              worst, 1e-9);
}

inline IdentityReport cs_wp_roundtrip(unsigned seed) {
  std::mt19937 rng(seed + 2);
  double worst = 0;
  for (int trial = 0; trial < 4; ++trial) {
    auto link = random_link_table(1, 5, rng);
    for (const auto& prof : cs::profiles_up_to(1, 5)) {
      std::map<cs::PartitionTuple, Complex> w;
      for (const auto& mu : cs::tuples_of_profile(prof)) w[mu] = cs::w_mu(link, mu);
      for (const auto& A : cs::tuples_of_profile(prof))
        worst = std::max(worst, std::abs(cs::p_from_w(w, A) - link.P.at(A)));
    }
  }
  return make_residual_report("cs-wp-roundtrip", seed_param(seed + 2), worst, 1e-9);
}

inline IdentityReport cs_free_energy(unsigned seed) {
  std::mt19937 rng(seed + 3);
  auto link = random_link_table(1, 4, rng);
  auto fe = cs::free_energy(link, 12);
  double resid = double(max_abs_diff(fe.f.exp(), fe.z));
  return make_residual_report("cs-free-energy-exp", seed_param(seed + 3), resid, 1e-9);
}

inline IdentityReport cs_lmov_single(const SuiteConfig& cfg) {
  cs::InvariantTable t;
  t.L = 1;
  t.entries[{{Partition({1})}, 0, 0}] = 1;
  const double q = std::abs(cfg.q);
  const int N = 6;
  auto z = cs::lmov_product(t, {1}, Complex(q), Complex(0.5), N);
  SeriesD logz({"x1_1"}, N);
  for (int j = 1; j <= N; ++j) {
    double qj = std::pow(q, j);
    logz.set_coeff({j}, Complex(qj * (1 + qj) / std::pow(1 - qj, 3) / j));
  }
  return make_residual_report("cs-lmov-single-entry", {{"q", format_real(q)}},
                              max_abs_diff(z, logz.exp()), 1e-9);
}

inline IdentityReport cs_rank_level(bool inject_violation) {
  cs::InvariantTable t;
  t.L = 1;
  t.entries[{{Partition({1})}, 0, 1}] = 1;
  t.entries[{{Partition({1})}, 0, -1}] = inject_violation ? 1 : -1;
  t.entries[{{Partition({1, 1})}, 0, 0}] = 4;
  auto res = cs::check_q_reflection(t);
  bool ok = inject_violation ? (!res.q_reflection_holds && !res.violations.empty())
                             : res.q_reflection_holds;
  auto rep = make_residual_report(
      inject_violation ? "cs-rank-level-reject" : "cs-rank-level-accept", {},
      ok ? 0.0 : 1.0, 0.5, 0, {},
      inject_violation ? "validator must flag the broken mirror entry"
                       : "Q-reflection table accepted");
  if (inject_violation && !res.violations.empty())
    rep.notes += "; flagged " + res.violations.front();
  return rep;
}

} // namespace detail

template <class Real>
std::vector<IdentityReport> run_suite(const SuiteConfig& cfg) {
  std::vector<IdentityReport> out;
  const double tol = cfg.tolerance;
  auto p = params_from<Real>(cfg);
  auto pd = params_from<double>(cfg);
  auto add = [&](IdentityReport rep) {
    if (cfg.selected(rep.identity)) out.push_back(std::move(rep));
  };

  // multipartite / bell (series layer, double precision)
  add(detail::partitions_oracle());
  add(detail::gf_product_collapse());
  add(detail::gf_specialized_sweep(mp::BetaConvention::same_nome));
  add(detail::gf_specialized_sweep(mp::BetaConvention::distinct_powers));
  add(detail::bell_consistency(cfg.seed));
  add(detail::bell_gf_law(cfg.seed));
  add(detail::pq_vs_expansion());
  add(detail::pq_example_p2());
  add(detail::prodexp_check("unit", std::vector<long>(20, 1)));
  add(detail::prodexp_check("delta", {1}));
  {
    std::vector<long> lin;
    for (int k = 1; k <= 20; ++k) lin.push_back(k);
    add(detail::prodexp_check("linear", lin));
  }

  // spectral
  add(detail::zeta_cross_grid<Real>(1e-8));
  add(detail::zeta_zero_sweep<Real>(cfg));
  add(detail::zeta_conjugation<Real>());
  add(spectral::check_r_product<Real>(false, p, Real(1), Cplx<Real>(0), 1, tol));
  add(spectral::check_r_product<Real>(true, p, Real(1), Cplx<Real>(0), 1, tol));
  {
    auto rep = spectral::check_r_product<Real>(false, p, Real(2), Cplx<Real>(Real(0.5)), 1, tol);
    rep.identity = "R1[a=2]";
    add(rep);
  }
  add(spectral::check_ru_product<Real>(false, p, Real(1), Cplx<Real>(0), Cplx<Real>(1), 1, tol));
  add(spectral::check_ru_product<Real>(true, p, Real(1), Cplx<Real>(0), Cplx<Real>(1), 1, tol));
  {
    auto rep = spectral::check_beta_ratio<Real>(1, 1, p, tol);
    rep.identity = "beta[m=1,n=1]";
    add(rep);
    rep = spectral::check_beta_ratio<Real>(3, 2, p, tol);
    rep.identity = "beta[m=2,n=3]";
    add(rep);
  }
  {
    // spectral generating functions vs the direct one-nome products
    Cplx<Real> z(Real(0.5));
    auto gs = spectral::gf_spectral_form<Real>(z, 1, p, Real(tol) * Real(1e-3));
    auto dv = mp::gf_specialized_value<Real>(z, p.q, 1, false,
                                             mp::BetaConvention::distinct_powers);
    auto gv = mp::gf_specialized_value<Real>(z, p.q, 1, true,
                                             mp::BetaConvention::distinct_powers);
    add(make_report("F1[m=1]", {{"z", "0.5"}},
                    Complex(double(gs.F.real()), double(gs.F.imag())),
                    Complex(double(dv.product_value.real()), double(dv.product_value.imag())),
                    tol, double(gs.tail_bound)));
    add(make_report("G1[m=1]", {{"z", "0.5"}},
                    Complex(double(gs.G.real()), double(gs.G.imag())),
                    Complex(double(gv.product_value.real()), double(gv.product_value.imag())),
                    tol, double(gs.tail_bound)));
    auto gs2 = spectral::gf_spectral_form<Real>(z, 2, p, Real(tol) * Real(1e-3));
    auto dv2 = mp::gf_specialized_value<Real>(z, p.q, 2, false,
                                              mp::BetaConvention::distinct_powers);
    auto sv2 = mp::gf_specialized_value<Real>(z, p.q, 2, false,
                                              mp::BetaConvention::same_nome);
    auto rep = make_report(
        "F1[m=2]", {{"z", "0.5"}}, Complex(double(gs2.F.real()), double(gs2.F.imag())),
        Complex(double(dv2.product_value.real()), double(dv2.product_value.imag())), tol,
        double(gs2.tail_bound));
    rep.notes = "distinct-powers convention matches; same-nome residual " +
                format_real(relative_residual(
                    Complex(double(gs2.F.real()), double(gs2.F.imag())),
                    Complex(double(sv2.product_value.real()),
                            double(sv2.product_value.imag()))));
    add(rep);
  }
  for (auto [zz, bb] : {std::pair<long, long>{1, 0}, {1, 1}, {2, 1}}) {
    auto rep = spectral::check_de3<Real>(zz, bb, p, tol, false);
    rep.identity = "DE3[z=" + std::to_string(zz) + ",b=" + std::to_string(bb) + "]";
    add(rep);
  }

  // hierarchy
  {
    double worst_a = 0, worst_b = 0, tails = 0;
    for (double qq : {0.1, 0.2, 0.3})
      for (double pp : {0.1, 0.2, 0.3}) {
        auto ra = hier::check_g21<Real>(Cplx<Real>(Real(0.3)), Cplx<Real>(Real(qq)),
                                        Cplx<Real>(Real(pp)), false, 1e-8);
        auto rb = hier::check_g21<Real>(Cplx<Real>(Real(0.3)), Cplx<Real>(Real(qq)),
                                        Cplx<Real>(Real(pp)), true, 1e-8);
        worst_a = std::max(worst_a, ra.residual);
        worst_b = std::max(worst_b, rb.residual);
        tails = std::max({tails, ra.tail_bound, rb.tail_bound});
      }
    add(make_residual_report("G21[grid]", {{"q,p", "0.1..0.3"}},
                             std::max(worst_a, worst_b), 1e-8, tails));
  }
  {
    double worst = 0, tails = 0;
    int domain_reports = 0;
    for (double qq : {0.1, 0.2, 0.3})
      for (double pp : {0.1, 0.2, 0.3}) {
        for (bool second : {false, true}) {
          auto r = hier::check_g22<Real>(Cplx<Real>(Real(0.5)), Cplx<Real>(Real(qq)),
                                         Cplx<Real>(Real(pp)), second, 1e-8);
          if (r.status == CheckStatus::domain_failure) {
            ++domain_reports;
            continue;
          }
          worst = std::max(worst, r.residual);
          tails = std::max(tails, r.tail_bound);
        }
      }
    add(make_residual_report("G22[grid]", {{"q,p", "0.1..0.3"}, {"Omega", "0.5"}}, worst,
                             1e-8, tails,
                             {{"domain_reports", double(domain_reports)}},
                             "inverse arguments outside the unit disk are domain-reported"));
  }
  add(hier::check_g1_spectral<Real>(Cplx<Real>(Real(0.3)), p, 1e-8));
  add(hier::check_gamma1_reflection<Real>(Cplx<Real>(Real(0.4), Real(0.1)),
                                          Cplx<Real>(Real(0.15)), Cplx<Real>(Real(0.25)),
                                          1e-8));
  add(hier::check_gamma1_qq_spectral<Real>(Cplx<Real>(Real(0.4)), p, tol));
  add(hier::check_gamma2_qqq_spectral<Real>(Cplx<Real>(Real(0.4)), p, tol));
  {
    Cplx<Real> v = hier::b44<Real>(Cplx<Real>(0), Cplx<Real>(1), Cplx<Real>(1), Cplx<Real>(1));
    add(make_report("b44-value", {{"point", "(0;1,1,1)"}},
                    Complex(double(v.real()), double(v.imag())), Complex(-9, 0), 1e-12, 0));
    Cplx<Real> w8 = hier::b44<Real>(Cplx<Real>(Real(0.2), Real(0.5)), Cplx<Real>(Real(0.9)),
                                    Cplx<Real>(Real(1.0)), Cplx<Real>(Real(1.1)), 8);
    Cplx<Real> w12 = hier::b44<Real>(Cplx<Real>(Real(0.2), Real(0.5)), Cplx<Real>(Real(0.9)),
                                     Cplx<Real>(Real(1.0)), Cplx<Real>(Real(1.1)), 12);
    add(make_report("b44-taylor-stability", {{"orders", "8 vs 12"}},
                    Complex(double(w8.real()), double(w8.imag())),
                    Complex(double(w12.real()), double(w12.imag())), 1e-12, 0));
  }
  {
    auto tri = hier::NomeTriple<Real>::from_periods(
        Cplx<Real>(0, Real(0.9)), Cplx<Real>(0, Real(1.0)), Cplx<Real>(0, Real(1.1)));
    add(hier::gamma2_modularity_check<Real>(Cplx<Real>(Real(0.2), Real(0.5)), tri, 1e-4));
  }
  {
    auto r1 = hier::check_factorized_hierarchy<Real>(Cplx<Real>(Real(0.3)), 1,
                                                     Cplx<Real>(Real(0.2)), 1e-8);
    r1.identity = "factorized-hierarchy[m=1]";
    add(r1);
    auto r2 = hier::check_factorized_hierarchy<Real>(Cplx<Real>(Real(0.25), Real(0.1)), 2,
                                                     Cplx<Real>(Real(0.2)), 1e-8);
    r2.identity = "factorized-hierarchy[m=2]";
    add(r2);
  }

  // symmetric functions (exact)
  {
    bool ok = true;
    for (int n = 1; n <= 8; ++n) ok = ok && symm::orthogonality_check(n);
    add(make_residual_report("character-orthogonality", {{"n", "1..8"}}, ok ? 0.0 : 1.0,
                             0.5, 0, {}, "exact integer arithmetic"));
    bool sign_ok = true;
    for (int n = 1; n <= 8; ++n) {
      Partition sgn(std::vector<int>(n, 1));
      for (const auto& mu : partitions_of(n))
        sign_ok = sign_ok && symm::character(sgn, mu) ==
                                 (((n - mu.length()) % 2) ? -1 : 1);
    }
    add(make_residual_report("sign-character", {{"n", "1..8"}}, sign_ok ? 0.0 : 1.0, 0.5,
                             0, {}, "chi_(1^n)(mu) = (-1)^{n - l(mu)}"));
  }

  // cs layer
  add(detail::cs_basis_agreement(cfg.seed, 5));
  add(detail::cs_wp_roundtrip(cfg.seed));
  add(detail::cs_free_energy(cfg.seed));
  add(detail::cs_lmov_single(cfg));
  add(cs::bilateral_collapse<Real>(1, 0, 1, Cplx<Real>(Real(0.3)), Cplx<Real>(Real(0.5)),
                                   p, tol));
  add(cs::check_q_inversion<Real>(1, 1, 2, Cplx<Real>(Real(0.3)), Cplx<Real>(Real(0.5)),
                                  p, 1e-10));
  add(detail::cs_rank_level(false));
  add(detail::cs_rank_level(true));

  (void)pd;
  for (auto& rep : out) {
    bool has_seed = false;
    for (const auto& [k, v] : rep.params) has_seed = has_seed || k == "seed";
    if (!has_seed) rep.params.emplace_back("seed", std::to_string(cfg.seed));
    rep.params.emplace_back("precision", cfg.precision.empty() ? "double" : cfg.precision);
  }
  std::sort(out.begin(), out.end(),
            [](const IdentityReport& a, const IdentityReport& b) {
              return a.identity < b.identity;
            });
  return out;
}

inline int exit_code(const std::vector<IdentityReport>& reports, bool strict) {
  bool any_fail = false, any_domain = false;
  for (const auto& r : reports) {
    if (r.status == CheckStatus::fail) any_fail = true;
    if (r.status == CheckStatus::domain_failure) any_domain = true;
  }
  if (any_fail) return 1;
  if (strict && any_domain) return 3;
  return 0;
}

} // namespace qspectra::suite

#endif
