// Acceptance battery: one numbered criterion per section, each printing a
// single [PASS]/[FAIL] line (plus indented detail) and contributing to the
// process exit status.  Run as `acceptance <n>` for one criterion,
// `acceptance all` for the lot; criterion 9 needs the CLI path as the next
// argument (or QSPECTRA_BIN).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qspectra/bell.hpp"
#include "qspectra/csgen.hpp"
#include "qspectra/hierarchy.hpp"
#include "qspectra/multipartite.hpp"
#include "qspectra/suite.hpp"
#include "qspectra/symmfunc.hpp"

using namespace qspectra;
using C = Complex;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void note(const std::string& line) { details.push_back(line); }
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. generating-function coefficients equal brute-force counts exactly
Outcome criterion_1() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  bool exact = true;
  long targets = 0;
  for (int m = 1; m <= 3; ++m) {
    auto gf = mp::gf_unrestricted_graded<double>(m, 12);
    auto gd = mp::gf_distinct_graded<double>(m, 12);
    auto gfx = mp::collapse_z(gf);
    auto gdx = mp::collapse_z(gd);
    mp::MultiIndex cap(m, 6);
    for (const auto& target : mp::parts_below(cap)) {
      if (mp::mi_total(target) > 6) continue;
      ++targets;
      auto counts = mp::count_multipartitions(target);
      std::vector<int> e(target.begin(), target.end());
      exact = exact && mp::coefficient_count(gfx, e) == counts.unrestricted;
      exact = exact && mp::coefficient_count(gdx, e) == counts.distinct;
      long long sum = 0;
      for (auto& [j, cnt] : counts.by_num_parts) {
        std::vector<int> ez(m + 1, 0);
        ez[0] = j;
        for (int i = 0; i < m; ++i) ez[i + 1] = target[i];
        exact = exact && mp::coefficient_count(gf, ez) == cnt;
        sum += cnt;
      }
      exact = exact && sum == counts.unrestricted;
    }
  }
  out.require(exact, "coefficients equal enumeration exactly across " +
                         std::to_string(targets) + " targets (m <= 3, |k| <= 6)");
  auto c11 = mp::count_multipartitions({1, 1});
  auto c20 = mp::count_multipartitions({2, 0});
  out.require(c11.unrestricted == 2, "C-(1,1) = 2");
  out.require(c20.unrestricted == 2, "C-(2,0) = 2");
  out.require(c20.distinct == 1, "C+(2,0) = 1");
  out.require(mp::count_multipartitions({5}).unrestricted == 7 && oracles::p_of(5) == 7,
              "p(5) = 7 against the independent recurrence");
  double dt = seconds_since(t0);
  out.require(dt < 10.0, "runtime " + format_real(dt) + " s < 10 s");
  return out;
}

// 2. Bell recurrence vs explicit sum; P/Q coefficients vs the z-expansion
Outcome criterion_2() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<C> g;
    for (int i = 0; i < 12; ++i) g.emplace_back(u(rng), u(rng));
    auto y = bell::bell_recurrence(g, 12);
    for (int n = 1; n <= 12; ++n)
      worst = std::max(worst, std::abs(bell::faa_di_bruno(g, n) - y[n]) /
                                  std::max(1.0, std::abs(y[n])));
  }
  out.require(worst < 1e-9, "recurrence == explicit sum, n <= 12, rel resid " +
                                format_real(worst));

  double worst_pq = 0;
  for (int m = 1; m <= 3; ++m)
    for (auto conv : {mp::BetaConvention::same_nome, mp::BetaConvention::distinct_powers}) {
      auto F = mp::gf_specialized<double>(m, 12, false, conv);
      auto G = mp::gf_specialized<double>(m, 12, true, conv);
      auto P = bell::p_coefficients<double>(6, m, 12, conv);
      auto Q = bell::q_coefficients<double>(6, m, 12, conv);
      for (int j = 1; j <= 6; ++j)
        for (int k = 0; j + k <= 12; ++k) {
          worst_pq = std::max(worst_pq,
                              std::abs(P[j - 1].coeff({k}) - F.product_form.coeff({j, k})));
          worst_pq = std::max(worst_pq,
                              std::abs(Q[j - 1].coeff({k}) - G.product_form.coeff({j, k})));
        }
    }
  out.require(worst_pq < 1e-8,
              "P_j/Q_j match the z-expansion (m <= 3, j <= 6), resid " + format_real(worst_pq));

  double worst_p2 = 0;
  for (int m = 1; m <= 3; ++m) {
    auto P = bell::p_coefficients<double>(2, m, 12, mp::BetaConvention::same_nome);
    auto b1 = mp::beta_series<double>(1, m, 12, mp::BetaConvention::same_nome, true);
    auto b2 = mp::beta_series<double>(2, m, 12, mp::BetaConvention::same_nome, true);
    worst_p2 = std::max(worst_p2, double(max_abs_diff(P[1] * C(2), b1 * b1 + b2)));
  }
  out.require(worst_p2 < 1e-10, "2 P_2 = beta(1)^2 + beta(2) as series, m <= 3");
  double dt = seconds_since(t0);
  out.require(dt < 10.0, "runtime " + format_real(dt) + " s < 10 s");
  return out;
}

// 3. divisor-sum recurrence vs direct truncated products
Outcome criterion_3() {
  Outcome out;
  std::vector<std::pair<std::string, std::vector<long>>> cases = {
      {"a_k = 1", std::vector<long>(20, 1)}, {"a_k = delta_k1", {1}}};
  std::vector<long> lin;
  for (int k = 1; k <= 20; ++k) lin.push_back(k);
  cases.push_back({"a_k = k", lin});
  for (auto& [label, a] : cases) {
    std::vector<C> ac(a.begin(), a.end());
    auto rec = bell::product_expansion<double>(ac, 20);
    auto dir = bell::product_expansion_direct<double>(a, 20);
    double worst = 0;
    for (int k = 0; k < 20; ++k)
      worst = std::max(worst, std::abs(rec[k] - dir[k]) / std::max(1.0, std::abs(dir[k])));
    out.require(worst < 1e-9, label + " to order 20, resid " + format_real(worst));
  }
  auto unit = bell::product_expansion<double>(std::vector<C>(20, C(1)), 20);
  bool pk = true;
  for (int k = 1; k <= 20; ++k)
    pk = pk && std::abs(unit[k - 1] - C(double(oracles::p_of(k)))) < 1e-9;
  out.require(pk, "a_k = 1 reproduces the partition numbers");
  return out;
}

// 4. zeta product vs exponential sum; zero lattice
Outcome criterion_4() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (double alpha : {0.5, 1.0, 2.0})
    for (double beta : {0.0, 1.0, double(pi_v<double>)})
      for (double s : {2.0, 5.0}) {
        auto p = spectral::SpectralParams<double>::from_alpha_beta(alpha, beta);
        auto rep = spectral::check_zeta_cross<double>(C(s), p, 1e-8);
        worst = std::max(worst, rep.residual);
        if (!rep.pass) out.note("  grid point alpha=" + format_real(alpha) + " beta=" +
                                format_real(beta) + " s=" + format_real(s) + " failed");
      }
  out.require(worst < 1e-8, "cross-representation on the 3x3x2 grid, worst resid " +
                                format_real(worst));

  auto p = spectral::SpectralParams<double>::from_alpha_beta(1.0, 1.0);
  double worst_zero = 0;
  for (int n = -2; n <= 2; ++n)
    for (int k1 = 0; k1 <= 3; ++k1)
      for (int k2 = 0; k1 + k2 <= 3; ++k2)
        worst_zero = std::max(worst_zero,
                              spectral::check_zeta_zero(n, k1, k2, p, 1e-6).residual);
  out.require(worst_zero < 1e-6,
              "zero-lattice residuals, |n| <= 2, k1+k2 <= 3, worst " + format_real(worst_zero));
  double dt = seconds_since(t0);
  out.require(dt < 30.0, "runtime " + format_real(dt) + " s < 30 s");
  return out;
}

// 5. Ruelle identity battery at |q| <= 0.3
Outcome criterion_5() {
  Outcome out;
  for (C q : {C(0.2, 0.0), C(0.15, 0.1), C(-0.2, 0.15)}) {
    auto p = spectral::SpectralParams<double>::from_nome(q);
    std::string at = " at q=" + format_complex(q);
    auto r1 = spectral::check_r_product<double>(false, p, 1.0, C(0), 1, 1e-7);
    out.require(r1.pass, "R1" + at + ", resid " + format_real(r1.residual));
    auto r2 = spectral::check_r_product<double>(true, p, 1.0, C(0), 1, 1e-7);
    out.require(r2.pass, "R2" + at + ", resid " + format_real(r2.residual));
    auto u1 = spectral::check_ru_product<double>(false, p, 1.0, C(0), C(1), 1, 1e-7);
    out.require(u1.pass, "RU1" + at + ", resid " + format_real(u1.residual));
    auto u2 = spectral::check_ru_product<double>(true, p, 1.0, C(0), C(1), 1, 1e-7);
    out.require(u2.pass, "RU2" + at + ", resid " + format_real(u2.residual));
  }

  auto p = spectral::SpectralParams<double>::from_nome(C(0.15, 0.1));
  for (int m : {1, 2})
    for (int n : {1, 3}) {
      auto b = spectral::check_beta_ratio<double>(n, m, p, 1e-7);
      out.require(b.pass, "beta distinct-powers route m=" + std::to_string(m) + " n=" +
                              std::to_string(n) + ", resid " + format_real(b.residual));
      if (m >= 2)
        out.require(b.notes.find("same-nome convention residual") != std::string::npos,
                    "same-nome comparison recorded: " + b.notes);
    }
  out.note("  note: the distinct-powers convention is the one the ratio identity "
           "satisfies; the same-nome residual is reported for the scan");

  {
    auto pq = spectral::SpectralParams<double>::from_nome(C(0.2, 0.0));
    auto gs = spectral::gf_spectral_form<double>(C(0.5), 1, pq, 1e-10);
    auto dv = mp::gf_specialized_value<double>(C(0.5), pq.q, 1, false,
                                               mp::BetaConvention::distinct_powers);
    auto gv = mp::gf_specialized_value<double>(C(0.5), pq.q, 1, true,
                                               mp::BetaConvention::distinct_powers);
    double rf = std::abs(gs.F - dv.product_value) / std::abs(dv.product_value);
    double rg = std::abs(gs.G - gv.product_value) / std::abs(gv.product_value);
    out.require(rf < 1e-7, "F1 spectral form vs direct product, resid " + format_real(rf));
    out.require(rg < 1e-7, "G1 spectral form vs direct product, resid " + format_real(rg));
    auto gs2 = spectral::gf_spectral_form<double>(C(0.4), 2, pq, 1e-10);
    auto dv2 = mp::gf_specialized_value<double>(C(0.4), pq.q, 2, false,
                                                mp::BetaConvention::distinct_powers);
    double rf2 = std::abs(gs2.F - dv2.product_value) / std::abs(dv2.product_value);
    out.require(rf2 < 1e-7, "F1 spectral form at m=2, resid " + format_real(rf2));
  }

  for (long b : {0L, 1L}) {
    auto d = spectral::check_de3<double>(1, b, p, 1e-7, false);
    out.require(d.pass, "DE3 b=" + std::to_string(b) + " (validated reading), resid " +
                            format_real(d.residual) + "; " + d.notes);
    auto printed = spectral::check_de3<double>(1, b, p, 1e-7, true);
    out.require(printed.status != CheckStatus::domain_failure,
                "DE3 printed reading evaluated and reported (residual " +
                    format_real(printed.residual) + ", expected mismatch)");
  }
  return out;
}

// 6. hierarchy: shift equations, gamma specializations, B44, modularity
Outcome criterion_6() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  double worst21 = 0, worst22 = 0;
  int domain22 = 0;
  for (double q : {0.1, 0.2, 0.3})
    for (double pp : {0.1, 0.2, 0.3}) {
      worst21 = std::max(worst21,
                         hier::check_g21<double>(C(0.3), C(q), C(pp), false, 1e-8).residual);
      worst21 = std::max(worst21,
                         hier::check_g21<double>(C(0.3), C(q), C(pp), true, 1e-8).residual);
      for (bool second : {false, true}) {
        auto r = hier::check_g22<double>(C(0.5), C(q), C(pp), second, 1e-8);
        if (r.status == CheckStatus::domain_failure)
          ++domain22;
        else
          worst22 = std::max(worst22, r.residual);
      }
    }
  out.require(worst21 < 1e-8, "G21 both forms on the grid, worst resid " + format_real(worst21));
  out.require(worst22 < 1e-8, "G22 both forms (G1 reading), worst resid " +
                                  format_real(worst22) + ", domain-reported points: " +
                                  std::to_string(domain22));

  auto p = spectral::SpectralParams<double>::from_nome(C(0.2, 0.0));
  auto g1 = hier::check_gamma1_qq_spectral<double>(C(0.4), p, 1e-7);
  out.require(g1.pass, "Gamma1(z;q,q) vs Ruelle rows, resid " + format_real(g1.residual));
  auto g2 = hier::check_gamma2_qqq_spectral<double>(C(0.4), p, 1e-7);
  out.require(g2.pass, "Gamma2(z;q,q,q) vs Ruelle rows, resid " + format_real(g2.residual));

  C b44v = hier::b44<double>(C(0), C(1), C(1), C(1));
  out.require(std::abs(b44v - C(-9)) < 1e-12,
              "B44(0;1,1,1) = -9, got " + format_complex(b44v));

  auto tri = hier::NomeTriple<double>::from_periods(C(0, 0.9), C(0, 1.0), C(0, 1.1));
  auto mod = hier::gamma2_modularity_check<double>(C(0.2, 0.5), tri, 1e-4);
  if (mod.status == CheckStatus::domain_failure) {
    out.note("  domain report: " + mod.notes.substr(0, 120) + "...");
    out.require(false,
                "gamma2 modularity residual < 1e-4 at the purely-imaginary point: "
                "unattainable; the six period ratios are real, so their nomes sit on "
                "the unit circle and no convergent-product evaluation exists "
                "(reciprocal pairs b/a, a/b cannot both lie in the upper half plane). "
                "Reported as an explicit domain failure, never silently skipped.");
  } else {
    out.require(mod.pass && mod.tail_bound < 1e-6,
                "gamma2 modularity, resid " + format_real(mod.residual));
  }
  double dt = seconds_since(t0);
  out.require(dt < 60.0, "runtime " + format_real(dt) + " s < 60 s");
  return out;
}

// 7. exact symmetric-function layer
Outcome criterion_7() {
  Outcome out;
  bool orth = true;
  for (int n = 1; n <= 8; ++n) orth = orth && symm::orthogonality_check(n);
  out.require(orth, "character orthogonality exact for all n <= 8");
  bool schur_ok = true;
  for (int n = 1; n <= 5; ++n)
    for (const auto& A : partitions_of(n))
      for (int nv = 1; nv <= 3; ++nv)
        schur_ok = schur_ok && (symm::schur_exact(A, nv) == oracles::schur_tableau(A, nv));
  out.require(schur_ok, "Schur-via-characters equals the tableau oracle, |A| <= 5, <= 3 vars");
  return out;
}

// 8. CS layer
Outcome criterion_8() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> val(-3, 3);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    int L = 1 + (trial % 2);
    std::vector<int> sizes(L, 2);
    cs::LinkData link;
    link.L = L;
    for (const auto& prof : cs::profiles_up_to(L, 4))
      for (const auto& A : cs::tuples_of_profile(prof)) link.P[A] = C(double(val(rng)));
    auto zs = cs::partition_function(link, sizes, 4, cs::Basis::schur);
    auto zp = cs::partition_function(link, sizes, 4, cs::Basis::powersum);
    worst = std::max(worst, double(max_abs_diff(zs, zp)));
  }
  out.require(worst < 1e-9,
              "basis agreement on 20 seeded random tables, worst " + format_real(worst));

  bool rt_exact = true;
  for (int trial = 0; trial < 3; ++trial) {
    std::map<cs::PartitionTuple, long long> P;
    for (const auto& prof : cs::profiles_up_to(1, 5))
      for (const auto& A : cs::tuples_of_profile(prof)) P[A] = val(rng);
    for (const auto& prof : cs::profiles_up_to(1, 5)) {
      std::map<cs::PartitionTuple, long long> w;
      for (const auto& mu : cs::tuples_of_profile(prof)) w[mu] = cs::w_mu_int(P, mu);
      for (const auto& A : cs::tuples_of_profile(prof)) {
        Rational back = cs::p_from_w_exact(w, A);
        rt_exact = rt_exact && back == Rational(P.at(A));
      }
    }
  }
  out.require(rt_exact, "W <-> P round trip exact (rational arithmetic) for n <= 5");

  {
    cs::LinkData link;
    link.L = 1;
    for (const auto& prof : cs::profiles_up_to(1, 4))
      for (const auto& A : cs::tuples_of_profile(prof)) link.P[A] = C(double(val(rng)));
    auto fe = cs::free_energy(link, 12);
    double resid = double(max_abs_diff(fe.f.exp(), fe.z));
    out.require(resid < 1e-9, "exp(F) = Z to order 12, resid " + format_real(resid));
  }

  auto p = spectral::SpectralParams<double>::from_nome(C(0.2, 0.0));
  auto bc = cs::bilateral_collapse<double>(1, 0, 1, C(0.3), C(0.5), p, 1e-7);
  out.require(bc.pass, "bilateral collapse direct vs Ruelle form, resid " +
                           format_real(bc.residual));
  auto bc2 = cs::bilateral_collapse<double>(2, 1, -1, C(0.25, 0.1), C(0.5), p, 1e-7);
  out.require(bc2.pass, "bilateral collapse with t^Q weight, resid " + format_real(bc2.residual));

  cs::InvariantTable good;
  good.L = 1;
  good.entries[{{Partition({1})}, 0, 1}] = 1;
  good.entries[{{Partition({1})}, 0, -1}] = -1;
  out.require(cs::check_q_reflection(good).q_reflection_holds,
              "rank-level validator accepts the mirror table");
  cs::InvariantTable bad = good;
  bad.entries[{{Partition({1})}, 0, -1}] = 1;
  auto rej = cs::check_q_reflection(bad);
  out.require(!rej.q_reflection_holds && !rej.violations.empty(),
              "rank-level validator rejects the broken table (" +
                  (rej.violations.empty() ? std::string("-") : rej.violations.front()) + ")");
  double dt = seconds_since(t0);
  out.require(dt < 30.0, "runtime " + format_real(dt) + " s < 30 s");
  return out;
}

// 9. CLI suite: exit 0, byte-deterministic, under the time budget
Outcome criterion_9(const std::string& cli_path) {
  Outcome out;
  if (cli_path.empty()) {
    out.require(false, "CLI binary path not supplied (argument or QSPECTRA_BIN)");
    return out;
  }
  auto t0 = std::chrono::steady_clock::now();
  std::string out1 = "acceptance_suite_run1.json";
  std::string out2 = "acceptance_suite_run2.json";
  std::string cmd1 = cli_path + " suite --all --q 0.2 --out " + out1 + " > /dev/null";
  std::string cmd2 = cli_path + " suite --all --q 0.2 --out " + out2 + " > /dev/null";
  int rc1 = std::system(cmd1.c_str());
  int rc2 = std::system(cmd2.c_str());
  out.require(rc1 == 0 && rc2 == 0, "qspectra suite --all exits 0 (got " +
                                        std::to_string(rc1) + ", " + std::to_string(rc2) + ")");
  std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
  std::stringstream b1, b2;
  b1 << f1.rdbuf();
  b2 << f2.rdbuf();
  out.require(b1.str() == b2.str() && !b1.str().empty(),
              "repeated runs are byte-identical (" + std::to_string(b1.str().size()) +
                  " bytes)");
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  double dt = seconds_since(t0);
  out.require(dt < 180.0, "runtime " + format_real(dt) + " s < 180 s");
  return out;
}

const char* criterion_title(int n) {
  switch (n) {
    case 1: return "multipartite oracle equivalence";
    case 2: return "Bell consistency";
    case 3: return "product-expansion recurrence";
    case 4: return "spectral cross-representation and zero lattice";
    case 5: return "Ruelle identity battery";
    case 6: return "hierarchy: shifts, gammas, B44, modularity";
    case 7: return "exact symmetric functions";
    case 8: return "quantum-invariant generating series";
    case 9: return "CLI suite determinism and exit status";
    default: return "?";
  }
}

} // namespace

int main(int argc, char** argv) {
  std::string which = argc > 1 ? argv[1] : "all";
  std::string cli = argc > 2 ? argv[2] : (std::getenv("QSPECTRA_BIN") ? std::getenv("QSPECTRA_BIN") : "");

  std::vector<int> selected;
  if (which == "all")
    selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  else
    selected = {std::atoi(which.c_str())};

  bool all_pass = true;
  for (int n : selected) {
    Outcome res;
    switch (n) {
      case 1: res = criterion_1(); break;
      case 2: res = criterion_2(); break;
      case 3: res = criterion_3(); break;
      case 4: res = criterion_4(); break;
      case 5: res = criterion_5(); break;
      case 6: res = criterion_6(); break;
      case 7: res = criterion_7(); break;
      case 8: res = criterion_8(); break;
      case 9: res = criterion_9(cli); break;
      default:
        std::fprintf(stderr, "unknown criterion %d\n", n);
        return 2;
    }
    std::printf("[%s] criterion %d: %s\n", res.pass ? "PASS" : "FAIL", n,
                criterion_title(n));
    for (const auto& line : res.details) std::printf("%s\n", line.c_str());
    all_pass = all_pass && res.pass;
  }
  return all_pass ? 0 : 1;
}
