#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qspectra/hierarchy.hpp"

using namespace qspectra;
using namespace qspectra::hier;
using C = Complex;
using P = spectral::SpectralParams<double>;

TEST_CASE("jackson_g1 basics") {
  auto one = jackson_g1<double>(C(0), C(0.2));
  CHECK(std::abs(one.value - C(1)) < 1e-15);
  auto zero = jackson_g1<double>(C(1), C(0.2));
  CHECK(std::abs(zero.value) < 1e-14);
  CHECK(zero.vanishing_factor.has_value());
  CHECK(*zero.vanishing_factor == 0);
  // z = q^{-2} kills the n=2 factor
  auto z2 = jackson_g1<double>(C(25), C(0.2));
  CHECK(z2.vanishing_factor.has_value());
  CHECK(*z2.vanishing_factor == 2);
}

TEST_CASE("G1 spectral form") {
  P p = P::from_nome(C(0.2, 0.0));
  auto rep = check_g1_spectral<double>(C(0.3), p, 1e-8);
  CHECK(rep.pass);
  P pc = P::from_nome(C(0.15, 0.1));
  auto repc = check_g1_spectral<double>(C(0.4, -0.2), pc, 1e-8);
  CHECK(repc.pass);
}

TEST_CASE("jackson_g2 at z=0 and shift equations") {
  auto g0 = jackson_g2<double>(C(0), C(0.15), C(0.25));
  CHECK(std::abs(g0.value - C(1)) < 1e-15);

  auto a = check_g21<double>(C(0.3), C(0.15), C(0.25), false, 1e-8);
  CHECK(a.pass);
  auto b = check_g21<double>(C(0.3), C(0.15), C(0.25), true, 1e-8);
  CHECK(b.pass);
}

TEST_CASE("shift equations over the nome grid") {
  for (double q : {0.1, 0.2, 0.3})
    for (double p : {0.1, 0.2, 0.3}) {
      auto a = check_g21<double>(C(0.3), C(q), C(p), false, 1e-8);
      auto b = check_g21<double>(C(0.3), C(q), C(p), true, 1e-8);
      INFO("q=", q, " p=", p);
      CHECK(a.pass);
      CHECK(b.pass);
      auto ga = check_g22<double>(C(0.5), C(q), C(p), false, 1e-8);
      auto gb = check_g22<double>(C(0.5), C(q), C(p), true, 1e-8);
      // |p/w| < 1 requires w > p here
      CHECK(ga.status != CheckStatus::fail);
      CHECK(gb.status != CheckStatus::fail);
      if (q < 0.5 && p < 0.5) {
        CHECK(ga.pass);
        CHECK(gb.pass);
      }
    }
}

TEST_CASE("G22 domain restriction reported") {
  auto rep = check_g22<double>(C(0.2), C(0.15), C(0.25), false, 1e-8);
  CHECK(rep.status == CheckStatus::domain_failure); // |p/w| = 1.25
  CHECK(rep.notes.find("modulus") != std::string::npos);
}

TEST_CASE("diagonal G2 equals the G1-slice factorization") {
  // prod_{n1,n2}(1 - z q^{n1+n2}) = prod_k G1(z q^k; q)
  C z(0.3), q(0.2);
  auto diag = jackson_g2<double>(z, q, q, 1e-12, true);
  C slices(1);
  for (int k = 0; k < 40; ++k)
    slices *= jackson_g1<double>(z * std::pow(q, double(k)), q, 1e-14).value;
  CHECK(std::abs(diag.value - slices) < 1e-10 * std::abs(slices));
}

TEST_CASE("gamma1 reflection") {
  auto rep = check_gamma1_reflection<double>(C(0.4, 0.1), C(0.15), C(0.25), 1e-8);
  CHECK(rep.pass);
}

TEST_CASE("gamma1 pole is reported") {
  CHECK_THROWS_AS(elliptic_gamma1<double>(C(1), C(0.15), C(0.25)), std::domain_error);
}

TEST_CASE("gamma1 q=p spectral specialization") {
  P p = P::from_nome(C(0.2, 0.0));
  auto rep = check_gamma1_qq_spectral<double>(C(0.4), p, 1e-7);
  CHECK(rep.pass);
}

TEST_CASE("gamma2 q=p=t spectral specialization") {
  P p = P::from_nome(C(0.2, 0.0));
  auto rep = check_gamma2_qqq_spectral<double>(C(0.4), p, 1e-7);
  CHECK(rep.pass);
}

TEST_CASE("b44 frozen value and properties") {
  CHECK(std::abs(b44<double>(C(0), C(1), C(1), C(1)) - C(-9)) < 1e-12);

  // symmetric in (a,b,c)
  C v1 = b44<double>(C(0.3, 0.2), C(1.1), C(0.7, 0.1), C(2.0));
  C v2 = b44<double>(C(0.3, 0.2), C(0.7, 0.1), C(2.0), C(1.1));
  CHECK(std::abs(v1 - v2) < 1e-12);

  // Taylor order insensitivity
  C w8 = b44<double>(C(0.2, 0.5), C(0.9), C(1.0), C(1.1), 8);
  C w12 = b44<double>(C(0.2, 0.5), C(0.9), C(1.0), C(1.1), 12);
  CHECK(std::abs(w8 - w12) < 1e-12);
}

TEST_CASE("b44 is polynomial in z: quartic fit reproduces a sixth node") {
  C a(1.1), b(0.9), c(1.3);
  auto at = [&](double z) { return b44<double>(C(z), a, b, c, 10); };
  // Lagrange interpolation through z = 0..4 evaluated at z = 5
  double nodes[5] = {0, 1, 2, 3, 4};
  C pred(0);
  for (int i = 0; i < 5; ++i) {
    C li(1);
    for (int j = 0; j < 5; ++j)
      if (j != i) li *= (5.0 - nodes[j]) / (nodes[i] - nodes[j]);
    pred += li * at(nodes[i]);
  }
  CHECK(std::abs(pred - at(5.0)) < 1e-10 * std::max(1.0, std::abs(at(5.0))));
}

TEST_CASE("gamma2 modularity domain handling") {
  // equal periods: b/a = 1, nome on the unit circle -> domain failure
  auto tri = NomeTriple<double>::from_periods(C(0, 1), C(0, 1), C(0, 1));
  auto rep = gamma2_modularity_check<double>(C(0.2, 0.5), tri, 1e-4);
  CHECK(rep.status == CheckStatus::domain_failure);
  CHECK(rep.notes.find("b/a") != std::string::npos);

  // the stated purely-imaginary point: ratios are real, all six ratio nomes
  // sit on the unit circle, reported not guessed
  auto tri2 = NomeTriple<double>::from_periods(C(0, 0.9), C(0, 1.0), C(0, 1.1));
  auto rep2 = gamma2_modularity_check<double>(C(0.2, 0.5), tri2, 1e-4);
  CHECK(rep2.status == CheckStatus::domain_failure);

  // permuting the periods leaves the report's derived-nome set consistent
  auto tri3 = NomeTriple<double>::from_periods(C(0, 1.0), C(0, 1.1), C(0, 0.9));
  auto rep3 = gamma2_modularity_check<double>(C(0.2, 0.5), tri3, 1e-4);
  CHECK(rep3.status == CheckStatus::domain_failure);
}

TEST_CASE("factorized hierarchy") {
  auto r0 = check_factorized_hierarchy<double>(C(0), 1, C(0.2), 1e-8);
  CHECK(r0.pass);
  auto r1 = check_factorized_hierarchy<double>(C(0.3), 1, C(0.2), 1e-8);
  CHECK(r1.pass);
  auto r2 = check_factorized_hierarchy<double>(C(0.25, 0.1), 2, C(0.2), 1e-8);
  CHECK(r2.pass);
}

TEST_CASE("tighter tails move results less than the certified bound") {
  C z(0.35, 0.1), q(0.25), p(0.2), t(0.15);
  auto loose = jackson_g2<double>(z, q, p, 1e-6);
  auto tight = jackson_g2<double>(z, q, p, 1e-14);
  CHECK(std::abs(loose.value - tight.value) <= loose.tail_bound * std::abs(tight.value));

  auto gl = elliptic_gamma1<double>(z, q, p, 1e-6);
  auto gt = elliptic_gamma1<double>(z, q, p, 1e-14);
  CHECK(std::abs(gl.value - gt.value) <= gl.tail_bound * std::abs(gt.value));

  auto g2l = elliptic_gamma2<double>(z, q, p, t, 1e-6);
  auto g2t = elliptic_gamma2<double>(z, q, p, t, 1e-14);
  CHECK(std::abs(g2l.value - g2t.value) <= g2l.tail_bound * std::abs(g2t.value));

  auto jl = jackson_g1<double>(z, q, 1e-6);
  auto jt = jackson_g1<double>(z, q, 1e-14);
  CHECK(std::abs(jl.value - jt.value) <= jl.tail_bound * std::abs(jt.value));
}

TEST_CASE("omega weights") {
  auto p = P::from_nome(C(0.2, 0.0));
  OmegaWeight<double> w({2, 1}, p);
  CHECK(std::abs(w.value - std::pow(C(0.2), 3)) < 1e-14);
  CHECK(std::abs(w.value) <= 1.0);
}

TEST_CASE("nome/period conversions agree") {
  auto tri = NomeTriple<double>::from_nomes(C(0.2), C(0.15), C(0.1));
  CHECK(std::abs(std::exp(C(0, 2 * M_PI) * tri.a) - C(0.2)) < 1e-14);
  auto tri2 = NomeTriple<double>::from_periods(tri.a, tri.b, tri.c);
  CHECK(std::abs(tri2.q - tri.q) < 1e-14);
}
