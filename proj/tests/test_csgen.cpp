#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qspectra/csgen.hpp"

using namespace qspectra;
using namespace qspectra::cs;
using C = Complex;

namespace {

LinkData random_link(int L, int max_total, std::mt19937& rng) {
  LinkData link;
  link.L = L;
  std::uniform_int_distribution<int> val(-3, 3);
  for (const auto& prof : profiles_up_to(L, max_total))
    for (const auto& A : tuples_of_profile(prof)) link.P[A] = C(double(val(rng)));
  return link;
}

} // namespace

TEST_CASE("w_mu on a delta table") {
  LinkData link;
  link.L = 1;
  link.P[{Partition({1})}] = C(1);
  C w = w_mu(link, {Partition({1})});
  CHECK(std::abs(w - C(1)) < 1e-14);
}

TEST_CASE("w_mu at n=2 mixes with character signs") {
  LinkData link;
  link.L = 1;
  C a(2.0), b(-1.5);
  link.P[{Partition({2})}] = a;
  link.P[{Partition({1, 1})}] = b;
  C w2 = w_mu(link, {Partition({2})});
  C w11 = w_mu(link, {Partition({1, 1})});
  CHECK(std::abs(w2 - (a - b)) < 1e-13);
  CHECK(std::abs(w11 - (a + b)) < 1e-13);
}

TEST_CASE("missing entries are reported") {
  LinkData link;
  link.L = 1;
  link.P[{Partition({2})}] = C(1); // (1,1) missing at weight 2
  CHECK_THROWS_AS(w_mu(link, {Partition({2})}), std::out_of_range);
}

TEST_CASE("W <-> P round trip is exact on integer tables") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    LinkData link = random_link(1, 5, rng);
    for (const auto& prof : profiles_up_to(1, 5)) {
      std::map<PartitionTuple, C> w;
      for (const auto& mu : tuples_of_profile(prof)) w[mu] = w_mu(link, mu);
      for (const auto& A : tuples_of_profile(prof)) {
        C back = p_from_w(w, A);
        CHECK(std::abs(back - link.P.at(A)) < 1e-10);
      }
    }
  }
  // the rational route is literally exact
  std::map<PartitionTuple, long long> P;
  std::uniform_int_distribution<int> val(-5, 5);
  for (const auto& prof : profiles_up_to(1, 5))
    for (const auto& A : tuples_of_profile(prof)) P[A] = val(rng);
  for (const auto& prof : profiles_up_to(1, 5)) {
    std::map<PartitionTuple, long long> w;
    for (const auto& mu : tuples_of_profile(prof)) w[mu] = w_mu_int(P, mu);
    for (const auto& A : tuples_of_profile(prof))
      CHECK(p_from_w_exact(w, A) == Rational(P.at(A)));
  }
}

TEST_CASE("partition function: empty and single-charge tables") {
  LinkData empty;
  empty.L = 1;
  auto z = partition_function(empty, {2}, 4, Basis::schur);
  auto one = SeriesD::constant(z, C(1));
  CHECK(max_abs_diff(z, one) == 0.0);

  LinkData single;
  single.L = 1;
  C c(2.5);
  single.P[{Partition({1})}] = c;
  auto zs = partition_function(single, {2}, 4, Basis::schur);
  auto zp = partition_function(single, {2}, 4, Basis::powersum);
  CHECK(max_abs_diff(zs, zp) < 1e-12);
  CHECK(std::abs(zs.coeff({1, 0}) - c) < 1e-13);
  CHECK(std::abs(zs.coeff({0, 1}) - c) < 1e-13);
}

TEST_CASE("basis agreement on random integer tables") {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 6; ++trial) {
    int L = 1 + int(rng() % 2);
    std::vector<int> sizes(L, 2);
    LinkData link = random_link(L, 4, rng);
    auto zs = partition_function(link, sizes, 4, Basis::schur);
    auto zp = partition_function(link, sizes, 4, Basis::powersum);
    CHECK(max_abs_diff(zs, zp) < 1e-9);
  }
}

TEST_CASE("free energy: log of Z and its coefficients") {
  LinkData empty;
  empty.L = 1;
  auto fe0 = free_energy(empty, 6);
  CHECK(fe0.f.max_abs() == 0.0);

  LinkData single;
  single.L = 1;
  C c(0.7);
  single.P[{Partition({1})}] = c;
  auto fe = free_energy(single, 8);
  // Z = 1 + c p_1, so F = log(1 + c p1): coefficient of p1^k is (-1)^{k+1} c^k/k
  std::vector<int> e(fe.z.vars().size(), 0);
  e[0] = 1;
  CHECK(std::abs(fe.f.coeff(e) - c) < 1e-13);
  e[0] = 2;
  CHECK(std::abs(fe.f.coeff(e) + c * c / 2.0) < 1e-13);
  e[0] = 3;
  CHECK(std::abs(fe.f.coeff(e) - c * c * c / 3.0) < 1e-13);

  // exp(F) recovers Z on the retained orders
  CHECK(max_abs_diff(fe.f.exp(), fe.z) < 1e-11);
}

TEST_CASE("free energy is additive over independent sublinks") {
  std::mt19937 rng(7);
  LinkData a = random_link(1, 3, rng);
  LinkData b = random_link(1, 3, rng);
  LinkData joint;
  joint.L = 2;
  for (const auto& prof : profiles_up_to(2, 3))
    for (const auto& A : tuples_of_profile(prof)) {
      C va = A[0].weight() ? a.P.at({A[0]}) : C(1);
      C vb = A[1].weight() ? b.P.at({A[1]}) : C(1);
      joint.P[A] = va * vb;
    }
  const int N = 3;
  auto fj = free_energy(joint, N);
  auto fa = free_energy(a, N);
  auto fb = free_energy(b, N);
  // F_joint carries each single-component F_mu at the embedded tuple
  for (const auto& [mu, val] : fa.f_mu) {
    PartitionTuple emb = {mu[0], Partition()};
    CHECK(std::abs(fj.f_mu.at(emb) - val) < 1e-9);
  }
  for (const auto& [mu, val] : fb.f_mu) {
    PartitionTuple emb = {Partition(), mu[0]};
    CHECK(std::abs(fj.f_mu.at(emb) - val) < 1e-9);
  }
  // and no genuinely mixed connected part survives
  for (const auto& [mu, val] : fj.f_mu) {
    if (mu[0].weight() > 0 && mu[1].weight() > 0) CHECK(std::abs(val) < 1e-9);
  }
}

TEST_CASE("symmetric bracket basics") {
  // mu=(1), alphabet {x1,x2}: (1 - psi x1)(1 - psi x2)
  C psi(0.5);
  auto b = symmetric_bracket(psi, Partition({1}), {"x1", "x2"}, 3);
  CHECK(std::abs(b.coeff({1, 0}) + psi) < 1e-14);
  CHECK(std::abs(b.coeff({0, 1}) + psi) < 1e-14);
  CHECK(std::abs(b.coeff({1, 1}) - psi * psi) < 1e-14);

  // mu=(2,1), single letter: one factor (1 - psi x^3)
  auto s = symmetric_bracket(psi, Partition({2, 1}), {"x"}, 4);
  CHECK(std::abs(s.coeff({3}) + psi) < 1e-14);
  CHECK(std::abs(s.coeff({1})) < 1e-14);

  // mu=(1,1), two letters, ordered with repetition: 4 factors
  auto o = symmetric_bracket(psi, Partition({1, 1}), {"x1", "x2"}, 8);
  // coefficient of x1^2: from factor (1-psi x1^2) and pair products
  auto u = symmetric_bracket(psi, Partition({1, 1}), {"x1", "x2"}, 8, true);
  // unordered multisets give 3 factors; the two differ
  CHECK(max_abs_diff(o, u) > 1e-6);
  // ordered: factors for (1,1),(1,2),(2,1),(2,2); the cross pair appears twice
  CHECK(std::abs(o.coeff({2, 0}) + psi) < 1e-14);
  CHECK(std::abs(o.coeff({1, 1}) + 2.0 * psi) < 1e-12);
  CHECK(std::abs(u.coeff({1, 1}) + psi) < 1e-12);
}

TEST_CASE("lmov product: empty table gives 1") {
  InvariantTable t;
  auto z = lmov_product(t, {1}, C(0.2), C(0.5), 6);
  CHECK(std::abs(z.coeff({0}) - C(1)) == 0.0);
  CHECK(z.count_nonzero() == 1);
}

TEST_CASE("lmov product single entry vs exp-log route") {
  InvariantTable t;
  t.L = 1;
  t.entries[{{Partition({1})}, 0, 0}] = 1;
  const double q = 0.2;
  const int N = 6;
  auto z = lmov_product(t, {1}, C(q), C(0.5), N);
  // closed form: log Z = sum_j x^j/j * q^j (1+q^j) / (1-q^j)^3
  SeriesD expect({"x1_1"}, N);
  expect.set_coeff({0}, C(1));
  SeriesD logz = SeriesD::zero_like(expect);
  for (int j = 1; j <= N; ++j) {
    double qj = std::pow(q, j);
    logz.set_coeff({j}, C(qj * (1 + qj) / std::pow(1 - qj, 3) / j));
  }
  CHECK(max_abs_diff(z, logz.exp()) < 1e-9);
}

TEST_CASE("bilateral collapse: direct vs Ruelle form") {
  auto p = spectral::SpectralParams<double>::from_nome(C(0.2));
  auto rep = bilateral_collapse<double>(1, 0, 1, C(0.3), C(0.5), p, 1e-7);
  CHECK(rep.pass);
  auto rep2 = bilateral_collapse<double>(2, 1, -2, C(0.25, 0.1), C(0.5), p, 1e-7);
  CHECK(rep2.pass);
  auto rep0 = bilateral_collapse<double>(3, 1, 0, C(0.3), C(0.5), p, 1e-7);
  CHECK(rep0.pass);
  CHECK(std::abs(rep0.lhs - C(1)) == 0.0);
}

TEST_CASE("t^Q folded into Xmu gives the same value") {
  auto p = spectral::SpectralParams<double>::from_nome(C(0.2));
  C t(0.5), Xmu(0.3);
  auto a = bilateral_collapse<double>(1, 1, 1, Xmu, t, p, 1e-7);
  C folded = Xmu * std::sqrt(t.real());
  auto b = bilateral_collapse<double>(1, 0, 1, folded, t, p, 1e-7);
  CHECK(std::abs(a.lhs - b.lhs) < 1e-12);
  CHECK(std::abs(a.rhs - b.rhs) < 1e-12);
}

TEST_CASE("rank-level reflection validator") {
  InvariantTable good;
  good.L = 1;
  good.entries[{{Partition({1})}, 0, 1}] = 1;   // Q = 1/2
  good.entries[{{Partition({1})}, 0, -1}] = -1; // Q = -1/2, odd length flips
  auto ok = check_q_reflection(good);
  CHECK(ok.q_reflection_holds);

  InvariantTable even;
  even.L = 1;
  even.entries[{{Partition({1, 1})}, 0, 0}] = 4; // Q = 0, even length: trivially ok
  CHECK(check_q_reflection(even).q_reflection_holds);

  InvariantTable bad;
  bad.L = 1;
  bad.entries[{{Partition({1})}, 0, 1}] = 1;
  bad.entries[{{Partition({1})}, 0, -1}] = 1; // should be -1
  auto res = check_q_reflection(bad);
  CHECK_FALSE(res.q_reflection_holds);
  REQUIRE(res.violations.size() >= 1);
  CHECK(res.violations.front().find("Q=") != std::string::npos);
}

TEST_CASE("q-inversion symmetry of the collapsed factors") {
  auto p = spectral::SpectralParams<double>::from_nome(C(0.2));
  auto rep = check_q_inversion<double>(1, 1, 2, C(0.3), C(0.5), p, 1e-10);
  CHECK(rep.pass);
}
