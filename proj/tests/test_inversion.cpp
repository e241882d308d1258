#include <random>
#include <set>

#include "doctest.h"
#include "qppinv/errors.hpp"
#include "qppinv/inversion.hpp"
#include "support.hpp"

using namespace qppinv;

namespace {

std::vector<u64> row_of(const ResidueMatrix& m, std::size_t i) {
  std::vector<u64> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

bool identity_on_all_points(const PolyModN& g, const PolyModN& f) {
  for (u64 x = 0; x < f.modulus(); ++x) {
    if (eval(g, eval(f, x)) != x) return false;
  }
  return true;
}

// Uniformly random valid QPP over n, or nullopt if none was hit quickly.
std::optional<Qpp> random_qpp(std::mt19937_64& rng, u64 n) {
  const Modulus m(n);
  std::uniform_int_distribution<u64> coef(0, n - 1);
  for (int attempt = 0; attempt < 200; ++attempt) {
    // f2 drawn as a multiple of the radical keeps the hit rate reasonable.
    const u64 f1 = coef(rng);
    u64 f2 = coef(rng);
    if (attempt % 2 == 0) f2 = (f2 / m.radical()) * m.radical() % n;
    if (m.exponent_of(2) == 1 && attempt % 4 == 0) f2 = (f2 + n / 2) % n;
    if (is_qpp(f1, f2, m)) return Qpp::make(static_cast<i64>(f1), static_cast<i64>(f2), m);
  }
  return std::nullopt;
}

const std::vector<u64> kReferenceInverse{7612343,  4897586, 352440,  2867432, 13756448, 13890368,
                                        915200,   2679424, 6846976, 5217280, 53248,    1478656};

}  // namespace

TEST_SUITE("inversion") {
  TEST_CASE("QPP validation") {
    CHECK(is_qpp(23, 94, Modulus(1504)));
    CHECK_FALSE(is_qpp(1, 1, Modulus(4)));
    CHECK(qpp_violation(1, 1, Modulus(4)) == QppClause::kAllPrimesDivideF2);
    CHECK(qpp_violation(2, 4, Modulus(8)) == QppClause::kF1CoprimeToN);
    CHECK(qpp_violation(1, 3, Modulus(6)) == QppClause::kSumOdd);
    CHECK(qpp_violation(3, 0, Modulus(6)) == QppClause::kF1CoprimeToHalfN);
    CHECK(qpp_violation(1, 2, Modulus(6)) == QppClause::kOddPrimesDivideF2);
    CHECK(is_qpp(2, 3, Modulus(6)));

    CHECK_THROWS_AS(Qpp::make(1, 1, Modulus(4)), QppError);
    CHECK_THROWS_AS(Qpp::make(1, 0, Modulus(2)), RangeError);
    const Qpp q = Qpp::make(-1481, 94 + 1504, Modulus(1504));
    CHECK(q.f1 == 23);
    CHECK(q.f2 == 94);
  }

  TEST_CASE("normalize") {
    const Qpp q = Qpp::make(2, 3, Modulus(6));
    const Qpp r = normalize(q);
    CHECK(r.f1 == 5);
    CHECK(r.f2 == 0);
    CHECK(r.normalized);
    CHECK(equivalent(q.polynomial(), r.polynomial()));

    const Qpp odd = Qpp::make(5, 0, Modulus(6));
    CHECK(normalize(odd).f1 == 5);
    CHECK(normalize(odd).f2 == 0);

    const Qpp p = normalize(Qpp::make(23, 94, Modulus(1504)));
    CHECK(p.f1 == 23);
    CHECK(p.f2 == 94);
  }

  TEST_CASE("normalized f1 + k*f2 are units") {
    for (u64 n = 3; n <= 120; ++n) {
      const Modulus m(n);
      for (u64 f1 = 0; f1 < n; ++f1) {
        for (u64 f2 = 0; f2 < n; ++f2) {
          if (!is_qpp(f1, f2, m)) continue;
          const Qpp q = normalize(Qpp::make(static_cast<i64>(f1), static_cast<i64>(f2), m));
          for (u64 k = 1; k < 2 * 50; ++k) REQUIRE(std::gcd((q.f1 + k * q.f2) % n, n) == 1);
        }
      }
    }
  }

  TEST_CASE("degree_bound") {
    CHECK(degree_bound(Modulus(11796480)) == 18);
    CHECK(degree_bound(Modulus(u64{1} << 24)) == 24);
    CHECK(degree_bound(Modulus(1504)) == 5);
    CHECK(degree_bound(Modulus(997)) == 1);
  }

  TEST_CASE("degree_condition_constant") {
    CHECK(degree_condition_constant(1) == 2);
    CHECK(degree_condition_constant(2) == 12);
    CHECK(degree_condition_constant(3) == 120);
    CHECK(degree_condition_constant(4) == 1680);
    CHECK(degree_condition_constant(5) == 30240);
    // (2K)! / K!, equivalently.
    for (unsigned K = 1; K <= 25; ++K) {
      BigInt expected = 1;
      for (unsigned i = K + 1; i <= 2 * K; ++i) expected *= i;
      CHECK(degree_condition_constant(K) == expected);
      const u64 n = 1'000'000'007;
      CHECK(degree_condition_residue(K, 1, n) == static_cast<u64>(expected % n));
    }
    CHECK_THROWS_AS(degree_condition_constant(0), RangeError);
    CHECK_THROWS_AS(degree_condition_constant(26), RangeError);
  }

  TEST_CASE("least_inverse_degree") {
    CHECK(least_inverse_degree(Qpp::make(23, 94, Modulus(1504))) == 3);
    CHECK(least_inverse_degree(Qpp::make(23, 94, Modulus(6016))) == 4);
    CHECK(least_inverse_degree(Qpp::make(26119, 2 * 3 * 41 * 179, Modulus(u64{1} << 24))) == 12);
    CHECK(least_inverse_degree(Qpp::make(7, 0, Modulus(15))) == 1);
    CHECK(least_inverse_degree(Qpp::make(15, 58, Modulus(928))) == 3);
  }

  TEST_CASE("N = 1504, f = 23x + 94x^2") {
    const Qpp q = Qpp::make(23, 94, Modulus(1504));
    const TriangularSystem sys = build_system(q);
    CHECK(sys.K == 3);
    CHECK(sys.d == std::vector<u64>{1, 2, 6});
    CHECK(row_of(sys.u, 0) == std::vector<u64>{1, 117, 153});
    CHECK(row_of(sys.u, 1) == std::vector<u64>{0, 1, 539});
    CHECK(row_of(sys.u, 2) == std::vector<u64>{0, 0, 1});
    CHECK(sys.e == std::vector<u64>{797, 188, 752});

    const HSolutions hs = all_h(sys, 100);
    CHECK_FALSE(hs.truncated);
    const std::set<std::vector<u64>> got(hs.solutions.begin(), hs.solutions.end());
    CHECK(got == std::set<std::vector<u64>>{{797, 94, 376}, {797, 94, 1128}, {797, 846, 376}, {797, 846, 1128}});
    CHECK(back_substitute(sys.u, std::vector<u64>{797, 94, 376}, 1504) == PolyModN(1504, {1079, 470, 376}));

    const InverseSolution sol = invert_qpp(q);
    CHECK(sol.count == 4);
    // The closed-form h picks 1128 for h_3; choosing 376 gives another member.
    CHECK(sol.h == std::vector<u64>{797, 94, 1128});
    CHECK(sol.particular == PolyModN(1504, {1079, 1222, 1128}));
    const InverseList list = enumerate_inverses(sol);
    CHECK_FALSE(list.truncated);
    CHECK(list.inverses.size() == 4);
    const std::set<PolyModN> inv(list.inverses.begin(), list.inverses.end());
    CHECK(inv.count(PolyModN(1504, {1079, 470, 376})) == 1);
    for (const auto& g : list.inverses) CHECK(identity_on_all_points(g, q.polynomial()));
  }

  TEST_CASE("N = 6016, f = 23x + 94x^2") {
    const Qpp q = Qpp::make(23, 94, Modulus(6016));
    const TriangularSystem sys = build_system(q);
    CHECK(sys.K == 4);
    CHECK(sys.e == std::vector<u64>{3805, 188, 752, 3008});
    CHECK(row_of(sys.u, 0) == std::vector<u64>{1, 117, 1657, 1357});
    CHECK(row_of(sys.u, 1) == std::vector<u64>{0, 1, 539, 507});
    CHECK(row_of(sys.u, 2) == std::vector<u64>{0, 0, 1, 1454});
    CHECK(row_of(sys.u, 3) == std::vector<u64>{0, 0, 0, 1});
    CHECK(particular_h(sys) == std::vector<u64>{3805, 94, 4136, 4888});

    const InverseSolution sol = invert_qpp(q);
    CHECK(sol.particular == PolyModN(6016, {1831, 3854, 1880, 4888}));
    CHECK(identity_on_all_points(sol.particular, q.polynomial()));
  }

  TEST_CASE("N = 2^24, f = 26119x + 44034x^2") {
    const Qpp q = Qpp::make(26119, 2 * 3 * 41 * 179, Modulus(u64{1} << 24));
    const InverseSolution sol = invert_qpp(q);
    CHECK(sol.K() == 12);
    CHECK(sol.K() < degree_bound(q.modulus));
    CHECK(sol.particular == PolyModN(q.n(), kReferenceInverse));
    CHECK_FALSE(enumerate_inverses(sol, 16).inverses.empty());
    CHECK(enumerate_inverses(sol, 16).truncated);
  }

  TEST_CASE("particular h satisfies D*h == e") {
    for (u64 n : {1504u, 6016u, 928u, 5248u, 1u << 12, 2u * 3u * 3u * 5u * 5u * 7u}) {
      std::mt19937_64 rng(n);
      for (int i = 0; i < 20; ++i) {
        const auto q = random_qpp(rng, n);
        if (!q) continue;
        const TriangularSystem sys = build_system(*q);
        const auto h = particular_h(sys);
        for (unsigned k = 0; k < sys.K; ++k) CHECK(mod_mul(sys.d[k], h[k], n) == sys.e[k]);
      }
    }
  }

  TEST_CASE("both solution methods give the same set") {
    const Qpp q = Qpp::make(23, 94, Modulus(1504));
    const InverseSolution sol = invert_qpp(q);
    std::set<PolyModN> via_h;
    for (const auto& h : all_h(sol.system, 100).solutions) via_h.insert(back_substitute(sol.system.u, h, q.n()));
    const auto list = enumerate_inverses(sol);
    const std::set<PolyModN> via_zero(list.inverses.begin(), list.inverses.end());
    CHECK(via_h == via_zero);
  }

  TEST_CASE("all_h and enumeration truncate at the limit") {
    const Qpp q = Qpp::make(23, 94, Modulus(1504));
    const InverseSolution sol = invert_qpp(q);
    CHECK(all_h(sol.system, 3).truncated);
    CHECK(all_h(sol.system, 3).solutions.size() == 3);
    CHECK_FALSE(all_h(sol.system, 4).truncated);

    const InverseList three = enumerate_inverses(sol, 3);
    CHECK(three.truncated);
    CHECK(three.inverses.size() == 3);
    CHECK_FALSE(enumerate_inverses(sol, 4).truncated);
    CHECK_THROWS_AS(enumerate_inverses(sol, 0), ContractError);

    InverseEnumerator it(sol, 2);
    CHECK(it.next().has_value());
    CHECK(it.next().has_value());
    CHECK_FALSE(it.next().has_value());
    CHECK(it.truncated());
    CHECK(it.produced() == 2);
  }

  TEST_CASE("enumerated inverses: count, leading coefficient, membership") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 150; ++i) {
      const u64 n = std::uniform_int_distribution<u64>(3, 3000)(rng);
      const auto q = random_qpp(rng, n);
      if (!q) continue;
      const InverseSolution sol = invert_qpp(*q);
      const InverseList list = enumerate_inverses(sol, 512);
      if (sol.count <= 512) {
        CHECK_FALSE(list.truncated);
        CHECK(BigInt(list.inverses.size()) == sol.count);
      }
      const std::set<PolyModN> distinct(list.inverses.begin(), list.inverses.end());
      CHECK(distinct.size() == list.inverses.size());
      for (const auto& g : list.inverses) {
        CHECK(g.coeff(sol.K()) != 0);
        CHECK(g.degree() == sol.K());
        CHECK(is_least_degree_inverse(sol, g));
        CHECK(identity_on_all_points(g, q->polynomial()));
      }
      CHECK_FALSE(is_least_degree_inverse(sol, sol.particular + PolyModN::identity(n)));
    }
  }

  TEST_CASE("linear QPPs invert to f1^-1 x") {
    const Qpp q = Qpp::make(7, 0, Modulus(15));
    const InverseSolution sol = invert_qpp(q);
    CHECK(sol.K() == 1);
    CHECK(sol.particular == PolyModN(15, {13}));
    CHECK(sol.count == 1);
  }

  TEST_CASE("normalization is reported and the inverse fits the input") {
    const Qpp q = Qpp::make(2, 3, Modulus(6));
    const InverseSolution sol = invert_qpp(q);
    CHECK(sol.normalization_changed());
    CHECK(identity_on_all_points(sol.particular, q.polynomial()));
    CHECK_THROWS_AS(compute_e(q, 1), ContractError);
  }

  TEST_CASE("soundness, bound, monotone vanishing and L*e == b") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    while (checked < 200) {
      const u64 n = std::uniform_int_distribution<u64>(3, 20000)(rng);
      const auto q = random_qpp(rng, n);
      if (!q) continue;
      ++checked;
      const InverseSolution sol = invert_qpp(*q);
      CHECK(sol.K() <= degree_bound(q->modulus));
      CHECK(identity_on_all_points(sol.particular, q->polynomial()));
      CHECK(identity_on_all_points(q->polynomial(), sol.particular));

      const unsigned prefix = std::min(sol.K() + 3, 50u);
      const auto e = compute_e(sol.qpp, prefix);
      CHECK(e[sol.K() - 1] != 0);
      for (unsigned k = sol.K(); k < prefix; ++k) CHECK(e[k] == 0);
      for (unsigned k = 1; k < prefix; ++k) {
        if (e[k - 1] == 0) CHECK(e[k] == 0);
      }

      const unsigned K = std::min(sol.K(), 12u);
      const auto l = qppinv_test::leading_lower(n, sol.qpp.f1, sol.qpp.f2, K);
      for (unsigned i = 0; i < K; ++i) {
        u64 acc = 0;
        for (unsigned j = 0; j <= i; ++j) acc = mod_add(acc, mod_mul(l[i][j], e[j], n), n);
        CHECK(acc == (i + 1) % n);
      }
    }
  }

  TEST_CASE("minimality against an independent linear-algebra decision") {
    for (u64 n = 3; n <= 200; n += 1) {
      const Modulus m(n);
      std::mt19937_64 rng(n * 7919);
      for (int i = 0; i < 3; ++i) {
        const auto q = random_qpp(rng, n);
        if (!q) break;
        const unsigned K = least_inverse_degree(*q);
        CHECK(qppinv_test::inverse_of_degree_exists(n, q->f1, q->f2, K));
        if (K > 1) CHECK_FALSE(qppinv_test::inverse_of_degree_exists(n, q->f1, q->f2, K - 1));
      }
    }
  }
}
