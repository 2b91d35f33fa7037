#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tckit/gl2.hpp"

using namespace tc;
using namespace tc::gl2;

TEST_CASE("gl2_order matches brute-force counts up to 16") {
  CHECK(gl2_order(1) == BigNat(1));
  CHECK(gl2_order(2) == BigNat(6));
  CHECK(gl2_order(4) == BigNat(96));
  for (std::uint32_t n = 1; n <= 16; ++n)
    CHECK(gl2_order(n) == BigNat(oracle::gl2_order_brute(n)));
}

TEST_CASE("projection is an entrywise reduction and a homomorphism") {
  Mat id8 = identity(8);
  CHECK(project(id8, 2) == identity(2));

  Mat m = make_mat(4, 3, 2, 1, 1);
  Mat m2 = project(m, 2);
  CHECK(m2 == make_mat(2, 1, 0, 1, 1));

  CHECK_THROWS_AS(project(m, 3), Error);

  std::mt19937_64 rng(5);
  auto random_gl2 = [&](std::uint32_t n) {
    for (;;) {
      Mat x = make_mat(n, rng() % n, rng() % n, rng() % n, rng() % n);
      if (is_invertible(x)) return x;
    }
  };
  for (int i = 0; i < 100; ++i) {
    Mat a = random_gl2(8);
    CHECK(project(project(a, 4), 2) == project(a, 2));
    Mat b = random_gl2(8);
    CHECK(project(mul(a, b), 4) == mul(project(a, 4), project(b, 4)));
  }
}

TEST_CASE("projection of the full group is surjective, n <= 16") {
  for (std::uint32_t n = 2; n <= 16; ++n) {
    Subgroup g = full_gl2(n);
    for (std::uint32_t d = 2; d <= n; ++d) {
      if (n % d) continue;
      MatSet image;
      for (const Mat& m : g.elements) image.insert(project(m, d));
      CHECK(BigNat(image.size()) == gl2_order(d));
    }
  }
}

TEST_CASE("reduction kernels") {
  Subgroup k = reduction_kernel(2, 1, 2);
  CHECK(k.size() == 16);
  CHECK(k.contains(identity(4)));

  Subgroup k3 = reduction_kernel(3, 1, 2);
  CHECK(k3.size() == 81);
  for (const Mat& m : k3.elements) CHECK(project(m, 3) == identity(3));

  struct Case {
    std::uint64_t p;
    std::uint32_t alpha;
  };
  for (auto [p, alpha] : {Case{2, 1}, Case{2, 2}, Case{3, 1}, Case{5, 1}}) {
    Subgroup ker = reduction_kernel(p, alpha, alpha + 1);
    CHECK(ker.size() == p * p * p * p);
    std::uint32_t pa = 1;
    for (std::uint32_t i = 0; i < alpha; ++i) pa *= static_cast<std::uint32_t>(p);
    for (const Mat& m : ker.elements) CHECK(project(m, pa) == identity(pa));
    // kernels really are subgroups
    CHECK(subgroup_closure(ker.generators).size() == ker.size());
  }
}

TEST_CASE("subgroup closure basics") {
  Subgroup triv = subgroup_closure({identity(5)});
  CHECK(triv.size() == 1);

  // (0 -1; 1 0) mod 3 generates a cyclic group of order 4
  Subgroup c4 = subgroup_closure({make_mat(3, 0, 2, 1, 0)});
  CHECK(c4.size() == 4);

  Subgroup s3 = subgroup_closure({make_mat(2, 1, 1, 0, 1), make_mat(2, 0, 1, 1, 0)});
  CHECK(s3.size() == 6);  // all of GL2(F2)

  CHECK_THROWS_AS(subgroup_closure({make_mat(5, 1, 1, 0, 1)}, 3), Error);  // budget
  CHECK_THROWS_AS(subgroup_closure({make_mat(4, 2, 0, 0, 2)}), Error);     // not invertible
}

TEST_CASE("closure agrees with an independent fixpoint oracle") {
  std::mt19937_64 rng(17);
  for (std::uint32_t n : {4u, 6u}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Mat> gens;
      while (gens.size() < 2) {
        Mat m = make_mat(n, rng() % n, rng() % n, rng() % n, rng() % n);
        if (is_invertible(m)) gens.push_back(m);
      }
      Subgroup s = subgroup_closure(gens);
      auto brute = oracle::closure_brute(gens);
      CHECK(s.size() == brute.size());
      for (const Mat& m : s.elements) CHECK(brute.count(m.key()) == 1);
    }
  }
}

TEST_CASE("full_gl2 generators close to the whole group") {
  for (std::uint32_t n : {2u, 3u, 4u, 5u, 6u, 8u, 9u, 12u}) {
    Subgroup g = full_gl2(n);
    Subgroup closed = subgroup_closure(g.generators);
    CHECK(closed.size() == g.size());
  }
}

TEST_CASE("sl2 generators close to the det-1 kernel") {
  for (std::uint32_t n : {2u, 3u, 4u, 5u, 9u}) {
    Subgroup s = sl2(n);
    CHECK(subgroup_closure(s.generators).size() == s.size());
    for (const Mat& m : s.elements) CHECK(det(m) == 1 % n);
  }
}

TEST_CASE("commutator subgroups") {
  Subgroup triv = subgroup_closure({identity(3)});
  CHECK(commutator_subgroup(triv).size() == 1);

  Subgroup g3 = full_gl2(3);
  Subgroup d3 = commutator_subgroup(g3);
  Subgroup s3 = sl2(3);
  CHECK(d3.size() == 24);
  CHECK(s3.contains_all(d3));
  CHECK(d3.contains_all(s3));

  // GL2(F2) = S3 has commutator A3, strictly smaller than SL2(F2)
  Subgroup g2 = full_gl2(2);
  Subgroup d2 = commutator_subgroup(g2);
  CHECK(d2.size() == 3);
  CHECK(sl2(2).size() == 6);
}

TEST_CASE("normal subgroup enumeration") {
  CHECK(normal_subgroups(full_gl2(2)).size() == 3);  // S3: 1, A3, S3

  Subgroup c4 = subgroup_closure({make_mat(3, 0, 2, 1, 0)});
  CHECK(normal_subgroups(c4).size() == 3);  // abelian: 1, C2, C4

  Subgroup g5 = full_gl2(5);
  auto normals = normal_subgroups(g5);
  Subgroup s5 = sl2(5);
  for (const auto& n : normals) {
    bool contains_sl2 = n.contains_all(s5);
    bool central = true;
    for (const Mat& m : n.elements)
      if (m.e[1] != 0 || m.e[2] != 0 || m.e[0] != m.e[3]) {
        central = false;
        break;
      }
    CHECK((contains_sl2 || central));
  }

  Subgroup too_big = full_gl2(11);
  CHECK_THROWS_AS(normal_subgroups(too_big), Error);
}

TEST_CASE("simple non-abelian quotients") {
  // GL2(Z/4) has none (the containment display has only p > 3 terms).
  CHECK(simple_nonabelian_quotients(full_gl2(4)).empty());

  // SL2(F5)/{+-1} = PSL2(F5): the quotient shows up for SL2 itself.
  auto q = simple_nonabelian_quotients(sl2(5));
  REQUIRE(q.size() == 1);
  CHECK(*q.begin() == SimpleGroupId::PSL2_5);
  CHECK(simple_group_order(SimpleGroupId::PSL2_5) == 60);

  // The det-square subgroup of GL2(F5) (scalars times SL2) also has it.
  std::vector<Mat> gens = sl2(5).generators;
  gens.push_back(make_mat(5, 2, 0, 0, 2));
  Subgroup detsq = subgroup_closure(gens);
  CHECK(detsq.size() == 240);
  auto q2 = simple_nonabelian_quotients(detsq);
  REQUIRE(q2.size() == 1);
  CHECK(*q2.begin() == SimpleGroupId::PSL2_5);

  // Full GL2(F_p) has no simple non-abelian quotient: every normal subgroup
  // is central or contains SL2, so nothing of order 8 (resp. 12) exists to
  // cut PSL2 out of the full group.
  CHECK(simple_nonabelian_quotients(full_gl2(5)).empty());
  CHECK(simple_nonabelian_quotients(full_gl2(7)).empty());
}

TEST_CASE("occ_search finds the displayed groups") {
  auto occ5 = occ_search(5, 100, 0);
  CHECK(occ5.count(SimpleGroupId::PSL2_5) == 1);

  CHECK(occ_search(6, 60, 0).empty());

  auto occ7 = occ_search(7, 100, 0);
  CHECK(occ7.count(SimpleGroupId::PSL2_7) == 1);
}

TEST_CASE("occ_search is deterministic for a fixed seed") {
  auto a = occ_search(5, 40, 123);
  auto b = occ_search(5, 40, 123);
  CHECK(a == b);
}
