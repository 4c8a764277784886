#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <zsum/core.hpp>
#include <zsum/detail/engine.hpp>
#include <zsum/dihedral.hpp>
#include <zsum/errors.hpp>
#include <zsum/subsum.hpp>

using Catch::Matchers::ContainsSubstring;
using zsum::parse_error;
using zsum::core::Modulus;
using zsum::dihedral::DihedralElement;
using zsum::dihedral::DihedralSequence;
using zsum::dihedral::dihedral_mul;

namespace {

// Order-insensitive reference for the product sets: run every permutation.
std::uint64_t perm_products(const zsum::detail::GroupTable& g, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  std::uint64_t out = 0;
  do {
    int p = ids[0];
    for (std::size_t i = 1; i < ids.size(); ++i) p = g.mul(p, ids[i]);
    out |= std::uint64_t{1} << p;
  } while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

std::uint64_t perm_all_products(const zsum::detail::GroupTable& g,
                                const std::vector<int>& ids) {
  std::uint64_t out = 0;
  for (std::size_t pick = 1; pick < (std::size_t{1} << ids.size()); ++pick) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (pick >> i & 1) sub.push_back(ids[i]);
    out |= perm_products(g, sub);
  }
  return out;
}

}  // namespace

TEST_CASE("element ids, labels and normal form") {
  Modulus m(5);
  for (int id = 0; id < 10; ++id)
    CHECK(DihedralElement::from_id(id, m).id() == id);
  CHECK(DihedralElement::from_id(0, m).label() == "r0");
  CHECK(DihedralElement::from_id(3, m).label() == "r3");
  CHECK(DihedralElement::from_id(7, m).label() == "s2");
  CHECK(DihedralElement::identity(m).id() == 0);
  CHECK_FALSE(DihedralElement::from_id(4, m).reflection());
  CHECK(DihedralElement::from_id(5, m).reflection());

  CHECK_THROWS_AS(DihedralElement::from_id(10, m), std::domain_error);
  CHECK_THROWS_AS(DihedralElement::from_id(-1, m), std::domain_error);
  CHECK_THROWS_AS(DihedralElement(false, 0, Modulus(2)), std::domain_error);
}

TEST_CASE("the product law on D_6") {
  Modulus m(3);
  auto r = [&](int a) { return DihedralElement(false, a, m); };
  auto s = [&](int a) { return DihedralElement(true, a, m); };

  CHECK(dihedral_mul(r(1), r(2)) == r(0));
  CHECK(dihedral_mul(s(0), s(0)) == r(0));
  CHECK(dihedral_mul(r(1), s(0)) == s(2));  // y x = x y^{-1}
  CHECK(dihedral_mul(s(0), r(1)) == s(1));
  CHECK(dihedral_mul(s(2), s(1)) == r(2));

  CHECK_THROWS_AS(dihedral_mul(r(1), DihedralElement(false, 1, Modulus(4))),
                  std::domain_error);
}

TEST_CASE("rotations embed Z_n and reflections are involutions") {
  for (int n : {3, 5, 8}) {
    Modulus m(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        CHECK(dihedral_mul(DihedralElement(false, a, m), DihedralElement(false, b, m)) ==
              DihedralElement(false, a + b, m));
      auto refl = DihedralElement(true, a, m);
      CHECK(dihedral_mul(refl, refl) == DihedralElement::identity(m));
    }
  }
}

TEST_CASE("the generated table is a group table") {
  for (int n = 3; n <= 6; ++n) {
    auto t = zsum::dihedral::dihedral_table(Modulus(n));
    REQUIRE(t.order == 2 * n);
    CHECK(t.identity == 0);
    for (int a = 0; a < t.order; ++a) {
      CHECK(t.mul(a, 0) == a);
      CHECK(t.mul(0, a) == a);
    }
    for (int a = 0; a < t.order; ++a)
      for (int b = 0; b < t.order; ++b)
        for (int c = 0; c < t.order; ++c)
          REQUIRE(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
  }
}

TEST_CASE("dihedral sequences parse and format canonically") {
  auto s = zsum::dihedral::parse_dihedral_sequence("D n=3: r1,r1,s0");
  CHECK(s.length() == 3);
  CHECK(s.counts().at(1) == 2);
  CHECK(s.counts().at(3) == 1);
  CHECK(zsum::dihedral::format_dihedral_sequence(s) == "D n=3: r1,r1,s0");

  auto t = zsum::dihedral::parse_dihedral_sequence("D n=7: s3,r2");
  CHECK(zsum::dihedral::format_dihedral_sequence(t) == "D n=7: r2,s3");
  CHECK(zsum::dihedral::parse_dihedral_sequence(zsum::dihedral::format_dihedral_sequence(t)) ==
        t);

  SECTION("exponents reduce mod n") {
    auto u = zsum::dihedral::parse_dihedral_sequence("D n=5: r7,s-1");
    CHECK(u.counts().at(2) == 1);
    CHECK(u.counts().at(9) == 1);
  }

  SECTION("empty sequence") {
    auto u = zsum::dihedral::parse_dihedral_sequence("D n=4:");
    CHECK(u.empty());
    CHECK(zsum::dihedral::format_dihedral_sequence(u) == "D n=4:");
  }

  SECTION("malformed input") {
    CHECK_THROWS_AS(zsum::dihedral::parse_dihedral_sequence("n=3: r1"), parse_error);
    CHECK_THROWS_AS(zsum::dihedral::parse_dihedral_sequence("D n=3: t1"), parse_error);
    CHECK_THROWS_AS(zsum::dihedral::parse_dihedral_sequence("D n=3: r1 s0"), parse_error);
    CHECK_THROWS_AS(zsum::dihedral::parse_dihedral_sequence("D n=3: r"), parse_error);
    CHECK_THROWS_AS(zsum::dihedral::parse_dihedral_sequence("D n=2: r1"), std::domain_error);
  }
}

TEST_CASE("ordered and sub-multiset product sets on small examples") {
  auto s = zsum::dihedral::parse_dihedral_sequence("D n=3: r1,r2");
  Modulus m(3);
  auto pi = zsum::dihedral::pi_products(s);
  CHECK(pi == std::set<DihedralElement>{DihedralElement::identity(m)});
  auto big = zsum::dihedral::big_pi(s);
  CHECK(big == std::set<DihedralElement>{DihedralElement(false, 0, m),
                                         DihedralElement(false, 1, m),
                                         DihedralElement(false, 2, m)});

  CHECK_THROWS_AS(zsum::dihedral::pi_products(DihedralSequence(m)), std::domain_error);
  CHECK_THROWS_AS(zsum::dihedral::big_pi(DihedralSequence(m)), std::domain_error);
}

TEST_CASE("rotation-only products mirror subsequence sums mod n") {
  auto rot = zsum::dihedral::parse_dihedral_sequence("D n=5: r1,r3");
  auto big = zsum::dihedral::big_pi(rot);
  auto sums = zsum::subsum::subsums_mod(zsum::core::parse_sequence("n=5: 1,3"));
  std::set<DihedralElement> expected;
  for (int v : sums.members) expected.insert(DihedralElement(false, v, Modulus(5)));
  CHECK(big == expected);
}

TEST_CASE("product sets agree with permutation enumeration on D_6") {
  Modulus m(3);
  auto table = zsum::dihedral::dihedral_table(m);
  zsum::detail::ProductSetEngine engine(table);
  std::vector<int> ids;
  long long instances = 0;
  auto rec = [&](auto&& self, int min_id) -> void {
    if (!ids.empty()) {
      ++instances;
      REQUIRE(engine.full_products(ids) == perm_products(table, ids));
      REQUIRE(engine.all_products(ids) == perm_all_products(table, ids));
    }
    if (ids.size() == 4) return;
    for (int g = min_id; g < table.order; ++g) {
      ids.push_back(g);
      self(self, g);
      ids.pop_back();
    }
  };
  rec(rec, 0);
  CHECK(instances == 209);  // multisets of size 1..4 from 6 elements
}

TEST_CASE("engine budgets") {
  auto table = zsum::dihedral::dihedral_table(Modulus(3));
  zsum::detail::ProductSetEngine engine(table);
  std::vector<int> too_many(22, 1);
  CHECK_THROWS_WITH(engine.full_products(too_many), ContainsSubstring("21"));

  zsum::detail::GroupTable big{65, 0, std::vector<int>(65 * 65, 0)};
  CHECK_THROWS_WITH(zsum::detail::ProductSetEngine(std::move(big)),
                    ContainsSubstring("1..64"));
}

TEST_CASE("a five-term relation in D_14 is caught with an ordered witness") {
  // s1 r1 r1 r1 s4 multiplies out to the identity even though no proper
  // prefix does.
  auto s = zsum::dihedral::parse_dihedral_sequence("D n=7: r1,r1,r1,s1,s4");
  auto check = zsum::dihedral::is_product_one_free(s);
  REQUIRE_FALSE(check.free);
  REQUIRE(check.witness.has_value());

  Modulus m(7);
  CHECK(check.witness->product == DihedralElement::identity(m));

  // The witness multiplies back to the identity and uses only terms of s.
  DihedralElement acc = DihedralElement::identity(m);
  std::map<int, int> used;
  bool started = false;
  for (const auto& term : check.witness->ordered_terms) {
    acc = started ? dihedral_mul(acc, term) : term;
    started = true;
    ++used[term.id()];
  }
  REQUIRE(started);
  CHECK(acc == DihedralElement::identity(m));
  for (auto [id, count] : used) CHECK(count <= s.counts().at(id));

  // Reconstruction is deterministic.
  auto again = zsum::dihedral::is_product_one_free(s);
  REQUIRE(again.witness.has_value());
  CHECK(again.witness->ordered_terms == check.witness->ordered_terms);
}

TEST_CASE("freeness goldens") {
  CHECK(zsum::dihedral::is_product_one_free(
            zsum::dihedral::parse_dihedral_sequence("D n=5: r1,r1,r1,r1,s0"))
            .free);
  CHECK(zsum::dihedral::is_product_one_free(
            zsum::dihedral::parse_dihedral_sequence("D n=5: r2,r2,r2,r2,s3"))
            .free);
  CHECK(zsum::dihedral::is_product_one_free(
            zsum::dihedral::parse_dihedral_sequence("D n=3: s0,s1,s2"))
            .free);
  // n rotations y sum to y^n = 1.
  CHECK_FALSE(zsum::dihedral::is_product_one_free(
                  zsum::dihedral::parse_dihedral_sequence("D n=4: r1,r1,r1,r1"))
                  .free);
  // y^2 has order 2 when n = 4, so two copies already collapse.
  CHECK_FALSE(zsum::dihedral::is_product_one_free(
                  zsum::dihedral::parse_dihedral_sequence("D n=4: r2,r2,s1"))
                  .free);
  CHECK_THROWS_AS(zsum::dihedral::is_product_one_free(DihedralSequence(Modulus(3))),
                  std::domain_error);
}

TEST_CASE("free_multisets chunks partition the length-n survivors") {
  Modulus m(3);
  std::vector<DihedralSequence> found;
  for (int least = 0; least < 6; ++least) {
    auto part = zsum::dihedral::free_multisets(m, 3, least);
    for (const auto& s : part) {
      CHECK(s.length() == 3);
      CHECK(s.counts().begin()->first == least);
    }
    found.insert(found.end(), part.begin(), part.end());
  }
  CHECK(found.size() == 7);
  CHECK(std::count(found.begin(), found.end(),
                   DihedralSequence::from_ids(m, {3, 4, 5})) == 1);

  CHECK_THROWS_AS(zsum::dihedral::free_multisets(m, 0, 0), std::domain_error);
  CHECK_THROWS_AS(zsum::dihedral::free_multisets(m, 3, 6), std::domain_error);
}

TEST_CASE("the predicted family matches the enumeration for n = 3..6") {
  auto r3 = zsum::dihedral::verify_classification(3);
  CHECK(r3.found_count == 7);
  CHECK(r3.expected_count == 7);
  CHECK(r3.matches_family);

  auto r4 = zsum::dihedral::verify_classification(4);
  CHECK(r4.found_count == 8);
  CHECK(r4.matches_family);

  auto r5 = zsum::dihedral::verify_classification(5);
  CHECK(r5.found_count == 20);
  CHECK(r5.matches_family);

  auto r6 = zsum::dihedral::verify_classification(6);
  CHECK(r6.found_count == 12);
  CHECK(r6.matches_family);

  CHECK_THROWS_AS(zsum::dihedral::verify_classification(2), std::domain_error);
  CHECK_THROWS_AS(zsum::dihedral::verify_classification(9), std::domain_error);
}

TEST_CASE("family comparison reports symmetric differences") {
  Modulus m(5);
  auto family = zsum::dihedral::classification_family(m);
  REQUIRE(family.size() == 20);

  auto tampered = family;
  auto removed = tampered.front();
  tampered.erase(tampered.begin());
  auto fake = DihedralSequence::from_id_counts(m, {{1, 5}});
  tampered.push_back(fake);

  auto rep = zsum::dihedral::compare_with_family(m, tampered);
  CHECK_FALSE(rep.matches_family);
  REQUIRE(rep.extras.size() == 1);
  CHECK(rep.extras.front() == fake);
  REQUIRE(rep.missing.size() == 1);
  CHECK(rep.missing.front() == removed);
}
