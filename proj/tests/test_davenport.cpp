#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <zsum/davenport.hpp>
#include <zsum/errors.hpp>

using Catch::Matchers::ContainsSubstring;
using zsum::parse_error;
using zsum::davenport::GroupSpec;

TEST_CASE("cyclic groups by name and by factory") {
  auto g = GroupSpec::cyclic(5);
  CHECK(g.name() == "cyclic:5");
  CHECK(g.order() == 5);
  CHECK(g.identity() == 0);
  CHECK(g.abelian());
  CHECK(g.label(3) == "3");
  CHECK(g.mul(3, 4) == 2);

  auto named = GroupSpec::from_name("cyclic:5");
  CHECK(named.order() == 5);
  CHECK(named.name() == g.name());
}

TEST_CASE("direct sums use mixed-radix ids in tuple order") {
  auto g = GroupSpec::direct_sum({2, 3});
  CHECK(g.name() == "sum:2x3");
  CHECK(g.order() == 6);
  CHECK(g.abelian());
  CHECK(g.label(0) == "(0,0)");
  CHECK(g.label(1) == "(0,1)");
  CHECK(g.label(3) == "(1,0)");
  // (1,2) + (1,2) = (0,1): id 5 + id 5 -> id 1.
  CHECK(g.mul(5, 5) == 1);

  CHECK(GroupSpec::from_name("sum:2x2x2").order() == 8);
  CHECK_THROWS_AS(GroupSpec::direct_sum({}), std::domain_error);
  CHECK_THROWS_AS(GroupSpec::direct_sum({2, 1}), std::domain_error);
}

TEST_CASE("dihedral groups are non-abelian with rotation-first labels") {
  auto g = GroupSpec::dihedral(3);
  CHECK(g.name() == "dihedral:3");
  CHECK(g.order() == 6);
  CHECK_FALSE(g.abelian());
  CHECK(g.label(0) == "r0");
  CHECK(g.label(5) == "s2");
  CHECK_THROWS_AS(GroupSpec::dihedral(2), std::domain_error);
}

TEST_CASE("group names parse or fail loudly") {
  CHECK(GroupSpec::from_name("dihedral:7").order() == 14);
  CHECK(GroupSpec::from_name("sum:3x3").name() == "sum:3x3");
  CHECK_THROWS_AS(GroupSpec::from_name("foo:3"), parse_error);
  CHECK_THROWS_AS(GroupSpec::from_name("cyclic"), parse_error);
  CHECK_THROWS_AS(GroupSpec::from_name("cyclic:x"), parse_error);
  CHECK_THROWS_AS(GroupSpec::from_name("sum:"), parse_error);
  CHECK_THROWS_AS(GroupSpec::from_name("sum:2x"), parse_error);
  CHECK_THROWS_WITH(GroupSpec::from_name("cyclic:65"), ContainsSubstring("budget is 64"));
  CHECK_THROWS_AS(GroupSpec::from_name("dihedral:33"), std::domain_error);
  CHECK_THROWS_AS(GroupSpec::from_name("cyclic:0"), std::domain_error);
}

TEST_CASE("longest zero-sum free sequence in Z_n has length n-1") {
  for (int n = 2; n <= 9; ++n) {
    auto g = GroupSpec::cyclic(n);
    auto r = zsum::davenport::davenport_search(g, n, 1);
    CHECK(r.d == n - 1);
    CHECK(r.bounded);
    CHECK(static_cast<int>(r.extremal_example.size()) == n - 1);
    CHECK(r.search_space_size > 0);
  }

  SECTION("the lexicographically least extremal example is all ones") {
    auto r = zsum::davenport::davenport_search(GroupSpec::cyclic(5), 5, 1);
    CHECK(r.extremal_example == std::vector<int>{1, 1, 1, 1});
  }
}

TEST_CASE("dihedral groups reach length n but not n+1") {
  for (int n = 3; n <= 5; ++n) {
    auto g = GroupSpec::dihedral(n);
    auto r = zsum::davenport::davenport_search(g, n + 1, 1);
    CHECK(r.d == n);
    CHECK(r.bounded);
  }

  SECTION("the least extremal multiset for n = 3 is y,y,x") {
    auto r = zsum::davenport::davenport_search(GroupSpec::dihedral(3), 4, 1);
    CHECK(r.extremal_example == std::vector<int>{1, 1, 3});
  }
}

TEST_CASE("direct sums match the sum of cyclic contributions") {
  struct Expect {
    std::vector<int> ns;
    int d;
  };
  for (const auto& [ns, d] : std::vector<Expect>{{{2, 2}, 2}, {{3, 3}, 4}, {{2, 4}, 4}}) {
    auto g = GroupSpec::direct_sum(ns);
    auto r = zsum::davenport::davenport_search(g, d + 1, 1);
    CHECK(r.d == d);
    CHECK(r.bounded);
    auto bound = zsum::davenport::abelian_lower_bound(ns);
    CHECK(bound.bound == d);
  }
}

TEST_CASE("abelian lower bound repeats each generator n_i - 1 times") {
  auto b = zsum::davenport::abelian_lower_bound({3, 3});
  CHECK(b.bound == 4);
  CHECK(b.witness_ids == std::vector<long long>{1, 1, 3, 3});

  auto c = zsum::davenport::abelian_lower_bound({2, 2, 2});
  CHECK(c.bound == 3);
  CHECK(c.witness_ids == std::vector<long long>{1, 2, 4});

  CHECK_THROWS_AS(zsum::davenport::abelian_lower_bound({}), std::domain_error);
  CHECK_THROWS_AS(zsum::davenport::abelian_lower_bound({3, 1}), std::domain_error);
}

TEST_CASE("a search that hits its budget is reported unbounded") {
  auto r = zsum::davenport::davenport_search(GroupSpec::cyclic(8), 3, 1);
  CHECK(r.d == 3);
  CHECK_FALSE(r.bounded);
  CHECK(r.extremal_example == std::vector<int>{1, 1, 1});
}

TEST_CASE("search validates group and budget") {
  CHECK_THROWS_AS(zsum::davenport::davenport_search(GroupSpec::cyclic(1), 1, 1),
                  std::domain_error);
  CHECK_THROWS_AS(zsum::davenport::davenport_search(GroupSpec::cyclic(5), 0, 1),
                  std::domain_error);
  CHECK_THROWS_WITH(zsum::davenport::davenport_search(GroupSpec::cyclic(5), 64, 1),
                    ContainsSubstring("budget"));
  CHECK_THROWS_WITH(zsum::davenport::davenport_search(GroupSpec::dihedral(3), 22, 1),
                    ContainsSubstring("budget"));
}

TEST_CASE("results are independent of the worker count") {
  auto serial = zsum::davenport::davenport_search(GroupSpec::dihedral(4), 5, 1);
  auto parallel = zsum::davenport::davenport_search(GroupSpec::dihedral(4), 5, 3);
  CHECK(serial.d == parallel.d);
  CHECK(serial.extremal_example == parallel.extremal_example);
  CHECK(serial.search_space_size == parallel.search_space_size);
  CHECK(serial.d == 4);
}
