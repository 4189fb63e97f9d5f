#include <catch2/catch_amalgamated.hpp>

#include <diflow/poset.hpp>

#include <algorithm>
#include <set>

#include "support/oracles.hpp"

using namespace diflow;

TEST_CASE("make_poset closes and validates") {
  poset p = make_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  REQUIRE(p.size() == 3);
  REQUIRE(p.leq("a", "c"));
  REQUIRE_FALSE(p.leq("c", "a"));
  REQUIRE(p.leq("b", "b"));

  REQUIRE_THROWS_AS(make_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), cycle_error);
  REQUIRE_THROWS_AS(make_poset({"a"}, {{"a", "x"}}), unknown_label);
  REQUIRE_THROWS_AS(make_poset({}, {}), empty_poset);

  poset single = make_poset({"a"}, {});
  REQUIRE(single.size() == 1);
  REQUIRE(single.leq("a", "a"));
}

TEST_CASE("closure idempotence") {
  poset p = cube(2);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& a : p.labels())
    for (const auto& b : p.labels())
      if (p.less(a, b)) pairs.emplace_back(a, b);
  REQUIRE(make_poset(p.labels(), pairs) == p);

  std::vector<std::pair<std::string, std::string>> cover_pairs;
  for (const auto& [a, b] : covers(p)) cover_pairs.emplace_back(a, b);
  REQUIRE(make_poset(p.labels(), cover_pairs) == p);
}

TEST_CASE("product is the coordinatewise order") {
  poset square = product(chain(2), chain(2));
  REQUIRE(square.size() == 4);
  REQUIRE(square.less("(0,0)", "(1,1)"));
  REQUIRE_FALSE(square.leq("(0,1)", "(1,0)"));
  REQUIRE_FALSE(square.leq("(1,0)", "(0,1)"));

  poset one = make_poset({"*"}, {});
  poset p = chain(3);
  REQUIRE(is_isomorphic(product(p, one), p).has_value());

  poset two = chain(2);
  poset grid = product(p, two);
  for (const auto& a : p.labels())
    for (const auto& b : two.labels())
      for (const auto& c : p.labels())
        for (const auto& d : two.labels()) {
          bool lhs = grid.leq("(" + a + "," + b + ")", "(" + c + "," + d + ")");
          bool rhs = p.leq(a, c) && two.leq(b, d);
          REQUIRE(lhs == rhs);
        }
}

TEST_CASE("grid 2x3 maximal chains") {
  poset grid = product(chain(2), chain(3));
  REQUIRE(grid.size() == 6);
  auto chains = oracle::maximal_chains(grid);
  REQUIRE(chains.size() == 3);
  for (const auto& c : chains) REQUIRE(c.size() == 4); // 3 cover steps
}

TEST_CASE("chain basics") {
  poset two = chain(2);
  REQUIRE(two.labels() == std::vector<std::string>{"0", "1"});
  REQUIRE(two.less("0", "1"));
  REQUIRE(is_bounded(two));

  REQUIRE_FALSE(is_bounded(chain(1)));
  REQUIRE_THROWS_AS(chain(0), invalid_size);

  REQUIRE(witness_elements(chain(4)) == std::vector<std::string>{"1", "2"});
}

TEST_CASE("cube basics") {
  REQUIRE(cube(1) == chain(2));
  REQUIRE(cube(3).size() == 8);
  REQUIRE(covers(cube(3)).size() == 12);
  REQUIRE(is_isomorphic(cube(2), product(chain(2), chain(2))).has_value());
  REQUIRE_THROWS_AS(cube(0), invalid_size);
}

TEST_CASE("is_bounded") {
  REQUIRE(is_bounded(cube(3)));
  REQUIRE_FALSE(is_bounded(chain(1)));
  REQUIRE_FALSE(is_bounded(make_poset({"x", "y"}, {})));
  REQUIRE(minimum_of(cube(2)) == "(0,0)");
  REQUIRE(maximum_of(cube(2)) == "(1,1)");
}

TEST_CASE("covers") {
  auto c3 = covers(chain(3));
  REQUIRE(c3 == std::vector<std::pair<std::string, std::string>>{{"0", "1"}, {"1", "2"}});
  REQUIRE(covers(cube(2)).size() == 4);
}

TEST_CASE("subdivide") {
  poset c3 = subdivide(chain(2), "0", "1", "A");
  REQUIRE(is_isomorphic(c3, chain(3)).has_value());

  poset q = subdivide(cube(2), "(0,0)", "(0,1)", "z");
  REQUIRE(q.size() == 5);
  std::size_t above = 0, below = 0;
  for (const auto& [a, b] : covers(q)) {
    if (a == "z") ++above;
    if (b == "z") ++below;
  }
  REQUIRE(above == 1);
  REQUIRE(below == 1);

  REQUIRE_THROWS_AS(subdivide(chain(3), "0", "2", "z"), not_a_cover);
  REQUIRE_THROWS_AS(subdivide(chain(2), "0", "1", "0"), label_clash);
  REQUIRE_THROWS_AS(subdivide(chain(2), "1", "0", "z"), not_a_cover);
}

TEST_CASE("subdivide invariants over test posets") {
  std::vector<poset> tests{chain(2), chain(4), cube(2), cube(3),
                           product(chain(2), chain(3))};
  for (const auto& p : tests) {
    for (const auto& [x, y] : covers(p)) {
      poset s = subdivide(p, x, y, "z0");
      REQUIRE(s.size() == p.size() + 1);
      REQUIRE(is_bounded(s) == is_bounded(p));
      auto ws = witness_elements(s);
      REQUIRE(std::find(ws.begin(), ws.end(), "z0") != ws.end());
      REQUIRE(unsubdivide(s, "z0") == p);
    }
  }
}

TEST_CASE("unsubdivide") {
  REQUIRE(is_isomorphic(unsubdivide(chain(3), "1"), chain(2)).has_value());
  REQUIRE_THROWS_AS(unsubdivide(cube(2), "(0,1)"), not_removable);
  REQUIRE_THROWS_AS(unsubdivide(chain(3), "0"), not_removable);
  REQUIRE_THROWS_AS(unsubdivide(chain(3), "nope"), unknown_label);
}

TEST_CASE("witness_elements") {
  REQUIRE(witness_elements(cube(3)).empty());
  REQUIRE(witness_elements(cube(4)).empty());
  REQUIRE(witness_elements(cube(5)).empty());
  REQUIRE(witness_elements(cube(2)) ==
          std::vector<std::string>{"(0,1)", "(1,0)"});
  REQUIRE(witness_elements(chain(3)) == std::vector<std::string>{"1"});
  REQUIRE_THROWS_AS(witness_elements(make_poset({"x", "y"}, {})), not_bounded);
}

TEST_CASE("is_isomorphic") {
  REQUIRE(is_isomorphic(cube(2), product(chain(2), chain(2))).has_value());
  REQUIRE_FALSE(is_isomorphic(chain(3), make_poset({"a", "b", "c"}, {{"a", "b"}})).has_value());
  REQUIRE_FALSE(is_isomorphic(chain(4), cube(2)).has_value());

  poset renamed = make_poset(
      {"p", "q", "r", "s", "t", "u", "v", "w"}, [] {
        std::vector<std::pair<std::string, std::string>> pairs;
        std::vector<std::string> names{"p", "q", "r", "s", "t", "u", "v", "w"};
        // Boolean cube on shuffled names: index bitmask order.
        for (std::size_t a = 0; a < 8; ++a)
          for (std::size_t b = 0; b < 8; ++b)
            if ((a & b) == a) pairs.emplace_back(names[a], names[b]);
        return pairs;
      }());
  poset c3 = cube(3);
  auto iso = is_isomorphic(c3, renamed);
  REQUIRE(iso.has_value());
  for (const auto& a : c3.labels())
    for (const auto& b : c3.labels())
      REQUIRE(c3.leq(a, b) == renamed.leq(iso->apply(a), iso->apply(b)));
}

TEST_CASE("isomorphism is an equivalence on test posets") {
  std::vector<poset> tests{chain(2), chain(3), cube(2), cube(3),
                           product(chain(2), chain(3))};
  for (const auto& p : tests) {
    auto self = is_isomorphic(p, p);
    REQUIRE(self.has_value());
  }
  for (const auto& p : tests)
    for (const auto& q : tests)
      REQUIRE(is_isomorphic(p, q).has_value() == is_isomorphic(q, p).has_value());
}

TEST_CASE("canonical_key separates isomorphism classes") {
  auto all6 = oracle::bounded_posets_up_to(6);
  std::set<std::string> keys;
  for (const auto& p : all6) keys.insert(canonical_key(p));
  REQUIRE(keys.size() == all6.size());

  poset renamed = make_poset({"x", "y", "z", "w"},
                             {{"x", "y"}, {"x", "z"}, {"y", "w"}, {"z", "w"}});
  REQUIRE(canonical_key(renamed) == canonical_key(cube(2)));
  REQUIRE(canonical_key(chain(4)) != canonical_key(cube(2)));
}

TEST_CASE("poset_morphism validation") {
  REQUIRE_THROWS_AS(
      poset_morphism(chain(2), chain(2), {{"0", "1"}, {"1", "0"}}),
      not_monotone);
  REQUIRE_THROWS_AS(poset_morphism(chain(2), chain(2), {{"0", "0"}}),
                    unknown_label);
  poset_morphism ok(chain(2), chain(3), {{"0", "0"}, {"1", "2"}});
  REQUIRE(ok.apply("1") == "2");
}

TEST_CASE("class_T_check") {
  poset_morphism g2(chain(2), cube(2), {{"0", "(0,0)"}, {"1", "(1,1)"}});
  REQUIRE(class_t_check(g2));

  poset_morphism constant(chain(2), chain(2), {{"0", "0"}, {"1", "0"}});
  REQUIRE_FALSE(class_t_check(constant));

  poset_morphism no_max(chain(2), chain(3), {{"0", "0"}, {"1", "1"}});
  REQUIRE_FALSE(class_t_check(no_max));

  poset_morphism unbounded(chain(2), chain(2), {{"0", "0"}, {"1", "1"}});
  REQUIRE(class_t_check(unbounded));
  poset_morphism into_antichain =
      poset_morphism(make_poset({"a"}, {}), make_poset({"a"}, {}), {{"a", "a"}});
  REQUIRE_FALSE(class_t_check(into_antichain));
}
