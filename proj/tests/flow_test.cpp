#include <catch2/catch_amalgamated.hpp>

#include <diflow/flow.hpp>
#include <diflow/poset.hpp>

#include <algorithm>

#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace diflow;

TEST_CASE("make_flow validates composition data") {
  SECTION("valid two-step flow") {
    flow x = make_flow(
        {"0", "1", "2"},
        {{"a", {"0", "1"}}, {"b", {"1", "2"}}, {"ab", {"0", "2"}}},
        {{{"a", "b"}, "ab"}});
    REQUIRE(x.compose("a", "b") == "ab");
    REQUIRE(x.source("ab") == "0");
    REQUIRE(x.target("ab") == "2");
  }

  SECTION("missing composite") {
    REQUIRE_THROWS_AS(
        make_flow({"0", "1", "2"},
                  {{"a", {"0", "1"}}, {"b", {"1", "2"}}, {"ab", {"0", "2"}}},
                  {}),
        missing_composite);
  }

  SECTION("non composable pair in table") {
    REQUIRE_THROWS_AS(
        make_flow({"0", "1", "2"},
                  {{"a", {"0", "1"}}, {"b", {"1", "2"}}, {"ab", {"0", "2"}}},
                  {{{"a", "b"}, "ab"}, {{"b", "a"}, "ab"}}),
        endpoint_error);
  }

  SECTION("composite with wrong endpoints") {
    REQUIRE_THROWS_AS(
        make_flow({"0", "1", "2"},
                  {{"a", {"0", "1"}}, {"b", {"1", "2"}}, {"ab", {"1", "2"}}},
                  {{{"a", "b"}, "ab"}}),
        endpoint_error);
  }

  SECTION("unknown state in path") {
    REQUIRE_THROWS_AS(make_flow({"0"}, {{"a", {"0", "9"}}}, {}),
                      unknown_state);
  }

  SECTION("associativity is checked") {
    // Two distinct parallel composites of the same triple.
    std::map<std::string, path_ends> paths{
        {"e1", {"0", "1"}}, {"e2", {"1", "2"}}, {"e3", {"2", "3"}},
        {"e12", {"0", "2"}}, {"e23", {"1", "3"}},
        {"p", {"0", "3"}}, {"q", {"0", "3"}}};
    flow::table bad{{{"e1", "e2"}, "e12"},
                    {{"e2", "e3"}, "e23"},
                    {{"e12", "e3"}, "p"},
                    {{"e1", "e23"}, "q"}};
    REQUIRE_THROWS_AS(make_flow({"0", "1", "2", "3"}, paths, bad),
                      associativity_error);
    flow::table good{{{"e1", "e2"}, "e12"},
                     {{"e2", "e3"}, "e23"},
                     {{"e12", "e3"}, "p"},
                     {{"e1", "e23"}, "p"}};
    flow x = make_flow({"0", "1", "2", "3"}, paths, good);
    REQUIRE(x.classes("0", "3").size() == 2);
  }
}

TEST_CASE("flow_from_set") {
  flow x = flow_from_set({"a", "b"});
  REQUIRE(x.states() == std::vector<std::string>{"a", "b"});
  REQUIRE(x.paths().empty());
  flow single = flow_from_set({"a"});
  REQUIRE(single.states().size() == 1);
}

TEST_CASE("flow_from_poset") {
  flow seg = flow_from_poset(chain(2));
  REQUIRE(seg.states().size() == 2);
  REQUIRE(seg.paths().size() == 1);
  REQUIRE(seg.has_path("(0,1)"));

  flow square = flow_from_poset(cube(2));
  REQUIRE(square.paths().size() == 5);
  REQUIRE(square.compose("((0,0),(0,1))", "((0,1),(1,1))") ==
          "((0,0),(1,1))");

  flow none = flow_from_poset(make_poset({"x", "y"}, {}));
  REQUIRE(none.paths().empty());
}

TEST_CASE("state_order inverts flow_from_poset") {
  std::vector<poset> tests{chain(2), chain(4), cube(2), cube(3),
                           product(chain(2), chain(3))};
  for (const auto& p : tests) REQUIRE(state_order(flow_from_poset(p)) == p);
}

TEST_CASE("globe") {
  flow g = globe({"u", "v"});
  REQUIRE(g.states() == std::vector<std::string>{"0", "1"});
  REQUIRE(g.paths().size() == 2);
  REQUIRE(g.compose_table().empty());

  flow one = globe({"u"});
  REQUIRE(oracle::flows_isomorphic_over_states(one, flow_from_poset(chain(2))));
}

TEST_CASE("restriction") {
  flow c3 = flow_from_poset(chain(3));
  flow r = restriction(c3, {"0", "2"});
  REQUIRE(r.states() == std::vector<std::string>{"0", "2"});
  REQUIRE(r.paths().size() == 1);
  REQUIRE(r.has_path("(0,2)"));

  REQUIRE(restriction(c3, c3.states()) == c3);
  REQUIRE(restriction(c3, {"1"}).paths().empty());
  REQUIRE_THROWS_AS(restriction(c3, {"0", "9"}), unknown_state);
}

TEST_CASE("restriction composes") {
  for (const auto& nf : corpus::all_flows()) {
    const flow& x = nf.value;
    if (x.states().size() < 3) continue;
    std::vector<std::string> a(x.states().begin(), x.states().end() - 1);
    std::vector<std::string> b(a.begin(), a.end() - 1);
    REQUIRE(restriction(restriction(x, a), b) == restriction(x, b));
  }
}

TEST_CASE("surrounded") {
  flow c3 = flow_from_poset(chain(3));
  REQUIRE(surrounded(c3, c3.states(), {"0", "2"}));
  REQUIRE(surrounded(c3, {"0", "2"}, {"0", "2"}));
  flow g = globe({"u"});
  REQUIRE_FALSE(surrounded(g, {"0", "1"}, {"0"}));
  REQUIRE(surrounded(g, {"0"}, {"1"}) == false);
}

TEST_CASE("surrounded is monotone in the second argument") {
  flow x = flow_from_poset(cube(2));
  std::vector<std::string> inner{"(0,0)", "(1,1)"};
  REQUIRE(surrounded(x, x.states(), inner));
  // Enlarging B keeps the property.
  std::vector<std::string> bigger{"(0,0)", "(0,1)", "(1,1)"};
  REQUIRE(surrounded(x, x.states(), bigger));
  REQUIRE(surrounded(x, x.states(), x.states()));
}

TEST_CASE("state_order rejects loops") {
  std::map<std::string, path_ends> paths{
      {"ab", {"a", "b"}}, {"ba", {"b", "a"}},
      {"aa", {"a", "a"}}, {"bb", {"b", "b"}}};
  flow::table t{{{"ab", "ba"}, "aa"}, {{"ba", "ab"}, "bb"},
                {{"aa", "ab"}, "ab"}, {{"ab", "bb"}, "ab"},
                {{"ba", "aa"}, "ba"}, {{"bb", "ba"}, "ba"},
                {{"aa", "aa"}, "aa"}, {{"bb", "bb"}, "bb"}};
  flow loopy = make_flow({"a", "b"}, paths, t);
  REQUIRE_FALSE(is_loopless(loopy));
  REQUIRE_THROWS_AS(state_order(loopy), loop_error);
  REQUIRE_THROWS_WITH(state_order(loopy), Catch::Matchers::ContainsSubstring("a"));
}

TEST_CASE("initial and final states") {
  flow x = flow_from_poset(cube(3));
  REQUIRE(initial_states(x) == std::vector<std::string>{"(0,0,0)"});
  REQUIRE(final_states(x) == std::vector<std::string>{"(1,1,1)"});

  flow d = flow_from_set({"a", "b"});
  REQUIRE(initial_states(d) == d.states());
  REQUIRE(final_states(d) == d.states());

  flow g = globe({"u", "v"});
  REQUIRE(initial_states(g) == std::vector<std::string>{"0"});
  REQUIRE(final_states(g) == std::vector<std::string>{"1"});
}

TEST_CASE("opposite is an involution") {
  for (const auto& nf : corpus::all_flows()) {
    const flow& x = nf.value;
    REQUIRE(opposite(opposite(x)) == x);
    flow op = opposite(x);
    for (const auto& [id, ends] : x.paths()) {
      REQUIRE(op.source(id) == ends.target);
      REQUIRE(op.target(id) == ends.source);
    }
  }
}

TEST_CASE("flow_morphism validation") {
  flow seg = flow_from_poset(chain(2));
  flow c3 = flow_from_poset(chain(3));

  flow_morphism skip(seg, c3, {{"0", "0"}, {"1", "2"}}, {{"(0,1)", "(0,2)"}});
  REQUIRE(skip.apply_state("1") == "2");
  REQUIRE(skip.apply_path("(0,1)") == "(0,2)");

  REQUIRE_THROWS_AS(
      flow_morphism(seg, c3, {{"0", "0"}}, {{"(0,1)", "(0,2)"}}),
      morphism_error);
  REQUIRE_THROWS_AS(
      flow_morphism(seg, c3, {{"0", "0"}, {"1", "1"}}, {{"(0,1)", "(0,2)"}}),
      morphism_error);
  REQUIRE_THROWS_AS(
      flow_morphism(seg, c3, {{"0", "0"}, {"1", "2"}}, {}),
      morphism_error);

  // Composition must be preserved.
  flow sq = flow_from_poset(cube(2));
  std::map<std::string, std::string> states{
      {"(0,0)", "0"}, {"(0,1)", "1"}, {"(1,0)", "1"}, {"(1,1)", "2"}};
  std::map<std::string, std::string> bad_paths{
      {"((0,0),(0,1))", "(0,1)"}, {"((0,0),(1,0))", "(0,1)"},
      {"((0,1),(1,1))", "(1,2)"}, {"((1,0),(1,1))", "(1,2)"},
      {"((0,0),(1,1))", "(0,1)"}};
  REQUIRE_THROWS_AS(flow_morphism(sq, c3, states, bad_paths), morphism_error);
  std::map<std::string, std::string> good_paths = bad_paths;
  good_paths["((0,0),(1,1))"] = "(0,2)";
  flow_morphism fold(sq, c3, states, good_paths);
  REQUIRE_FALSE(weak_s_homotopy_shadow(fold));
}

TEST_CASE("weak_s_homotopy_shadow") {
  flow sq = flow_from_poset(cube(2));
  flow_morphism id(sq, sq, [&] {
    std::map<std::string, std::string> m;
    for (const auto& s : sq.states()) m[s] = s;
    return m;
  }(), [&] {
    std::map<std::string, std::string> m;
    for (const auto& [id_, e] : sq.paths()) m[id_] = id_;
    return m;
  }());
  REQUIRE(weak_s_homotopy_shadow(id));

  flow_morphism relabel = corpus::cube2_relabel_iso();
  REQUIRE(weak_s_homotopy_shadow(relabel));

  flow seg = flow_from_poset(chain(2));
  flow c3 = flow_from_poset(chain(3));
  flow_morphism skip(seg, c3, {{"0", "0"}, {"1", "2"}}, {{"(0,1)", "(0,2)"}});
  REQUIRE_FALSE(weak_s_homotopy_shadow(skip));
}

TEST_CASE("corpus flows are associative") {
  for (const auto& nf : corpus::all_flows()) {
    const flow& x = nf.value;
    for (const auto& [pq, r] : x.compose_table()) {
      for (const auto& [id, e] : x.paths()) {
        if (x.target(r) == e.source) {
          // (p*q)*id == p*(q*id)
          REQUIRE(x.compose(r, id) ==
                  x.compose(pq.first, x.compose(pq.second, id)));
        }
      }
    }
  }
}
