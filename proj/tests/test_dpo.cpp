#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mncat/categories.hpp"
#include "mncat/dpo.hpp"

using namespace mncat;

TEST_CASE("make_rule validates the left leg") {
  Obj v = make_sgraph(1, {});
  Obj e = make_sgraph(2, {{0, 1}});
  Morphism incl{v, e, {{0}}};
  Rule r = make_rule(incl, identity(v), MorphismClass::mono());
  CHECK(r.K == v);
  CHECK(r.L == e);
  CHECK(r.R == v);
  // a non-mono left leg is rejected for M = mono
  Obj two = make_sgraph(2, {});
  Morphism fold{two, v, {{0, 0}}};
  CHECK_THROWS_AS(make_rule(fold, identity(two), MorphismClass::mono()),
                  CategoryError);
}

TEST_CASE("find_matches counts") {
  auto mono = MorphismClass::mono();
  // single vertex into two vertices: 2 matches
  Obj v = make_sgraph(1, {});
  Rule rv = make_rule(identity(v), identity(v), mono);
  CHECK(find_matches(rv, make_sgraph(2, {}), mono).size() == 2);
  // single edge into the 2-edge path: 2 mono matches
  Obj e = make_sgraph(2, {{0, 1}});
  Rule re = make_rule(identity(e), identity(e), mono);
  Obj p = make_sgraph(3, {{0, 1}, {1, 2}});
  CHECK(find_matches(re, p, mono).size() == 2);
  // Reg restricts to induced embeddings: the edge is induced in the path,
  // but the discrete pair is not
  Obj two = make_sgraph(2, {});
  Rule rt = make_rule(identity(two), identity(two), mono);
  auto mono_matches = find_matches(rt, e, mono);
  auto reg_matches = find_matches(rt, e, MorphismClass::reg());
  CHECK(reg_matches.size() < mono_matches.size());
  CHECK(reg_matches.empty());
}

TEST_CASE("pushout_complement: identity rule keeps the host") {
  Obj p = make_sgraph(3, {{0, 1}, {1, 2}});
  Obj e = make_sgraph(2, {{0, 1}});
  Morphism match{e, p, {{0, 1}}};
  ComplementResult pc = pushout_complement(identity(e), match);
  REQUIRE(pc.ok);
  CHECK(pc.D == p);
  CHECK(pc.d == identity(p));
}

TEST_CASE("delete-edge rule on the path removes exactly that edge") {
  // K keeps the two endpoints, L is the edge
  Obj e = make_sgraph(2, {{0, 1}});
  Obj two = make_sgraph(2, {});
  Morphism l{two, e, {{0, 1}}};
  Rule rule = make_rule(l, identity(two), MorphismClass::mono());
  Obj p = make_sgraph(3, {{0, 1}, {1, 2}});
  auto matches = find_matches(rule, p, MorphismClass::mono());
  REQUIRE(matches.size() == 2);
  for (const Morphism& m : matches) {
    RewriteStep st = rewrite(rule, m);
    CHECK(st.result.n == 3);
    CHECK(st.result.pairs.size() == 1);
    CHECK(is_pushout(st.left));
    CHECK(is_pushout(st.right));
    CHECK(is_pullback(st.left));  // left leg is mono
  }
}

TEST_CASE("vertex deletion with an incident edge dangles") {
  Obj v = make_sgraph(1, {});
  Obj empty = make_sgraph(0, {});
  Morphism l{empty, v, {{}}};
  Obj e = make_sgraph(2, {{0, 1}});
  // match the source vertex of the edge; deleting it would dangle
  Morphism match{v, e, {{0}}};
  ComplementResult pc = pushout_complement(l, match);
  CHECK_FALSE(pc.ok);
  CHECK(pc.reason.find("dangling") != std::string::npos);
  CHECK_THROWS_AS(rewrite(make_rule(l, identity(empty), MorphismClass::mono()),
                          match),
                  CategoryError);
}

TEST_CASE("multigraph dangling detection uses the edge sort") {
  Obj v = make_graph(1, {}, {});
  Obj empty = make_graph(0, {}, {});
  Morphism l{empty, v, {{}, {}}};
  Obj e = make_graph(2, {0}, {1});
  Morphism match{v, e, {{1}, {}}};
  ComplementResult pc = pushout_complement(l, match);
  CHECK_FALSE(pc.ok);
  CHECK(pc.reason.find("dangling") != std::string::npos);
  // deleting an isolated vertex is fine
  Obj ev = make_graph(3, {0}, {1});
  Morphism match2{v, ev, {{2}, {}}};
  ComplementResult pc2 = pushout_complement(l, match2);
  REQUIRE(pc2.ok);
  CHECK(pc2.D.n == 2);
  CHECK(pc2.D.edge_count == 1);
}

TEST_CASE("add-edge rule on an edgeless pair") {
  Obj two = make_sgraph(2, {});
  Obj e = make_sgraph(2, {{0, 1}});
  Morphism r{two, e, {{0, 1}}};
  Rule rule = make_rule(identity(two), r, MorphismClass::mono());
  Obj host = make_sgraph(2, {});
  auto matches = find_matches(rule, host, MorphismClass::mono());
  CHECK(matches.size() == 2);
  RewriteStep st = rewrite(rule, matches.front());
  CHECK(st.result.n == 2);
  CHECK(st.result.pairs.size() == 1);
}

TEST_CASE("identity rule is identity up to iso") {
  auto mono = MorphismClass::mono();
  for (const Obj& g : enumerate_objects(CategoryId::sgraph(), 2)) {
    Rule rule = make_rule(identity(g), identity(g), mono);
    for (const Morphism& m : find_matches(rule, g, mono)) {
      RewriteStep st = rewrite(rule, m);
      CHECK(isomorphic(st.result, g));
    }
  }
}

TEST_CASE("all_complements agrees with the constructive complement") {
  Obj two = make_sgraph(2, {});
  Obj e = make_sgraph(2, {{0, 1}});
  Morphism l{two, e, {{0, 1}}};
  Obj p = make_sgraph(3, {{0, 1}, {1, 2}});
  Morphism match{e, p, {{0, 1}}};
  ComplementResult pc = pushout_complement(l, match);
  REQUIRE(pc.ok);
  auto all = all_complements(l, match, 3);
  bool found = false;
  for (const ComplementResult& c : all)
    if (isomorphic(c.D, pc.D)) found = true;
  CHECK(found);
  CHECK(!all.empty());
}

TEST_CASE("DPO in DAG respects the category: rewiring cannot close a cycle") {
  // rule that adds an edge 1 -> 0 to a discrete pair
  Obj two = make_dag(2, {}, {});
  Obj back = make_dag(2, {1}, {0});
  Morphism r{two, back, {{0, 1}, {}}};
  Rule rule = make_rule(identity(two), r, MorphismClass::mono());
  // host already has 0 -> 1; the rewrite pushout would create a 2-cycle
  Obj host = make_dag(2, {0}, {1});
  Morphism match{two, host, {{0, 1}, {}}};
  CHECK_THROWS_AS(rewrite(rule, match), OutsideCategoryError);
}
