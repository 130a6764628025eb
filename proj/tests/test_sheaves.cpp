#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mncat/categories.hpp"
#include "mncat/sheaves.hpp"

using namespace mncat;

namespace {

// the 3-object SGraph site: vertex, edge, 2-edge path
FiniteSite path_site() {
  std::vector<Obj> objs = {make_sgraph(1, {}), make_sgraph(2, {{0, 1}}),
                           make_sgraph(3, {{0, 1}, {1, 2}})};
  return build_site(CategoryId::sgraph(), objs, MorphismClass::reg(),
                    MorphismClass::mono());
}

}  // namespace

TEST_CASE("build_site rejects empty input and mixed categories") {
  CHECK_THROWS_AS(build_site(CategoryId::sgraph(), {}, MorphismClass::reg(),
                             MorphismClass::mono()),
                  CategoryError);
  CHECK_THROWS_AS(build_site(CategoryId::sgraph(), {make_finset(1)},
                             MorphismClass::reg(), MorphismClass::mono()),
                  CategoryError);
}

TEST_CASE("FinSet site: the coproduct cover of the 2-element set") {
  std::vector<Obj> objs = {make_finset(0), make_finset(1), make_finset(2)};
  FiniteSite site = build_site(CategoryId::finset(), objs,
                               MorphismClass::mono(), MorphismClass::mor());
  bool coproduct_cover = false;
  for (const CoveringFamily& c : site.covers[2])
    if (c.witness.top.dom.n == 0 && c.p.dom.n == 1 && c.q.dom.n == 1 &&
        c.p.maps[0] != c.q.maps[0])
      coproduct_cover = true;
  CHECK(coproduct_cover);
}

TEST_CASE("SGraph path site registers the edge-gluing cover") {
  FiniteSite site = path_site();
  // K_q carriers were found among the existing objects (q is mono)
  CHECK(site.objects.size() == 3);
  REQUIRE(site.covers.size() == 3);
  CHECK(!site.covers[2].empty());  // the path is covered
  bool edge_gluing = false;
  for (const CoveringFamily& c : site.covers[2]) {
    CHECK(is_pushout(c.witness));
    CHECK(MorphismClass::reg().member(c.witness.left));
    CHECK(MorphismClass::mono().member(c.witness.top));
    CHECK(c.kq_index >= 0);
    // the genuine edge gluing: both legs are the two edge embeddings
    if (c.z_index == 1 && c.y_index == 1 && c.n_index == 0) edge_gluing = true;
  }
  CHECK(edge_gluing);
  CHECK(site.coverage_ok);
}

TEST_CASE("representables and the terminal presheaf are sheaves") {
  FiniteSite site = path_site();
  for (const Obj& x : site.objects) {
    FinitePresheaf F = representable(x, site);
    CHECK(presheaf_functorial(F, site));
    CHECK(is_sheaf_amalgamation(F, site).holds);
    CHECK(is_sheaf_pullback(F, site).holds);
    CHECK(is_sheaf_mediator(F, site).holds);
  }
  FinitePresheaf T = terminal_presheaf(site);
  CHECK(is_sheaf_amalgamation(T, site).holds);
  CHECK(is_sheaf_pullback(T, site).holds);
  CHECK(is_sheaf_mediator(T, site).holds);
  CHECK_THROWS_AS(representable(make_finset(1), site), CategoryError);
}

TEST_CASE("the three sheaf conditions agree on all small presheaves") {
  FiniteSite site = path_site();
  auto all = enumerate_presheaves(site, 2);
  CHECK(all.size() > 10);
  int sheaves = 0, non_sheaves = 0;
  for (const FinitePresheaf& F : all) {
    bool am = is_sheaf_amalgamation(F, site).holds;
    bool pb = is_sheaf_pullback(F, site).holds;
    bool md = is_sheaf_mediator(F, site).holds;
    CHECK(am == pb);
    CHECK(pb == md);
    (am ? sheaves : non_sheaves)++;
  }
  CHECK(sheaves > 0);
  CHECK(non_sheaves > 0);  // the exhaustive search finds genuine non-sheaves
}

TEST_CASE("random presheaves are functorial and the checkers agree") {
  FiniteSite site = path_site();
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    FinitePresheaf F = random_presheaf(site, seed);
    std::string why;
    REQUIRE_MESSAGE(presheaf_functorial(F, site, &why), why);
    bool am = is_sheaf_amalgamation(F, site).holds;
    bool pb = is_sheaf_pullback(F, site).holds;
    bool md = is_sheaf_mediator(F, site).holds;
    CHECK(am == pb);
    CHECK(pb == md);
  }
}

TEST_CASE("a constructed non-sheaf fails all three with counterexamples") {
  FiniteSite site = path_site();
  // start from a representable and break the value set at the covered path
  FinitePresheaf F = representable(site.objects[2], site);
  // doubling F(path) without fixing the actions is caught as non-functorial;
  // instead drop the amalgamation by shrinking F(path) to the empty set is
  // also non-functorial, so search the exhaustive pool for a witness instead
  bool found = false;
  for (const FinitePresheaf& G : enumerate_presheaves(site, 2)) {
    SheafVerdict am = is_sheaf_amalgamation(G, site);
    if (am.holds) continue;
    SheafVerdict pb = is_sheaf_pullback(G, site);
    SheafVerdict md = is_sheaf_mediator(G, site);
    CHECK_FALSE(pb.holds);
    CHECK_FALSE(md.holds);
    CHECK_FALSE(am.counterexample.empty());
    CHECK_FALSE(pb.counterexample.empty());
    found = true;
    break;
  }
  CHECK(found);
  (void)F;
}

TEST_CASE("presheaf_functorial rejects broken actions") {
  FiniteSite site = path_site();
  FinitePresheaf F = terminal_presheaf(site);
  F.sizes[0] = 2;  // value tables now have the wrong shape
  std::string why;
  CHECK_FALSE(presheaf_functorial(F, site, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("Yoneda at site scale: naturals y(A) -> y(B) biject with hom(A,B)") {
  FiniteSite site = path_site();
  int no = static_cast<int>(site.objects.size());
  for (int ai = 0; ai < no; ++ai)
    for (int bi = 0; bi < no; ++bi) {
      FinitePresheaf FA = representable(site.objects[ai], site);
      FinitePresheaf FB = representable(site.objects[bi], site);
      // enumerate natural transformations FA -> FB componentwise
      // components: per object i a function FA(i) -> FB(i)
      std::vector<std::vector<int>> comp(no);
      for (int i = 0; i < no; ++i) comp[i].assign(FA.sizes[i], 0);
      long long count = 0;
      bool more = true;
      // quick feasibility: empty component with nonempty source
      for (int i = 0; i < no; ++i)
        if (FA.sizes[i] > 0 && FB.sizes[i] == 0) more = false;
      while (more) {
        bool natural = true;
        for (int i = 0; i < no && natural; ++i)
          for (int j = 0; j < no && natural; ++j)
            for (size_t k = 0; k < site.homs[i][j].size() && natural; ++k)
              for (int a = 0; a < FA.sizes[j]; ++a)
                if (comp[i][FA.action[i][j][k][a]] !=
                    FB.action[i][j][k][comp[j][a]]) {
                  natural = false;
                  break;
                }
        if (natural) ++count;
        more = false;
        for (int i = no - 1; i >= 0 && !more; --i)
          for (int a = FA.sizes[i] - 1; a >= 0; --a) {
            if (++comp[i][a] < FB.sizes[i]) {
              more = true;
              break;
            }
            comp[i][a] = 0;
          }
      }
      CHECK(count == (long long)hom_set(site.objects[ai], site.objects[bi]).size());
    }
}
