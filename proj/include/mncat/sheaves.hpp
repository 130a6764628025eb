#pragma once
// Finite sites for the M,N-coverage, presheaves on them, and the three
// sheaf-condition checkers (amalgamation / pullback-image / mediator), which
// are cross-validated against each other in the tests.

#include <cstdint>

#include "mncat/classes.hpp"
#include "mncat/limits.hpp"

namespace mncat {

// A covering family {p, q} of `target`, exhibited by an M,N-pushout square
// witness = {top: n, left: m, right: p, bottom: q}.  The kernel pair of q is
// carried by site object kq_index with projections y1, y2 (needed by the
// mediator-style checker).
struct CoveringFamily {
  int target = -1;         // index of the covered object X
  int z_index = -1;        // dom(p)
  int y_index = -1;        // dom(q)
  int n_index = -1;        // common dom of the span (m, n)
  Morphism p, q;
  Square witness;
  int kq_index = -1;
  Morphism y1, y2;         // K_q -> Y, transported onto the site object
};

struct FiniteSite {
  CategoryId cat;
  std::vector<Obj> objects;
  // homs[i][j]: all morphisms objects[i] -> objects[j], deterministic order
  std::vector<std::vector<std::vector<Morphism>>> homs;
  std::vector<std::vector<CoveringFamily>> covers;  // per covered object
  bool coverage_ok = true;
  std::string coverage_note;

  int object_index(const Obj& x) const;               // exact match or -1
  int arrow_index(int i, int j, const Morphism& f) const;  // position or -1
  int cover_count() const;
};

// Enumerate all M,N-pushout squares whose four corners land (up to iso) in
// the object list, register the resulting {p, q} covers, auto-extend the
// object list with the kernel-pair carriers the mediator checker needs, and
// report whether the coverage refinement axiom holds within the site.
FiniteSite build_site(const CategoryId& cat, std::vector<Obj> objects,
                      const MorphismClass& M, const MorphismClass& N);

// Contravariant Set-valued functor on the site.  action[i][j][k] is the image
// of the k-th arrow f : objects[i] -> objects[j], i.e. the function
// F(f) : F(objects[j]) -> F(objects[i]) as a value table.
struct FinitePresheaf {
  std::vector<int> sizes;
  std::vector<std::vector<std::vector<std::vector<int>>>> action;
};

// F(id) = id and F(g.f) = F(f).F(g), exhaustively over the site.
bool presheaf_functorial(const FinitePresheaf& F, const FiniteSite& site,
                         std::string* why = nullptr);

struct SheafVerdict {
  bool holds = true;
  std::string counterexample;
};

// Unique-amalgamation sheaf condition, with compatibility quantified over all
// pairs of site arrows equalizing the cover legs.
SheafVerdict is_sheaf_amalgamation(const FinitePresheaf& F,
                                   const FiniteSite& site);
// F sends every registered witness M,N-pushout to a pullback of finite sets.
SheafVerdict is_sheaf_pullback(const FinitePresheaf& F, const FiniteSite& site);
// Unique mediator through the F(K_q)-equalizer constraint; S ranges over
// singletons (elementwise checking suffices for finite sets).
SheafVerdict is_sheaf_mediator(const FinitePresheaf& F, const FiniteSite& site);

// hom(-, X) restricted to the site; throws CategoryError when X is not a site
// object.
FinitePresheaf representable(const Obj& X, const FiniteSite& site);
// All value-sets singletons.
FinitePresheaf terminal_presheaf(const FiniteSite& site);

// Every functorial presheaf with all value-sets of size <= max_size.
// Exhaustive; throws CategoryError when the raw candidate count is too large.
std::vector<FinitePresheaf> enumerate_presheaves(const FiniteSite& site,
                                                 int max_size);

// Seeded functorial-by-construction presheaf: a product of random
// representables and a constant, then a random action-closed sub-presheaf,
// then a quotient by a random action-compatible congruence.
FinitePresheaf random_presheaf(const FiniteSite& site, std::uint64_t seed);

}  // namespace mncat
