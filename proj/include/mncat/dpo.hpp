#pragma once
// Double-pushout rewriting on top of the verified pushout machinery: rules
// with M-legs, matches drawn from a class N, deletion-then-verification
// pushout complements.

#include "mncat/classes.hpp"
#include "mncat/limits.hpp"

namespace mncat {

struct Rule {
  Obj L, K, R;
  Morphism l;  // K -> L
  Morphism r;  // K -> R
};

// Checks shapes and that l lands in M under the active structure.
Rule make_rule(const Morphism& l, const Morphism& r, const MorphismClass& M);

// All morphisms L -> G belonging to N, in hom-set order.
std::vector<Morphism> find_matches(const Rule& rule, const Obj& G,
                                   const MorphismClass& N);

struct ComplementResult {
  bool ok = false;
  Obj D;
  Morphism k;  // K -> D
  Morphism d;  // D -> G
  std::string reason;  // defect description when !ok
};

// Candidate D = G minus (g(L) \ g(l(K))) with induced structure, verified by
// is_pushout on the square {top l, left k, right g, bottom d}.  Failure
// returns ok=false with the defect (dangling edge, failed verification, ...).
ComplementResult pushout_complement(const Morphism& l, const Morphism& g);

struct RewriteStep {
  Morphism match;       // L -> G
  Morphism complement;  // D -> G
  Square left, right;
  Obj result;           // H, apex of the right square
};

// DPO step at `match`; throws CategoryError when no complement exists.
RewriteStep rewrite(const Rule& rule, const Morphism& match);

// Debug brute force: every (D, k, d) with D enumerated up to max_bound whose
// square with (l, g) is a pushout.
std::vector<ComplementResult> all_complements(const Morphism& l,
                                              const Morphism& g,
                                              int max_bound);

}  // namespace mncat
