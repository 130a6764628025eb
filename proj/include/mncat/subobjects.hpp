#pragma once
// Subobject posets over a fixed carrier, unions via pushout-over-pullback,
// and the poset-scan join oracle.

#include "mncat/classes.hpp"
#include "mncat/limits.hpp"

namespace mncat {

// Raised when a construction's paper-side hypotheses fail on concrete data
// (e.g. the union mediator is not mono).
struct HypothesisError : CategoryError {
  std::string witness;
  HypothesisError(const std::string& msg, std::string w)
      : CategoryError(msg + " [" + w + "]"), witness(std::move(w)) {}
};

// Image signature of a mono into its codomain: one mask per sort (selected
// elements) plus structure masks (SGraph edge set, Tree order pairs) that the
// sorts alone do not capture.  Two monos represent the same subobject iff
// their signatures coincide; the subobject order is slotwise containment.
std::vector<std::vector<char>> sub_signature(const Morphism& m);

struct SubobjectLattice {
  Obj carrier;
  std::vector<Morphism> elems;  // canonical inclusions, enumeration order
  std::vector<std::vector<std::vector<char>>> sigs;

  bool leq(int i, int j) const;
  // Index of the class of an arbitrary mono into the carrier, if represented.
  std::optional<int> find(const Morphism& m) const;
  int size() const { return static_cast<int>(elems.size()); }
};

// All subobjects of X as canonical substructure inclusions; with a filter,
// only those whose inclusion belongs to the class.
SubobjectLattice subobject_poset(const Obj& x,
                                 const MorphismClass* filter = nullptr);

struct UnionDiagram {
  Morphism m, n;        // the two subobjects of the common codomain X
  PullbackResult pb;    // P with projections to dom(m), dom(n)
  PushoutResult po;     // U with injections from dom(m), dom(n)
  Morphism u;           // mediator U -> X, proven mono
};

// Prop-style union: pull back, push out, mediate; throws HypothesisError when
// the mediator is not mono (then [m] v [n] is not computed by this recipe).
UnionDiagram union_via_pushout(const Morphism& m, const Morphism& n);

// Least upper bound by scanning the whole poset; nullopt when no least upper
// bound exists within the lattice's element set.
std::optional<int> join_oracle(int i, int j, const SubobjectLattice& lat);
std::optional<int> join_oracle(const Morphism& m, const Morphism& n,
                               const SubobjectLattice& lat);

}  // namespace mncat
