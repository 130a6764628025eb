#pragma once
// Morphism classes M and N as decidable predicates, plus bounded validation
// of the preadhesive-structure axioms.

#include <memory>
#include <string>
#include <vector>

#include "mncat/diagram.hpp"

namespace mncat {

struct MorphismClass {
  enum class Kind {
    Mor,           // everything
    Mono,          // componentwise injective
    Reg,           // regular mono (equalizer of cokernel pair comparison)
    Split,         // split mono (exhaustive retraction search)
    Dcl,           // downward closed mono (Graph/DAG/SGraph); dcl_d is Dcl on DAG
    Intersection,  // conjunction of parts
    Pairwise,      // componentwise for Product/Comma morphisms
  };

  Kind kind = Kind::Mor;
  std::vector<MorphismClass> parts;

  static MorphismClass mor() { return {Kind::Mor, {}}; }
  static MorphismClass mono() { return {Kind::Mono, {}}; }
  static MorphismClass reg() { return {Kind::Reg, {}}; }
  static MorphismClass split() { return {Kind::Split, {}}; }
  static MorphismClass dcl() { return {Kind::Dcl, {}}; }
  static MorphismClass intersection(MorphismClass a, MorphismClass b) {
    return {Kind::Intersection, {std::move(a), std::move(b)}};
  }
  static MorphismClass pairwise(MorphismClass first, MorphismClass second) {
    return {Kind::Pairwise, {std::move(first), std::move(second)}};
  }

  // May throw OutsideCategoryError for Reg in categories whose cokernel pairs
  // can leave the category (tree orders).
  bool member(const Morphism& f) const;
  std::string name() const;
};

// Parse "mono", "reg", "split", "dcl", "dcl-d", "mor", "a&b" (intersection),
// "a*b" (componentwise pair).  Throws CategoryError on junk.
MorphismClass parse_class(const std::string& token);

struct AxiomVerdict {
  std::string axiom;
  bool holds = true;
  std::string witness;  // empty when holds
};

struct PreadhesiveReport {
  int bound = 0;
  std::vector<AxiomVerdict> axioms;
  bool all_hold() const {
    for (const auto& a : axioms)
      if (!a.holds) return false;
    return true;
  }
};

// Exhaustive check of the preadhesive axioms over all morphisms between
// objects enumerated up to sample_bound: isos in both classes; closure under
// composition and decomposition; N closed under M-decomposition; stability of
// both classes under pullbacks and under (existing) pushouts.
PreadhesiveReport validate_preadhesive(const CategoryId& cat,
                                       const MorphismClass& M,
                                       const MorphismClass& N,
                                       int sample_bound);

}  // namespace mncat
