#pragma once
// Concrete category services: validation, hom-set enumeration, iso-reduced
// object enumeration, iso search, automorphisms.

#include <string>
#include <vector>

#include "mncat/core.hpp"

namespace mncat {

// Empty vector means valid; otherwise a list of problems.
std::vector<std::string> validate_object(const Obj& x);
std::vector<std::string> validate_morphism(const Morphism& f);

// All morphisms A -> B in a fixed deterministic (odometer) order.  Throws
// CategoryError when the raw search space exceeds an internal ceiling.
std::vector<Morphism> hom_set(const Obj& a, const Obj& b);

// One representative per iso class with at most `bound` elements in every
// sort, deterministically ordered.  Results are cached per (category, bound).
// Throws CategoryError when the raw candidate space exceeds the ceiling.
const std::vector<Obj>& enumerate_objects(const CategoryId& cat, int bound);

std::optional<Morphism> find_iso(const Obj& a, const Obj& b);
bool isomorphic(const Obj& a, const Obj& b);

// Cached per object value.
const std::vector<Morphism>& automorphisms(const Obj& x);

// Stable string key for dedup purposes (maps only; endpoints assumed fixed).
std::string morphism_key(const Morphism& f);

// Representatives of hom(a, b) up to precomposition with Aut(a)
// (keep w iff w is the key-minimal element of { w . phi : phi in Aut(a) }).
std::vector<Morphism> hom_set_mod_precompose(const Obj& a, const Obj& b);
// Up to postcomposition with Aut(b).
std::vector<Morphism> hom_set_mod_postcompose(const Obj& a, const Obj& b);

}  // namespace mncat
