#pragma once
// Finite (co)limits: (co)products, (co)equalizers, pullbacks, pushouts,
// kernel/cokernel pairs, codiagonals, initial/terminal objects, and the
// mediator-based pushout/pullback recognizers.

#include "mncat/diagram.hpp"

namespace mncat {

struct Coproduct {
  Obj obj;
  Morphism inj1, inj2;
};
// Throws OutsideCategoryError when the coproduct leaves the category (e.g.
// comma categories whose left functor does not preserve coproducts).
Coproduct coproduct(const Obj& a, const Obj& b);

struct QuotientResult {
  Obj obj;
  Morphism q;
};
// Quotient of x by the congruence generated by the given element pairs (one
// pair list per sort).  Throws OutsideCategoryError when the quotient falls
// outside the category (DAG cycle, broken tree order, unresolvable glue).
QuotientResult quotient(const Obj& x,
                        const std::vector<std::vector<std::pair<int, int>>>& pairs);

struct PushoutResult {
  Obj apex;
  Morphism inj1, inj2;  // inj1 : cod(f) -> apex, inj2 : cod(g) -> apex
};
// Pushout of the span  cod(f) <-f- dom -g-> cod(g); requires dom(f) == dom(g).
PushoutResult pushout(const Morphism& f, const Morphism& g);
// Mediator for the cocone (h : cod(f) -> T, k : cod(g) -> T); nullopt when no
// morphism mediates (the cocone must commute with the span to qualify).
std::optional<Morphism> pushout_mediator(const PushoutResult& po,
                                         const Morphism& h, const Morphism& k);

struct PullbackResult {
  Obj apex;
  Morphism proj1, proj2;  // proj1 : apex -> dom(f), proj2 : apex -> dom(g)
};
// Pullback of the cospan  dom(f) -f-> cod <-g- dom(g); requires cod(f) == cod(g).
PullbackResult pullback(const Morphism& f, const Morphism& g);
std::optional<Morphism> pullback_mediator(const PullbackResult& pb,
                                          const Morphism& h, const Morphism& k);

struct EqualizerResult {
  Obj obj;
  Morphism incl;  // obj -> dom(f)
};
EqualizerResult equalizer(const Morphism& f, const Morphism& g);
// Factor h : T -> dom(f) with f.h == g.h through the equalizer inclusion.
std::optional<Morphism> equalizer_factor(const EqualizerResult& eq,
                                         const Morphism& h);

struct CoequalizerResult {
  Obj obj;
  Morphism proj;  // cod(f) -> obj
};
CoequalizerResult coequalizer(const Morphism& f, const Morphism& g);
std::optional<Morphism> coequalizer_factor(const CoequalizerResult& ce,
                                           const Morphism& h);

struct KernelPairResult {
  Obj obj;              // K_f
  Morphism pr1, pr2;    // K_f -> dom(f)
  Morphism gamma;       // diagonal dom(f) -> K_f
};
KernelPairResult kernel_pair(const Morphism& f);

struct CokernelPairResult {
  Obj obj;              // Q_f
  Morphism c1, c2;      // cod(f) -> Q_f
};
CokernelPairResult cokernel_pair(const Morphism& f);

struct CodiagonalData {
  CokernelPairResult ck;
  Morphism upsilon;  // Q_f -> cod(f), fold of the cokernel pair
};
CodiagonalData codiagonal(const Morphism& f);

// Mediator-based recognizers: compute the canonical (co)limit of the
// (co)span and test whether the comparison morphism is an iso.  When the
// canonical construction leaves the category (OutsideCategoryError) the
// square is reported as not recognized (false).
bool is_pullback(const Square& s);
bool is_pushout(const Square& s);

Obj initial_object(const CategoryId& cat);
// Throws CategoryError when the category has no terminal object (DAG).
Obj terminal_object(const CategoryId& cat);

// f is a regular mono iff the comparison into the equalizer of its cokernel
// pair is an iso.  Propagates OutsideCategoryError from the cokernel pair.
bool is_regular_mono(const Morphism& f);

}  // namespace mncat
