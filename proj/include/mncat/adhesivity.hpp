#pragma once
// Bounded Van Kampen / stability checkers, N-(pre)adhesive morphism checks,
// the kernel-pair diagram, union factorization, and the sampled M,N-adhesivity
// report.

#include <cstdint>

#include "mncat/classes.hpp"
#include "mncat/limits.hpp"
#include "mncat/subobjects.hpp"

namespace mncat {

struct BoundedVerdict {
  bool holds = true;
  int bound = 0;
  std::string note;
  std::optional<Cube> cube_witness;
  std::optional<Square> square_witness;
  std::optional<std::pair<Morphism, Morphism>> pair_witness;

  static BoundedVerdict pass(int b) { return {true, b, "", {}, {}, {}}; }
  static BoundedVerdict fail(int b, std::string n) {
    BoundedVerdict v;
    v.holds = false;
    v.bound = b;
    v.note = std::move(n);
    return v;
  }
};

// Stability ("if" half of Van Kampen): every vertical w : W' -> W with W'
// enumerated up to `bound` pulls the pushout square back to a pushout.
// Pre: sq passes is_pushout (CategoryError otherwise).
BoundedVerdict check_stable(const Square& sq, int bound);

// Full bounded Van Kampen: stability plus the 'only if' half — every cube
// over sq with pullback back/left faces and pushout top face must have
// pullback front/right faces.  Fails carry a replayable cube.
BoundedVerdict check_van_kampen(const Square& sq, int bound);

struct CubeFaceReport {
  bool back_pullback = false, left_pullback = false;
  bool top_pushout = false, bottom_pushout = false;
  bool front_pullback = false, right_pullback = false;
};
// Re-run the face recognizers on a witness cube.
CubeFaceReport replay_cube(const Cube& c);

// m is N-preadhesive (bounded): pushouts of m along every n in N with
// codomain up to `bound` exist in-category, are stable, and are pullbacks.
BoundedVerdict is_N_preadhesive(const Morphism& m, const MorphismClass& N,
                                int bound);
// All pullbacks of m along arrows from objects up to `bound` are
// N-preadhesive.
BoundedVerdict is_N_adhesive(const Morphism& m, const MorphismClass& N,
                             int bound);

struct SquareVerdict {
  std::string label;
  Square square;
  bool pushout = false;
  bool pullback = false;
  BoundedVerdict stable;
  bool all() const { return pushout && pullback && stable.holds; }
};

struct KernelPairDiagram {
  Square sq;                    // the original M,N-pushout
  Obj K_n, K_q;
  Morphism x1, x2, gamma_n;     // kernel pair of n = sq.top
  Morphism y1, y2, gamma_q;     // kernel pair of q = sq.bottom
  Morphism k;                   // K_n -> K_q over m
  std::vector<SquareVerdict> squares;  // the six strip squares
  bool all_hold = false;
};
KernelPairDiagram kernel_pair_diagram(const Square& sq, int bound);

struct UnionFactorization {
  UnionDiagram diagram;
  CokernelPairResult ck;  // cokernel pair of u
  Morphism m_u;           // equalizer of the coprojections, E_u -> X
  Morphism e_u;           // induced U -> E_u
  bool e_epi = false, m_in_m_and_n = false, factors = false, e_iso = false;
};
// Factor the union mediator u as m_u . e_u through the equalizer of its
// cokernel pair.  The Lemma's hypotheses are caller-asserted; verdict flags
// report what actually holds on this instance.
UnionFactorization factor_union(const UnionDiagram& d, const MorphismClass& M,
                                const MorphismClass& N);

struct AdhesivityReport {
  CategoryId cat;
  std::string m_class, n_class;
  int samples_requested = 0;
  int bound = 0;
  std::uint64_t seed = 0;
  int base_bound = 2;

  int pushouts_sampled = 0;
  int pullbacks_sampled = 0;
  int skipped_outside = 0;  // sampled spans whose pushout left the category
  int vk_failures = 0;
  int pullback_prop_failures = 0;  // M,N-pushout not a pullback
  int mono_leg_failures = 0;       // pushout leg of a mono not mono
  int split_leg_failures = 0;      // pushout leg of a split mono not split
  int pullback_existence_failures = 0;

  bool all_hold = true;
  std::vector<std::string> failures;
  std::optional<Square> failing_square;
  std::optional<Cube> failing_cube;
};

// Seeded sampling report: M-pullback existence, M,N-pushout existence,
// Van Kampen on each sampled pushout, plus the pushouts-are-pullbacks and
// leg-mono properties, deterministic under (seed, sample_count, bound).
AdhesivityReport check_MN_adhesive(const CategoryId& cat,
                                   const MorphismClass& M,
                                   const MorphismClass& N, int sample_count,
                                   int bound, std::uint64_t seed);

// Sample M,N-pushout squares (top in N, left in M) over objects enumerated up
// to base_bound; spans whose pushout leaves the category are skipped and
// counted.  Deterministic under seed.
std::vector<Square> sample_MN_pushouts(const CategoryId& cat,
                                       const MorphismClass& M,
                                       const MorphismClass& N, int count,
                                       std::uint64_t seed, int base_bound = 2,
                                       int* skipped = nullptr);

}  // namespace mncat
