// Acceptance run: one line per criterion, PASS/FAIL, with timings.
// Exit code 0 when every criterion passes, except that the union-iso clause
// of criterion 6 is a documented expected-fail (see notes in the README);
// an expected-fail there does not flip the exit code.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mncat/adhesivity.hpp"
#include "mncat/categories.hpp"
#include "mncat/dpo.hpp"
#include "mncat/sheaves.hpp"

using namespace mncat;
using Clock = std::chrono::steady_clock;

namespace {

bool g_all_ok = true;

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int crit, bool ok, const std::string& note, double secs,
            bool expected_fail = false) {
  if (!ok && !expected_fail) g_all_ok = false;
  std::printf("criterion %d: %s%s — %s (%.1fs)\n", crit, ok ? "PASS" : "FAIL",
              (!ok && expected_fail) ? " (documented expected-fail)" : "",
              note.c_str(), secs);
  std::fflush(stdout);
}

Obj random_sgraph(std::mt19937_64& rng, int max_n) {
  int n = 1 + static_cast<int>(rng() % max_n);
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (rng() % 3 == 0) es.push_back({u, v});
  return make_sgraph(n, es);
}

// 1. union_via_pushout vs the poset-scan join oracle on random hosts
void criterion1() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  int done = 0, agreed = 0;
  while (done < 100) {
    Obj x = random_sgraph(rng, 4);
    SubobjectLattice lat = subobject_poset(x);
    if (lat.size() < 2) continue;
    // m regular, n any mono
    std::vector<int> regs;
    for (int i = 0; i < lat.size(); ++i)
      if (is_regular_mono(lat.elems[i])) regs.push_back(i);
    if (regs.empty()) continue;
    int i = regs[rng() % regs.size()];
    int j = static_cast<int>(rng() % lat.size());
    UnionDiagram d = union_via_pushout(lat.elems[i], lat.elems[j]);
    auto via_pushout = lat.find(d.u);
    auto via_oracle = join_oracle(i, j, lat);
    ++done;
    if (via_pushout && via_oracle && *via_pushout == *via_oracle) ++agreed;
  }
  report(1, agreed == done,
         std::to_string(agreed) + "/" + std::to_string(done) +
             " random unions match the join oracle",
         secs_since(t0));
}

// 2. sampled M,N-pushouts are pullbacks in (SGraph,Reg,Mono) and (DAG,Dcl,Mono)
void criterion2() {
  auto t0 = Clock::now();
  int ok = 0, total = 0;
  struct Cfg {
    CategoryId cat;
    MorphismClass M, N;
    std::uint64_t seed;
  };
  std::vector<Cfg> cfgs = {
      {CategoryId::sgraph(), MorphismClass::reg(), MorphismClass::mono(), 21},
      {CategoryId::dag(), MorphismClass::dcl(), MorphismClass::mono(), 22}};
  for (const Cfg& c : cfgs) {
    auto squares = sample_MN_pushouts(c.cat, c.M, c.N, 100, c.seed, 2);
    for (const Square& sq : squares) {
      ++total;
      if (is_pullback(sq)) ++ok;
    }
  }
  report(2, ok == total && total >= 200,
         std::to_string(ok) + "/" + std::to_string(total) +
             " sampled M,N-pushouts are pullbacks",
         secs_since(t0));
}

// 3. check_MN_adhesive holds on the five example structures at bound 3
void criterion3() {
  auto t0 = Clock::now();
  struct Cfg {
    CategoryId cat;
    MorphismClass M, N;
    const char* name;
  };
  std::vector<Cfg> cfgs = {
      {CategoryId::sgraph(), MorphismClass::reg(), MorphismClass::mono(),
       "(SGraph,Reg,Mono)"},
      {CategoryId::sgraph(), MorphismClass::mono(), MorphismClass::reg(),
       "(SGraph,Mono,Reg)"},
      {CategoryId::dag(), MorphismClass::dcl(), MorphismClass::mono(),
       "(DAG,Dcl,Mono)"},
      {CategoryId::graph(), MorphismClass::mono(), MorphismClass::mor(),
       "(Graph,Mono,Mor)"},
      {CategoryId::finset(), MorphismClass::mono(), MorphismClass::mor(),
       "(FinSet,Mono,Mor)"}};
  bool ok = true;
  std::string note;
  for (const Cfg& c : cfgs) {
    auto tc = Clock::now();
    AdhesivityReport rep = check_MN_adhesive(c.cat, c.M, c.N, 25, 3, 31);
    bool here = rep.all_hold && rep.pushouts_sampled >= 25;
    if (!here) ok = false;
    note += std::string(c.name) + (here ? " holds" : " FAILS") + " (" +
            std::to_string(rep.pushouts_sampled) + " squares, " +
            std::to_string((int)secs_since(tc)) + "s); ";
  }
  report(3, ok, note, secs_since(t0));
}

// 4. FinSet VK failure along non-monos, with a replayable cube, stable square
void criterion4() {
  auto t0 = Clock::now();
  bool found = false;
  std::string note = "no failing square found";
  std::vector<Obj> objs;
  for (int n = 0; n <= 3; ++n) objs.push_back(make_finset(n));
  // ascending total size so the minimal witness surfaces first
  for (int total = 0; total <= 9 && !found; ++total)
    for (int an = 0; an <= 3 && !found; ++an)
      for (int bn = 0; bn <= 3 && !found; ++bn)
        for (int cn = 0; cn <= 3 && !found; ++cn) {
          if (an + bn + cn != total) continue;
          for (const Morphism& f : hom_set(objs[an], objs[bn])) {
            if (found) break;
            if (is_componentwise_injective(f)) continue;
            for (const Morphism& g : hom_set(objs[an], objs[cn])) {
              if (is_componentwise_injective(g)) continue;
              PushoutResult po = pushout(f, g);
              Square sq{f, g, po.inj1, po.inj2};
              BoundedVerdict vk = check_van_kampen(sq, 2);
              if (vk.holds) continue;
              if (!vk.cube_witness) continue;
              CubeFaceReport rep = replay_cube(*vk.cube_witness);
              bool replayed = rep.back_pullback && rep.left_pullback &&
                              rep.top_pushout && rep.bottom_pushout &&
                              !(rep.front_pullback && rep.right_pullback);
              BoundedVerdict st = check_stable(sq, 2);
              if (replayed && st.holds) {
                found = true;
                note = "VK fails on a pushout along two non-monos over a " +
                       std::to_string(an) + "-element apex; cube replays and "
                       "the square is stable";
                break;
              }
            }
          }
        }
  report(4, found, note, secs_since(t0));
}

// 5. kernel-pair diagram: all six strip squares on sampled (SGraph,Reg,Mono)
void criterion5() {
  auto t0 = Clock::now();
  auto squares = sample_MN_pushouts(CategoryId::sgraph(), MorphismClass::reg(),
                                    MorphismClass::mono(), 25, 51, 2);
  int ok = 0;
  for (const Square& sq : squares) {
    KernelPairDiagram d = kernel_pair_diagram(sq, 2);
    if (d.all_hold && d.squares.size() == 6) ++ok;
  }
  report(5, ok == 25,
         std::to_string(ok) + "/25 diagrams verify all six squares as stable "
         "pushouts and pullbacks",
         secs_since(t0));
}

// 6. union factorization clauses on sampled (SGraph,Reg,Mono) unions
void criterion6() {
  auto t0 = Clock::now();
  auto reg = MorphismClass::reg();
  auto mono = MorphismClass::mono();
  std::vector<UnionDiagram> unions;
  // canonical fixture: the two endpoint subobjects of one edge
  {
    Obj e = make_sgraph(2, {{0, 1}});
    Obj v = make_sgraph(1, {});
    unions.push_back(
        union_via_pushout(Morphism{v, e, {{0}}}, Morphism{v, e, {{1}}}));
  }
  std::mt19937_64 rng(61);
  while (unions.size() < 25) {
    Obj x = random_sgraph(rng, 4);
    SubobjectLattice lat = subobject_poset(x, &reg);  // m, n both in M = Reg
    if (lat.size() < 2) continue;
    int i = static_cast<int>(rng() % lat.size());
    int j = static_cast<int>(rng() % lat.size());
    unions.push_back(union_via_pushout(lat.elems[i], lat.elems[j]));
  }
  int epi = 0, mn = 0, fac = 0, iso = 0;
  for (const UnionDiagram& d : unions) {
    UnionFactorization uf = factor_union(d, reg, mono);
    epi += uf.e_epi;
    mn += uf.m_in_m_and_n;
    fac += uf.factors;
    iso += uf.e_iso;
  }
  int n = static_cast<int>(unions.size());
  bool clauses = (epi == n) && (mn == n) && (fac == n);
  report(6, clauses && iso == n,
         "e_u epi " + std::to_string(epi) + "/" + std::to_string(n) +
             ", m_u in M∩N " + std::to_string(mn) + "/" + std::to_string(n) +
             ", m_u∘e_u=u " + std::to_string(fac) + "/" + std::to_string(n) +
             ", e_u iso " + std::to_string(iso) + "/" + std::to_string(n) +
             "; the iso clause fails on genuine instances (union of the two "
             "endpoints of an edge: u is mono+epi but not invertible)",
         secs_since(t0), /*expected_fail=*/clauses);
}

// 7. the three sheaf checkers agree on the 3-object SGraph site
void criterion7() {
  auto t0 = Clock::now();
  std::vector<Obj> objs = {make_sgraph(1, {}), make_sgraph(2, {{0, 1}}),
                           make_sgraph(3, {{0, 1}, {1, 2}})};
  FiniteSite site = build_site(CategoryId::sgraph(), objs, MorphismClass::reg(),
                               MorphismClass::mono());
  bool ok = true;
  std::string note;
  int agree = 0, non_sheaf_all_three = 0;
  for (const FinitePresheaf& F : enumerate_presheaves(site, 2)) {
    SheafVerdict am = is_sheaf_amalgamation(F, site);
    SheafVerdict pb = is_sheaf_pullback(F, site);
    SheafVerdict md = is_sheaf_mediator(F, site);
    if (am.holds == pb.holds && pb.holds == md.holds)
      ++agree;
    else
      ok = false;
    if (!am.holds && !pb.holds && !md.holds) ++non_sheaf_all_three;
  }
  note += std::to_string(agree) + " exhaustive presheaves agree; ";
  int random_agree = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    FinitePresheaf F = random_presheaf(site, seed);
    if (!presheaf_functorial(F, site)) {
      ok = false;
      continue;
    }
    bool am = is_sheaf_amalgamation(F, site).holds;
    bool pb = is_sheaf_pullback(F, site).holds;
    bool md = is_sheaf_mediator(F, site).holds;
    if (am == pb && pb == md) ++random_agree;
  }
  if (random_agree != 50) ok = false;
  note += std::to_string(random_agree) + "/50 random presheaves agree; ";
  int reps = 0;
  for (const Obj& x : site.objects) {
    FinitePresheaf F = representable(x, site);
    if (is_sheaf_amalgamation(F, site).holds &&
        is_sheaf_pullback(F, site).holds && is_sheaf_mediator(F, site).holds)
      ++reps;
  }
  if (reps != static_cast<int>(site.objects.size())) ok = false;
  note += std::to_string(reps) + "/" + std::to_string(site.objects.size()) +
          " representables are sheaves; ";
  if (non_sheaf_all_three == 0) ok = false;
  note += std::to_string(non_sheaf_all_three) +
          " presheaves fail all three checkers";
  report(7, ok, note, secs_since(t0));
}

// 8. pasting-lemma biconditionals on seeded Graph configurations
void criterion8() {
  auto t0 = Clock::now();
  const auto& pool = enumerate_objects(CategoryId::graph(), 2);
  std::mt19937_64 rng(81);
  auto pick = [&](const Obj& a, const Obj& b) -> std::optional<Morphism> {
    auto hs = hom_set(a, b);
    if (hs.empty()) return std::nullopt;
    return hs[rng() % hs.size()];
  };
  int pb_checked = 0, pb_ok = 0, pb_left_false = 0;
  while (pb_checked < 100) {
    // right square: a genuine pullback of a random cospan
    const Obj& Bp = pool[rng() % pool.size()];
    const Obj& Cp = pool[rng() % pool.size()];
    const Obj& C = pool[rng() % pool.size()];
    auto b2 = pick(Bp, Cp);
    auto r2 = pick(C, Cp);
    if (!b2 || !r2) continue;
    PullbackResult pb2 = pullback(*r2, *b2);
    Obj B = pb2.apex;
    Morphism t2 = pb2.proj1, m = pb2.proj2;
    // left square: half genuine pullbacks, half arbitrary commuting squares
    Morphism t1, l1, b1;
    if (rng() % 2 == 0) {
      const Obj& Ap = pool[rng() % pool.size()];
      auto b1o = pick(Ap, Bp);
      if (!b1o) continue;
      PullbackResult pb1 = pullback(m, *b1o);
      t1 = pb1.proj1;
      l1 = pb1.proj2;
      b1 = *b1o;
    } else {
      const Obj& A = pool[rng() % pool.size()];
      const Obj& Ap = pool[rng() % pool.size()];
      auto l1o = pick(A, Ap);
      auto b1o = pick(Ap, Bp);
      if (!l1o || !b1o) continue;
      bool got = false;
      for (const Morphism& cand : hom_set(A, B))
        if (compose(m, cand) == compose(*b1o, *l1o)) {
          t1 = cand;
          got = true;
          break;
        }
      if (!got) continue;
      l1 = *l1o;
      b1 = *b1o;
    }
    Square left{t1, l1, m, b1};
    Square whole{compose(t2, t1), l1, *r2, compose(*b2, b1)};
    bool lp = is_pullback(left);
    if (!lp) ++pb_left_false;
    ++pb_checked;
    if (is_pullback(whole) == lp) ++pb_ok;
  }
  int po_checked = 0, po_ok = 0, po_right_false = 0;
  while (po_checked < 100) {
    // left square: a genuine pushout of a random span
    const Obj& A = pool[rng() % pool.size()];
    const Obj& B = pool[rng() % pool.size()];
    const Obj& Ap = pool[rng() % pool.size()];
    auto t1 = pick(A, B);
    auto l1 = pick(A, Ap);
    if (!t1 || !l1) continue;
    PushoutResult po1 = pushout(*t1, *l1);
    Obj Bp = po1.apex;
    Morphism m = po1.inj1, b1 = po1.inj2;
    // right square: half genuine pushouts, half arbitrary commuting squares
    Morphism t2, r2, b2;
    if (rng() % 2 == 0) {
      const Obj& C = pool[rng() % pool.size()];
      auto t2o = pick(B, C);
      if (!t2o) continue;
      PushoutResult po2 = pushout(*t2o, m);
      t2 = *t2o;
      r2 = po2.inj1;
      b2 = po2.inj2;
    } else {
      const Obj& C = pool[rng() % pool.size()];
      const Obj& Cp = pool[rng() % pool.size()];
      auto t2o = pick(B, C);
      auto b2o = pick(Bp, Cp);
      if (!t2o || !b2o) continue;
      bool got = false;
      for (const Morphism& cand : hom_set(C, Cp))
        if (compose(cand, *t2o) == compose(*b2o, m)) {
          r2 = cand;
          got = true;
          break;
        }
      if (!got) continue;
      t2 = *t2o;
      b2 = *b2o;
    }
    Square right{t2, m, r2, b2};
    Square whole{compose(t2, *t1), *l1, r2, compose(b2, b1)};
    bool rp = is_pushout(right);
    if (!rp) ++po_right_false;
    ++po_checked;
    if (is_pushout(whole) == rp) ++po_ok;
  }
  bool ok = pb_ok == pb_checked && po_ok == po_checked &&
            pb_left_false > 0 && po_right_false > 0;
  report(8, ok,
         std::to_string(pb_ok) + "/" + std::to_string(pb_checked) +
             " pullback pastings (" + std::to_string(pb_left_false) +
             " with a non-pullback left square), " + std::to_string(po_ok) +
             "/" + std::to_string(po_checked) + " pushout pastings (" +
             std::to_string(po_right_false) + " with a non-pushout right square)",
         secs_since(t0));
}

// 9. DPO fixture suite: every rewrite step verifies both pushouts; dangling
//    deletions admit no complement at all
void criterion9() {
  auto t0 = Clock::now();
  auto mono = MorphismClass::mono();
  Obj v = make_sgraph(1, {});
  Obj loop = make_sgraph(1, {{0, 0}});
  Obj two = make_sgraph(2, {});
  Obj e = make_sgraph(2, {{0, 1}});
  Obj path = make_sgraph(3, {{0, 1}, {1, 2}});
  Obj empty = make_sgraph(0, {});
  std::vector<Rule> rules = {
      make_rule(Morphism{two, e, {{0, 1}}}, identity(two), mono),  // delete edge
      make_rule(identity(two), Morphism{two, e, {{0, 1}}}, mono),  // add edge
      make_rule(Morphism{empty, v, {{}}}, identity(empty), mono),  // delete vertex
      make_rule(identity(empty), Morphism{empty, v, {{}}}, mono),  // add vertex
      make_rule(identity(e), identity(e), mono),                   // identity
      make_rule(identity(v), identity(v), mono),                   // identity
      make_rule(Morphism{two, e, {{0, 1}}},
                Morphism{two, e, {{1, 0}}}, mono),                 // reverse edge
      make_rule(identity(v), Morphism{v, loop, {{0}}}, mono),      // add loop
      make_rule(Morphism{v, loop, {{0}}}, identity(v), mono),      // delete loop
      make_rule(Morphism{two, e, {{0, 1}}},
                Morphism{two, path, {{0, 2}}}, mono)};             // subdivide
  std::vector<Obj> hosts = {
      path, make_sgraph(3, {{0, 1}, {1, 2}, {2, 0}}), e, make_sgraph(3, {}),
      make_sgraph(3, {{0, 0}, {0, 1}}), make_sgraph(2, {{0, 1}, {1, 0}})};
  int steps = 0, step_ok = 0, dangling = 0, dangling_clean = 0;
  for (const Rule& r : rules)
    for (const Obj& h : hosts)
      for (const Morphism& match : find_matches(r, h, mono)) {
        ComplementResult pc = pushout_complement(r.l, match);
        if (!pc.ok) {
          ++dangling;
          // a blocked deletion must truly have no complement
          if (all_complements(r.l, match, 4).empty()) ++dangling_clean;
          continue;
        }
        ++steps;
        RewriteStep st = rewrite(r, match);
        if (is_pushout(st.left) && is_pushout(st.right)) ++step_ok;
      }
  bool ok = steps >= 50 && step_ok == steps && dangling > 0 &&
            dangling_clean == dangling;
  report(9, ok,
         std::to_string(step_ok) + "/" + std::to_string(steps) +
             " rewrite steps verify both pushouts over " +
             std::to_string(rules.size()) + " rules x " +
             std::to_string(hosts.size()) + " hosts; " +
             std::to_string(dangling_clean) + "/" + std::to_string(dangling) +
             " dangling matches admit no complement",
         secs_since(t0));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("acceptance: %s\n", g_all_ok ? "PASS" : "FAIL");
  return g_all_ok ? 0 : 1;
}
