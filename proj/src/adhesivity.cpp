#include "mncat/adhesivity.hpp"

#include <algorithm>
#include <random>

#include "mncat/categories.hpp"

namespace mncat {

namespace {

// All n' : T -> Zp with z . n' == t (z : Zp -> Z, t : T -> Z), enumerated by
// walking the z-fibers of each t-value; far cheaper than filtering hom(T, Zp).
std::vector<Morphism> homs_under(const Obj& T, const Obj& Zp, const Morphism& z,
                                 const Morphism& t) {
  auto ts = sort_sizes(T);
  auto zps = sort_sizes(Zp);
  size_t sc = ts.size();
  std::vector<std::vector<std::vector<int>>> cand(sc);
  for (size_t s = 0; s < sc; ++s) {
    cand[s].resize(ts[s]);
    for (int i = 0; i < ts[s]; ++i)
      for (int e = 0; e < zps[s]; ++e)
        if (z.maps[s][e] == t.maps[s][i]) cand[s][i].push_back(e);
  }
  std::vector<Morphism> out;
  Morphism f;
  f.dom = T;
  f.cod = Zp;
  f.maps.resize(sc);
  std::vector<std::vector<size_t>> pick(sc);
  for (size_t s = 0; s < sc; ++s) {
    f.maps[s].assign(ts[s], 0);
    pick[s].assign(ts[s], 0);
    for (int i = 0; i < ts[s]; ++i) {
      if (cand[s][i].empty()) return out;
      f.maps[s][i] = cand[s][i][0];
    }
  }
  while (true) {
    if (preserves_structure(f)) out.push_back(f);
    int s = static_cast<int>(sc) - 1;
    int i = s >= 0 ? ts[s] - 1 : -1;
    while (s >= 0) {
      if (i < 0) {
        --s;
        i = s >= 0 ? ts[s] - 1 : -1;
        continue;
      }
      if (++pick[s][i] < cand[s][i].size()) {
        f.maps[s][i] = cand[s][i][pick[s][i]];
        break;
      }
      pick[s][i] = 0;
      f.maps[s][i] = cand[s][i][0];
      --i;
    }
    if (s < 0) break;
  }
  return out;
}

}  // namespace

BoundedVerdict check_stable(const Square& sq, int bound) {
  require_commuting_square(sq, "check_stable");
  if (!is_pushout(sq))
    throw CategoryError("check_stable: square is not a pushout");
  const Morphism& n = sq.top;
  const Morphism& m = sq.left;
  const Morphism& p = sq.right;
  const Morphism& q = sq.bottom;
  const Obj& W = q.cod;
  Morphism qm = compose(q, m);
  for (const Obj& Wp : enumerate_objects(W.cat, bound)) {
    for (const Morphism& w : hom_set_mod_precompose(Wp, W)) {
      PullbackResult FY, FZ, FX;
      try {
        FY = pullback(q, w);
        FZ = pullback(p, w);
        FX = pullback(qm, w);
      } catch (const OutsideCategoryError& e) {
        BoundedVerdict v = BoundedVerdict::fail(
            bound, std::string("vertical pullback left the category: ") + e.what());
        v.square_witness = sq;
        return v;
      }
      auto mp = pullback_mediator(FY, compose(m, FX.proj1), FX.proj2);
      auto np = pullback_mediator(FZ, compose(n, FX.proj1), FX.proj2);
      if (!mp || !np) {
        BoundedVerdict v =
            BoundedVerdict::fail(bound, "pulled-back span mediator missing");
        v.square_witness = sq;
        return v;
      }
      Square top{*np, *mp, FZ.proj2, FY.proj2};
      if (!is_pushout(top)) {
        Cube c;
        c.m = m; c.n = n; c.p = p; c.q = q;
        c.mp = *mp; c.np = *np; c.pp = FZ.proj2; c.qp = FY.proj2;
        c.x = FX.proj1; c.y = FY.proj1; c.z = FZ.proj1; c.w = w;
        BoundedVerdict v = BoundedVerdict::fail(
            bound, "pulled-back square is not a pushout (stability fails)");
        v.cube_witness = c;
        v.square_witness = sq;
        return v;
      }
    }
  }
  return BoundedVerdict::pass(bound);
}

BoundedVerdict check_van_kampen(const Square& sq, int bound) {
  BoundedVerdict st = check_stable(sq, bound);
  if (!st.holds) return st;
  const Morphism& n = sq.top;
  const Morphism& m = sq.left;
  const Morphism& p = sq.right;
  const Morphism& q = sq.bottom;
  const CategoryId& cat = m.dom.cat;
  const auto& objs = enumerate_objects(cat, bound);
  for (const Obj& Yp : objs) {
    for (const Morphism& y : hom_set_mod_precompose(Yp, m.cod)) {
      PullbackResult L;
      try {
        L = pullback(m, y);
      } catch (const OutsideCategoryError& e) {
        BoundedVerdict v = BoundedVerdict::fail(
            bound, std::string("left-face pullback left the category: ") + e.what());
        v.square_witness = sq;
        return v;
      }
      const Morphism& x = L.proj1;   // X' -> X
      const Morphism& mp = L.proj2;  // X' -> Y'
      Morphism nx = compose(n, x);
      for (const Obj& Zp : objs) {
        for (const Morphism& z : hom_set_mod_precompose(Zp, p.dom)) {
          for (const Morphism& np : homs_under(L.apex, Zp, z, nx)) {
            Square back{np, x, z, n};
            if (!is_pullback(back)) continue;
            PushoutResult po;
            try {
              po = pushout(np, mp);
            } catch (const OutsideCategoryError&) {
              continue;  // no candidate top pushout inside the category
            }
            auto w = pushout_mediator(po, compose(p, z), compose(q, y));
            if (!w) continue;
            Square front{po.inj2, y, *w, q};
            Square right{po.inj1, z, *w, p};
            if (!is_pullback(front) || !is_pullback(right)) {
              Cube c;
              c.m = m; c.n = n; c.p = p; c.q = q;
              c.mp = mp; c.np = np; c.pp = po.inj1; c.qp = po.inj2;
              c.x = x; c.y = y; c.z = z; c.w = *w;
              BoundedVerdict v = BoundedVerdict::fail(
                  bound,
                  "cube with pushout top has a non-pullback front/right face");
              v.cube_witness = c;
              v.square_witness = sq;
              return v;
            }
          }
        }
      }
    }
  }
  return BoundedVerdict::pass(bound);
}

CubeFaceReport replay_cube(const Cube& c) {
  CubeFaceReport r;
  r.back_pullback = is_pullback(c.back_face());
  r.left_pullback = is_pullback(c.left_face());
  r.top_pushout = is_pushout(c.top_face());
  r.bottom_pushout = is_pushout(c.bottom_face());
  r.front_pullback = is_pullback(c.front_face());
  r.right_pullback = is_pullback(c.right_face());
  return r;
}

BoundedVerdict is_N_preadhesive(const Morphism& m, const MorphismClass& N,
                                int bound) {
  const CategoryId& cat = m.dom.cat;
  for (const Obj& Z : enumerate_objects(cat, bound)) {
    for (const Morphism& n : hom_set_mod_postcompose(m.dom, Z)) {
      bool in_n;
      try {
        in_n = N.member(n);
      } catch (const OutsideCategoryError&) {
        in_n = false;
      }
      if (!in_n) continue;
      PushoutResult po;
      try {
        po = pushout(n, m);
      } catch (const OutsideCategoryError& e) {
        BoundedVerdict v = BoundedVerdict::fail(
            bound, std::string("pushout along n left the category: ") + e.what());
        v.pair_witness = {m, n};
        return v;
      }
      Square sq{n, m, po.inj1, po.inj2};
      if (!is_pullback(sq)) {
        BoundedVerdict v = BoundedVerdict::fail(
            bound, "pushout along n is not a pullback");
        v.square_witness = sq;
        v.pair_witness = {m, n};
        return v;
      }
      BoundedVerdict st = check_stable(sq, bound);
      if (!st.holds) {
        st.pair_witness = {m, n};
        return st;
      }
    }
  }
  return BoundedVerdict::pass(bound);
}

BoundedVerdict is_N_adhesive(const Morphism& m, const MorphismClass& N,
                             int bound) {
  const CategoryId& cat = m.dom.cat;
  for (const Obj& Z : enumerate_objects(cat, bound)) {
    for (const Morphism& g : hom_set_mod_precompose(Z, m.cod)) {
      PullbackResult pb;
      try {
        pb = pullback(m, g);
      } catch (const OutsideCategoryError& e) {
        BoundedVerdict v = BoundedVerdict::fail(
            bound, std::string("pullback of m left the category: ") + e.what());
        v.pair_witness = {m, g};
        return v;
      }
      BoundedVerdict v = is_N_preadhesive(pb.proj2, N, bound);
      if (!v.holds) return v;
    }
  }
  return BoundedVerdict::pass(bound);
}

KernelPairDiagram kernel_pair_diagram(const Square& sq, int bound) {
  require_commuting_square(sq, "kernel_pair_diagram");
  if (!is_pushout(sq))
    throw CategoryError("kernel_pair_diagram: square is not a pushout");
  const Morphism& n = sq.top;
  const Morphism& m = sq.left;
  const Morphism& q = sq.bottom;
  KernelPairDiagram d;
  d.sq = sq;
  KernelPairResult kn = kernel_pair(n);
  KernelPairResult kq = kernel_pair(q);
  d.K_n = kn.obj;
  d.K_q = kq.obj;
  d.x1 = kn.pr1;
  d.x2 = kn.pr2;
  d.gamma_n = kn.gamma;
  d.y1 = kq.pr1;
  d.y2 = kq.pr2;
  d.gamma_q = kq.gamma;
  PullbackResult kq_pb{kq.obj, kq.pr1, kq.pr2};
  auto k = pullback_mediator(kq_pb, compose(m, kn.pr1), compose(m, kn.pr2));
  if (!k) throw CategoryError("kernel_pair_diagram: k mediator missing");
  d.k = *k;
  if (!(compose(d.k, d.gamma_n) == compose(d.gamma_q, m)))
    throw CategoryError("kernel_pair_diagram: gamma square does not commute");

  Square gamma_sq{d.gamma_n, m, d.k, d.gamma_q};
  Square x1_sq{d.x1, d.k, m, d.y1};
  Square x2_sq{d.x2, d.k, m, d.y2};
  std::vector<std::pair<std::string, Square>> strips = {
      {"strip1-gamma", gamma_sq}, {"strip1-x1", x1_sq}, {"strip1-outer", sq},
      {"strip2-gamma", gamma_sq}, {"strip2-x2", x2_sq}, {"strip2-outer", sq}};
  d.all_hold = true;
  for (auto& [label, s] : strips) {
    SquareVerdict v;
    v.label = label;
    v.square = s;
    v.pushout = is_pushout(s);
    v.pullback = is_pullback(s);
    if (v.pushout) {
      v.stable = check_stable(s, bound);
    } else {
      v.stable = BoundedVerdict::fail(bound, "not a pushout; stability skipped");
    }
    if (!v.all()) d.all_hold = false;
    d.squares.push_back(std::move(v));
  }
  return d;
}

UnionFactorization factor_union(const UnionDiagram& d, const MorphismClass& M,
                                const MorphismClass& N) {
  UnionFactorization out;
  out.diagram = d;
  out.ck = cokernel_pair(d.u);
  EqualizerResult eq = equalizer(out.ck.c1, out.ck.c2);
  out.m_u = eq.incl;
  auto e = equalizer_factor(eq, d.u);
  if (!e) throw CategoryError("factor_union: u does not factor through m_u");
  out.e_u = *e;
  out.e_epi = is_componentwise_surjective(out.e_u);
  bool in_m = false, in_n = false;
  try {
    in_m = M.member(out.m_u);
    in_n = N.member(out.m_u);
  } catch (const OutsideCategoryError&) {
    // membership undecidable in-category; report as not established
  }
  out.m_in_m_and_n = in_m && in_n;
  out.factors = compose(out.m_u, out.e_u) == d.u;
  out.e_iso = morphism_is_iso(out.e_u);
  return out;
}

// ---- sampling --------------------------------------------------------------

namespace {

struct ArrowPools {
  std::vector<Obj> objs;
  std::vector<Morphism> m_arrows;
  std::vector<int> m_dom, m_cod;
  std::vector<std::vector<Morphism>> n_by_dom;  // indexed by object position
  std::vector<std::vector<Morphism>> into;      // arrows with cod == position
};

bool safe_member(const MorphismClass& cls, const Morphism& f) {
  try {
    return cls.member(f);
  } catch (const OutsideCategoryError&) {
    return false;
  }
}

ArrowPools build_pools(const CategoryId& cat, const MorphismClass& M,
                       const MorphismClass& N, int base_bound) {
  ArrowPools p;
  p.objs = enumerate_objects(cat, base_bound);
  int no = static_cast<int>(p.objs.size());
  p.n_by_dom.resize(no);
  p.into.resize(no);
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      for (const Morphism& f : hom_set(p.objs[i], p.objs[j])) {
        if (safe_member(M, f)) {
          p.m_arrows.push_back(f);
          p.m_dom.push_back(i);
          p.m_cod.push_back(j);
        }
        if (safe_member(N, f)) p.n_by_dom[i].push_back(f);
        p.into[j].push_back(f);
      }
  return p;
}

}  // namespace

std::vector<Square> sample_MN_pushouts(const CategoryId& cat,
                                       const MorphismClass& M,
                                       const MorphismClass& N, int count,
                                       std::uint64_t seed, int base_bound,
                                       int* skipped) {
  ArrowPools pools = build_pools(cat, M, N, base_bound);
  std::mt19937_64 rng(seed);
  std::vector<Square> out;
  if (skipped) *skipped = 0;
  if (pools.m_arrows.empty()) return out;
  long long attempts = 0, cap = static_cast<long long>(count) * 200 + 1000;
  while (static_cast<int>(out.size()) < count && attempts++ < cap) {
    size_t mi = rng() % pools.m_arrows.size();
    const Morphism& m = pools.m_arrows[mi];
    const auto& ns = pools.n_by_dom[pools.m_dom[mi]];
    if (ns.empty()) continue;
    const Morphism& n = ns[rng() % ns.size()];
    PushoutResult po;
    try {
      po = pushout(n, m);
    } catch (const OutsideCategoryError&) {
      if (skipped) ++*skipped;
      continue;
    }
    out.push_back(Square{n, m, po.inj1, po.inj2});
  }
  return out;
}

AdhesivityReport check_MN_adhesive(const CategoryId& cat,
                                   const MorphismClass& M,
                                   const MorphismClass& N, int sample_count,
                                   int bound, std::uint64_t seed) {
  AdhesivityReport rep;
  rep.cat = cat;
  rep.m_class = M.name();
  rep.n_class = N.name();
  rep.samples_requested = sample_count;
  rep.bound = bound;
  rep.seed = seed;

  ArrowPools pools = build_pools(cat, M, N, rep.base_bound);
  std::mt19937_64 rng(seed);
  if (pools.m_arrows.empty()) {
    rep.all_hold = false;
    rep.failures.push_back("no arrows of class M over the base objects");
    return rep;
  }
  auto record_fail = [&](const std::string& msg) {
    rep.all_hold = false;
    if (rep.failures.size() < 32) rep.failures.push_back(msg);
  };
  long long attempts = 0,
            cap = static_cast<long long>(sample_count) * 200 + 1000;
  while (rep.pushouts_sampled < sample_count && attempts++ < cap) {
    size_t mi = rng() % pools.m_arrows.size();
    const Morphism& m = pools.m_arrows[mi];
    const auto& ns = pools.n_by_dom[pools.m_dom[mi]];
    if (ns.empty()) continue;
    const Morphism& n = ns[rng() % ns.size()];

    // M-pullback existence sample: pull m back along a random arrow into cod(m).
    const auto& gs = pools.into[pools.m_cod[mi]];
    if (!gs.empty()) {
      const Morphism& g = gs[rng() % gs.size()];
      try {
        pullback(m, g);
        ++rep.pullbacks_sampled;
      } catch (const OutsideCategoryError&) {
        ++rep.pullback_existence_failures;
        record_fail("M-pullback does not exist: m=" + describe(m) +
                    " g=" + describe(g));
      }
    }

    PushoutResult po;
    try {
      po = pushout(n, m);
    } catch (const OutsideCategoryError&) {
      ++rep.skipped_outside;
      continue;
    }
    ++rep.pushouts_sampled;
    Square sq{n, m, po.inj1, po.inj2};

    if (!is_pullback(sq)) {
      ++rep.pullback_prop_failures;
      record_fail("M,N-pushout is not a pullback: m=" + describe(m) +
                  " n=" + describe(n));
      if (!rep.failing_square) rep.failing_square = sq;
    }
    if (is_componentwise_injective(sq.left) &&
        !is_componentwise_injective(sq.right)) {
      ++rep.mono_leg_failures;
      record_fail("pushout leg of mono is not mono: m=" + describe(m));
      if (!rep.failing_square) rep.failing_square = sq;
    }
    if (classify(sq.left).is_split_mono && !classify(sq.right).is_split_mono) {
      ++rep.split_leg_failures;
      record_fail("pushout leg of split mono is not split: m=" + describe(m));
      if (!rep.failing_square) rep.failing_square = sq;
    }
    BoundedVerdict vk = check_van_kampen(sq, bound);
    if (!vk.holds) {
      ++rep.vk_failures;
      record_fail("Van Kampen fails: " + vk.note);
      if (!rep.failing_square) rep.failing_square = sq;
      if (!rep.failing_cube && vk.cube_witness) rep.failing_cube = vk.cube_witness;
    }
  }
  if (rep.pushouts_sampled < sample_count)
    record_fail("sampling exhausted before reaching requested count");
  return rep;
}

}  // namespace mncat
