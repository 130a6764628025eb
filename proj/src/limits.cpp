#include "mncat/limits.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mncat {

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
  // Class map with ids assigned by first occurrence (deterministic).
  std::vector<int> classes(int* count) const {
    std::vector<int> cls(p.size(), -1);
    UF& self = const_cast<UF&>(*this);
    int next = 0;
    std::vector<int> root_cls(p.size(), -1);
    for (size_t i = 0; i < p.size(); ++i) {
      int r = self.find(static_cast<int>(i));
      if (root_cls[r] == -1) root_cls[r] = next++;
      cls[i] = root_cls[r];
    }
    *count = next;
    return cls;
  }
};

std::vector<std::vector<std::pair<int, int>>> split_pairs(
    const std::vector<std::vector<std::pair<int, int>>>& pairs, int at,
    bool first) {
  if (first)
    return {pairs.begin(), pairs.begin() + at};
  return {pairs.begin() + at, pairs.end()};
}

Morphism make_map(const Obj& dom, const Obj& cod,
                  std::vector<std::vector<int>> maps) {
  Morphism f;
  f.dom = dom;
  f.cod = cod;
  f.maps = std::move(maps);
  return f;
}

std::string cycle_string(const std::vector<int>& cyc) {
  std::ostringstream os;
  os << "cycle:";
  for (size_t i = 0; i < cyc.size(); ++i) os << (i ? "," : "") << cyc[i];
  return os.str();
}

bool dag_acyclic(const Obj& g, std::vector<int>* cyc) {
  // Kahn-style: repeatedly strip sources.
  std::vector<int> indeg(g.n, 0);
  for (int e = 0; e < g.edge_count; ++e) ++indeg[g.tgt[e]];
  std::vector<int> stack;
  for (int v = 0; v < g.n; ++v)
    if (!indeg[v]) stack.push_back(v);
  int seen = 0;
  std::vector<std::vector<int>> out(g.n);
  for (int e = 0; e < g.edge_count; ++e) out[g.src[e]].push_back(g.tgt[e]);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (int u : out[v])
      if (--indeg[u] == 0) stack.push_back(u);
  }
  if (seen == g.n) return true;
  if (cyc) {
    cyc->clear();
    for (int v = 0; v < g.n; ++v)
      if (indeg[v]) cyc->push_back(v);
  }
  return false;
}

// Resolve the glue of a composite comma object built from part data:
// for each element t of L(target-left), look for preimages under the given
// L-images of structural morphisms into the target and transport the glue.
// `sources` lists (L-image map of the left component, R-image map of the
// right component, glue of the source object).
int resolve_glue_by_preimage(
    int t,
    const std::vector<std::tuple<const std::vector<int>*, const std::vector<int>*,
                                 const std::vector<int>*>>& sources,
    bool* found) {
  int value = -1;
  *found = false;
  for (auto& [limg, rimg, glue] : sources) {
    for (size_t a = 0; a < limg->size(); ++a) {
      if ((*limg)[a] != t) continue;
      int v = (*rimg)[(*glue)[a]];
      if (!*found) {
        value = v;
        *found = true;
      } else if (value != v) {
        throw OutsideCategoryError("comma: glue not well-defined",
                                   "glue conflict at element " + std::to_string(t));
      }
    }
  }
  return value;
}

}  // namespace

// ---- coproduct -------------------------------------------------------------

Coproduct coproduct(const Obj& a, const Obj& b) {
  if (!(a.cat == b.cat)) throw CategoryError("coproduct: different categories");
  Coproduct out;
  switch (a.cat.kind) {
    case CatKind::FinSet: {
      out.obj = make_finset(a.n + b.n);
      std::vector<int> m1(a.n), m2(b.n);
      for (int i = 0; i < a.n; ++i) m1[i] = i;
      for (int i = 0; i < b.n; ++i) m2[i] = a.n + i;
      out.inj1 = make_map(a, out.obj, {m1});
      out.inj2 = make_map(b, out.obj, {m2});
      break;
    }
    case CatKind::Graph:
    case CatKind::DAG: {
      std::vector<int> src = a.src, tgt = a.tgt;
      for (int e = 0; e < b.edge_count; ++e) {
        src.push_back(b.src[e] + a.n);
        tgt.push_back(b.tgt[e] + a.n);
      }
      out.obj = a.cat.kind == CatKind::Graph
                    ? make_graph(a.n + b.n, src, tgt)
                    : make_dag(a.n + b.n, src, tgt);
      std::vector<int> v1(a.n), e1(a.edge_count), v2(b.n), e2(b.edge_count);
      for (int i = 0; i < a.n; ++i) v1[i] = i;
      for (int i = 0; i < a.edge_count; ++i) e1[i] = i;
      for (int i = 0; i < b.n; ++i) v2[i] = a.n + i;
      for (int i = 0; i < b.edge_count; ++i) e2[i] = a.edge_count + i;
      out.inj1 = make_map(a, out.obj, {v1, e1});
      out.inj2 = make_map(b, out.obj, {v2, e2});
      break;
    }
    case CatKind::SGraph: {
      std::vector<std::pair<int, int>> es = a.pairs;
      for (auto [u, v] : b.pairs) es.emplace_back(u + a.n, v + a.n);
      out.obj = make_sgraph(a.n + b.n, es);
      std::vector<int> m1(a.n), m2(b.n);
      for (int i = 0; i < a.n; ++i) m1[i] = i;
      for (int i = 0; i < b.n; ++i) m2[i] = a.n + i;
      out.inj1 = make_map(a, out.obj, {m1});
      out.inj2 = make_map(b, out.obj, {m2});
      break;
    }
    case CatKind::Tree: {
      std::vector<std::pair<int, int>> ps = a.pairs;
      for (auto [u, v] : b.pairs) ps.emplace_back(u + a.n, v + a.n);
      out.obj = make_tree(a.n + b.n, ps);
      std::vector<int> m1(a.n), m2(b.n);
      for (int i = 0; i < a.n; ++i) m1[i] = i;
      for (int i = 0; i < b.n; ++i) m2[i] = a.n + i;
      out.inj1 = make_map(a, out.obj, {m1});
      out.inj2 = make_map(b, out.obj, {m2});
      break;
    }
    case CatKind::Product: {
      Coproduct c0 = coproduct(a.parts[0], b.parts[0]);
      Coproduct c1 = coproduct(a.parts[1], b.parts[1]);
      out.obj = make_product(c0.obj, c1.obj);
      out.inj1 = combine_parts(a.cat, a, out.obj, c0.inj1, c1.inj1);
      out.inj2 = combine_parts(a.cat, b, out.obj, c0.inj2, c1.inj2);
      break;
    }
    case CatKind::Comma: {
      Coproduct cl = coproduct(a.parts[0], b.parts[0]);
      Coproduct cr = coproduct(a.parts[1], b.parts[1]);
      int klen = a.cat.kleene_max_len;
      auto la = functor_apply(a.cat.left, cl.inj1, klen);
      auto lb = functor_apply(a.cat.left, cl.inj2, klen);
      auto ra = functor_apply(a.cat.right, cr.inj1, klen);
      auto rb = functor_apply(a.cat.right, cr.inj2, klen);
      int lsz = functor_size(a.cat.left, cl.obj, klen);
      std::vector<int> glue(lsz, -1);
      for (int t = 0; t < lsz; ++t) {
        bool found = false;
        glue[t] = resolve_glue_by_preimage(
            t, {{&la, &ra, &a.glue}, {&lb, &rb, &b.glue}}, &found);
        if (!found)
          throw OutsideCategoryError(
              "comma: coproduct glue undefined",
              "no preimage for L-element " + std::to_string(t));
      }
      out.obj = make_comma(a.cat, cl.obj, cr.obj, glue);
      out.inj1 = combine_parts(a.cat, a, out.obj, cl.inj1, cr.inj1);
      out.inj2 = combine_parts(a.cat, b, out.obj, cl.inj2, cr.inj2);
      break;
    }
  }
  return out;
}

// ---- quotient --------------------------------------------------------------

QuotientResult quotient(
    const Obj& x, const std::vector<std::vector<std::pair<int, int>>>& pairs) {
  if (static_cast<int>(pairs.size()) != sort_count(x.cat))
    throw CategoryError("quotient: wrong number of pair lists");
  QuotientResult out;
  switch (x.cat.kind) {
    case CatKind::FinSet: {
      UF uf(x.n);
      for (auto [a, b] : pairs[0]) uf.unite(a, b);
      int k;
      auto cls = uf.classes(&k);
      out.obj = make_finset(k);
      out.q = make_map(x, out.obj, {cls});
      break;
    }
    case CatKind::Graph:
    case CatKind::DAG: {
      UF ufv(x.n), ufe(x.edge_count);
      for (auto [a, b] : pairs[0]) ufv.unite(a, b);
      for (auto [a, b] : pairs[1]) ufe.unite(a, b);
      // Merged edges force their endpoints to merge.
      for (int e = 0; e < x.edge_count; ++e) {
        int r = ufe.find(e);
        if (r != e) {
          ufv.unite(x.src[e], x.src[r]);
          ufv.unite(x.tgt[e], x.tgt[r]);
        }
      }
      int kv, ke;
      auto cv = ufv.classes(&kv);
      auto ce = ufe.classes(&ke);
      std::vector<int> src(ke, -1), tgt(ke, -1);
      for (int e = 0; e < x.edge_count; ++e) {
        src[ce[e]] = cv[x.src[e]];
        tgt[ce[e]] = cv[x.tgt[e]];
      }
      Obj q = make_graph(kv, src, tgt);
      if (x.cat.kind == CatKind::DAG) {
        std::vector<int> cyc;
        if (!dag_acyclic(q, &cyc))
          throw OutsideCategoryError("dag: quotient has a cycle",
                                     cycle_string(cyc));
        q.cat = CategoryId::dag();
      }
      out.obj = q;
      out.q = make_map(x, out.obj, {cv, ce});
      break;
    }
    case CatKind::SGraph: {
      UF uf(x.n);
      for (auto [a, b] : pairs[0]) uf.unite(a, b);
      int k;
      auto cls = uf.classes(&k);
      std::vector<std::pair<int, int>> es;
      for (auto [u, v] : x.pairs) es.emplace_back(cls[u], cls[v]);
      out.obj = make_sgraph(k, es);
      out.q = make_map(x, out.obj, {cls});
      break;
    }
    case CatKind::Tree: {
      UF uf(x.n);
      for (auto [a, b] : pairs[0]) uf.unite(a, b);
      int k;
      auto cls = uf.classes(&k);
      std::vector<std::pair<int, int>> strict;
      for (auto [a, b] : x.pairs)
        if (cls[a] != cls[b]) strict.emplace_back(cls[a], cls[b]);
      try {
        out.obj = make_tree(k, strict);
      } catch (const CategoryError& e) {
        throw OutsideCategoryError("tree: quotient not a tree order", e.what());
      }
      out.q = make_map(x, out.obj, {cls});
      break;
    }
    case CatKind::Product: {
      int s0 = sort_count(x.cat.factors[0]);
      QuotientResult q0 = quotient(x.parts[0], split_pairs(pairs, s0, true));
      QuotientResult q1 = quotient(x.parts[1], split_pairs(pairs, s0, false));
      out.obj = make_product(q0.obj, q1.obj);
      out.q = combine_parts(x.cat, x, out.obj, q0.q, q1.q);
      break;
    }
    case CatKind::Comma: {
      int s0 = sort_count(functor_domain(x.cat.left));
      QuotientResult ql = quotient(x.parts[0], split_pairs(pairs, s0, true));
      QuotientResult qr = quotient(x.parts[1], split_pairs(pairs, s0, false));
      int klen = x.cat.kleene_max_len;
      auto limg = functor_apply(x.cat.left, ql.q, klen);
      auto rimg = functor_apply(x.cat.right, qr.q, klen);
      int lsz = functor_size(x.cat.left, ql.obj, klen);
      std::vector<int> glue(lsz, -1);
      for (int t = 0; t < lsz; ++t) {
        bool found = false;
        glue[t] =
            resolve_glue_by_preimage(t, {{&limg, &rimg, &x.glue}}, &found);
        if (!found)
          throw OutsideCategoryError(
              "comma: quotient glue undefined",
              "no preimage for L-element " + std::to_string(t));
      }
      out.obj = make_comma(x.cat, ql.obj, qr.obj, glue);
      out.q = combine_parts(x.cat, x, out.obj, ql.q, qr.q);
      break;
    }
  }
  return out;
}

// ---- pushout ---------------------------------------------------------------

PushoutResult pushout(const Morphism& f, const Morphism& g) {
  if (!(f.dom == g.dom)) throw CategoryError("pushout: span feet differ");
  Coproduct cop = coproduct(f.cod, g.cod);
  int sc = sort_count(f.dom.cat);
  std::vector<std::vector<std::pair<int, int>>> pairs(sc);
  auto ds = sort_sizes(f.dom);
  for (int s = 0; s < sc; ++s)
    for (int c = 0; c < ds[s]; ++c)
      pairs[s].emplace_back(cop.inj1.maps[s][f.maps[s][c]],
                            cop.inj2.maps[s][g.maps[s][c]]);
  QuotientResult qt = quotient(cop.obj, pairs);
  PushoutResult out;
  out.apex = qt.obj;
  out.inj1 = compose(qt.q, cop.inj1);
  out.inj2 = compose(qt.q, cop.inj2);
  return out;
}

std::optional<Morphism> pushout_mediator(const PushoutResult& po,
                                         const Morphism& h, const Morphism& k) {
  if (!(h.dom == po.inj1.dom) || !(k.dom == po.inj2.dom) || !(h.cod == k.cod))
    throw CategoryError("pushout_mediator: endpoint mismatch");
  auto as = sort_sizes(po.apex);
  Morphism u;
  u.dom = po.apex;
  u.cod = h.cod;
  u.maps.resize(as.size());
  for (size_t s = 0; s < as.size(); ++s) u.maps[s].assign(as[s], -1);
  auto feed = [&](const Morphism& inj, const Morphism& leg) -> bool {
    for (size_t s = 0; s < as.size(); ++s)
      for (size_t i = 0; i < inj.maps[s].size(); ++i) {
        int idx = inj.maps[s][i], val = leg.maps[s][i];
        if (u.maps[s][idx] == -1)
          u.maps[s][idx] = val;
        else if (u.maps[s][idx] != val)
          return false;
      }
    return true;
  };
  if (!feed(po.inj1, h) || !feed(po.inj2, k)) return std::nullopt;
  for (auto& m : u.maps)
    for (int v : m)
      if (v == -1) return std::nullopt;
  if (!preserves_structure(u)) return std::nullopt;
  return u;
}

// ---- pullback --------------------------------------------------------------

PullbackResult pullback(const Morphism& f, const Morphism& g) {
  if (!(f.cod == g.cod)) throw CategoryError("pullback: cospan heads differ");
  const Obj& A = f.dom;
  const Obj& B = g.dom;
  PullbackResult out;
  switch (A.cat.kind) {
    case CatKind::FinSet:
    case CatKind::SGraph:
    case CatKind::Tree: {
      std::vector<std::pair<int, int>> elems;
      auto as = sort_sizes(A)[0];
      auto bs = sort_sizes(B)[0];
      for (int a = 0; a < as; ++a)
        for (int b = 0; b < bs; ++b)
          if (f.maps[0][a] == g.maps[0][b]) elems.emplace_back(a, b);
      std::vector<int> p1, p2;
      for (auto [a, b] : elems) {
        p1.push_back(a);
        p2.push_back(b);
      }
      int k = static_cast<int>(elems.size());
      if (A.cat.kind == CatKind::FinSet) {
        out.apex = make_finset(k);
      } else if (A.cat.kind == CatKind::SGraph) {
        std::vector<std::pair<int, int>> es;
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            auto [u1, u2] = elems[i];
            auto [v1, v2] = elems[j];
            if (std::binary_search(A.pairs.begin(), A.pairs.end(),
                                   std::make_pair(u1, v1)) &&
                std::binary_search(B.pairs.begin(), B.pairs.end(),
                                   std::make_pair(u2, v2)))
              es.emplace_back(i, j);
          }
        out.apex = make_sgraph(k, es);
      } else {
        std::vector<std::pair<int, int>> strict;
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            auto [a1, b1] = elems[i];
            auto [a2, b2] = elems[j];
            if (tree_leq(A, a1, a2) && tree_leq(B, b1, b2))
              strict.emplace_back(i, j);
          }
        try {
          out.apex = make_tree(k, strict);
        } catch (const CategoryError& e) {
          throw OutsideCategoryError("tree: pullback not a tree order",
                                     e.what());
        }
      }
      out.proj1 = make_map(out.apex, A, {p1});
      out.proj2 = make_map(out.apex, B, {p2});
      break;
    }
    case CatKind::Graph:
    case CatKind::DAG: {
      std::vector<std::pair<int, int>> velems, eelems;
      std::map<std::pair<int, int>, int> vidx;
      for (int a = 0; a < A.n; ++a)
        for (int b = 0; b < B.n; ++b)
          if (f.maps[0][a] == g.maps[0][b]) {
            vidx[{a, b}] = static_cast<int>(velems.size());
            velems.emplace_back(a, b);
          }
      std::vector<int> src, tgt;
      for (int e1 = 0; e1 < A.edge_count; ++e1)
        for (int e2 = 0; e2 < B.edge_count; ++e2)
          if (f.maps[1][e1] == g.maps[1][e2]) {
            eelems.emplace_back(e1, e2);
            src.push_back(vidx.at({A.src[e1], B.src[e2]}));
            tgt.push_back(vidx.at({A.tgt[e1], B.tgt[e2]}));
          }
      int kv = static_cast<int>(velems.size());
      out.apex = A.cat.kind == CatKind::Graph ? make_graph(kv, src, tgt)
                                              : make_dag(kv, src, tgt);
      std::vector<int> pv1, pv2, pe1, pe2;
      for (auto [a, b] : velems) {
        pv1.push_back(a);
        pv2.push_back(b);
      }
      for (auto [a, b] : eelems) {
        pe1.push_back(a);
        pe2.push_back(b);
      }
      out.proj1 = make_map(out.apex, A, {pv1, pe1});
      out.proj2 = make_map(out.apex, B, {pv2, pe2});
      break;
    }
    case CatKind::Product: {
      PullbackResult r0 = pullback(part_morphism(f, 0), part_morphism(g, 0));
      PullbackResult r1 = pullback(part_morphism(f, 1), part_morphism(g, 1));
      out.apex = make_product(r0.apex, r1.apex);
      out.proj1 = combine_parts(A.cat, out.apex, A, r0.proj1, r1.proj1);
      out.proj2 = combine_parts(A.cat, out.apex, B, r0.proj2, r1.proj2);
      break;
    }
    case CatKind::Comma: {
      PullbackResult rl = pullback(part_morphism(f, 0), part_morphism(g, 0));
      PullbackResult rr = pullback(part_morphism(f, 1), part_morphism(g, 1));
      int klen = A.cat.kleene_max_len;
      auto l1 = functor_apply(A.cat.left, rl.proj1, klen);
      auto l2 = functor_apply(A.cat.left, rl.proj2, klen);
      auto r1 = functor_apply(A.cat.right, rr.proj1, klen);
      auto r2 = functor_apply(A.cat.right, rr.proj2, klen);
      int lsz = functor_size(A.cat.left, rl.apex, klen);
      int rsz = functor_size(A.cat.right, rr.apex, klen);
      std::vector<int> glue(lsz, -1);
      for (int t = 0; t < lsz; ++t) {
        int va = A.glue[l1[t]];
        int vb = B.glue[l2[t]];
        for (int r = 0; r < rsz; ++r)
          if (r1[r] == va && r2[r] == vb) {
            glue[t] = r;
            break;
          }
        if (glue[t] == -1)
          throw OutsideCategoryError("comma: pullback glue unresolved",
                                     "L-element " + std::to_string(t));
      }
      out.apex = make_comma(A.cat, rl.apex, rr.apex, glue);
      out.proj1 = combine_parts(A.cat, out.apex, A, rl.proj1, rr.proj1);
      out.proj2 = combine_parts(A.cat, out.apex, B, rl.proj2, rr.proj2);
      break;
    }
  }
  return out;
}

std::optional<Morphism> pullback_mediator(const PullbackResult& pb,
                                          const Morphism& h,
                                          const Morphism& k) {
  if (!(h.cod == pb.proj1.cod) || !(k.cod == pb.proj2.cod) || !(h.dom == k.dom))
    throw CategoryError("pullback_mediator: endpoint mismatch");
  auto as = sort_sizes(pb.apex);
  size_t sc = as.size();
  std::vector<std::map<std::pair<int, int>, int>> lut(sc);
  for (size_t s = 0; s < sc; ++s)
    for (int i = 0; i < as[s]; ++i)
      lut[s][{pb.proj1.maps[s][i], pb.proj2.maps[s][i]}] = i;
  Morphism u;
  u.dom = h.dom;
  u.cod = pb.apex;
  u.maps.resize(sc);
  auto ts = sort_sizes(h.dom);
  for (size_t s = 0; s < sc; ++s) {
    u.maps[s].resize(ts[s]);
    for (int t = 0; t < ts[s]; ++t) {
      auto it = lut[s].find({h.maps[s][t], k.maps[s][t]});
      if (it == lut[s].end()) return std::nullopt;
      u.maps[s][t] = it->second;
    }
  }
  if (!preserves_structure(u)) return std::nullopt;
  return u;
}

// ---- equalizer / coequalizer ----------------------------------------------

EqualizerResult equalizer(const Morphism& f, const Morphism& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw CategoryError("equalizer: not a parallel pair");
  const Obj& A = f.dom;
  EqualizerResult out;
  auto kept_of = [&](int s) {
    std::vector<int> kept;
    for (size_t i = 0; i < f.maps[s].size(); ++i)
      if (f.maps[s][i] == g.maps[s][i]) kept.push_back(static_cast<int>(i));
    return kept;
  };
  switch (A.cat.kind) {
    case CatKind::FinSet: {
      auto kept = kept_of(0);
      out.obj = make_finset(static_cast<int>(kept.size()));
      out.incl = make_map(out.obj, A, {kept});
      break;
    }
    case CatKind::Graph:
    case CatKind::DAG: {
      auto kv = kept_of(0);
      auto ke = kept_of(1);
      std::vector<int> vpos(A.n, -1);
      for (size_t i = 0; i < kv.size(); ++i) vpos[kv[i]] = static_cast<int>(i);
      std::vector<int> src, tgt;
      for (int e : ke) {
        // Endpoints of an agreeing edge agree automatically.
        src.push_back(vpos[A.src[e]]);
        tgt.push_back(vpos[A.tgt[e]]);
      }
      out.obj = A.cat.kind == CatKind::Graph
                    ? make_graph(static_cast<int>(kv.size()), src, tgt)
                    : make_dag(static_cast<int>(kv.size()), src, tgt);
      out.incl = make_map(out.obj, A, {kv, ke});
      break;
    }
    case CatKind::SGraph: {
      auto kv = kept_of(0);
      std::vector<int> vpos(A.n, -1);
      for (size_t i = 0; i < kv.size(); ++i) vpos[kv[i]] = static_cast<int>(i);
      std::vector<std::pair<int, int>> es;
      for (auto [u, v] : A.pairs)
        if (vpos[u] != -1 && vpos[v] != -1) es.emplace_back(vpos[u], vpos[v]);
      out.obj = make_sgraph(static_cast<int>(kv.size()), es);
      out.incl = make_map(out.obj, A, {kv});
      break;
    }
    case CatKind::Tree: {
      auto kv = kept_of(0);
      std::vector<int> vpos(A.n, -1);
      for (size_t i = 0; i < kv.size(); ++i) vpos[kv[i]] = static_cast<int>(i);
      std::vector<std::pair<int, int>> ps;
      for (auto [a, b] : A.pairs)
        if (vpos[a] != -1 && vpos[b] != -1) ps.emplace_back(vpos[a], vpos[b]);
      out.obj = make_tree(static_cast<int>(kv.size()), ps);
      out.incl = make_map(out.obj, A, {kv});
      break;
    }
    case CatKind::Product: {
      EqualizerResult e0 = equalizer(part_morphism(f, 0), part_morphism(g, 0));
      EqualizerResult e1 = equalizer(part_morphism(f, 1), part_morphism(g, 1));
      out.obj = make_product(e0.obj, e1.obj);
      out.incl = combine_parts(A.cat, out.obj, A, e0.incl, e1.incl);
      break;
    }
    case CatKind::Comma: {
      EqualizerResult el = equalizer(part_morphism(f, 0), part_morphism(g, 0));
      EqualizerResult er = equalizer(part_morphism(f, 1), part_morphism(g, 1));
      int klen = A.cat.kleene_max_len;
      auto li = functor_apply(A.cat.left, el.incl, klen);
      auto ri = functor_apply(A.cat.right, er.incl, klen);
      int lsz = functor_size(A.cat.left, el.obj, klen);
      int rsz = functor_size(A.cat.right, er.obj, klen);
      std::vector<int> glue(lsz, -1);
      for (int t = 0; t < lsz; ++t) {
        int v = A.glue[li[t]];
        for (int r = 0; r < rsz; ++r)
          if (ri[r] == v) {
            glue[t] = r;
            break;
          }
        if (glue[t] == -1)
          throw OutsideCategoryError("comma: equalizer glue unresolved",
                                     "L-element " + std::to_string(t));
      }
      out.obj = make_comma(A.cat, el.obj, er.obj, glue);
      out.incl = combine_parts(A.cat, out.obj, A, el.incl, er.incl);
      break;
    }
  }
  return out;
}

std::optional<Morphism> equalizer_factor(const EqualizerResult& eq,
                                         const Morphism& h) {
  if (!(h.cod == eq.incl.cod))
    throw CategoryError("equalizer_factor: endpoint mismatch");
  auto es = sort_sizes(eq.obj);
  auto cs = sort_sizes(eq.incl.cod);
  size_t sc = es.size();
  std::vector<std::vector<int>> pos(sc);
  for (size_t s = 0; s < sc; ++s) {
    pos[s].assign(cs[s], -1);
    for (int i = 0; i < es[s]; ++i) pos[s][eq.incl.maps[s][i]] = i;
  }
  Morphism u;
  u.dom = h.dom;
  u.cod = eq.obj;
  u.maps.resize(sc);
  auto ts = sort_sizes(h.dom);
  for (size_t s = 0; s < sc; ++s) {
    u.maps[s].resize(ts[s]);
    for (int t = 0; t < ts[s]; ++t) {
      int p = pos[s][h.maps[s][t]];
      if (p == -1) return std::nullopt;
      u.maps[s][t] = p;
    }
  }
  if (!preserves_structure(u)) return std::nullopt;
  return u;
}

CoequalizerResult coequalizer(const Morphism& f, const Morphism& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw CategoryError("coequalizer: not a parallel pair");
  int sc = sort_count(f.dom.cat);
  std::vector<std::vector<std::pair<int, int>>> pairs(sc);
  auto ds = sort_sizes(f.dom);
  for (int s = 0; s < sc; ++s)
    for (int i = 0; i < ds[s]; ++i)
      pairs[s].emplace_back(f.maps[s][i], g.maps[s][i]);
  QuotientResult qt = quotient(f.cod, pairs);
  return {qt.obj, qt.q};
}

std::optional<Morphism> coequalizer_factor(const CoequalizerResult& ce,
                                           const Morphism& h) {
  if (!(h.dom == ce.proj.dom))
    throw CategoryError("coequalizer_factor: endpoint mismatch");
  auto qs = sort_sizes(ce.obj);
  Morphism u;
  u.dom = ce.obj;
  u.cod = h.cod;
  u.maps.resize(qs.size());
  for (size_t s = 0; s < qs.size(); ++s) u.maps[s].assign(qs[s], -1);
  for (size_t s = 0; s < qs.size(); ++s)
    for (size_t i = 0; i < ce.proj.maps[s].size(); ++i) {
      int idx = ce.proj.maps[s][i], val = h.maps[s][i];
      if (u.maps[s][idx] == -1)
        u.maps[s][idx] = val;
      else if (u.maps[s][idx] != val)
        return std::nullopt;
    }
  for (auto& m : u.maps)
    for (int v : m)
      if (v == -1) return std::nullopt;
  if (!preserves_structure(u)) return std::nullopt;
  return u;
}

// ---- derived gadgets -------------------------------------------------------

KernelPairResult kernel_pair(const Morphism& f) {
  PullbackResult pb = pullback(f, f);
  Morphism idd = identity(f.dom);
  auto gamma = pullback_mediator(pb, idd, idd);
  if (!gamma) throw CategoryError("kernel_pair: diagonal missing");
  return {pb.apex, pb.proj1, pb.proj2, *gamma};
}

CokernelPairResult cokernel_pair(const Morphism& f) {
  PushoutResult po = pushout(f, f);
  return {po.apex, po.inj1, po.inj2};
}

CodiagonalData codiagonal(const Morphism& f) {
  CokernelPairResult ck = cokernel_pair(f);
  PushoutResult po{ck.obj, ck.c1, ck.c2};
  Morphism idd = identity(f.cod);
  auto u = pushout_mediator(po, idd, idd);
  if (!u) throw CategoryError("codiagonal: fold missing");
  return {ck, *u};
}

bool is_pullback(const Square& s) {
  require_commuting_square(s, "is_pullback");
  try {
    PullbackResult pb = pullback(s.right, s.bottom);
    auto u = pullback_mediator(pb, s.top, s.left);
    return u && morphism_is_iso(*u);
  } catch (const OutsideCategoryError&) {
    // The canonical pullback does not exist in the category; the square is
    // reported as not recognized.
    return false;
  }
}

bool is_pushout(const Square& s) {
  require_commuting_square(s, "is_pushout");
  try {
    PushoutResult po = pushout(s.top, s.left);
    auto u = pushout_mediator(po, s.right, s.bottom);
    return u && morphism_is_iso(*u);
  } catch (const OutsideCategoryError&) {
    return false;
  }
}

Obj initial_object(const CategoryId& cat) {
  switch (cat.kind) {
    case CatKind::FinSet: return make_finset(0);
    case CatKind::Graph: return make_graph(0, {}, {});
    case CatKind::SGraph: return make_sgraph(0, {});
    case CatKind::DAG: return make_dag(0, {}, {});
    case CatKind::Tree: return make_tree(0, {});
    case CatKind::Product:
      return make_product(initial_object(cat.factors[0]),
                          initial_object(cat.factors[1]));
    case CatKind::Comma: {
      Obj l = initial_object(functor_domain(cat.left));
      Obj r = initial_object(functor_domain(cat.right));
      int lsz = functor_size(cat.left, l, cat.kleene_max_len);
      int rsz = functor_size(cat.right, r, cat.kleene_max_len);
      if (lsz > 0 && rsz == 0)
        throw CategoryError("comma: no componentwise initial object");
      return make_comma(cat, l, r, std::vector<int>(lsz, 0));
    }
  }
  throw CategoryError("initial_object: unknown category");
}

Obj terminal_object(const CategoryId& cat) {
  switch (cat.kind) {
    case CatKind::FinSet: return make_finset(1);
    case CatKind::Graph: return make_graph(1, {0}, {0});
    case CatKind::SGraph: return make_sgraph(1, {{0, 0}});
    case CatKind::DAG:
      // A terminal dag would need a loop; acyclicity forbids it, and a single
      // loop-free vertex admits no morphism from any graph with an edge.
      throw CategoryError("dag: no terminal object");
    case CatKind::Tree: return make_tree(1, {});
    case CatKind::Product:
      return make_product(terminal_object(cat.factors[0]),
                          terminal_object(cat.factors[1]));
    case CatKind::Comma: {
      Obj l = terminal_object(functor_domain(cat.left));
      Obj r = terminal_object(functor_domain(cat.right));
      int lsz = functor_size(cat.left, l, cat.kleene_max_len);
      int rsz = functor_size(cat.right, r, cat.kleene_max_len);
      if (rsz != 1 && lsz > 0)
        throw CategoryError("comma: no componentwise terminal object");
      return make_comma(cat, l, r, std::vector<int>(lsz, 0));
    }
  }
  throw CategoryError("terminal_object: unknown category");
}

bool is_regular_mono(const Morphism& f) {
  if (!is_componentwise_injective(f)) return false;
  if (morphism_is_iso(f)) return true;
  CokernelPairResult ck = cokernel_pair(f);
  EqualizerResult eq = equalizer(ck.c1, ck.c2);
  auto h = equalizer_factor(eq, f);
  if (!h) throw CategoryError("is_regular_mono: factorization missing");
  return morphism_is_iso(*h);
}

}  // namespace mncat
