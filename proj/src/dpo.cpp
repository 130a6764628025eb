#include "mncat/dpo.hpp"

#include <algorithm>
#include <set>

#include "mncat/categories.hpp"

namespace mncat {

Rule make_rule(const Morphism& l, const Morphism& r, const MorphismClass& M) {
  if (!(l.dom == r.dom))
    throw CategoryError("rule: l and r must share the interface K");
  if (!morphism_valid(l) || !morphism_valid(r))
    throw CategoryError("rule: invalid leg morphism");
  if (!M.member(l))
    throw CategoryError("rule: left leg is not in M");
  return Rule{l.cod, l.dom, r.cod, l, r};
}

std::vector<Morphism> find_matches(const Rule& rule, const Obj& G,
                                   const MorphismClass& N) {
  std::vector<Morphism> out;
  for (const Morphism& g : hom_set(rule.L, G)) {
    bool in_n;
    try {
      in_n = N.member(g);
    } catch (const OutsideCategoryError&) {
      in_n = false;
    }
    if (in_n) out.push_back(g);
  }
  return out;
}

namespace {

// keep[s][x]: x survives deletion (outside the match image, or preserved via K)
std::vector<std::vector<char>> keep_masks(const Morphism& g,
                                          const Morphism& gl) {
  auto cs = sort_sizes(g.cod);
  std::vector<std::vector<char>> keep(g.maps.size());
  for (size_t s = 0; s < g.maps.size(); ++s) {
    std::vector<char> in_g(cs[s], 0), in_gl(cs[s], 0);
    for (int v : g.maps[s]) in_g[v] = 1;
    for (int v : gl.maps[s]) in_gl[v] = 1;
    keep[s].resize(cs[s]);
    for (int x = 0; x < cs[s]; ++x) keep[s][x] = !in_g[x] || in_gl[x];
  }
  return keep;
}

Morphism sub_factor(const Morphism& d, const Morphism& gl) {
  // gl lands inside the inclusion d; pull its values back along d
  auto cs = sort_sizes(d.cod);
  Morphism k;
  k.dom = gl.dom;
  k.cod = d.dom;
  k.maps.resize(d.maps.size());
  for (size_t s = 0; s < d.maps.size(); ++s) {
    std::vector<int> pos(cs[s], -1);
    for (size_t i = 0; i < d.maps[s].size(); ++i)
      pos[d.maps[s][i]] = static_cast<int>(i);
    k.maps[s].resize(gl.maps[s].size());
    for (size_t i = 0; i < gl.maps[s].size(); ++i) {
      if (pos[gl.maps[s][i]] < 0)
        throw CategoryError("complement: preserved element was deleted");
      k.maps[s][i] = pos[gl.maps[s][i]];
    }
  }
  return k;
}

// Build (D, d : D -> G) from the keep masks; false with a defect when the
// induced structure is broken (dangling edges etc.).
bool build_complement(const Morphism& l, const Morphism& g, ComplementResult& res) {
  const Obj& G = g.cod;
  Morphism gl = compose(g, l);
  auto keep = keep_masks(g, gl);
  switch (G.cat.kind) {
    case CatKind::FinSet: {
      std::vector<int> vs;
      for (int x = 0; x < G.n; ++x)
        if (keep[0][x]) vs.push_back(x);
      res.D = make_finset(static_cast<int>(vs.size()));
      res.d = Morphism{res.D, G, {vs}};
      break;
    }
    case CatKind::Graph:
    case CatKind::DAG: {
      for (int e = 0; e < G.edge_count; ++e)
        if (keep[1][e] && (!keep[0][G.src[e]] || !keep[0][G.tgt[e]])) {
          res.reason = "dangling edge " + std::to_string(e);
          return false;
        }
      std::vector<int> vs, es, src, tgt, vpos(G.n, -1);
      for (int x = 0; x < G.n; ++x)
        if (keep[0][x]) {
          vpos[x] = static_cast<int>(vs.size());
          vs.push_back(x);
        }
      for (int e = 0; e < G.edge_count; ++e)
        if (keep[1][e]) {
          es.push_back(e);
          src.push_back(vpos[G.src[e]]);
          tgt.push_back(vpos[G.tgt[e]]);
        }
      res.D = G.cat.kind == CatKind::Graph
                  ? make_graph(static_cast<int>(vs.size()), src, tgt)
                  : make_dag(static_cast<int>(vs.size()), src, tgt);
      res.d = Morphism{res.D, G, {vs, es}};
      break;
    }
    case CatKind::SGraph: {
      const Obj& L = g.dom;
      const Obj& K = gl.dom;
      std::set<std::pair<int, int>> gLp, gKp;
      for (auto [u, v] : L.pairs) gLp.insert({g.maps[0][u], g.maps[0][v]});
      for (auto [u, v] : K.pairs) gKp.insert({gl.maps[0][u], gl.maps[0][v]});
      std::vector<int> vs, vpos(G.n, -1);
      for (int x = 0; x < G.n; ++x)
        if (keep[0][x]) {
          vpos[x] = static_cast<int>(vs.size());
          vs.push_back(x);
        }
      std::vector<std::pair<int, int>> ps;
      for (auto [u, v] : G.pairs) {
        bool pkeep = !gLp.count({u, v}) || gKp.count({u, v});
        if (!pkeep) continue;
        if (vpos[u] < 0 || vpos[v] < 0) {
          res.reason = "dangling edge (" + std::to_string(u) + "," +
                       std::to_string(v) + ")";
          return false;
        }
        ps.emplace_back(vpos[u], vpos[v]);
      }
      res.D = make_sgraph(static_cast<int>(vs.size()), ps);
      res.d = Morphism{res.D, G, {vs}};
      break;
    }
    case CatKind::Tree: {
      std::vector<int> vs, vpos(G.n, -1);
      for (int x = 0; x < G.n; ++x)
        if (keep[0][x]) {
          vpos[x] = static_cast<int>(vs.size());
          vs.push_back(x);
        }
      std::vector<std::pair<int, int>> ps;
      for (auto [a, b] : G.pairs)
        if (vpos[a] >= 0 && vpos[b] >= 0) ps.emplace_back(vpos[a], vpos[b]);
      try {
        res.D = make_tree(static_cast<int>(vs.size()), ps);
      } catch (const CategoryError& e) {
        res.reason = std::string("induced order is not a tree order: ") +
                     e.what();
        return false;
      }
      res.d = Morphism{res.D, G, {vs}};
      break;
    }
    case CatKind::Product:
    case CatKind::Comma: {
      ComplementResult r0, r1;
      if (!build_complement(part_morphism(l, 0), part_morphism(g, 0), r0) ||
          !build_complement(part_morphism(l, 1), part_morphism(g, 1), r1)) {
        res.reason = r0.reason.empty() ? r1.reason : r0.reason;
        return false;
      }
      if (G.cat.kind == CatKind::Product) {
        res.D = make_product(r0.D, r1.D);
      } else {
        int klen = G.cat.kleene_max_len;
        auto la = functor_apply(G.cat.left, r0.d, klen);
        auto rb = functor_apply(G.cat.right, r1.d, klen);
        std::vector<int> rpos(functor_size(G.cat.right, G.parts[1], klen), -1);
        for (size_t t = 0; t < rb.size(); ++t) rpos[rb[t]] = static_cast<int>(t);
        std::vector<int> glue(la.size(), -1);
        for (size_t t = 0; t < la.size(); ++t) {
          int v = G.glue[la[t]];
          if (rpos[v] < 0) {
            res.reason = "glue does not restrict to the complement";
            return false;
          }
          glue[t] = rpos[v];
        }
        res.D = make_comma(G.cat, r0.D, r1.D, glue);
      }
      res.d = combine_parts(G.cat, res.D, G, r0.d, r1.d);
      break;
    }
  }
  res.k = sub_factor(res.d, gl);
  return true;
}

}  // namespace

ComplementResult pushout_complement(const Morphism& l, const Morphism& g) {
  if (!(l.cod == g.dom))
    throw CategoryError("pushout_complement: cod(l) != dom(g)");
  ComplementResult res;
  if (!build_complement(l, g, res)) return res;
  Square sq{l, res.k, g, res.d};
  if (!square_commutes(sq)) {
    res.reason = "complement square does not commute";
    return res;
  }
  if (!is_pushout(sq)) {
    res.reason = "complement candidate fails pushout verification";
    return res;
  }
  res.ok = true;
  return res;
}

RewriteStep rewrite(const Rule& rule, const Morphism& match) {
  ComplementResult pc = pushout_complement(rule.l, match);
  if (!pc.ok)
    throw CategoryError("rewrite: no pushout complement (" + pc.reason + ")");
  PushoutResult po = pushout(rule.r, pc.k);
  RewriteStep step;
  step.match = match;
  step.complement = pc.d;
  step.left = Square{rule.l, pc.k, match, pc.d};
  step.right = Square{rule.r, pc.k, po.inj1, po.inj2};
  step.result = po.apex;
  if (!is_pushout(step.right))
    throw CategoryError("rewrite: right square failed verification");
  return step;
}

std::vector<ComplementResult> all_complements(const Morphism& l,
                                              const Morphism& g,
                                              int max_bound) {
  std::vector<ComplementResult> out;
  const Obj& K = l.dom;
  const Obj& G = g.cod;
  Morphism gl = compose(g, l);
  for (const Obj& D : enumerate_objects(G.cat, max_bound))
    for (const Morphism& k : hom_set(K, D))
      for (const Morphism& d : hom_set(D, G)) {
        if (!(compose(d, k) == gl)) continue;
        Square sq{l, k, g, d};
        if (!is_pushout(sq)) continue;
        ComplementResult r;
        r.ok = true;
        r.D = D;
        r.k = k;
        r.d = d;
        out.push_back(std::move(r));
      }
  return out;
}

}  // namespace mncat
