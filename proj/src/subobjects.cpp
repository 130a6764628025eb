#include "mncat/subobjects.hpp"

#include <algorithm>

#include "mncat/categories.hpp"

namespace mncat {

namespace {

int pair_index(const std::vector<std::pair<int, int>>& ps, int a, int b) {
  auto it = std::lower_bound(ps.begin(), ps.end(), std::make_pair(a, b));
  if (it == ps.end() || !(*it == std::make_pair(a, b))) return -1;
  return static_cast<int>(it - ps.begin());
}

std::vector<int> mask_to_list(unsigned long long mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (mask & (1ULL << i)) out.push_back(i);
  return out;
}

constexpr long long kSubCeiling = 5'000'000;

// Enumerate canonical substructure inclusions of x, deterministic order.
void enumerate_subs(const Obj& x, std::vector<Morphism>& out) {
  switch (x.cat.kind) {
    case CatKind::FinSet: {
      if (x.n > 22) throw CategoryError("subobjects: carrier exceeds ceiling");
      for (unsigned long long vm = 0; vm < (1ULL << x.n); ++vm) {
        auto vs = mask_to_list(vm, x.n);
        Morphism f;
        f.dom = make_finset(static_cast<int>(vs.size()));
        f.cod = x;
        f.maps = {vs};
        out.push_back(std::move(f));
      }
      break;
    }
    case CatKind::Graph:
    case CatKind::DAG: {
      if (x.n > 20 || x.edge_count > 20)
        throw CategoryError("subobjects: carrier exceeds ceiling");
      for (unsigned long long vm = 0; vm < (1ULL << x.n); ++vm) {
        std::vector<int> ecand;
        for (int e = 0; e < x.edge_count; ++e)
          if ((vm & (1ULL << x.src[e])) && (vm & (1ULL << x.tgt[e])))
            ecand.push_back(e);
        auto vs = mask_to_list(vm, x.n);
        std::vector<int> vpos(x.n, -1);
        for (size_t i = 0; i < vs.size(); ++i) vpos[vs[i]] = static_cast<int>(i);
        if ((1ULL << ecand.size()) > static_cast<unsigned long long>(kSubCeiling))
          throw CategoryError("subobjects: carrier exceeds ceiling");
        for (unsigned long long em = 0; em < (1ULL << ecand.size()); ++em) {
          std::vector<int> es, src, tgt;
          for (size_t i = 0; i < ecand.size(); ++i)
            if (em & (1ULL << i)) {
              es.push_back(ecand[i]);
              src.push_back(vpos[x.src[ecand[i]]]);
              tgt.push_back(vpos[x.tgt[ecand[i]]]);
            }
          Morphism f;
          f.dom = x.cat.kind == CatKind::Graph
                      ? make_graph(static_cast<int>(vs.size()), src, tgt)
                      : make_dag(static_cast<int>(vs.size()), src, tgt);
          f.cod = x;
          f.maps = {vs, es};
          out.push_back(std::move(f));
        }
      }
      break;
    }
    case CatKind::SGraph: {
      if (x.n > 20) throw CategoryError("subobjects: carrier exceeds ceiling");
      for (unsigned long long vm = 0; vm < (1ULL << x.n); ++vm) {
        std::vector<std::pair<int, int>> pcand;
        for (auto [u, v] : x.pairs)
          if ((vm & (1ULL << u)) && (vm & (1ULL << v))) pcand.emplace_back(u, v);
        auto vs = mask_to_list(vm, x.n);
        std::vector<int> vpos(x.n, -1);
        for (size_t i = 0; i < vs.size(); ++i) vpos[vs[i]] = static_cast<int>(i);
        if ((1ULL << pcand.size()) > static_cast<unsigned long long>(kSubCeiling))
          throw CategoryError("subobjects: carrier exceeds ceiling");
        for (unsigned long long em = 0; em < (1ULL << pcand.size()); ++em) {
          std::vector<std::pair<int, int>> es;
          for (size_t i = 0; i < pcand.size(); ++i)
            if (em & (1ULL << i))
              es.emplace_back(vpos[pcand[i].first], vpos[pcand[i].second]);
          Morphism f;
          f.dom = make_sgraph(static_cast<int>(vs.size()), es);
          f.cod = x;
          f.maps = {vs};
          out.push_back(std::move(f));
        }
      }
      break;
    }
    case CatKind::Tree: {
      if (x.n > 16) throw CategoryError("subobjects: carrier exceeds ceiling");
      for (unsigned long long vm = 0; vm < (1ULL << x.n); ++vm) {
        std::vector<std::pair<int, int>> pcand;
        for (auto [a, b] : x.pairs)
          if ((vm & (1ULL << a)) && (vm & (1ULL << b))) pcand.emplace_back(a, b);
        auto vs = mask_to_list(vm, x.n);
        std::vector<int> vpos(x.n, -1);
        for (size_t i = 0; i < vs.size(); ++i) vpos[vs[i]] = static_cast<int>(i);
        if (pcand.size() > 22)
          throw CategoryError("subobjects: carrier exceeds ceiling");
        for (unsigned long long em = 0; em < (1ULL << pcand.size()); ++em) {
          std::vector<std::pair<int, int>> ps;
          for (size_t i = 0; i < pcand.size(); ++i)
            if (em & (1ULL << i))
              ps.emplace_back(vpos[pcand[i].first], vpos[pcand[i].second]);
          // Keep only transitively closed pair sets that are tree orders;
          // non-closed sets duplicate their closure's subobject.
          Obj dom;
          try {
            dom = make_tree(static_cast<int>(vs.size()), ps);
          } catch (const CategoryError&) {
            continue;
          }
          if (dom.pairs.size() != ps.size()) continue;
          Morphism f;
          f.dom = std::move(dom);
          f.cod = x;
          f.maps = {vs};
          out.push_back(std::move(f));
        }
      }
      break;
    }
    case CatKind::Product: {
      std::vector<Morphism> s0, s1;
      enumerate_subs(x.parts[0], s0);
      enumerate_subs(x.parts[1], s1);
      if (static_cast<long long>(s0.size()) * static_cast<long long>(s1.size()) >
          kSubCeiling)
        throw CategoryError("subobjects: carrier exceeds ceiling");
      for (const Morphism& a : s0)
        for (const Morphism& b : s1) {
          Obj dom = make_product(a.dom, b.dom);
          out.push_back(combine_parts(x.cat, dom, x, a, b));
        }
      break;
    }
    case CatKind::Comma: {
      std::vector<Morphism> s0, s1;
      enumerate_subs(x.parts[0], s0);
      enumerate_subs(x.parts[1], s1);
      int klen = x.cat.kleene_max_len;
      for (const Morphism& a : s0) {
        auto la = functor_apply(x.cat.left, a, klen);
        for (const Morphism& b : s1) {
          auto rb = functor_apply(x.cat.right, b, klen);
          // glue must restrict: every L-element of the left subpart must glue
          // to something in the image of the right subpart
          std::vector<int> rpos(functor_size(x.cat.right, x.parts[1], klen), -1);
          for (size_t r = 0; r < rb.size(); ++r) rpos[rb[r]] = static_cast<int>(r);
          std::vector<int> glue(la.size(), -1);
          bool ok = true;
          for (size_t t = 0; t < la.size(); ++t) {
            int v = x.glue[la[t]];
            if (rpos[v] == -1) {
              ok = false;
              break;
            }
            glue[t] = rpos[v];
          }
          if (!ok) continue;
          Obj dom = make_comma(x.cat, a.dom, b.dom, glue);
          out.push_back(combine_parts(x.cat, dom, x, a, b));
        }
      }
      break;
    }
  }
}

}  // namespace

std::vector<std::vector<char>> sub_signature(const Morphism& m) {
  const Obj& X = m.cod;
  switch (X.cat.kind) {
    case CatKind::FinSet:
    case CatKind::Graph:
    case CatKind::DAG: {
      std::vector<std::vector<char>> sig;
      auto cs = sort_sizes(X);
      for (size_t s = 0; s < m.maps.size(); ++s) {
        std::vector<char> mask(cs[s], 0);
        for (int v : m.maps[s]) mask[v] = 1;
        sig.push_back(std::move(mask));
      }
      return sig;
    }
    case CatKind::SGraph:
    case CatKind::Tree: {
      std::vector<char> vmask(X.n, 0);
      for (int v : m.maps[0]) vmask[v] = 1;
      std::vector<char> pmask(X.pairs.size(), 0);
      for (auto [u, v] : m.dom.pairs) {
        int idx = pair_index(X.pairs, m.maps[0][u], m.maps[0][v]);
        if (idx >= 0) pmask[idx] = 1;
      }
      return {vmask, pmask};
    }
    case CatKind::Product:
    case CatKind::Comma: {
      auto sig = sub_signature(part_morphism(m, 0));
      for (auto& s : sub_signature(part_morphism(m, 1))) sig.push_back(std::move(s));
      return sig;
    }
  }
  return {};
}

bool SubobjectLattice::leq(int i, int j) const {
  const auto& a = sigs[i];
  const auto& b = sigs[j];
  for (size_t s = 0; s < a.size(); ++s)
    for (size_t k = 0; k < a[s].size(); ++k)
      if (a[s][k] && !b[s][k]) return false;
  return true;
}

std::optional<int> SubobjectLattice::find(const Morphism& m) const {
  if (!(m.cod == carrier)) return std::nullopt;
  auto sig = sub_signature(m);
  for (int i = 0; i < size(); ++i)
    if (sigs[i] == sig) return i;
  return std::nullopt;
}

SubobjectLattice subobject_poset(const Obj& x, const MorphismClass* filter) {
  SubobjectLattice lat;
  lat.carrier = x;
  std::vector<Morphism> all;
  enumerate_subs(x, all);
  for (Morphism& m : all) {
    if (filter && !filter->member(m)) continue;
    lat.sigs.push_back(sub_signature(m));
    lat.elems.push_back(std::move(m));
  }
  return lat;
}

UnionDiagram union_via_pushout(const Morphism& m, const Morphism& n) {
  if (!(m.cod == n.cod))
    throw CategoryError("union: subobjects of different carriers");
  if (!is_componentwise_injective(m) || !is_componentwise_injective(n))
    throw CategoryError("union: inputs must be mono");
  UnionDiagram d;
  d.m = m;
  d.n = n;
  d.pb = pullback(m, n);
  d.po = pushout(d.pb.proj1, d.pb.proj2);
  auto u = pushout_mediator(d.po, m, n);
  if (!u) throw CategoryError("union: mediator missing");
  d.u = *u;
  if (!is_componentwise_injective(d.u))
    throw HypothesisError("union: mediator is not mono", describe(d.u));
  return d;
}

std::optional<int> join_oracle(int i, int j, const SubobjectLattice& lat) {
  std::vector<int> ubs;
  for (int k = 0; k < lat.size(); ++k)
    if (lat.leq(i, k) && lat.leq(j, k)) ubs.push_back(k);
  if (ubs.empty()) return std::nullopt;
  auto weight = [&](int k) {
    long long w = 0;
    for (const auto& slot : lat.sigs[k])
      for (char c : slot) w += c;
    return w;
  };
  int best = ubs[0];
  for (int k : ubs)
    if (weight(k) < weight(best)) best = k;
  for (int k : ubs)
    if (!lat.leq(best, k)) return std::nullopt;
  return best;
}

std::optional<int> join_oracle(const Morphism& m, const Morphism& n,
                               const SubobjectLattice& lat) {
  auto i = lat.find(m);
  auto j = lat.find(n);
  if (!i || !j) return std::nullopt;
  return join_oracle(*i, *j, lat);
}

}  // namespace mncat
