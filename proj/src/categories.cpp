#include "mncat/categories.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace mncat {

static constexpr long long kSearchCeiling = 20'000'000;

std::vector<std::string> validate_object(const Obj& x) {
  std::vector<std::string> out;
  switch (x.cat.kind) {
    case CatKind::FinSet:
      if (x.n < 0) out.push_back("finset: negative size");
      break;
    case CatKind::Graph:
    case CatKind::DAG: {
      if (x.n < 0) out.push_back("graph: negative vertex count");
      if (static_cast<int>(x.src.size()) != x.edge_count ||
          static_cast<int>(x.tgt.size()) != x.edge_count)
        out.push_back("graph: src/tgt length mismatch");
      for (int e = 0; e < x.edge_count; ++e)
        if (x.src[e] < 0 || x.src[e] >= x.n || x.tgt[e] < 0 || x.tgt[e] >= x.n) {
          out.push_back("graph: edge endpoint out of range");
          break;
        }
      if (x.cat.kind == CatKind::DAG && out.empty()) {
        try {
          make_dag(x.n, x.src, x.tgt);
        } catch (const CategoryError&) {
          out.push_back("dag: has a cycle");
        }
      }
      break;
    }
    case CatKind::SGraph: {
      if (x.n < 0) out.push_back("sgraph: negative vertex count");
      if (!std::is_sorted(x.pairs.begin(), x.pairs.end()))
        out.push_back("sgraph: edges not sorted");
      if (std::adjacent_find(x.pairs.begin(), x.pairs.end()) != x.pairs.end())
        out.push_back("sgraph: duplicate edge");
      for (auto [u, v] : x.pairs)
        if (u < 0 || u >= x.n || v < 0 || v >= x.n) {
          out.push_back("sgraph: edge endpoint out of range");
          break;
        }
      break;
    }
    case CatKind::Tree: {
      try {
        std::vector<std::pair<int, int>> ps = x.pairs;
        Obj t = make_tree(x.n, ps);
        if (!(t.pairs == x.pairs))
          out.push_back("tree: order not transitively closed");
      } catch (const CategoryError& e) {
        out.push_back(e.what());
      }
      break;
    }
    case CatKind::Product: {
      if (x.parts.size() != 2) {
        out.push_back("product: needs exactly two parts");
        break;
      }
      for (int i = 0; i < 2; ++i) {
        if (!(x.parts[i].cat == x.cat.factors[i]))
          out.push_back("product: part in wrong category");
        for (auto& p : validate_object(x.parts[i])) out.push_back(p);
      }
      break;
    }
    case CatKind::Comma: {
      if (x.parts.size() != 2) {
        out.push_back("comma: needs exactly two parts");
        break;
      }
      if (!(x.parts[0].cat == functor_domain(x.cat.left)) ||
          !(x.parts[1].cat == functor_domain(x.cat.right)))
        out.push_back("comma: part in wrong category");
      for (auto& p : validate_object(x.parts[0])) out.push_back(p);
      for (auto& p : validate_object(x.parts[1])) out.push_back(p);
      if (out.empty()) {
        int ls = functor_size(x.cat.left, x.parts[0], x.cat.kleene_max_len);
        int rs = functor_size(x.cat.right, x.parts[1], x.cat.kleene_max_len);
        if (static_cast<int>(x.glue.size()) != ls)
          out.push_back("comma: glue not total");
        else
          for (int v : x.glue)
            if (v < 0 || v >= rs) {
              out.push_back("comma: glue value out of range");
              break;
            }
      }
      break;
    }
  }
  return out;
}

std::vector<std::string> validate_morphism(const Morphism& f) {
  std::vector<std::string> out = validate_object(f.dom);
  for (auto& p : validate_object(f.cod)) out.push_back(p);
  if (!out.empty()) return out;
  if (!(f.dom.cat == f.cod.cat)) {
    out.push_back("morphism: endpoints in different categories");
    return out;
  }
  auto ds = sort_sizes(f.dom);
  auto cs = sort_sizes(f.cod);
  if (f.maps.size() != ds.size()) {
    out.push_back("morphism: wrong number of component maps");
    return out;
  }
  for (size_t s = 0; s < ds.size(); ++s) {
    if (static_cast<int>(f.maps[s].size()) != ds[s]) {
      out.push_back("morphism: component map not total");
      return out;
    }
    for (int v : f.maps[s])
      if (v < 0 || v >= cs[s]) {
        out.push_back("morphism: component map out of range");
        return out;
      }
  }
  if (!preserves_structure(f)) out.push_back("morphism: does not preserve structure");
  return out;
}

std::vector<Morphism> hom_set(const Obj& a, const Obj& b) {
  auto ds = sort_sizes(a);
  auto cs = sort_sizes(b);
  long long raw = 1;
  for (size_t s = 0; s < ds.size(); ++s) {
    for (int i = 0; i < ds[s]; ++i) {
      raw *= cs[s];
      if (raw > kSearchCeiling)
        throw CategoryError("hom_set: search space exceeds ceiling");
      if (raw == 0) break;
    }
  }
  std::vector<Morphism> out;
  // An empty codomain sort with a nonempty domain sort kills everything.
  for (size_t s = 0; s < ds.size(); ++s)
    if (cs[s] == 0 && ds[s] > 0) return out;

  Morphism f;
  f.dom = a;
  f.cod = b;
  f.maps.resize(ds.size());
  for (size_t s = 0; s < ds.size(); ++s) f.maps[s].assign(ds[s], 0);
  while (true) {
    if (preserves_structure(f)) out.push_back(f);
    // Odometer: bump the last position.
    int s = static_cast<int>(ds.size()) - 1;
    int i = s >= 0 ? ds[s] - 1 : -1;
    while (s >= 0) {
      if (i < 0) {
        --s;
        i = s >= 0 ? ds[s] - 1 : -1;
        continue;
      }
      if (++f.maps[s][i] < cs[s]) break;
      f.maps[s][i] = 0;
      --i;
    }
    if (s < 0) break;
  }
  return out;
}

std::string morphism_key(const Morphism& f) {
  std::ostringstream os;
  for (const auto& m : f.maps) {
    for (int v : m) os << v << ',';
    os << ';';
  }
  return os.str();
}

// ---- object enumeration ----------------------------------------------------

static std::string catid_key(const CategoryId& c) {
  std::ostringstream os;
  os << c.name() << '#' << c.kleene_max_len;
  if (c.kind == CatKind::Comma)
    os << '#' << c.kleene_max_len;
  return os.str();
}

// Canonical key of a list of pairs under vertex permutations.
static std::string canon_pairs(int n, const std::vector<std::pair<int, int>>& ps) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(ps.size());
    for (auto [u, v] : ps) mapped.emplace_back(perm[u], perm[v]);
    std::sort(mapped.begin(), mapped.end());
    std::ostringstream os;
    for (auto [u, v] : mapped) os << u << '>' << v << ';';
    std::string key = os.str();
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return 'n' + std::to_string(n) + '|' + best;
}

static void enumerate_into(const CategoryId& cat, int bound,
                           std::vector<Obj>& out) {
  switch (cat.kind) {
    case CatKind::FinSet:
      for (int n = 0; n <= bound; ++n) out.push_back(make_finset(n));
      break;
    case CatKind::SGraph: {
      for (int n = 0; n <= bound; ++n) {
        int cells = n * n;
        if (cells > 25) throw CategoryError("enumerate: sgraph bound exceeds ceiling");
        std::map<std::string, Obj> reps;
        for (long long mask = 0; mask < (1LL << cells); ++mask) {
          std::vector<std::pair<int, int>> es;
          for (int c = 0; c < cells; ++c)
            if (mask & (1LL << c)) es.emplace_back(c / n, c % n);
          std::string key = canon_pairs(n, es);
          if (!reps.count(key)) reps.emplace(key, make_sgraph(n, es));
        }
        for (auto& [k, o] : reps) out.push_back(o);
      }
      break;
    }
    case CatKind::Graph:
    case CatKind::DAG: {
      bool dag = cat.kind == CatKind::DAG;
      for (int v = 0; v <= bound; ++v) {
        for (int e = 0; e <= bound; ++e) {
          if (v == 0 && e > 0) continue;
          long long raw = 1;
          for (int i = 0; i < 2 * e; ++i) {
            raw *= v;
            if (raw > kSearchCeiling)
              throw CategoryError("enumerate: graph bound exceeds ceiling");
          }
          std::map<std::string, Obj> reps;
          std::vector<int> st(2 * e, 0);  // src then tgt, interleaved
          while (true) {
            std::vector<int> src(e), tgt(e);
            for (int i = 0; i < e; ++i) {
              src[i] = st[2 * i];
              tgt[i] = st[2 * i + 1];
            }
            std::vector<std::pair<int, int>> ps;
            for (int i = 0; i < e; ++i) ps.emplace_back(src[i], tgt[i]);
            std::string key = canon_pairs(v, ps);
            if (!reps.count(key)) {
              try {
                Obj g = dag ? make_dag(v, src, tgt) : make_graph(v, src, tgt);
                reps.emplace(key, std::move(g));
              } catch (const CategoryError&) {
                // cyclic candidate in DAG mode; skip but remember the key so
                // we do not retry its whole iso class
                reps.emplace(key, Obj{});
              }
            }
            int i = 2 * e - 1;
            while (i >= 0 && ++st[i] == v) st[i--] = 0;
            if (i < 0) break;
          }
          for (auto& [k, o] : reps)
            if (o.cat.kind == cat.kind && !(o == Obj{})) out.push_back(o);
        }
      }
      break;
    }
    case CatKind::Tree: {
      for (int n = 0; n <= bound; ++n) {
        long long raw = 1;
        for (int i = 0; i < n; ++i) {
          raw *= (n + 1);
          if (raw > kSearchCeiling)
            throw CategoryError("enumerate: tree bound exceeds ceiling");
        }
        std::map<std::string, Obj> reps;
        std::vector<int> parent(n, -1);
        while (true) {
          // parent[] acyclic?  follow chains with a step counter
          bool ok = true;
          for (int i = 0; i < n && ok; ++i) {
            int cur = i, steps = 0;
            while (cur != -1 && steps <= n) {
              cur = parent[cur];
              ++steps;
            }
            if (cur != -1) ok = false;
          }
          if (ok) {
            std::vector<std::pair<int, int>> strict;
            for (int i = 0; i < n; ++i)
              for (int a = parent[i]; a != -1; a = parent[a])
                strict.emplace_back(a, i);
            std::string key = canon_pairs(n, strict);
            if (!reps.count(key)) reps.emplace(key, make_tree(n, strict));
          }
          int i = n - 1;
          while (i >= 0) {
            ++parent[i];
            if (parent[i] == i) ++parent[i];
            if (parent[i] < n) break;
            parent[i--] = -1;
          }
          if (i < 0) break;
        }
        for (auto& [k, o] : reps) out.push_back(o);
      }
      break;
    }
    case CatKind::Product: {
      const auto& fs = enumerate_objects(cat.factors[0], bound);
      const auto& ss = enumerate_objects(cat.factors[1], bound);
      for (const Obj& a : fs)
        for (const Obj& b : ss) out.push_back(make_product(a, b));
      break;
    }
    case CatKind::Comma: {
      const auto& ls = enumerate_objects(functor_domain(cat.left), bound);
      const auto& rs = enumerate_objects(functor_domain(cat.right), bound);
      for (const Obj& a : ls) {
        for (const Obj& b : rs) {
          int lsz = functor_size(cat.left, a, cat.kleene_max_len);
          int rsz = functor_size(cat.right, b, cat.kleene_max_len);
          long long raw = 1;
          for (int i = 0; i < lsz; ++i) {
            raw *= rsz;
            if (raw > kSearchCeiling)
              throw CategoryError("enumerate: comma bound exceeds ceiling");
          }
          if (rsz == 0 && lsz > 0) continue;
          // Canonical glue under Aut(a) x Aut(b).
          const auto& auts_a = automorphisms(a);
          const auto& auts_b = automorphisms(b);
          std::vector<std::vector<int>> la, rb;
          for (const Morphism& p : auts_a)
            la.push_back(functor_apply(cat.left, p, cat.kleene_max_len));
          for (const Morphism& p : auts_b)
            rb.push_back(functor_apply(cat.right, p, cat.kleene_max_len));
          std::vector<int> glue(lsz, 0);
          while (true) {
            // glue' = R(psi) . glue . L(phi)^-1; equivalently compare
            // R(psi)[glue[L(phi)[i]]] over all pairs and keep the minimum.
            bool canonical = true;
            for (const auto& lp : la) {
              for (const auto& rp : rb) {
                std::vector<int> g2(lsz);
                for (int i = 0; i < lsz; ++i) g2[lp[i]] = rp[glue[i]];
                if (g2 < glue) {
                  canonical = false;
                  break;
                }
              }
              if (!canonical) break;
            }
            if (canonical) out.push_back(make_comma(cat, a, b, glue));
            int i = lsz - 1;
            while (i >= 0 && ++glue[i] == rsz) glue[i--] = 0;
            if (i < 0) break;
          }
        }
      }
      break;
    }
  }
}

const std::vector<Obj>& enumerate_objects(const CategoryId& cat, int bound) {
  static std::map<std::string, std::vector<Obj>> cache;
  std::string key = catid_key(cat) + "@" + std::to_string(bound);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Obj> out;
  enumerate_into(cat, bound, out);
  return cache.emplace(key, std::move(out)).first->second;
}

// ---- iso search ------------------------------------------------------------

static bool next_perm_tuple(std::vector<std::vector<int>>& perms) {
  for (int s = static_cast<int>(perms.size()) - 1; s >= 0; --s) {
    if (std::next_permutation(perms[s].begin(), perms[s].end())) return true;
    // already reset to identity by next_permutation returning false
  }
  return false;
}

std::optional<Morphism> find_iso(const Obj& a, const Obj& b) {
  if (!(a.cat == b.cat)) return std::nullopt;
  auto as = sort_sizes(a), bs = sort_sizes(b);
  if (as != bs) return std::nullopt;
  std::vector<std::vector<int>> perms;
  for (int s : as) {
    std::vector<int> p(s);
    std::iota(p.begin(), p.end(), 0);
    perms.push_back(std::move(p));
  }
  Morphism f;
  f.dom = a;
  f.cod = b;
  do {
    f.maps = perms;
    if (preserves_structure(f) && morphism_is_iso(f)) return f;
  } while (next_perm_tuple(perms));
  return std::nullopt;
}

bool isomorphic(const Obj& a, const Obj& b) { return find_iso(a, b).has_value(); }

const std::vector<Morphism>& automorphisms(const Obj& x) {
  static std::map<std::string, std::vector<Morphism>> cache;
  std::string key = catid_key(x.cat) + "@" + describe(x);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Morphism> out;
  auto xs = sort_sizes(x);
  std::vector<std::vector<int>> perms;
  for (int s : xs) {
    std::vector<int> p(s);
    std::iota(p.begin(), p.end(), 0);
    perms.push_back(std::move(p));
  }
  Morphism f;
  f.dom = x;
  f.cod = x;
  do {
    f.maps = perms;
    if (preserves_structure(f) && morphism_is_iso(f)) out.push_back(f);
  } while (next_perm_tuple(perms));
  return cache.emplace(key, std::move(out)).first->second;
}

std::vector<Morphism> hom_set_mod_precompose(const Obj& a, const Obj& b) {
  const auto& auts = automorphisms(a);
  std::vector<Morphism> out;
  for (const Morphism& w : hom_set(a, b)) {
    std::string k = morphism_key(w);
    bool minimal = true;
    for (const Morphism& phi : auts) {
      if (morphism_key(compose(w, phi)) < k) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(w);
  }
  return out;
}

std::vector<Morphism> hom_set_mod_postcompose(const Obj& a, const Obj& b) {
  const auto& auts = automorphisms(b);
  std::vector<Morphism> out;
  for (const Morphism& w : hom_set(a, b)) {
    std::string k = morphism_key(w);
    bool minimal = true;
    for (const Morphism& phi : auts) {
      if (morphism_key(compose(phi, w)) < k) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(w);
  }
  return out;
}

}  // namespace mncat
