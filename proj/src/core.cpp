#include "mncat/core.hpp"

#include <algorithm>
#include <sstream>

#include "mncat/categories.hpp"

namespace mncat {

std::string functor_tag_name(FunctorTag t) {
  switch (t) {
    case FunctorTag::USGraph: return "u_sgraph";
    case FunctorTag::UDAG: return "u_dag";
    case FunctorTag::UTree: return "u_tree";
    case FunctorTag::Square: return "square";
    case FunctorTag::KleeneSq: return "kleene_sq";
  }
  return "?";
}

std::string CategoryId::name() const {
  switch (kind) {
    case CatKind::FinSet: return "finset";
    case CatKind::Graph: return "graph";
    case CatKind::SGraph: return "sgraph";
    case CatKind::DAG: return "dag";
    case CatKind::Tree: return "tree";
    case CatKind::Product:
      return "product(" + factors[0].name() + "," + factors[1].name() + ")";
    case CatKind::Comma:
      return "comma(" + functor_tag_name(left) + "," + functor_tag_name(right) +
             ")";
  }
  return "?";
}

Obj make_finset(int n) {
  if (n < 0) throw CategoryError("finset: negative size");
  Obj x;
  x.cat = CategoryId::finset();
  x.n = n;
  return x;
}

static Obj make_graph_like(CategoryId cat, int vertices, std::vector<int> src,
                           std::vector<int> tgt) {
  if (vertices < 0 || src.size() != tgt.size())
    throw CategoryError("graph: bad vertex/edge data");
  Obj x;
  x.cat = std::move(cat);
  x.n = vertices;
  x.edge_count = static_cast<int>(src.size());
  x.src = std::move(src);
  x.tgt = std::move(tgt);
  for (int e = 0; e < x.edge_count; ++e)
    if (x.src[e] < 0 || x.src[e] >= x.n || x.tgt[e] < 0 || x.tgt[e] >= x.n)
      throw CategoryError("graph: edge endpoint out of range");
  return x;
}

Obj make_graph(int vertices, std::vector<int> src, std::vector<int> tgt) {
  return make_graph_like(CategoryId::graph(), vertices, std::move(src),
                         std::move(tgt));
}

static bool graph_is_acyclic(const Obj& g, std::vector<int>* cycle_out);

Obj make_dag(int vertices, std::vector<int> src, std::vector<int> tgt) {
  Obj x = make_graph_like(CategoryId::dag(), vertices, std::move(src),
                          std::move(tgt));
  std::vector<int> cyc;
  if (!graph_is_acyclic(x, &cyc)) throw CategoryError("dag: input has a cycle");
  return x;
}

Obj make_sgraph(int vertices, std::vector<std::pair<int, int>> edges) {
  if (vertices < 0) throw CategoryError("sgraph: negative size");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto [u, v] : edges)
    if (u < 0 || u >= vertices || v < 0 || v >= vertices)
      throw CategoryError("sgraph: edge endpoint out of range");
  Obj x;
  x.cat = CategoryId::sgraph();
  x.n = vertices;
  x.pairs = std::move(edges);
  return x;
}

Obj make_tree(int elems, std::vector<std::pair<int, int>> strict_pairs) {
  if (elems < 0) throw CategoryError("tree: negative size");
  // Transitive closure of the given strict pairs.
  std::vector<std::vector<char>> lt(elems, std::vector<char>(elems, 0));
  for (auto [a, b] : strict_pairs) {
    if (a < 0 || a >= elems || b < 0 || b >= elems)
      throw CategoryError("tree: pair out of range");
    lt[a][b] = 1;
  }
  for (int k = 0; k < elems; ++k)
    for (int i = 0; i < elems; ++i)
      if (lt[i][k])
        for (int j = 0; j < elems; ++j)
          if (lt[k][j]) lt[i][j] = 1;
  for (int i = 0; i < elems; ++i)
    if (lt[i][i]) throw CategoryError("tree: order has a cycle");
  Obj x;
  x.cat = CategoryId::tree();
  x.n = elems;
  for (int a = 0; a < elems; ++a)
    for (int b = 0; b < elems; ++b)
      if (lt[a][b]) x.pairs.emplace_back(a, b);
  // Tree-order condition: predecessor sets are totally ordered.
  for (int e = 0; e < elems; ++e)
    for (int a = 0; a < elems; ++a)
      for (int b = 0; b < elems; ++b)
        if (lt[a][e] && lt[b][e] && a != b && !lt[a][b] && !lt[b][a])
          throw CategoryError("tree: predecessors not totally ordered");
  return x;
}

Obj make_product(Obj first, Obj second) {
  Obj x;
  x.cat = CategoryId::product(first.cat, second.cat);
  x.parts = {std::move(first), std::move(second)};
  return x;
}

Obj make_comma(const CategoryId& cat, Obj left, Obj right,
               std::vector<int> glue) {
  if (cat.kind != CatKind::Comma) throw CategoryError("make_comma: not a comma category");
  if (!(left.cat == functor_domain(cat.left)) ||
      !(right.cat == functor_domain(cat.right)))
    throw CategoryError("make_comma: part lives in the wrong category");
  int ls = functor_size(cat.left, left, cat.kleene_max_len);
  int rs = functor_size(cat.right, right, cat.kleene_max_len);
  if (static_cast<int>(glue.size()) != ls)
    throw CategoryError("make_comma: glue not total");
  for (int v : glue)
    if (v < 0 || v >= rs) throw CategoryError("make_comma: glue out of range");
  Obj x;
  x.cat = cat;
  x.parts = {std::move(left), std::move(right)};
  x.glue = std::move(glue);
  return x;
}

int sort_count(const CategoryId& cat) {
  switch (cat.kind) {
    case CatKind::FinSet:
    case CatKind::SGraph:
    case CatKind::Tree:
      return 1;
    case CatKind::Graph:
    case CatKind::DAG:
      return 2;
    case CatKind::Product:
      return sort_count(cat.factors[0]) + sort_count(cat.factors[1]);
    case CatKind::Comma:
      return sort_count(functor_domain(cat.left)) +
             sort_count(functor_domain(cat.right));
  }
  return 0;
}

std::vector<int> sort_sizes(const Obj& x) {
  switch (x.cat.kind) {
    case CatKind::FinSet:
    case CatKind::SGraph:
    case CatKind::Tree:
      return {x.n};
    case CatKind::Graph:
    case CatKind::DAG:
      return {x.n, x.edge_count};
    case CatKind::Product:
    case CatKind::Comma: {
      std::vector<int> out = sort_sizes(x.parts[0]);
      for (int s : sort_sizes(x.parts[1])) out.push_back(s);
      return out;
    }
  }
  return {};
}

bool tree_leq(const Obj& t, int a, int b) {
  if (a == b) return true;
  return std::binary_search(t.pairs.begin(), t.pairs.end(),
                            std::make_pair(a, b));
}

static bool graph_is_acyclic(const Obj& g, std::vector<int>* cycle_out) {
  std::vector<int> state(g.n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::vector<int>> out(g.n);
  for (int e = 0; e < g.edge_count; ++e) out[g.src[e]].push_back(g.tgt[e]);
  std::vector<int> path;
  // Iterative DFS with explicit stack of (vertex, next-child-index).
  for (int root = 0; root < g.n; ++root) {
    if (state[root]) continue;
    std::vector<std::pair<int, size_t>> stk{{root, 0}};
    state[root] = 1;
    path = {root};
    while (!stk.empty()) {
      auto& [v, i] = stk.back();
      if (i < out[v].size()) {
        int u = out[v][i++];
        if (state[u] == 1) {
          if (cycle_out) {
            auto it = std::find(path.begin(), path.end(), u);
            *cycle_out = std::vector<int>(it, path.end());
          }
          return false;
        }
        if (state[u] == 0) {
          state[u] = 1;
          stk.push_back({u, 0});
          path.push_back(u);
        }
      } else {
        state[v] = 2;
        stk.pop_back();
        path.pop_back();
      }
    }
  }
  return true;
}

Morphism identity(const Obj& x) {
  Morphism f;
  f.dom = x;
  f.cod = x;
  for (int s : sort_sizes(x)) {
    std::vector<int> m(s);
    for (int i = 0; i < s; ++i) m[i] = i;
    f.maps.push_back(std::move(m));
  }
  return f;
}

Morphism compose(const Morphism& f, const Morphism& g) {
  if (!(g.cod == f.dom))
    throw CategoryError("compose: cod(g) != dom(f)");
  Morphism h;
  h.dom = g.dom;
  h.cod = f.cod;
  h.maps.resize(g.maps.size());
  for (size_t s = 0; s < g.maps.size(); ++s) {
    h.maps[s].resize(g.maps[s].size());
    for (size_t i = 0; i < g.maps[s].size(); ++i)
      h.maps[s][i] = f.maps[s][g.maps[s][i]];
  }
  return h;
}

static bool sorted_pairs_contains(const std::vector<std::pair<int, int>>& ps,
                                  int a, int b) {
  return std::binary_search(ps.begin(), ps.end(), std::make_pair(a, b));
}

bool preserves_structure(const Morphism& f) {
  const Obj& A = f.dom;
  const Obj& B = f.cod;
  switch (A.cat.kind) {
    case CatKind::FinSet:
      return true;
    case CatKind::Graph:
    case CatKind::DAG: {
      const auto& fv = f.maps[0];
      const auto& fe = f.maps[1];
      for (int e = 0; e < A.edge_count; ++e)
        if (fv[A.src[e]] != B.src[fe[e]] || fv[A.tgt[e]] != B.tgt[fe[e]])
          return false;
      return true;
    }
    case CatKind::SGraph: {
      const auto& fv = f.maps[0];
      for (auto [u, v] : A.pairs)
        if (!sorted_pairs_contains(B.pairs, fv[u], fv[v])) return false;
      return true;
    }
    case CatKind::Tree: {
      const auto& fm = f.maps[0];
      for (auto [a, b] : A.pairs)
        if (!tree_leq(B, fm[a], fm[b])) return false;
      return true;
    }
    case CatKind::Product:
      return preserves_structure(part_morphism(f, 0)) &&
             preserves_structure(part_morphism(f, 1));
    case CatKind::Comma: {
      Morphism h = part_morphism(f, 0);
      Morphism k = part_morphism(f, 1);
      if (!preserves_structure(h) || !preserves_structure(k)) return false;
      int klen = A.cat.kleene_max_len;
      std::vector<int> lh = functor_apply(A.cat.left, h, klen);
      std::vector<int> rk = functor_apply(A.cat.right, k, klen);
      // Naturality: glue_B(L(h)(a)) == R(k)(glue_A(a)).
      for (size_t a = 0; a < lh.size(); ++a)
        if (B.glue[lh[a]] != rk[A.glue[a]]) return false;
      return true;
    }
  }
  return false;
}

bool morphism_valid(const Morphism& f) {
  auto ds = sort_sizes(f.dom);
  auto cs = sort_sizes(f.cod);
  if (f.maps.size() != ds.size()) return false;
  for (size_t s = 0; s < ds.size(); ++s) {
    if (static_cast<int>(f.maps[s].size()) != ds[s]) return false;
    for (int v : f.maps[s])
      if (v < 0 || v >= cs[s]) return false;
  }
  return preserves_structure(f);
}

bool is_componentwise_injective(const Morphism& f) {
  auto cs = sort_sizes(f.cod);
  for (size_t s = 0; s < f.maps.size(); ++s) {
    std::vector<char> seen(cs[s], 0);
    for (int v : f.maps[s]) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_componentwise_surjective(const Morphism& f) {
  auto cs = sort_sizes(f.cod);
  for (size_t s = 0; s < f.maps.size(); ++s) {
    std::vector<char> seen(cs[s], 0);
    for (int v : f.maps[s]) seen[v] = 1;
    for (int i = 0; i < cs[s]; ++i)
      if (!seen[i]) return false;
  }
  return true;
}

std::optional<Morphism> inverse(const Morphism& f) {
  auto ds = sort_sizes(f.dom);
  auto cs = sort_sizes(f.cod);
  if (ds != cs) return std::nullopt;
  Morphism g;
  g.dom = f.cod;
  g.cod = f.dom;
  g.maps.resize(f.maps.size());
  for (size_t s = 0; s < f.maps.size(); ++s) {
    g.maps[s].assign(cs[s], -1);
    for (int i = 0; i < ds[s]; ++i) {
      if (g.maps[s][f.maps[s][i]] != -1) return std::nullopt;
      g.maps[s][f.maps[s][i]] = i;
    }
    for (int v : g.maps[s])
      if (v == -1) return std::nullopt;
  }
  if (!preserves_structure(g)) return std::nullopt;
  return g;
}

bool morphism_is_iso(const Morphism& f) { return inverse(f).has_value(); }

MorphismTraits classify(const Morphism& f) {
  MorphismTraits t;
  t.is_mono = is_componentwise_injective(f);
  t.is_epi = is_componentwise_surjective(f);
  t.is_iso = t.is_mono && t.is_epi && morphism_is_iso(f);
  t.is_split_mono = false;
  if (t.is_iso) {
    t.is_split_mono = true;
  } else if (t.is_mono) {
    Morphism idd = identity(f.dom);
    for (const Morphism& r : hom_set(f.cod, f.dom)) {
      if (compose(r, f) == idd) {
        t.is_split_mono = true;
        break;
      }
    }
  }
  return t;
}

Morphism part_morphism(const Morphism& f, int idx) {
  const Obj& A = f.dom;
  if (A.cat.kind != CatKind::Product && A.cat.kind != CatKind::Comma)
    throw CategoryError("part_morphism: not a composite category");
  int s0 = static_cast<int>(sort_sizes(A.parts[0]).size());
  Morphism g;
  g.dom = A.parts[idx];
  g.cod = f.cod.parts[idx];
  if (idx == 0)
    g.maps.assign(f.maps.begin(), f.maps.begin() + s0);
  else
    g.maps.assign(f.maps.begin() + s0, f.maps.end());
  return g;
}

Morphism combine_parts(const CategoryId& cat, const Obj& dom, const Obj& cod,
                       const Morphism& first, const Morphism& second) {
  (void)cat;
  Morphism f;
  f.dom = dom;
  f.cod = cod;
  f.maps = first.maps;
  for (const auto& m : second.maps) f.maps.push_back(m);
  return f;
}

std::string describe(const Obj& x) {
  std::ostringstream os;
  switch (x.cat.kind) {
    case CatKind::FinSet:
      os << "finset(" << x.n << ")";
      break;
    case CatKind::Graph:
    case CatKind::DAG: {
      os << (x.cat.kind == CatKind::Graph ? "graph" : "dag") << "(v=" << x.n
         << ";";
      for (int e = 0; e < x.edge_count; ++e)
        os << (e ? "," : "") << x.src[e] << ">" << x.tgt[e];
      os << ")";
      break;
    }
    case CatKind::SGraph: {
      os << "sgraph(v=" << x.n << ";";
      bool first = true;
      for (auto [u, v] : x.pairs) {
        os << (first ? "" : ",") << u << ">" << v;
        first = false;
      }
      os << ")";
      break;
    }
    case CatKind::Tree: {
      os << "tree(n=" << x.n << ";";
      bool first = true;
      for (auto [a, b] : x.pairs) {
        os << (first ? "" : ",") << a << "<" << b;
        first = false;
      }
      os << ")";
      break;
    }
    case CatKind::Product:
      os << "prod[" << describe(x.parts[0]) << "," << describe(x.parts[1])
         << "]";
      break;
    case CatKind::Comma: {
      os << "comma[" << describe(x.parts[0]) << "," << describe(x.parts[1])
         << ";glue=";
      for (size_t i = 0; i < x.glue.size(); ++i)
        os << (i ? "," : "") << x.glue[i];
      os << "]";
      break;
    }
  }
  return os.str();
}

std::string describe(const Morphism& f) {
  std::ostringstream os;
  os << describe(f.dom) << " -> " << describe(f.cod) << " via [";
  for (size_t s = 0; s < f.maps.size(); ++s) {
    if (s) os << "|";
    for (size_t i = 0; i < f.maps[s].size(); ++i)
      os << (i ? "," : "") << f.maps[s][i];
  }
  os << "]";
  return os.str();
}

CategoryId functor_domain(FunctorTag t) {
  switch (t) {
    case FunctorTag::USGraph: return CategoryId::sgraph();
    case FunctorTag::UDAG: return CategoryId::dag();
    case FunctorTag::UTree: return CategoryId::tree();
    case FunctorTag::Square:
    case FunctorTag::KleeneSq:
      return CategoryId::finset();
  }
  return CategoryId::finset();
}

// Number of words of length <= maxlen over an n-letter alphabet.
static long long kleene_word_count(int n, int maxlen) {
  long long total = 0, pw = 1;
  for (int len = 0; len <= maxlen; ++len) {
    total += pw;
    pw *= n;
  }
  return total;
}

int functor_size(FunctorTag t, const Obj& x, int kleene_len) {
  switch (t) {
    case FunctorTag::USGraph:
    case FunctorTag::UDAG:
    case FunctorTag::UTree:
      return x.n;
    case FunctorTag::Square:
      return x.n * x.n;
    case FunctorTag::KleeneSq: {
      long long w = kleene_word_count(x.n, kleene_len);
      if (w * w > 1'000'000)
        throw CategoryError("kleene_sq: functor image too large");
      return static_cast<int>(w * w);
    }
  }
  return 0;
}

// Word index: ordered by length then lexicographically; digits are
// most-significant-first.
static void kleene_decode(long long idx, int n, int maxlen,
                          std::vector<int>& word) {
  word.clear();
  long long pw = 1;
  for (int len = 0; len <= maxlen; ++len) {
    if (idx < pw) {
      for (int i = 0; i < len; ++i) word.push_back(0);
      for (int i = len - 1; i >= 0; --i) {
        word[i] = static_cast<int>(idx % n);
        idx /= n;
      }
      return;
    }
    idx -= pw;
    pw *= n;
  }
  throw CategoryError("kleene: word index out of range");
}

static long long kleene_encode(const std::vector<int>& word, int n) {
  long long idx = 0, pw = 1;
  for (size_t len = 0; len < word.size(); ++len) {
    idx += pw;
    pw *= n;
  }
  long long v = 0;
  for (int d : word) v = v * n + d;
  return idx + v;
}

std::vector<int> functor_apply(FunctorTag t, const Morphism& f,
                               int kleene_len) {
  switch (t) {
    case FunctorTag::USGraph:
    case FunctorTag::UDAG:
    case FunctorTag::UTree:
      return f.maps[0];
    case FunctorTag::Square: {
      int dn = f.dom.n, cn = f.cod.n;
      const auto& k = f.maps[0];
      std::vector<int> out(dn * dn);
      for (int a = 0; a < dn; ++a)
        for (int b = 0; b < dn; ++b) out[a * dn + b] = k[a] * cn + k[b];
      return out;
    }
    case FunctorTag::KleeneSq: {
      int dn = f.dom.n, cn = f.cod.n;
      const auto& k = f.maps[0];
      long long dw = kleene_word_count(dn, kleene_len);
      long long cw = kleene_word_count(cn, kleene_len);
      std::vector<long long> wmap(dw);
      std::vector<int> word;
      for (long long i = 0; i < dw; ++i) {
        kleene_decode(i, dn, kleene_len, word);
        for (int& d : word) d = k[d];
        wmap[i] = kleene_encode(word, cn);
      }
      std::vector<int> out(static_cast<size_t>(dw * dw));
      for (long long a = 0; a < dw; ++a)
        for (long long b = 0; b < dw; ++b)
          out[static_cast<size_t>(a * dw + b)] =
              static_cast<int>(wmap[a] * cw + wmap[b]);
      return out;
    }
  }
  return {};
}

}  // namespace mncat
