#include "mncat/classes.hpp"

#include <algorithm>

#include "mncat/categories.hpp"
#include "mncat/limits.hpp"

namespace mncat {

static bool dcl_member(const Morphism& f) {
  const Obj& G = f.dom;
  const Obj& H = f.cod;
  if (!is_componentwise_injective(f)) return false;
  switch (G.cat.kind) {
    case CatKind::Graph:
    case CatKind::DAG: {
      std::vector<char> vin(H.n, 0);
      for (int v : f.maps[0]) vin[v] = 1;
      std::vector<char> ein(H.edge_count, 0);
      for (int e : f.maps[1]) ein[e] = 1;
      for (int e = 0; e < H.edge_count; ++e)
        if (vin[H.tgt[e]] && !ein[e]) return false;
      return true;
    }
    case CatKind::SGraph: {
      std::vector<char> vin(H.n, 0);
      for (int v : f.maps[0]) vin[v] = 1;
      for (auto [u, v] : H.pairs) {
        if (!vin[v]) continue;
        bool covered = false;
        for (auto [u0, v0] : G.pairs)
          if (f.maps[0][u0] == u && f.maps[0][v0] == v) {
            covered = true;
            break;
          }
        if (!covered) return false;
      }
      return true;
    }
    default:
      throw CategoryError("dcl: undefined for category " + G.cat.name());
  }
}

bool MorphismClass::member(const Morphism& f) const {
  switch (kind) {
    case Kind::Mor:
      return true;
    case Kind::Mono:
      return is_componentwise_injective(f);
    case Kind::Reg:
      return is_regular_mono(f);
    case Kind::Split:
      return classify(f).is_split_mono;
    case Kind::Dcl:
      return dcl_member(f);
    case Kind::Intersection:
      for (const auto& p : parts)
        if (!p.member(f)) return false;
      return true;
    case Kind::Pairwise: {
      if (f.dom.cat.kind != CatKind::Product &&
          f.dom.cat.kind != CatKind::Comma)
        throw CategoryError("pairwise class: morphism not in a composite category");
      return parts[0].member(part_morphism(f, 0)) &&
             parts[1].member(part_morphism(f, 1));
    }
  }
  return false;
}

std::string MorphismClass::name() const {
  switch (kind) {
    case Kind::Mor: return "mor";
    case Kind::Mono: return "mono";
    case Kind::Reg: return "reg";
    case Kind::Split: return "split";
    case Kind::Dcl: return "dcl";
    case Kind::Intersection: {
      std::string s;
      for (size_t i = 0; i < parts.size(); ++i)
        s += (i ? "&" : "") + parts[i].name();
      return s;
    }
    case Kind::Pairwise:
      return parts[0].name() + "*" + parts[1].name();
  }
  return "?";
}

static MorphismClass parse_atom(const std::string& t) {
  if (t == "mor") return MorphismClass::mor();
  if (t == "mono") return MorphismClass::mono();
  if (t == "reg") return MorphismClass::reg();
  if (t == "split") return MorphismClass::split();
  if (t == "dcl" || t == "dcl-d" || t == "dcl_d" || t == "dcl-s" || t == "dcl_s")
    return MorphismClass::dcl();
  throw CategoryError("unknown morphism class: " + t);
}

MorphismClass parse_class(const std::string& token) {
  auto split_on = [](const std::string& s, char c) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i)
      if (i == s.size() || s[i] == c) {
        out.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    return out;
  };
  if (token.find('&') != std::string::npos) {
    auto ts = split_on(token, '&');
    MorphismClass cls = parse_class(ts[0]);
    for (size_t i = 1; i < ts.size(); ++i)
      cls = MorphismClass::intersection(cls, parse_class(ts[i]));
    return cls;
  }
  if (token.find('*') != std::string::npos) {
    auto ts = split_on(token, '*');
    if (ts.size() != 2) throw CategoryError("pairwise class needs two parts");
    return MorphismClass::pairwise(parse_atom(ts[0]), parse_atom(ts[1]));
  }
  return parse_atom(token);
}

PreadhesiveReport validate_preadhesive(const CategoryId& cat,
                                       const MorphismClass& M,
                                       const MorphismClass& N,
                                       int sample_bound) {
  const auto& objs = enumerate_objects(cat, sample_bound);
  int no = static_cast<int>(objs.size());

  struct Arrow {
    int d, c;
    Morphism f;
    bool in_m, in_n;
  };
  std::vector<Arrow> arrows;
  // index of arrows grouped by (dom, cod)
  std::vector<std::vector<std::vector<int>>> by_dc(
      no, std::vector<std::vector<int>>(no));
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      for (Morphism& f : hom_set(objs[i], objs[j])) {
        Arrow a{i, j, f, M.member(f), N.member(f)};
        by_dc[i][j].push_back(static_cast<int>(arrows.size()));
        arrows.push_back(std::move(a));
      }

  PreadhesiveReport rep;
  rep.bound = sample_bound;
  auto verdict = [&](const std::string& axiom) -> AxiomVerdict& {
    rep.axioms.push_back({axiom, true, ""});
    return rep.axioms.back();
  };
  auto fail = [&](AxiomVerdict& v, const std::string& w) {
    if (v.holds) {
      v.holds = false;
      v.witness = w;
    }
  };

  {
    auto& v = verdict("iso-closure");
    for (const Arrow& a : arrows) {
      if (!morphism_is_iso(a.f)) continue;
      if (!a.in_m) fail(v, "iso not in M: " + describe(a.f));
      if (!a.in_n) fail(v, "iso not in N: " + describe(a.f));
    }
  }
  {
    auto& vc = verdict("composition-closure");
    auto& vd = verdict("decomposition-closure");
    auto& vn = verdict("N closed under M-decomposition");
    for (const Arrow& f : arrows) {
      for (int k = 0; k < no; ++k) {
        for (int gi : by_dc[f.c][k]) {
          const Arrow& g = arrows[gi];
          Morphism gf = compose(g.f, f.f);
          bool gf_m = M.member(gf), gf_n = N.member(gf);
          if (f.in_m && g.in_m && !gf_m)
            fail(vc, "M: g.f escapes, f=" + describe(f.f) + " g=" + describe(g.f));
          if (f.in_n && g.in_n && !gf_n)
            fail(vc, "N: g.f escapes, f=" + describe(f.f) + " g=" + describe(g.f));
          if (gf_m && g.in_m && !f.in_m)
            fail(vd, "M: f=" + describe(f.f) + " g=" + describe(g.f));
          if (gf_n && g.in_n && !f.in_n)
            fail(vd, "N: f=" + describe(f.f) + " g=" + describe(g.f));
          if (gf_n && g.in_m && !f.in_n)
            fail(vn, "f=" + describe(f.f) + " g=" + describe(g.f));
        }
      }
    }
  }
  {
    auto& v = verdict("pullback-stability");
    for (const Arrow& f : arrows) {
      if (!f.in_m && !f.in_n) continue;
      for (int j = 0; j < no; ++j) {
        for (int gi : by_dc[j][f.c]) {
          const Arrow& g = arrows[gi];
          PullbackResult pb;
          try {
            pb = pullback(f.f, g.f);
          } catch (const OutsideCategoryError&) {
            continue;  // stability only quantifies over existing pullbacks
          }
          if (f.in_m && !M.member(pb.proj2))
            fail(v, "M leg escapes: f=" + describe(f.f) + " g=" + describe(g.f));
          if (f.in_n && !N.member(pb.proj2))
            fail(v, "N leg escapes: f=" + describe(f.f) + " g=" + describe(g.f));
          if (!v.holds) break;
        }
        if (!v.holds) break;
      }
      if (!v.holds) break;
    }
  }
  {
    auto& v = verdict("pushout-stability");
    for (const Arrow& f : arrows) {
      if (!f.in_m && !f.in_n) continue;
      for (int j = 0; j < no; ++j) {
        for (int gi : by_dc[f.d][j]) {
          const Arrow& g = arrows[gi];
          PushoutResult po;
          try {
            po = pushout(f.f, g.f);
          } catch (const OutsideCategoryError&) {
            continue;  // skip pushouts that leave the category
          }
          if (f.in_m && !M.member(po.inj2))
            fail(v, "M leg escapes: f=" + describe(f.f) + " g=" + describe(g.f));
          if (f.in_n && !N.member(po.inj2))
            fail(v, "N leg escapes: f=" + describe(f.f) + " g=" + describe(g.f));
          if (!v.holds) break;
        }
        if (!v.holds) break;
      }
      if (!v.holds) break;
    }
  }
  return rep;
}

}  // namespace mncat
