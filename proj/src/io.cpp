#include "mncat/io.hpp"

#include <fstream>

namespace mncat {

namespace {

FunctorTag tag_from_string(const std::string& s) {
  if (s == "usgraph" || s == "u_sgraph") return FunctorTag::USGraph;
  if (s == "udag" || s == "u_dag") return FunctorTag::UDAG;
  if (s == "utree" || s == "u_tree") return FunctorTag::UTree;
  if (s == "square") return FunctorTag::Square;
  if (s == "kleenesq" || s == "kleene_sq") return FunctorTag::KleeneSq;
  throw IoError("unknown functor tag: " + s);
}

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw IoError(std::string("missing field '") + key + "' in " + j.dump());
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw IoError(std::string("bad field '") + key + "': " + e.what());
  }
}

std::vector<std::pair<int, int>> pairs_from_json(const json& j,
                                                 const char* key) {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : get_field<json>(j, key)) {
    if (!p.is_array() || p.size() != 2)
      throw IoError(std::string("field '") + key + "' wants [a,b] pairs");
    out.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return out;
}

}  // namespace

json category_to_json(const CategoryId& cat) {
  switch (cat.kind) {
    case CatKind::FinSet: return {{"kind", "finset"}};
    case CatKind::Graph: return {{"kind", "graph"}};
    case CatKind::SGraph: return {{"kind", "sgraph"}};
    case CatKind::DAG: return {{"kind", "dag"}};
    case CatKind::Tree: return {{"kind", "tree"}};
    case CatKind::Product:
      return {{"kind", "product"},
              {"factors", json::array({category_to_json(cat.factors[0]),
                                       category_to_json(cat.factors[1])})}};
    case CatKind::Comma:
      return {{"kind", "comma"},
              {"left", functor_tag_name(cat.left)},
              {"right", functor_tag_name(cat.right)},
              {"kleene_max_len", cat.kleene_max_len}};
  }
  throw IoError("unknown category kind");
}

CategoryId category_from_json(const json& j) {
  auto kind = get_field<std::string>(j, "kind");
  if (kind == "finset") return CategoryId::finset();
  if (kind == "graph") return CategoryId::graph();
  if (kind == "sgraph") return CategoryId::sgraph();
  if (kind == "dag") return CategoryId::dag();
  if (kind == "tree") return CategoryId::tree();
  if (kind == "product") {
    auto fs = get_field<json>(j, "factors");
    if (!fs.is_array() || fs.size() != 2)
      throw IoError("product wants exactly two factors");
    return CategoryId::product(category_from_json(fs[0]),
                               category_from_json(fs[1]));
  }
  if (kind == "comma") {
    int klen = j.contains("kleene_max_len") ? j["kleene_max_len"].get<int>() : 3;
    return CategoryId::comma(tag_from_string(get_field<std::string>(j, "left")),
                             tag_from_string(get_field<std::string>(j, "right")),
                             klen);
  }
  throw IoError("unknown category kind: " + kind);
}

json obj_to_json(const Obj& x) {
  switch (x.cat.kind) {
    case CatKind::FinSet:
      return {{"size", x.n}};
    case CatKind::Graph:
    case CatKind::DAG: {
      json edges = json::array();
      for (int e = 0; e < x.edge_count; ++e)
        edges.push_back({{"id", e}, {"src", x.src[e]}, {"tgt", x.tgt[e]}});
      return {{"vertices", x.n}, {"edges", edges}};
    }
    case CatKind::SGraph: {
      json edges = json::array();
      for (auto [u, v] : x.pairs) edges.push_back(json::array({u, v}));
      return {{"vertices", x.n}, {"edges", edges}};
    }
    case CatKind::Tree: {
      json order = json::array();
      for (auto [a, b] : x.pairs) order.push_back(json::array({a, b}));
      return {{"elements", x.n}, {"order", order}};
    }
    case CatKind::Product:
      return {{"first", obj_to_json(x.parts[0])},
              {"second", obj_to_json(x.parts[1])}};
    case CatKind::Comma:
      return {{"left", obj_to_json(x.parts[0])},
              {"right", obj_to_json(x.parts[1])},
              {"glue", x.glue}};
  }
  throw IoError("unknown object kind");
}

Obj obj_from_json(const CategoryId& cat, const json& j) {
  try {
    switch (cat.kind) {
      case CatKind::FinSet:
        return make_finset(get_field<int>(j, "size"));
      case CatKind::Graph:
      case CatKind::DAG: {
        std::vector<int> src, tgt;
        for (const auto& e : get_field<json>(j, "edges")) {
          src.push_back(get_field<int>(e, "src"));
          tgt.push_back(get_field<int>(e, "tgt"));
        }
        int n = get_field<int>(j, "vertices");
        return cat.kind == CatKind::Graph ? make_graph(n, src, tgt)
                                          : make_dag(n, src, tgt);
      }
      case CatKind::SGraph:
        return make_sgraph(get_field<int>(j, "vertices"),
                           pairs_from_json(j, "edges"));
      case CatKind::Tree:
        return make_tree(get_field<int>(j, "elements"),
                         pairs_from_json(j, "order"));
      case CatKind::Product:
        return make_product(obj_from_json(cat.factors[0], get_field<json>(j, "first")),
                            obj_from_json(cat.factors[1], get_field<json>(j, "second")));
      case CatKind::Comma:
        return make_comma(cat,
                          obj_from_json(functor_domain(cat.left),
                                        get_field<json>(j, "left")),
                          obj_from_json(functor_domain(cat.right),
                                        get_field<json>(j, "right")),
                          get_field<std::vector<int>>(j, "glue"));
    }
  } catch (const CategoryError& e) {
    throw IoError(std::string("invalid object: ") + e.what());
  }
  throw IoError("unknown object kind");
}

json morphism_to_json(const Morphism& f) {
  json out = {{"dom", obj_to_json(f.dom)}, {"cod", obj_to_json(f.cod)}};
  if (f.dom.cat.kind == CatKind::Graph || f.dom.cat.kind == CatKind::DAG) {
    out["vertex_map"] = f.maps[0];
    out["edge_map"] = f.maps[1];
  } else if (f.maps.size() == 1) {
    out["vertex_map"] = f.maps[0];
  } else {
    out["maps"] = f.maps;
  }
  return out;
}

Morphism morphism_from_json(const CategoryId& cat, const json& j) {
  Morphism f;
  f.dom = obj_from_json(cat, get_field<json>(j, "dom"));
  f.cod = obj_from_json(cat, get_field<json>(j, "cod"));
  if (j.contains("maps")) {
    f.maps = get_field<std::vector<std::vector<int>>>(j, "maps");
  } else {
    f.maps.push_back(get_field<std::vector<int>>(j, "vertex_map"));
    if (j.contains("edge_map"))
      f.maps.push_back(get_field<std::vector<int>>(j, "edge_map"));
  }
  if (!morphism_valid(f))
    throw IoError("morphism does not validate: " + j.dump());
  return f;
}

json square_to_json(const Square& sq) {
  return {{"top", morphism_to_json(sq.top)},
          {"left", morphism_to_json(sq.left)},
          {"right", morphism_to_json(sq.right)},
          {"bottom", morphism_to_json(sq.bottom)}};
}

Square square_from_json(const CategoryId& cat, const json& j) {
  Square sq{morphism_from_json(cat, get_field<json>(j, "top")),
            morphism_from_json(cat, get_field<json>(j, "left")),
            morphism_from_json(cat, get_field<json>(j, "right")),
            morphism_from_json(cat, get_field<json>(j, "bottom"))};
  if (!square_well_formed(sq)) throw IoError("square endpoints do not match");
  if (!square_commutes(sq)) throw IoError("square does not commute");
  return sq;
}

json cube_to_json(const Cube& c) {
  return {{"bottom", square_to_json(c.bottom_face())},
          {"top", square_to_json(c.top_face())},
          {"x", morphism_to_json(c.x)},
          {"y", morphism_to_json(c.y)},
          {"z", morphism_to_json(c.z)},
          {"w", morphism_to_json(c.w)}};
}

json rule_to_json(const Rule& r) {
  return {{"l", morphism_to_json(r.l)}, {"r", morphism_to_json(r.r)}};
}

Rule rule_from_json(const CategoryId& cat, const json& j,
                    const MorphismClass& M) {
  try {
    return make_rule(morphism_from_json(cat, get_field<json>(j, "l")),
                     morphism_from_json(cat, get_field<json>(j, "r")), M);
  } catch (const CategoryError& e) {
    throw IoError(std::string("invalid rule: ") + e.what());
  }
}

json site_to_json(const FiniteSite& site, const std::string& m_class,
                  const std::string& n_class) {
  json objs = json::array();
  for (const Obj& o : site.objects) objs.push_back(obj_to_json(o));
  return {{"objects", objs}, {"m_class", m_class}, {"n_class", n_class}};
}

FiniteSite site_from_json(const json& j, std::string* m_class,
                          std::string* n_class) {
  CategoryId cat = category_from_json(get_field<json>(j, "category"));
  std::vector<Obj> objs;
  for (const auto& o : get_field<json>(j, "objects"))
    objs.push_back(obj_from_json(cat, o));
  std::string mc = get_field<std::string>(j, "m_class");
  std::string nc = get_field<std::string>(j, "n_class");
  if (m_class) *m_class = mc;
  if (n_class) *n_class = nc;
  try {
    return build_site(cat, std::move(objs), parse_class(mc), parse_class(nc));
  } catch (const CategoryError& e) {
    throw IoError(std::string("invalid site: ") + e.what());
  }
}

json presheaf_to_json(const FinitePresheaf& F) {
  return {{"sizes", F.sizes}, {"action", F.action}};
}

FinitePresheaf presheaf_from_json(const json& j) {
  FinitePresheaf F;
  F.sizes = get_field<std::vector<int>>(j, "sizes");
  F.action =
      get_field<std::vector<std::vector<std::vector<std::vector<int>>>>>(
          j, "action");
  return F;
}

json envelope(const CategoryId& cat, json payload) {
  return {{"format_version", kFormatVersion},
          {"category", category_to_json(cat)},
          {"payload", std::move(payload)}};
}

Envelope parse_envelope(const json& j) {
  Envelope e;
  e.format_version = get_field<std::string>(j, "format_version");
  if (e.format_version != kFormatVersion)
    throw IoError("unsupported format_version: " + e.format_version);
  e.cat = category_from_json(get_field<json>(j, "category"));
  e.payload = get_field<json>(j, "payload");
  return e;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace mncat
