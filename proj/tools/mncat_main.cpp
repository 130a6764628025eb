// mncat: JSON-driven front end over the category toolkit.
//
// Exit codes: 0 = success/Holds, 1 = a Fails verdict or failed construction,
// 2 = malformed input.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "mncat/adhesivity.hpp"
#include "mncat/categories.hpp"
#include "mncat/io.hpp"

using namespace mncat;

namespace {

int max_bound_ceiling() {
  if (const char* env = std::getenv("ADHESIVITY_LAB_MAX_BOUND"))
    return std::max(1, std::atoi(env));
  return 4;
}

void require_bound(int bound) {
  int cap = max_bound_ceiling();
  if (bound < 1 || bound > cap)
    throw IoError("bound " + std::to_string(bound) +
                  " outside [1, " + std::to_string(cap) +
                  "] (raise ADHESIVITY_LAB_MAX_BOUND to go higher)");
}

CategoryId parse_category(const std::string& tok) {
  if (tok == "finset") return CategoryId::finset();
  if (tok == "graph") return CategoryId::graph();
  if (tok == "sgraph") return CategoryId::sgraph();
  if (tok == "dag") return CategoryId::dag();
  if (tok == "tree") return CategoryId::tree();
  auto inner = [&](const std::string& prefix) {
    return tok.substr(prefix.size(), tok.size() - prefix.size() - 1);
  };
  auto split_top = [](const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
      if (i == s.size() || (s[i] == ',' && depth == 0)) {
        out.push_back(s.substr(start, i - start));
        start = i + 1;
      } else if (s[i] == '(')
        ++depth;
      else if (s[i] == ')')
        --depth;
    }
    return out;
  };
  if (tok.rfind("product(", 0) == 0 && tok.back() == ')') {
    auto parts = split_top(inner("product("));
    if (parts.size() != 2) throw IoError("product(a,b) wants two factors");
    return CategoryId::product(parse_category(parts[0]),
                               parse_category(parts[1]));
  }
  if (tok.rfind("comma(", 0) == 0 && tok.back() == ')') {
    auto parts = split_top(inner("comma("));
    if (parts.size() != 2 && parts.size() != 3)
      throw IoError("comma(L,R[,kleene_len]) wants two functor tags");
    auto tag = [](const std::string& s) {
      json j = s;
      if (s == "usgraph" || s == "u_sgraph") return FunctorTag::USGraph;
      if (s == "udag" || s == "u_dag") return FunctorTag::UDAG;
      if (s == "utree" || s == "u_tree") return FunctorTag::UTree;
      if (s == "square") return FunctorTag::Square;
      if (s == "kleenesq" || s == "kleene_sq") return FunctorTag::KleeneSq;
      throw IoError("unknown functor tag: " + s);
    };
    int klen = parts.size() == 3 ? std::atoi(parts[2].c_str()) : 3;
    return CategoryId::comma(tag(parts[0]), tag(parts[1]), klen);
  }
  throw IoError("unknown category token: " + tok);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json verdict_json(const BoundedVerdict& v) {
  json out = {{"holds", v.holds}, {"bound", v.bound}, {"note", v.note}};
  if (v.square_witness) out["square"] = square_to_json(*v.square_witness);
  if (v.cube_witness) out["cube"] = cube_to_json(*v.cube_witness);
  return out;
}

Morphism load_morphism(const std::string& path) {
  Envelope e = parse_envelope(load_json_file(path));
  return morphism_from_json(e.cat, e.payload);
}

int cmd_pullback(const std::string& file) {
  Envelope e = parse_envelope(load_json_file(file));
  Morphism f = morphism_from_json(e.cat, e.payload.at("f"));
  Morphism g = morphism_from_json(e.cat, e.payload.at("g"));
  try {
    PullbackResult pb = pullback(f, g);
    emit(envelope(e.cat, {{"apex", obj_to_json(pb.apex)},
                          {"proj1", morphism_to_json(pb.proj1)},
                          {"proj2", morphism_to_json(pb.proj2)}}));
    return 0;
  } catch (const OutsideCategoryError& err) {
    emit(envelope(e.cat, {{"error", err.what()}}));
    return 1;
  }
}

int cmd_pushout(const std::string& file) {
  Envelope e = parse_envelope(load_json_file(file));
  Morphism f = morphism_from_json(e.cat, e.payload.at("f"));
  Morphism g = morphism_from_json(e.cat, e.payload.at("g"));
  try {
    PushoutResult po = pushout(f, g);
    emit(envelope(e.cat, {{"apex", obj_to_json(po.apex)},
                          {"inj1", morphism_to_json(po.inj1)},
                          {"inj2", morphism_to_json(po.inj2)}}));
    return 0;
  } catch (const OutsideCategoryError& err) {
    emit(envelope(e.cat, {{"error", err.what()}}));
    return 1;
  }
}

int cmd_union(const std::string& mfile, const std::string& nfile) {
  Morphism m = load_morphism(mfile);
  Morphism n = load_morphism(nfile);
  try {
    UnionDiagram d = union_via_pushout(m, n);
    emit(envelope(m.dom.cat, {{"u", morphism_to_json(d.u)},
                              {"intersection", obj_to_json(d.pb.apex)},
                              {"union_obj", obj_to_json(d.po.apex)}}));
    return 0;
  } catch (const CategoryError& err) {
    emit(envelope(m.dom.cat, {{"error", err.what()}}));
    return 1;
  }
}

int cmd_vk_check(const std::string& file, int bound, bool stable_only) {
  require_bound(bound);
  Envelope e = parse_envelope(load_json_file(file));
  Square sq = square_from_json(e.cat, e.payload);
  BoundedVerdict v =
      stable_only ? check_stable(sq, bound) : check_van_kampen(sq, bound);
  emit(envelope(e.cat, verdict_json(v)));
  return v.holds ? 0 : 1;
}

int cmd_adhesive_check(const std::string& cat_tok, const std::string& m_tok,
                       const std::string& n_tok, int samples, int bound,
                       std::uint64_t seed) {
  require_bound(bound);
  CategoryId cat = parse_category(cat_tok);
  AdhesivityReport rep = check_MN_adhesive(cat, parse_class(m_tok),
                                           parse_class(n_tok), samples, bound,
                                           seed);
  json out = {{"category", category_to_json(cat)},
              {"m_class", rep.m_class},
              {"n_class", rep.n_class},
              {"samples_requested", rep.samples_requested},
              {"bound", rep.bound},
              {"seed", rep.seed},
              {"base_bound", rep.base_bound},
              {"pushouts_sampled", rep.pushouts_sampled},
              {"pullbacks_sampled", rep.pullbacks_sampled},
              {"skipped_outside", rep.skipped_outside},
              {"vk_failures", rep.vk_failures},
              {"pullback_prop_failures", rep.pullback_prop_failures},
              {"mono_leg_failures", rep.mono_leg_failures},
              {"split_leg_failures", rep.split_leg_failures},
              {"pullback_existence_failures", rep.pullback_existence_failures},
              {"all_hold", rep.all_hold},
              {"failures", rep.failures}};
  if (rep.failing_square) out["failing_square"] = square_to_json(*rep.failing_square);
  if (rep.failing_cube) out["failing_cube"] = cube_to_json(*rep.failing_cube);
  emit(envelope(cat, out));
  return rep.all_hold ? 0 : 1;
}

int cmd_preadhesive_check(const std::string& cat_tok, const std::string& m_tok,
                          const std::string& n_tok, int bound) {
  require_bound(bound);
  CategoryId cat = parse_category(cat_tok);
  PreadhesiveReport rep =
      validate_preadhesive(cat, parse_class(m_tok), parse_class(n_tok), bound);
  json axioms = json::array();
  for (const AxiomVerdict& a : rep.axioms)
    axioms.push_back(
        {{"axiom", a.axiom}, {"holds", a.holds}, {"witness", a.witness}});
  emit(envelope(cat, {{"bound", rep.bound},
                      {"m_class", m_tok},
                      {"n_class", n_tok},
                      {"axioms", axioms},
                      {"all_hold", rep.all_hold()}}));
  return rep.all_hold() ? 0 : 1;
}

int cmd_sheaf_check(const std::string& site_file, const std::string& ps_file) {
  FiniteSite site = site_from_json(load_json_file(site_file));
  FinitePresheaf F = presheaf_from_json(load_json_file(ps_file));
  std::string why;
  if (!presheaf_functorial(F, site, &why))
    throw IoError("presheaf is not functorial on this site: " + why);
  SheafVerdict am = is_sheaf_amalgamation(F, site);
  SheafVerdict pb = is_sheaf_pullback(F, site);
  SheafVerdict md = is_sheaf_mediator(F, site);
  bool sheaf = am.holds && pb.holds && md.holds;
  emit(envelope(site.cat,
                {{"site_objects", static_cast<int>(site.objects.size())},
                 {"covers", site.cover_count()},
                 {"coverage_ok", site.coverage_ok},
                 {"coverage_note", site.coverage_note},
                 {"amalgamation", {{"holds", am.holds},
                                   {"counterexample", am.counterexample}}},
                 {"pullback_image", {{"holds", pb.holds},
                                     {"counterexample", pb.counterexample}}},
                 {"mediator", {{"holds", md.holds},
                               {"counterexample", md.counterexample}}},
                 {"is_sheaf", sheaf}}));
  return sheaf ? 0 : 1;
}

int cmd_rewrite(const std::string& rule_file, const std::string& host_file,
                const std::string& n_tok, const std::string& m_tok) {
  Envelope re = parse_envelope(load_json_file(rule_file));
  Rule rule = rule_from_json(re.cat, re.payload, parse_class(m_tok));
  Envelope he = parse_envelope(load_json_file(host_file));
  if (!(he.cat == re.cat)) throw IoError("rule and host categories differ");
  Obj G = obj_from_json(he.cat, he.payload);
  MorphismClass N = parse_class(n_tok);
  json steps = json::array();
  for (const Morphism& match : find_matches(rule, G, N)) {
    ComplementResult pc = pushout_complement(rule.l, match);
    if (!pc.ok) {
      steps.push_back({{"match", morphism_to_json(match)},
                       {"complement", nullptr},
                       {"reason", pc.reason}});
      continue;
    }
    RewriteStep st = rewrite(rule, match);
    steps.push_back({{"match", morphism_to_json(st.match)},
                     {"complement", morphism_to_json(st.complement)},
                     {"result", obj_to_json(st.result)}});
  }
  emit(envelope(re.cat, {{"host", obj_to_json(G)},
                         {"rule", rule_to_json(rule)},
                         {"steps", steps}}));
  return 0;
}

int cmd_enumerate(const std::string& cat_tok, int bound) {
  require_bound(bound);
  CategoryId cat = parse_category(cat_tok);
  json objs = json::array();
  for (const Obj& o : enumerate_objects(cat, bound)) objs.push_back(obj_to_json(o));
  emit(envelope(cat, {{"bound", bound},
                      {"count", static_cast<int>(objs.size())},
                      {"objects", objs}}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-category toolkit: (co)limits, bounded Van Kampen "
               "checks, sheaf conditions, DPO rewriting"};
  app.require_subcommand(1);

  std::string file, file2, cat_tok = "sgraph", m_tok = "mono", n_tok = "mono";
  std::string vertical_class;  // reserved
  int bound = 3, samples = 100;
  std::uint64_t seed = 1;
  bool stable_only = false;

  auto* c_pullback = app.add_subcommand("pullback", "pullback of a cospan file");
  c_pullback->add_option("file", file)->required();

  auto* c_pushout = app.add_subcommand("pushout", "pushout of a span file");
  c_pushout->add_option("file", file)->required();

  auto* c_union = app.add_subcommand("union", "union of two subobjects");
  c_union->add_option("m", file)->required();
  c_union->add_option("n", file2)->required();

  auto* c_vk = app.add_subcommand("vk-check", "bounded Van Kampen check");
  c_vk->add_option("file", file)->required();
  c_vk->add_option("--bound", bound);
  c_vk->add_flag("--stable-only", stable_only, "only the stability half");
  c_vk->add_option("--vertical-class", vertical_class,
                   "reserved; vertical arrows are currently unrestricted");

  auto* c_ad = app.add_subcommand("adhesive-check", "sampled M,N-adhesivity");
  c_ad->add_option("--category", cat_tok);
  c_ad->add_option("--m-class", m_tok);
  c_ad->add_option("--n-class", n_tok);
  c_ad->add_option("--samples", samples);
  c_ad->add_option("--bound", bound);
  c_ad->add_option("--seed", seed);

  int pre_bound = 2;
  auto* c_pre = app.add_subcommand("preadhesive-check",
                                   "preadhesive structure axioms");
  c_pre->add_option("--category", cat_tok);
  c_pre->add_option("--m-class", m_tok);
  c_pre->add_option("--n-class", n_tok);
  c_pre->add_option("--bound", pre_bound);

  auto* c_sheaf = app.add_subcommand("sheaf-check", "three sheaf conditions");
  c_sheaf->add_option("site", file)->required();
  c_sheaf->add_option("presheaf", file2)->required();

  std::string rw_class = "mono";
  auto* c_rw = app.add_subcommand("rewrite", "all DPO steps of a rule");
  c_rw->add_option("rule", file)->required();
  c_rw->add_option("host", file2)->required();
  c_rw->add_option("--class", rw_class, "matching class N");
  c_rw->add_option("--m-class", m_tok, "class of the rule's left leg");

  auto* c_enum = app.add_subcommand("enumerate", "objects up to bound");
  c_enum->add_option("--category", cat_tok);
  c_enum->add_option("--bound", bound);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_pullback->parsed()) return cmd_pullback(file);
    if (c_pushout->parsed()) return cmd_pushout(file);
    if (c_union->parsed()) return cmd_union(file, file2);
    if (c_vk->parsed()) return cmd_vk_check(file, bound, stable_only);
    if (c_ad->parsed())
      return cmd_adhesive_check(cat_tok, m_tok, n_tok, samples, bound, seed);
    if (c_pre->parsed())
      return cmd_preadhesive_check(cat_tok, m_tok, n_tok, pre_bound);
    if (c_sheaf->parsed()) return cmd_sheaf_check(file, file2);
    if (c_rw->parsed()) return cmd_rewrite(file, file2, rw_class, m_tok);
    if (c_enum->parsed()) return cmd_enumerate(cat_tok, bound);
  } catch (const IoError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CategoryError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
