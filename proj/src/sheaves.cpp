#include "mncat/sheaves.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "mncat/categories.hpp"

namespace mncat {

int FiniteSite::object_index(const Obj& x) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == x) return static_cast<int>(i);
  return -1;
}

int FiniteSite::arrow_index(int i, int j, const Morphism& f) const {
  const auto& hs = homs[i][j];
  for (size_t k = 0; k < hs.size(); ++k)
    if (hs[k] == f) return static_cast<int>(k);
  return -1;
}

int FiniteSite::cover_count() const {
  int c = 0;
  for (const auto& cs : covers) c += static_cast<int>(cs.size());
  return c;
}

namespace {

void fill_homs(FiniteSite& site) {
  int no = static_cast<int>(site.objects.size());
  site.homs.assign(no, std::vector<std::vector<Morphism>>(no));
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      site.homs[i][j] = hom_set(site.objects[i], site.objects[j]);
}

bool safe_in(const MorphismClass& cls, const Morphism& f) {
  try {
    return cls.member(f);
  } catch (const OutsideCategoryError&) {
    return false;
  }
}

// Does g factor through one of the cover legs, g = leg . h for some site h?
bool factors_through_cover(const FiniteSite& site, const Morphism& g, int gdom,
                           const CoveringFamily& c) {
  for (const Morphism& h : site.homs[gdom][c.z_index])
    if (compose(c.p, h) == g) return true;
  for (const Morphism& h : site.homs[gdom][c.y_index])
    if (compose(c.q, h) == g) return true;
  return false;
}

}  // namespace

FiniteSite build_site(const CategoryId& cat, std::vector<Obj> objects,
                      const MorphismClass& M, const MorphismClass& N) {
  if (objects.empty()) throw CategoryError("build_site: empty object list");
  for (const Obj& o : objects)
    if (!(o.cat == cat))
      throw CategoryError("build_site: object from another category");
  FiniteSite site;
  site.cat = cat;
  site.objects = std::move(objects);
  fill_homs(site);
  int no = static_cast<int>(site.objects.size());
  site.covers.assign(no, {});

  // every M,N-pushout square with all four corners in the site (apex up to
  // iso, transported onto its site representative)
  for (int ni = 0; ni < no; ++ni)
    for (int yi = 0; yi < no; ++yi)
      for (const Morphism& m : site.homs[ni][yi]) {
        if (!safe_in(M, m)) continue;
        for (int zi = 0; zi < no; ++zi)
          for (const Morphism& n : site.homs[ni][zi]) {
            if (!safe_in(N, n)) continue;
            PushoutResult po;
            try {
              po = pushout(n, m);
            } catch (const OutsideCategoryError&) {
              continue;
            }
            for (int x = 0; x < no; ++x) {
              auto h = find_iso(po.apex, site.objects[x]);
              if (!h) continue;
              CoveringFamily c;
              c.target = x;
              c.z_index = zi;
              c.y_index = yi;
              c.n_index = ni;
              c.p = compose(*h, po.inj1);
              c.q = compose(*h, po.inj2);
              c.witness = Square{n, m, c.p, c.q};
              bool dup = false;
              for (const CoveringFamily& prev : site.covers[x])
                if (prev.p == c.p && prev.q == c.q) {
                  dup = true;
                  break;
                }
              if (!dup) site.covers[x].push_back(std::move(c));
              break;  // one site representative of the apex is enough
            }
          }
      }

  // extend with the kernel-pair carriers of the q legs
  std::vector<KernelPairResult> kps;
  for (auto& cs : site.covers)
    for (CoveringFamily& c : cs) {
      KernelPairResult kq = kernel_pair(c.q);
      bool found = false;
      for (const Obj& o : site.objects)
        if (isomorphic(kq.obj, o)) {
          found = true;
          break;
        }
      if (!found) site.objects.push_back(kq.obj);
    }
  if (static_cast<int>(site.objects.size()) != no) {
    fill_homs(site);
    no = static_cast<int>(site.objects.size());
    site.covers.resize(no);
  }
  for (auto& cs : site.covers)
    for (CoveringFamily& c : cs) {
      KernelPairResult kq = kernel_pair(c.q);
      for (int i = 0; i < no && c.kq_index < 0; ++i) {
        auto g = find_iso(site.objects[i], kq.obj);
        if (!g) continue;
        c.kq_index = i;
        c.y1 = compose(kq.pr1, *g);
        c.y2 = compose(kq.pr2, *g);
      }
      if (c.kq_index < 0)
        throw CategoryError("build_site: kernel-pair carrier missing");
    }

  // coverage refinement axiom, within the site
  for (int x = 0; x < no; ++x)
    for (const CoveringFamily& c : site.covers[x])
      for (int xp = 0; xp < no; ++xp)
        for (const Morphism& g : site.homs[xp][x]) {
          bool refined = false;
          for (const CoveringFamily& cp : site.covers[xp]) {
            if (factors_through_cover(site, compose(g, cp.p), cp.z_index, c) &&
                factors_through_cover(site, compose(g, cp.q), cp.y_index, c)) {
              refined = true;
              break;
            }
          }
          if (!refined) {
            site.coverage_ok = false;
            if (site.coverage_note.empty())
              site.coverage_note = "no in-site refinement of the cover of " +
                                   describe(site.objects[x]) + " along " +
                                   describe(g);
          }
        }
  return site;
}

bool presheaf_functorial(const FinitePresheaf& F, const FiniteSite& site,
                         std::string* why) {
  int no = static_cast<int>(site.objects.size());
  if (static_cast<int>(F.sizes.size()) != no ||
      static_cast<int>(F.action.size()) != no) {
    if (why) *why = "size/action tables do not match the site";
    return false;
  }
  auto complain = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j) {
      if (F.action[i].size() != static_cast<size_t>(no) ||
          F.action[i][j].size() != site.homs[i][j].size())
        return complain("action table shape mismatch");
      for (size_t k = 0; k < site.homs[i][j].size(); ++k) {
        const auto& tab = F.action[i][j][k];
        if (tab.size() != static_cast<size_t>(F.sizes[j]))
          return complain("action table length mismatch");
        for (int v : tab)
          if (v < 0 || v >= F.sizes[i])
            return complain("action value out of range");
      }
    }
  for (int i = 0; i < no; ++i) {
    int idi = site.arrow_index(i, i, identity(site.objects[i]));
    for (int a = 0; a < F.sizes[i]; ++a)
      if (F.action[i][i][idi][a] != a) return complain("F(id) is not id");
  }
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      for (size_t fi = 0; fi < site.homs[i][j].size(); ++fi)
        for (int k = 0; k < no; ++k)
          for (size_t gi = 0; gi < site.homs[j][k].size(); ++gi) {
            Morphism gf = compose(site.homs[j][k][gi], site.homs[i][j][fi]);
            int ci = site.arrow_index(i, k, gf);
            if (ci < 0) return complain("site homs not composition-closed");
            for (int a = 0; a < F.sizes[k]; ++a)
              if (F.action[i][k][ci][a] !=
                  F.action[i][j][fi][F.action[j][k][gi][a]])
                return complain("F(g.f) != F(f).F(g)");
          }
  return true;
}

namespace {

void require_functorial(const FinitePresheaf& F, const FiniteSite& site,
                        const char* who) {
  std::string why;
  if (!presheaf_functorial(F, site, &why))
    throw CategoryError(std::string(who) + ": presheaf not functorial (" + why +
                        ")");
}

struct CoverArrows {
  int pi, qi, mi, ni;  // arrow indices of p, q, m, n
};

CoverArrows cover_arrows(const FiniteSite& site, const CoveringFamily& c) {
  CoverArrows a;
  a.pi = site.arrow_index(c.z_index, c.target, c.p);
  a.qi = site.arrow_index(c.y_index, c.target, c.q);
  a.mi = site.arrow_index(c.n_index, c.y_index, c.witness.left);
  a.ni = site.arrow_index(c.n_index, c.z_index, c.witness.top);
  if (a.pi < 0 || a.qi < 0 || a.mi < 0 || a.ni < 0)
    throw CategoryError("cover legs missing from the site hom-sets");
  return a;
}

}  // namespace

SheafVerdict is_sheaf_amalgamation(const FinitePresheaf& F,
                                   const FiniteSite& site) {
  require_functorial(F, site, "is_sheaf_amalgamation");
  int no = static_cast<int>(site.objects.size());
  for (int x = 0; x < no; ++x)
    for (const CoveringFamily& c : site.covers[x]) {
      CoverArrows ar = cover_arrows(site, c);
      int legs_obj[2] = {c.z_index, c.y_index};
      const Morphism* legs[2] = {&c.p, &c.q};
      for (int ap = 0; ap < F.sizes[c.z_index]; ++ap)
        for (int aq = 0; aq < F.sizes[c.y_index]; ++aq) {
          int fam[2] = {ap, aq};
          bool compatible = true;
          for (int li = 0; li < 2 && compatible; ++li)
            for (int lj = 0; lj < 2 && compatible; ++lj)
              for (int u = 0; u < no && compatible; ++u) {
                const auto& gs = site.homs[u][legs_obj[li]];
                const auto& hs = site.homs[u][legs_obj[lj]];
                for (size_t gi = 0; gi < gs.size() && compatible; ++gi)
                  for (size_t hi = 0; hi < hs.size(); ++hi) {
                    if (!(compose(*legs[li], gs[gi]) ==
                          compose(*legs[lj], hs[hi])))
                      continue;
                    if (F.action[u][legs_obj[li]][gi][fam[li]] !=
                        F.action[u][legs_obj[lj]][hi][fam[lj]]) {
                      compatible = false;
                      break;
                    }
                  }
              }
          if (!compatible) continue;
          int hits = 0;
          for (int a = 0; a < F.sizes[x]; ++a)
            if (F.action[c.z_index][x][ar.pi][a] == ap &&
                F.action[c.y_index][x][ar.qi][a] == aq)
              ++hits;
          if (hits != 1)
            return {false, "cover of " + describe(site.objects[x]) +
                               ": compatible family (" + std::to_string(ap) +
                               "," + std::to_string(aq) + ") has " +
                               std::to_string(hits) + " amalgamations"};
        }
    }
  return {true, ""};
}

SheafVerdict is_sheaf_pullback(const FinitePresheaf& F,
                               const FiniteSite& site) {
  require_functorial(F, site, "is_sheaf_pullback");
  int no = static_cast<int>(site.objects.size());
  for (int x = 0; x < no; ++x)
    for (const CoveringFamily& c : site.covers[x]) {
      CoverArrows ar = cover_arrows(site, c);
      const auto& Fp = F.action[c.z_index][x][ar.pi];
      const auto& Fq = F.action[c.y_index][x][ar.qi];
      const auto& Fm = F.action[c.n_index][c.y_index][ar.mi];
      const auto& Fn = F.action[c.n_index][c.z_index][ar.ni];
      // F(X) -> {(s1, s2) : F(m)(s1) = F(n)(s2)} must be a bijection
      std::vector<std::vector<char>> hit(
          F.sizes[c.y_index], std::vector<char>(F.sizes[c.z_index], 0));
      for (int a = 0; a < F.sizes[x]; ++a) {
        int s1 = Fq[a], s2 = Fp[a];
        if (Fm[s1] != Fn[s2])
          return {false, "image square does not commute at a=" +
                             std::to_string(a)};
        if (hit[s1][s2]++)
          return {false, "F(X) -> fiber product not injective at (" +
                             std::to_string(s1) + "," + std::to_string(s2) +
                             ")"};
      }
      for (int s1 = 0; s1 < F.sizes[c.y_index]; ++s1)
        for (int s2 = 0; s2 < F.sizes[c.z_index]; ++s2)
          if (Fm[s1] == Fn[s2] && !hit[s1][s2])
            return {false, "fiber pair (" + std::to_string(s1) + "," +
                               std::to_string(s2) + ") of the cover of " +
                               describe(site.objects[x]) + " not reached"};
    }
  return {true, ""};
}

SheafVerdict is_sheaf_mediator(const FinitePresheaf& F,
                               const FiniteSite& site) {
  require_functorial(F, site, "is_sheaf_mediator");
  int no = static_cast<int>(site.objects.size());
  for (int x = 0; x < no; ++x)
    for (const CoveringFamily& c : site.covers[x]) {
      CoverArrows ar = cover_arrows(site, c);
      int y1i = site.arrow_index(c.kq_index, c.y_index, c.y1);
      int y2i = site.arrow_index(c.kq_index, c.y_index, c.y2);
      if (y1i < 0 || y2i < 0)
        throw CategoryError("kernel-pair projections missing from the site");
      const auto& Fp = F.action[c.z_index][x][ar.pi];
      const auto& Fq = F.action[c.y_index][x][ar.qi];
      const auto& Fm = F.action[c.n_index][c.y_index][ar.mi];
      const auto& Fn = F.action[c.n_index][c.z_index][ar.ni];
      const auto& Fy1 = F.action[c.kq_index][c.y_index][y1i];
      const auto& Fy2 = F.action[c.kq_index][c.y_index][y2i];
      // S a singleton: each (s1, s2) satisfying the solid constraints must
      // admit exactly one a with F(q)(a) = s1 and F(p)(a) = s2
      for (int s1 = 0; s1 < F.sizes[c.y_index]; ++s1) {
        if (Fy1[s1] != Fy2[s1]) continue;
        for (int s2 = 0; s2 < F.sizes[c.z_index]; ++s2) {
          if (Fm[s1] != Fn[s2]) continue;
          int hits = 0;
          for (int a = 0; a < F.sizes[x]; ++a)
            if (Fq[a] == s1 && Fp[a] == s2) ++hits;
          if (hits != 1)
            return {false, "cover of " + describe(site.objects[x]) + ": (" +
                               std::to_string(s1) + "," + std::to_string(s2) +
                               ") admits " + std::to_string(hits) +
                               " mediators"};
        }
      }
    }
  return {true, ""};
}

FinitePresheaf representable(const Obj& X, const FiniteSite& site) {
  int xi = site.object_index(X);
  if (xi < 0) throw CategoryError("representable: object not in the site");
  int no = static_cast<int>(site.objects.size());
  FinitePresheaf F;
  F.sizes.resize(no);
  for (int i = 0; i < no; ++i)
    F.sizes[i] = static_cast<int>(site.homs[i][xi].size());
  F.action.assign(no, std::vector<std::vector<std::vector<int>>>(no));
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j) {
      F.action[i][j].resize(site.homs[i][j].size());
      for (size_t k = 0; k < site.homs[i][j].size(); ++k) {
        std::vector<int> tab(F.sizes[j]);
        for (int h = 0; h < F.sizes[j]; ++h) {
          int idx = site.arrow_index(
              i, xi, compose(site.homs[j][xi][h], site.homs[i][j][k]));
          if (idx < 0)
            throw CategoryError("representable: homs not composition-closed");
          tab[h] = idx;
        }
        F.action[i][j][k] = std::move(tab);
      }
    }
  return F;
}

FinitePresheaf terminal_presheaf(const FiniteSite& site) {
  int no = static_cast<int>(site.objects.size());
  FinitePresheaf F;
  F.sizes.assign(no, 1);
  F.action.assign(no, std::vector<std::vector<std::vector<int>>>(no));
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      F.action[i][j].assign(site.homs[i][j].size(), std::vector<int>{0});
  return F;
}

std::vector<FinitePresheaf> enumerate_presheaves(const FiniteSite& site,
                                                 int max_size) {
  int no = static_cast<int>(site.objects.size());
  std::vector<FinitePresheaf> out;
  std::vector<int> sizes(no, 0);
  // arrows to choose freely: every non-identity arrow
  struct Slot {
    int i, j, k;
  };
  std::vector<Slot> slots;
  std::vector<std::vector<int>> id_at(no, std::vector<int>(1, -1));
  for (int i = 0; i < no; ++i) {
    int idi = site.arrow_index(i, i, identity(site.objects[i]));
    id_at[i][0] = idi;
    for (int j = 0; j < no; ++j)
      for (size_t k = 0; k < site.homs[i][j].size(); ++k)
        if (!(i == j && static_cast<int>(k) == idi))
          slots.push_back({i, j, static_cast<int>(k)});
  }
  constexpr long long kCeiling = 20'000'000;
  while (true) {
    // candidate count for this size vector
    long long total = 1;
    bool feasible = true;
    for (const Slot& s : slots) {
      long long fns = 1;
      for (int t = 0; t < sizes[s.j]; ++t) {
        fns *= sizes[s.i];
        if (fns > kCeiling) break;
      }
      if (sizes[s.j] > 0 && sizes[s.i] == 0) feasible = false;
      total *= std::max(fns, 1LL);
      if (total > kCeiling)
        throw CategoryError("enumerate_presheaves: candidate space too large");
    }
    if (feasible) {
      FinitePresheaf F;
      F.sizes = sizes;
      F.action.assign(no, std::vector<std::vector<std::vector<int>>>(no));
      for (int i = 0; i < no; ++i)
        for (int j = 0; j < no; ++j) {
          F.action[i][j].assign(site.homs[i][j].size(),
                                std::vector<int>(sizes[j], 0));
          if (i == j)
            for (int a = 0; a < sizes[i]; ++a)
              F.action[i][i][id_at[i][0]][a] = a;
        }
      // odometer over the free slots
      bool more = true;
      while (more) {
        if (presheaf_functorial(F, site)) out.push_back(F);
        more = false;
        for (auto it = slots.rbegin(); it != slots.rend(); ++it) {
          auto& tab = F.action[it->i][it->j][it->k];
          bool carried = true;
          for (int t = static_cast<int>(tab.size()) - 1; t >= 0; --t) {
            if (++tab[t] < sizes[it->i]) {
              carried = false;
              break;
            }
            tab[t] = 0;
          }
          if (!carried) {
            more = true;
            break;
          }
        }
      }
    }
    // next size vector
    int i = no - 1;
    while (i >= 0 && sizes[i] == max_size) sizes[i--] = 0;
    if (i < 0) break;
    ++sizes[i];
  }
  return out;
}

namespace {

FinitePresheaf product_presheaf(const FinitePresheaf& A,
                                const FinitePresheaf& B,
                                const FiniteSite& site) {
  int no = static_cast<int>(site.objects.size());
  FinitePresheaf F;
  F.sizes.resize(no);
  for (int i = 0; i < no; ++i) F.sizes[i] = A.sizes[i] * B.sizes[i];
  F.action.assign(no, std::vector<std::vector<std::vector<int>>>(no));
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j) {
      F.action[i][j].resize(site.homs[i][j].size());
      for (size_t k = 0; k < site.homs[i][j].size(); ++k) {
        std::vector<int> tab(F.sizes[j]);
        for (int x = 0; x < F.sizes[j]; ++x) {
          int a = B.sizes[j] ? x / B.sizes[j] : 0;
          int b = B.sizes[j] ? x % B.sizes[j] : 0;
          tab[x] = A.action[i][j][k][a] * B.sizes[i] + B.action[i][j][k][b];
        }
        F.action[i][j][k] = std::move(tab);
      }
    }
  return F;
}

FinitePresheaf constant_presheaf(const FiniteSite& site, int c) {
  int no = static_cast<int>(site.objects.size());
  FinitePresheaf F;
  F.sizes.assign(no, c);
  F.action.assign(no, std::vector<std::vector<std::vector<int>>>(no));
  std::vector<int> id(c);
  std::iota(id.begin(), id.end(), 0);
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      F.action[i][j].assign(site.homs[i][j].size(), id);
  return F;
}

}  // namespace

FinitePresheaf random_presheaf(const FiniteSite& site, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int no = static_cast<int>(site.objects.size());
  FinitePresheaf F = constant_presheaf(site, 1 + static_cast<int>(rng() % 2));
  int reps = 1 + static_cast<int>(rng() % 2);
  for (int r = 0; r < reps; ++r)
    F = product_presheaf(F, representable(site.objects[rng() % no], site),
                         site);

  // random action-closed sub-presheaf (keep at least one element per
  // nonempty value-set so the cut is not always everything-or-nothing)
  std::vector<std::vector<char>> keep(no);
  for (int i = 0; i < no; ++i) {
    keep[i].assign(F.sizes[i], 0);
    for (int a = 0; a < F.sizes[i]; ++a) keep[i][a] = rng() % 2;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < no; ++i)
      for (int j = 0; j < no; ++j)
        for (size_t k = 0; k < site.homs[i][j].size(); ++k)
          for (int b = 0; b < F.sizes[j]; ++b)
            if (keep[j][b] && !keep[i][F.action[i][j][k][b]]) {
              keep[i][F.action[i][j][k][b]] = 1;
              changed = true;
            }
  }
  FinitePresheaf S;
  S.sizes.resize(no);
  std::vector<std::vector<int>> newix(no);
  for (int i = 0; i < no; ++i) {
    newix[i].assign(F.sizes[i], -1);
    int c = 0;
    for (int a = 0; a < F.sizes[i]; ++a)
      if (keep[i][a]) newix[i][a] = c++;
    S.sizes[i] = c;
  }
  S.action.assign(no, std::vector<std::vector<std::vector<int>>>(no));
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j) {
      S.action[i][j].resize(site.homs[i][j].size());
      for (size_t k = 0; k < site.homs[i][j].size(); ++k) {
        std::vector<int> tab(S.sizes[j]);
        for (int b = 0; b < F.sizes[j]; ++b)
          if (keep[j][b]) tab[newix[j][b]] = newix[i][F.action[i][j][k][b]];
        S.action[i][j][k] = std::move(tab);
      }
    }

  // quotient by a random action-compatible congruence
  std::vector<std::vector<int>> root(no);
  for (int i = 0; i < no; ++i) {
    root[i].resize(S.sizes[i]);
    std::iota(root[i].begin(), root[i].end(), 0);
  }
  std::function<int(int, int)> find = [&](int i, int a) {
    while (root[i][a] != a) a = root[i][a] = root[i][root[i][a]];
    return a;
  };
  for (int i = 0; i < no; ++i)
    if (S.sizes[i] >= 2 && rng() % 3 == 0) {
      int a = static_cast<int>(rng() % S.sizes[i]);
      int b = static_cast<int>(rng() % S.sizes[i]);
      root[i][find(i, a)] = find(i, b);
    }
  changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < no; ++i)
      for (int j = 0; j < no; ++j)
        for (size_t k = 0; k < site.homs[i][j].size(); ++k)
          for (int a = 0; a < S.sizes[j]; ++a)
            for (int b = a + 1; b < S.sizes[j]; ++b) {
              if (find(j, a) != find(j, b)) continue;
              int fa = find(i, S.action[i][j][k][a]);
              int fb = find(i, S.action[i][j][k][b]);
              if (fa != fb) {
                root[i][fa] = fb;
                changed = true;
              }
            }
  }
  FinitePresheaf Q;
  Q.sizes.resize(no);
  std::vector<std::vector<int>> cls(no);
  for (int i = 0; i < no; ++i) {
    cls[i].assign(S.sizes[i], -1);
    int c = 0;
    for (int a = 0; a < S.sizes[i]; ++a)
      if (find(i, a) == a) cls[i][a] = c++;
    for (int a = 0; a < S.sizes[i]; ++a) cls[i][a] = cls[i][find(i, a)];
    Q.sizes[i] = c;
  }
  Q.action.assign(no, std::vector<std::vector<std::vector<int>>>(no));
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j) {
      Q.action[i][j].resize(site.homs[i][j].size());
      for (size_t k = 0; k < site.homs[i][j].size(); ++k) {
        std::vector<int> tab(Q.sizes[j]);
        for (int a = 0; a < S.sizes[j]; ++a)
          tab[cls[j][a]] = cls[i][S.action[i][j][k][a]];
        Q.action[i][j][k] = std::move(tab);
      }
    }
  return Q;
}

}  // namespace mncat
