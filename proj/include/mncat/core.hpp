#pragma once
// Core data model: category identifiers, finite objects, morphisms.
//
// Objects of every supported category are stored in a single tagged struct
// with dense integer element labels (0..n-1 per sort).  Morphisms carry their
// endpoints by value and one flat map per sort.  Equality is structural
// everywhere; two objects are "the same" only if they have identical labels.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mncat {

enum class CatKind { FinSet, Graph, SGraph, DAG, Tree, Product, Comma };

// Registered functor tags for comma categories (spec'd fixed list).
// Carrier tags send an object to its underlying element set; Square sends a
// finite set X to X x X; KleeneSq sends X to X* x X* with words truncated at
// kleene_max_len.
enum class FunctorTag { USGraph, UDAG, UTree, Square, KleeneSq };

struct CategoryId {
  CatKind kind = CatKind::FinSet;
  std::vector<CategoryId> factors;          // Product: exactly two
  FunctorTag left = FunctorTag::UTree;      // Comma only
  FunctorTag right = FunctorTag::Square;    // Comma only
  int kleene_max_len = 3;                   // Comma only (KleeneSq truncation)

  static CategoryId finset() { return {CatKind::FinSet}; }
  static CategoryId graph() { return {CatKind::Graph}; }
  static CategoryId sgraph() { return {CatKind::SGraph}; }
  static CategoryId dag() { return {CatKind::DAG}; }
  static CategoryId tree() { return {CatKind::Tree}; }
  static CategoryId product(CategoryId a, CategoryId b) {
    CategoryId c;
    c.kind = CatKind::Product;
    c.factors = {std::move(a), std::move(b)};
    return c;
  }
  static CategoryId comma(FunctorTag l, FunctorTag r, int kleene_len = 3) {
    CategoryId c;
    c.kind = CatKind::Comma;
    c.left = l;
    c.right = r;
    c.kleene_max_len = kleene_len;
    return c;
  }

  bool operator==(const CategoryId&) const = default;
  std::string name() const;
};

std::string functor_tag_name(FunctorTag t);

struct Obj {
  CategoryId cat;

  // FinSet: n = size.
  // Graph/DAG: n = #vertices, edge_count = #edges, src/tgt per edge.
  // SGraph: n = #vertices, pairs = edge relation (sorted, no duplicates).
  // Tree: n = #elements, pairs = strict order pairs (a,b) meaning a < b,
  //       sorted; the order must be reflexive-transitive closure consistent
  //       and every predecessor set totally ordered.
  // Product: parts = {first, second}.
  // Comma: parts = {left object, right object}, glue : L(left) -> R(right)
  //        stored as a flat vector indexed by L-elements.
  int n = 0;
  int edge_count = 0;
  std::vector<int> src, tgt;
  std::vector<std::pair<int, int>> pairs;
  std::vector<Obj> parts;
  std::vector<int> glue;

  bool operator==(const Obj&) const = default;
};

Obj make_finset(int n);
Obj make_graph(int vertices, std::vector<int> src, std::vector<int> tgt);
Obj make_sgraph(int vertices, std::vector<std::pair<int, int>> edges);
Obj make_dag(int vertices, std::vector<int> src, std::vector<int> tgt);
// `strict_pairs` lists a < b pairs; transitive closure is taken automatically.
Obj make_tree(int elems, std::vector<std::pair<int, int>> strict_pairs);
Obj make_product(Obj first, Obj second);
Obj make_comma(const CategoryId& cat, Obj left, Obj right, std::vector<int> glue);

// Number of element sorts (FinSet/SGraph/Tree: 1, Graph/DAG: 2, composites
// concatenate their parts' sorts; comma glue is data, not a sort).
int sort_count(const CategoryId& cat);
std::vector<int> sort_sizes(const Obj& x);

// Tree order test (reflexive).
bool tree_leq(const Obj& t, int a, int b);

struct Morphism {
  Obj dom, cod;
  std::vector<std::vector<int>> maps;  // one flat map per sort

  bool operator==(const Morphism&) const = default;
};

struct MorphismTraits {
  bool is_mono = false;
  bool is_epi = false;
  bool is_iso = false;
  bool is_split_mono = false;
};

// Raised on malformed inputs: endpoint mismatches, invalid objects, maps out
// of range, and such precondition violations.
struct CategoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a colimit/limit construction leaves the category (e.g. a DAG
// pushout that creates a cycle, a Tree order that stops being a tree order).
// `witness` is a short human-readable description of the offending data.
struct OutsideCategoryError : std::runtime_error {
  std::string witness;
  OutsideCategoryError(const std::string& msg, std::string w)
      : std::runtime_error(msg + " [" + w + "]"), witness(std::move(w)) {}
};

Morphism identity(const Obj& x);
// compose(f, g) = f after g; requires cod(g) == dom(f) structurally.
Morphism compose(const Morphism& f, const Morphism& g);

// Structure preservation of an endpoint-compatible, total, in-range map.
bool preserves_structure(const Morphism& f);
// Totality + ranges + preservation.
bool morphism_valid(const Morphism& f);

bool is_componentwise_injective(const Morphism& f);
bool is_componentwise_surjective(const Morphism& f);
// Bijective on every sort with structure-preserving inverse.
bool morphism_is_iso(const Morphism& f);
std::optional<Morphism> inverse(const Morphism& f);

// Mono/epi are decreed componentwise injective/surjective for all supported
// categories (validated against the cancellation definitions in the tests);
// split mono is decided by exhaustive retraction search.
MorphismTraits classify(const Morphism& f);

// Part access for Product/Comma morphisms: returns the component acting on
// part `idx` (0 = first/left, 1 = second/right).
Morphism part_morphism(const Morphism& f, int idx);
Morphism combine_parts(const CategoryId& cat, const Obj& dom, const Obj& cod,
                       const Morphism& first, const Morphism& second);

// Compact printable forms used in witnesses and error messages.
std::string describe(const Obj& x);
std::string describe(const Morphism& f);

// Functor tag machinery.  The comma category Comma(L, R) has objects
// (A, B, glue : L(A) -> R(B)) with A in domain(L), B in domain(R).
CategoryId functor_domain(FunctorTag t);
int functor_size(FunctorTag t, const Obj& x, int kleene_len);
// The set map L(f) : L(dom f) -> L(cod f).
std::vector<int> functor_apply(FunctorTag t, const Morphism& f, int kleene_len);

}  // namespace mncat
