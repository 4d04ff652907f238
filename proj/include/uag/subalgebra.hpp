#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "uag/term.hpp"

namespace uag {

/// One element of a direct product, as indices into the context components.
using Tuple = std::vector<int>;
using ProductContext = std::vector<AlgebraRef>;

struct TupleHash {
  size_t operator()(const Tuple& t) const noexcept {
    size_t h = 1469598103934665603ull;
    for (int v : t) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// The least subset of a product containing the generators and closed under
/// componentwise operations. Element order is BFS discovery order: generators
/// first, then operations in signature order over lexicographic argument
/// tuples. Each element carries a witness term over x1..xk that evaluates to
/// it componentwise.
struct SubalgebraClosure {
  SignatureRef signature;
  ProductContext context;
  std::vector<Tuple> generators;
  std::vector<Tuple> elements;
  std::vector<Term> witnesses;
  std::unordered_map<Tuple, int, TupleHash> index;

  int index_of(const Tuple& t) const {
    auto it = index.find(t);
    return it == index.end() ? -1 : it->second;
  }
};

SubalgebraClosure generate_subalgebra(SignatureRef sig, ProductContext context,
                                      std::vector<Tuple> generators);

/// Re-index the closure as a standalone algebra on {0..n-1}.
FiniteAlgebra export_algebra(const SubalgebraClosure& sub, std::string name = {});

struct GraphViolation {
  Tuple a;
  Tuple b_first;
  Tuple b_second;
  Term witness_first;
  Term witness_second;
};

struct GraphMapping {
  SubalgebraClosure domain;    // generated A-side
  SubalgebraClosure codomain;  // generated B-side
  std::vector<int> map;        // domain element -> codomain element
};

/// Verdict of the graph-functionality test: either the induced homomorphism
/// on the generated A-side, or two generated pairs sharing an A-part with
/// different B-parts.
struct FunctionalVerdict {
  std::optional<GraphMapping> mapping;
  std::optional<GraphViolation> violation;
  bool functional() const { return mapping.has_value(); }
};

/// Generates the subalgebra of (prod contextA) x (prod contextB) from the
/// seed pairs and decides whether it is the graph of a map.
FunctionalVerdict graph_functional(const ProductContext& context_a,
                                   const ProductContext& context_b,
                                   const std::vector<std::pair<Tuple, Tuple>>& seeds);

/// Lean variant over standalone algebras: extend a_gens[i] |-> b_images[i] to
/// a homomorphism from the subalgebra of A generated by a_gens into B.
struct HomExtension {
  std::optional<std::vector<int>> map;  // size A.size(), -1 outside the generated part
  int conflict_element = -1;            // A-element with two images, when inconsistent
  int conflict_first = -1;
  int conflict_second = -1;
  bool ok() const { return map.has_value(); }
};

HomExtension extend_to_hom(const FiniteAlgebra& a, std::span<const int> a_gens,
                           const FiniteAlgebra& b, std::span<const int> b_images);

}  // namespace uag
