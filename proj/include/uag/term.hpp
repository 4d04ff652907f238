#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uag/algebra.hpp"

namespace uag {

/// Generators are named x1..xn.
struct GeneratorSet {
  int rank = 1;
};

constexpr int kDefaultPointBudget = 64;

/// Immutable term tree over a signature. Generators are 1-based. Depth: a
/// generator has depth 0, an application has depth 1 + max depth of its
/// children (an application with no children has depth 1).
class Term {
 public:
  static Term var(int index);
  static Term app(int op_index, std::vector<Term> children);
  /// Arity-checked construction.
  static Term app(const Signature& sig, int op_index, std::vector<Term> children);

  bool is_var() const { return node_->head < 0; }
  int var_index() const { return -node_->head; }
  int op() const { return node_->head; }
  const std::vector<Term>& children() const { return node_->children; }
  int depth() const { return node_->depth; }
  int max_var() const { return node_->max_var; }

  bool operator==(const Term& other) const;

 private:
  struct Node {
    int head;  // >= 0: op index; < 0: -generator index
    std::vector<Term> children;
    int depth;
    int max_var;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Term& t, const Signature& sig);

/// A point of the affine space Hom(F(X), H): an assignment of generators to
/// carrier elements, extended to all terms by evaluation.
struct Point {
  AlgebraRef target;
  std::vector<int> assignment;
  int rank() const { return static_cast<int>(assignment.size()); }
};

/// A morphism of free algebras F(X_source) -> F(X_target), given by the image
/// term of each source generator.
struct TermMorphism {
  int source_rank = 0;
  int target_rank = 0;
  std::vector<Term> images;
};

TermMorphism identity_morphism(int rank);
/// Sequential composition: apply `first`, then substitute through `second`.
TermMorphism compose(const TermMorphism& first, const TermMorphism& second);

struct EquationSystem {
  GeneratorSet generators;
  std::vector<std::pair<Term, Term>> pairs;
};

/// Structural evaluation; the assignment gives the value of x(i+1) at slot i.
int eval_term(const FiniteAlgebra& a, const Term& t, std::span<const int> assignment);
int eval_term(const FiniteAlgebra& a, const Term& t, const Point& p);

/// Replace every generator xi of t by m.images[i-1].
Term substitute(const Term& t, const TermMorphism& m);

/// All |H|^rank points in lexicographic order of assignment vectors.
std::vector<Point> enumerate_points(const AlgebraRef& h, GeneratorSet x,
                                    int point_budget = kDefaultPointBudget);

/// All arity-correct terms of depth <= max_depth, each exactly once, ordered
/// by (depth, operation index, lexicographic children); generators first.
std::vector<Term> enumerate_terms(const Signature& sig, GeneratorSet x, int max_depth);

/// |H|^rank as a checked count; throws ErrorKind::budget_exceeded beyond the budget.
long long checked_point_count(int size, int rank, int point_budget);

void validate_morphism(const TermMorphism& m);

}  // namespace uag
