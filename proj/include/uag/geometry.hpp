#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "uag/subalgebra.hpp"

namespace uag {

/// A subset of Hom(F(X), H), stored as sorted distinct assignment vectors.
struct PointSet {
  AlgebraRef algebra;
  int rank = 1;
  std::vector<std::vector<int>> points;

  bool contains(std::span<const int> assignment) const;
  Point point(int i) const { return Point{algebra, points[static_cast<size_t>(i)]}; }
};

PointSet make_point_set(AlgebraRef algebra, int rank, std::vector<std::vector<int>> points);

/// The quotient F(X)/T realized inside H^S: the subalgebra of the product of
/// one copy of H per base point, generated by the rows (phi(x))_{phi in S}.
struct CoordinateAlgebra {
  AlgebraRef base_algebra;
  int rank = 1;
  PointSet support;
  SubalgebraClosure sub;
  std::vector<int> generator_images;
  FiniteAlgebra algebra;  // standalone re-indexed copy

  int size() const { return algebra.size(); }
  const Term& witness(int element) const { return sub.witnesses[static_cast<size_t>(element)]; }
};

/// A Galois-closed point set standing for the H-closed congruence
/// T = intersection of ker(phi) over the base points. The empty base is legal
/// and stands for the full congruence. The coordinate algebra is cached on
/// first use; copies share the cache.
class ClosedCongruence {
 public:
  explicit ClosedCongruence(PointSet base);

  const PointSet& base() const { return state_->base; }
  const AlgebraRef& algebra() const { return state_->base.algebra; }
  int rank() const { return state_->base.rank; }
  std::shared_ptr<const CoordinateAlgebra> coordinate() const;

 private:
  struct State {
    PointSet base;
    mutable std::mutex lock;
    mutable std::shared_ptr<const CoordinateAlgebra> coordinate;
  };
  std::shared_ptr<State> state_;
};

/// A homomorphism between coordinate algebras, stored as a total map on the
/// source carrier.
struct QuotientHom {
  std::shared_ptr<const CoordinateAlgebra> source;
  std::shared_ptr<const CoordinateAlgebra> target;
  std::vector<int> map;
};

struct GeomVerdict {
  bool equivalent_up_to_rank = false;
  int checked_rank = 0;
  enum class Side { first, second };
  struct Counterexample {
    int rank;
    ClosedCongruence congruence;  // closed over `closed_for`'s algebra
    Side closed_for;
    Side fails_for;
  };
  std::optional<Counterexample> counterexample;
};

// -- operations --------------------------------------------------------------

PointSet solutions(const AlgebraRef& h, const EquationSystem& t,
                   int point_budget = kDefaultPointBudget);

/// Does every equation satisfied by all of S also hold at psi? Decided by the
/// graph-functionality test over H^S x target(psi); psi may target any algebra
/// of the same signature.
bool factors_through(const PointSet& s, const Point& psi);
/// Same decision, reusing a prebuilt coordinate algebra of S.
bool factors_through(const CoordinateAlgebra& coord, const Point& psi);

PointSet galois_close_points(const PointSet& s, int point_budget = kDefaultPointBudget);

ClosedCongruence closure(const AlgebraRef& h, const EquationSystem& t,
                         int point_budget = kDefaultPointBudget);

bool congruence_contains(const ClosedCongruence& t, const Term& t1, const Term& t2);

std::shared_ptr<const CoordinateAlgebra> coordinate_algebra(const ClosedCongruence& t);

/// F(X) / (diagonal)'' over H: the rank-|X| relatively free algebra of Var(H).
std::shared_ptr<const CoordinateAlgebra> relatively_free(const AlgebraRef& h, GeneratorSet x,
                                                         int point_budget = kDefaultPointBudget);

bool is_cl_morphism(const TermMorphism& m, const ClosedCongruence& t1, const ClosedCongruence& t2);

/// The unique homomorphism F(X1)/T1 -> F(X2)/T2 closing the square; requires
/// is_cl_morphism(m, t1, t2). On violation throws ErrorKind::precondition with
/// a witnessing pair of terms whose image leaves T2.
QuotientHom induced_hom(const TermMorphism& m, const ClosedCongruence& t1,
                        const ClosedCongruence& t2);

/// A term morphism m with induced_hom(m) == h, built from witness terms.
TermMorphism lift_hom(const QuotientHom& h);

/// The quotient homomorphism determined by generator images, if it exists.
QuotientHom quotient_hom_from_generators(std::shared_ptr<const CoordinateAlgebra> source,
                                         std::shared_ptr<const CoordinateAlgebra> target,
                                         std::span<const int> generator_images);

/// Equality of the represented congruences on F(X), possibly across different
/// algebras of the same signature.
bool congruence_equal(const ClosedCongruence& a, const ClosedCongruence& b);

/// All Galois-closed point sets over H at the given rank, via Next-Closure,
/// sorted canonically (lexicographically by point index sequence).
std::vector<ClosedCongruence> enumerate_closed(const AlgebraRef& h, GeneratorSet x,
                                               int point_budget = kDefaultPointBudget);

/// Rank-bounded geometric equivalence: checks that each side's closed
/// congruences are closed for the other side, rank by rank.
GeomVerdict geom_equiv(const AlgebraRef& h1, const AlgebraRef& h2, int max_rank,
                       int point_budget = kDefaultPointBudget);

/// The points of `target` whose kernels contain t's congruence.
PointSet solution_points_over(const ClosedCongruence& t, const AlgebraRef& target,
                              int point_budget = kDefaultPointBudget);

}  // namespace uag
