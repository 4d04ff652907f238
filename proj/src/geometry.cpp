#include "uag/geometry.hpp"

#include <algorithm>
#include <cassert>

namespace uag {

namespace {

void require_point(const PointSet& s, const Point& psi) {
  if (!psi.target) fail(ErrorKind::signature_mismatch, "point has no target algebra");
  if (psi.rank() != s.rank)
    fail(ErrorKind::rank_mismatch, "point rank does not match the point set rank");
  if (!same_signature(*s.algebra, *psi.target))
    fail(ErrorKind::signature_mismatch, "point targets an algebra of a different signature");
  for (int v : psi.assignment)
    if (v < 0 || v >= psi.target->size())
      fail(ErrorKind::index_out_of_range, "point assignment outside carrier");
}

/// Generator rows g_x = (phi(x))_{phi in S}, one per generator.
std::vector<Tuple> generator_rows(const PointSet& s) {
  std::vector<Tuple> rows(static_cast<size_t>(s.rank));
  for (auto& r : rows) r.reserve(s.points.size());
  for (const auto& pt : s.points)
    for (int x = 0; x < s.rank; ++x) rows[static_cast<size_t>(x)].push_back(pt[static_cast<size_t>(x)]);
  return rows;
}

CoordinateAlgebra build_coordinate(const PointSet& s) {
  ProductContext ctx(s.points.size(), s.algebra);
  SubalgebraClosure sub =
      generate_subalgebra(s.algebra->signature_ref(), std::move(ctx), generator_rows(s));
  std::vector<int> gen_images;
  for (const auto& row : generator_rows(s)) gen_images.push_back(sub.index_of(row));
  FiniteAlgebra exported = export_algebra(sub, s.algebra->name() + "/T");
  return CoordinateAlgebra{s.algebra, s.rank, s, std::move(sub), std::move(gen_images),
                           std::move(exported)};
}

/// Composed point psi . m over the source generators.
std::vector<int> composed_assignment(const TermMorphism& m, const FiniteAlgebra& h,
                                     std::span<const int> psi) {
  std::vector<int> out(static_cast<size_t>(m.source_rank));
  for (int i = 0; i < m.source_rank; ++i)
    out[static_cast<size_t>(i)] = eval_term(h, m.images[static_cast<size_t>(i)], psi);
  return out;
}

/// Partition the full-point coordinate algebra by the columns of a point
/// subset; a candidate point is in the closure iff its column is constant on
/// every class. Exactly the factors_through criterion, batched.
struct ClosureOracle {
  AlgebraRef h;
  int rank;
  std::vector<std::vector<int>> points;
  std::shared_ptr<const CoordinateAlgebra> full;

  ClosureOracle(const AlgebraRef& h_, int rank_, int budget) : h(h_), rank(rank_) {
    for (auto& p : enumerate_points(h_, GeneratorSet{rank_}, budget))
      points.push_back(std::move(p.assignment));
    full = std::make_shared<const CoordinateAlgebra>(
        build_coordinate(PointSet{h_, rank_, points}));
  }

  std::vector<int> close(const std::vector<int>& subset) const {
    const auto& rows = full->sub.elements;
    size_t n = rows.size();
    std::vector<int> cls(n, 0);
    int classes = 0;
    {
      std::unordered_map<Tuple, int, TupleHash> ids;
      Tuple key(subset.size());
      for (size_t c = 0; c < n; ++c) {
        for (size_t j = 0; j < subset.size(); ++j)
          key[j] = rows[c][static_cast<size_t>(subset[j])];
        auto [it, inserted] = ids.emplace(key, classes);
        if (inserted) ++classes;
        cls[c] = it->second;
      }
    }
    std::vector<int> out;
    std::vector<int> val(static_cast<size_t>(classes));
    for (size_t j = 0; j < points.size(); ++j) {
      std::fill(val.begin(), val.end(), -1);
      bool ok = true;
      for (size_t c = 0; c < n && ok; ++c) {
        int& slot = val[static_cast<size_t>(cls[c])];
        int v = rows[c][j];
        if (slot == -1) slot = v;
        else if (slot != v) ok = false;
      }
      if (ok) out.push_back(static_cast<int>(j));
    }
    return out;
  }
};

}  // namespace

bool PointSet::contains(std::span<const int> assignment) const {
  std::vector<int> key(assignment.begin(), assignment.end());
  return std::binary_search(points.begin(), points.end(), key);
}

PointSet make_point_set(AlgebraRef algebra, int rank, std::vector<std::vector<int>> points) {
  if (rank < 1) fail(ErrorKind::rank_mismatch, "point set rank must be >= 1");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != rank)
      fail(ErrorKind::rank_mismatch, "point has wrong rank");
    for (int v : p)
      if (v < 0 || v >= algebra->size())
        fail(ErrorKind::index_out_of_range, "point assignment outside carrier");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return PointSet{std::move(algebra), rank, std::move(points)};
}

ClosedCongruence::ClosedCongruence(PointSet base) : state_(std::make_shared<State>()) {
  state_->base = std::move(base);
}

std::shared_ptr<const CoordinateAlgebra> ClosedCongruence::coordinate() const {
  std::lock_guard<std::mutex> guard(state_->lock);
  if (!state_->coordinate)
    state_->coordinate = std::make_shared<const CoordinateAlgebra>(build_coordinate(state_->base));
  return state_->coordinate;
}

PointSet solutions(const AlgebraRef& h, const EquationSystem& t, int point_budget) {
  std::vector<std::vector<int>> kept;
  for (const auto& p : enumerate_points(h, t.generators, point_budget)) {
    bool ok = true;
    for (const auto& [lhs, rhs] : t.pairs) {
      if (eval_term(*h, lhs, std::span<const int>(p.assignment)) !=
          eval_term(*h, rhs, std::span<const int>(p.assignment))) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(p.assignment);
  }
  return make_point_set(h, t.generators.rank, std::move(kept));
}

bool factors_through(const PointSet& s, const Point& psi) {
  require_point(s, psi);
  ProductContext ctx_a(s.points.size(), s.algebra);
  ProductContext ctx_b{psi.target};
  std::vector<std::pair<Tuple, Tuple>> seeds;
  auto rows = generator_rows(s);
  for (int x = 0; x < s.rank; ++x)
    seeds.emplace_back(rows[static_cast<size_t>(x)], Tuple{psi.assignment[static_cast<size_t>(x)]});
  return graph_functional(ctx_a, ctx_b, seeds).functional();
}

bool factors_through(const CoordinateAlgebra& coord, const Point& psi) {
  require_point(coord.support, psi);
  return extend_to_hom(coord.algebra, coord.generator_images, *psi.target, psi.assignment).ok();
}

PointSet galois_close_points(const PointSet& s, int point_budget) {
  CoordinateAlgebra coord = build_coordinate(s);
  std::vector<std::vector<int>> kept;
  for (const auto& p : enumerate_points(s.algebra, GeneratorSet{s.rank}, point_budget))
    if (extend_to_hom(coord.algebra, coord.generator_images, *s.algebra, p.assignment).ok())
      kept.push_back(p.assignment);
  return make_point_set(s.algebra, s.rank, std::move(kept));
}

ClosedCongruence closure(const AlgebraRef& h, const EquationSystem& t, int point_budget) {
  return ClosedCongruence(solutions(h, t, point_budget));
}

bool congruence_contains(const ClosedCongruence& t, const Term& t1, const Term& t2) {
  if (t1.max_var() > t.rank() || t2.max_var() > t.rank())
    fail(ErrorKind::rank_mismatch, "terms use generators beyond the congruence rank");
  const FiniteAlgebra& h = *t.algebra();
  for (const auto& p : t.base().points)
    if (eval_term(h, t1, std::span<const int>(p)) != eval_term(h, t2, std::span<const int>(p)))
      return false;
  return true;
}

std::shared_ptr<const CoordinateAlgebra> coordinate_algebra(const ClosedCongruence& t) {
  return t.coordinate();
}

std::shared_ptr<const CoordinateAlgebra> relatively_free(const AlgebraRef& h, GeneratorSet x,
                                                         int point_budget) {
  std::vector<std::vector<int>> pts;
  for (auto& p : enumerate_points(h, x, point_budget)) pts.push_back(std::move(p.assignment));
  return std::make_shared<const CoordinateAlgebra>(
      build_coordinate(PointSet{h, x.rank, std::move(pts)}));
}

bool is_cl_morphism(const TermMorphism& m, const ClosedCongruence& t1,
                    const ClosedCongruence& t2) {
  validate_morphism(m);
  if (m.source_rank != t1.rank() || m.target_rank != t2.rank())
    fail(ErrorKind::rank_mismatch, "morphism ranks do not match the congruences");
  if (!t1.algebra()->table_equal(*t2.algebra()))
    fail(ErrorKind::signature_mismatch, "congruences are closed over different algebras");
  const FiniteAlgebra& h = *t2.algebra();
  for (const auto& psi : t2.base().points)
    if (!t1.base().contains(composed_assignment(m, h, psi))) return false;
  return true;
}

QuotientHom induced_hom(const TermMorphism& m, const ClosedCongruence& t1,
                        const ClosedCongruence& t2) {
  if (!is_cl_morphism(m, t1, t2)) {
    // Produce a witnessing pair of T1 whose image leaves T2.
    const FiniteAlgebra& h = *t2.algebra();
    for (const auto& psi : t2.base().points) {
      auto composed = composed_assignment(m, h, psi);
      if (t1.base().contains(composed)) continue;
      ProductContext ctx_a(t1.base().points.size(), t1.algebra());
      ProductContext ctx_b{t2.algebra()};
      std::vector<std::pair<Tuple, Tuple>> seeds;
      auto rows = generator_rows(t1.base());
      for (int x = 0; x < t1.rank(); ++x)
        seeds.emplace_back(rows[static_cast<size_t>(x)], Tuple{composed[static_cast<size_t>(x)]});
      auto verdict = graph_functional(ctx_a, ctx_b, seeds);
      if (verdict.violation) {
        const Signature& sig = t1.algebra()->signature();
        throw Error(ErrorKind::precondition,
                    "not a morphism of closed congruences: the pair (" +
                        to_string(verdict.violation->witness_first, sig) + ", " +
                        to_string(verdict.violation->witness_second, sig) +
                        ") lies in T1 but its image leaves T2");
      }
    }
    fail(ErrorKind::precondition, "not a morphism of closed congruences");
  }
  auto c1 = t1.coordinate();
  auto c2 = t2.coordinate();
  std::vector<int> map(static_cast<size_t>(c1->size()));
  const FiniteAlgebra& h = *t2.algebra();
  for (int e = 0; e < c1->size(); ++e) {
    Term image_term = substitute(c1->witness(e), m);
    Tuple row;
    row.reserve(t2.base().points.size());
    for (const auto& psi : t2.base().points)
      row.push_back(eval_term(h, image_term, std::span<const int>(psi)));
    int idx = c2->sub.index_of(row);
    assert(idx >= 0);
    map[static_cast<size_t>(e)] = idx;
  }
  return QuotientHom{std::move(c1), std::move(c2), std::move(map)};
}

TermMorphism lift_hom(const QuotientHom& h) {
  TermMorphism m{h.source->rank, h.target->rank, {}};
  for (int i = 0; i < h.source->rank; ++i) {
    int src_gen = h.source->generator_images[static_cast<size_t>(i)];
    int image = h.map[static_cast<size_t>(src_gen)];
    m.images.push_back(h.target->witness(image));
  }
  return m;
}

QuotientHom quotient_hom_from_generators(std::shared_ptr<const CoordinateAlgebra> source,
                                         std::shared_ptr<const CoordinateAlgebra> target,
                                         std::span<const int> generator_images) {
  if (static_cast<int>(generator_images.size()) != source->rank)
    fail(ErrorKind::rank_mismatch, "need one image per source generator");
  for (int v : generator_images)
    if (v < 0 || v >= target->size())
      fail(ErrorKind::index_out_of_range, "generator image outside target carrier");
  auto ext = extend_to_hom(source->algebra, source->generator_images, target->algebra,
                           generator_images);
  if (!ext.ok())
    fail(ErrorKind::precondition, "generator assignment does not extend to a homomorphism");
  return QuotientHom{std::move(source), std::move(target), std::move(*ext.map)};
}

bool congruence_equal(const ClosedCongruence& a, const ClosedCongruence& b) {
  if (a.rank() != b.rank())
    fail(ErrorKind::rank_mismatch, "congruences have different ranks");
  if (!same_signature(*a.algebra(), *b.algebra()))
    fail(ErrorKind::signature_mismatch, "congruences are over different signatures");
  if (a.algebra()->table_equal(*b.algebra()) && a.base().points == b.base().points) return true;
  auto ca = a.coordinate();
  for (const auto& psi : b.base().points)
    if (!factors_through(*ca, Point{b.algebra(), psi})) return false;
  auto cb = b.coordinate();
  for (const auto& phi : a.base().points)
    if (!factors_through(*cb, Point{a.algebra(), phi})) return false;
  return true;
}

PointSet solution_points_over(const ClosedCongruence& t, const AlgebraRef& target,
                              int point_budget) {
  if (target->table_equal(*t.algebra())) return t.base();
  auto coord = t.coordinate();
  std::vector<std::vector<int>> kept;
  for (const auto& p : enumerate_points(target, GeneratorSet{t.rank()}, point_budget))
    if (factors_through(*coord, Point{target, p.assignment})) kept.push_back(p.assignment);
  return make_point_set(target, t.rank(), std::move(kept));
}

std::vector<ClosedCongruence> enumerate_closed(const AlgebraRef& h, GeneratorSet x,
                                               int point_budget) {
  ClosureOracle oracle(h, x.rank, point_budget);
  int m = static_cast<int>(oracle.points.size());

  auto below = [](const std::vector<int>& set, int i) {
    std::vector<int> out;
    for (int v : set) {
      if (v >= i) break;
      out.push_back(v);
    }
    return out;
  };

  std::vector<std::vector<int>> closed_sets;
  std::vector<int> current = oracle.close({});
  closed_sets.push_back(current);
  while (true) {
    bool advanced = false;
    for (int i = m - 1; i >= 0; --i) {
      if (std::binary_search(current.begin(), current.end(), i)) continue;
      std::vector<int> seed = below(current, i);
      seed.push_back(i);
      std::vector<int> next = oracle.close(seed);
      if (below(next, i) == below(current, i)) {
        current = std::move(next);
        closed_sets.push_back(current);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  std::vector<ClosedCongruence> out;
  out.reserve(closed_sets.size());
  for (const auto& set : closed_sets) {
    std::vector<std::vector<int>> pts;
    pts.reserve(set.size());
    for (int i : set) pts.push_back(oracle.points[static_cast<size_t>(i)]);
    out.emplace_back(make_point_set(h, x.rank, std::move(pts)));
  }
  std::sort(out.begin(), out.end(), [](const ClosedCongruence& a, const ClosedCongruence& b) {
    return a.base().points < b.base().points;
  });
  return out;
}

GeomVerdict geom_equiv(const AlgebraRef& h1, const AlgebraRef& h2, int max_rank,
                       int point_budget) {
  require_same_signature(*h1, *h2);
  if (max_rank < 1) fail(ErrorKind::rank_mismatch, "max_rank must be >= 1");

  GeomVerdict verdict;
  verdict.equivalent_up_to_rank = true;
  for (int r = 1; r <= max_rank; ++r) {
    std::vector<ClosedCongruence> list1, list2;
    try {
      list1 = enumerate_closed(h1, GeneratorSet{r}, point_budget);
      list2 = enumerate_closed(h2, GeneratorSet{r}, point_budget);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::budget_exceeded && r > 1) return verdict;  // partial verdict
      throw;
    }
    auto check = [&](const std::vector<ClosedCongruence>& list, const AlgebraRef& other,
                     GeomVerdict::Side closed_for, GeomVerdict::Side fails_for) {
      for (const auto& t : list) {
        ClosedCongruence reclosed(solution_points_over(t, other, point_budget));
        if (!congruence_equal(t, reclosed)) {
          verdict.equivalent_up_to_rank = false;
          verdict.checked_rank = r;
          verdict.counterexample = GeomVerdict::Counterexample{r, t, closed_for, fails_for};
          return false;
        }
      }
      return true;
    };
    if (!check(list1, h2, GeomVerdict::Side::first, GeomVerdict::Side::second)) return verdict;
    if (!check(list2, h1, GeomVerdict::Side::second, GeomVerdict::Side::first)) return verdict;
    verdict.checked_rank = r;
  }
  return verdict;
}

}  // namespace uag
