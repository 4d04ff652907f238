#pragma once

#include <random>

#include "fixtures.hpp"
#include "uag/geometry.hpp"

// Deterministic random instance generators and brute-force oracles for the
// property suites. Seeds are fixed by the callers.
namespace support {

using namespace uag;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  int below(int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); }
  bool coin() { return below(2) == 0; }
};

inline AlgebraRef random_algebra(Rng& rng, const SignatureRef& sig, int size,
                                 std::string name = "R") {
  std::vector<std::vector<int>> tables;
  for (int op = 0; op < sig->op_count(); ++op) {
    long long len = 1;
    for (int i = 0; i < sig->arity(op); ++i) len *= size;
    std::vector<int> t;
    for (long long k = 0; k < len; ++k) t.push_back(rng.below(size));
    tables.push_back(std::move(t));
  }
  return make_algebra(sig, size, std::move(tables), std::move(name));
}

// Small signatures whose term clones stay enumerable: constants and unary
// symbols freely, at most one binary symbol and only at small carrier sizes.
inline SignatureRef random_tame_signature(Rng& rng, bool allow_binary) {
  std::vector<OpSymbol> ops;
  if (rng.coin()) ops.push_back({"c", 0});
  int unary = 1 + rng.below(2);
  for (int i = 0; i < unary; ++i) ops.push_back({std::string("u") + char('a' + i), 1});
  if (allow_binary) ops.push_back({"f", 2});
  return make_signature("R" + std::to_string(rng.below(1000000)), std::move(ops));
}

inline Term random_term(Rng& rng, const Signature& sig, int rank, int depth) {
  if (depth == 0 || (rng.below(3) == 0)) {
    // generators, or a constant when one exists
    if (sig.has_constant() && rng.below(4) == 0) {
      for (int op = 0; op < sig.op_count(); ++op)
        if (sig.arity(op) == 0) return Term::app(op, {});
    }
    return Term::var(1 + rng.below(rank));
  }
  int op = rng.below(sig.op_count());
  std::vector<Term> children;
  for (int i = 0; i < sig.arity(op); ++i)
    children.push_back(random_term(rng, sig, rank, depth - 1));
  return Term::app(op, std::move(children));
}

inline EquationSystem random_system(Rng& rng, const Signature& sig, int rank, int max_pairs,
                                    int depth) {
  EquationSystem out{GeneratorSet{rank}, {}};
  int n = rng.below(max_pairs + 1);
  for (int i = 0; i < n; ++i)
    out.pairs.emplace_back(random_term(rng, sig, rank, depth), random_term(rng, sig, rank, depth));
  return out;
}

inline TermMorphism random_morphism(Rng& rng, const Signature& sig, int source_rank,
                                    int target_rank, int depth) {
  TermMorphism m{source_rank, target_rank, {}};
  for (int i = 0; i < source_rank; ++i)
    m.images.push_back(random_term(rng, sig, target_rank, depth));
  return m;
}

// Brute-force oracle for graph_functional: try every map from the generated
// A-side into the full B-side product and test seed respect + homomorphism.
inline bool oracle_extends(const ProductContext& ctx_a, const ProductContext& ctx_b,
                           const std::vector<std::pair<Tuple, Tuple>>& seeds) {
  SignatureRef sig = !ctx_a.empty() ? ctx_a.front()->signature_ref()
                                    : ctx_b.front()->signature_ref();
  std::vector<Tuple> a_seeds;
  for (const auto& [a, b] : seeds) a_seeds.push_back(a);
  SubalgebraClosure domain = generate_subalgebra(sig, ctx_a, a_seeds);
  size_t n = domain.elements.size();

  // enumerate the full B-side product
  std::vector<Tuple> b_all;
  Tuple cur(ctx_b.size(), 0);
  while (true) {
    b_all.push_back(cur);
    int pos = static_cast<int>(ctx_b.size()) - 1;
    while (pos >= 0 && cur[static_cast<size_t>(pos)] == ctx_b[static_cast<size_t>(pos)]->size() - 1) {
      cur[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++cur[static_cast<size_t>(pos)];
  }

  std::vector<size_t> choice(n, 0);
  auto respects = [&]() {
    for (const auto& [a, b] : seeds)
      if (b_all[choice[static_cast<size_t>(domain.index_of(a))]] != b) return false;
    // componentwise homomorphism over all ops and argument tuples
    const Signature& s = *sig;
    std::vector<int> args;
    for (int op = 0; op < s.op_count(); ++op) {
      int arity = s.arity(op);
      std::vector<size_t> pick(static_cast<size_t>(arity), 0);
      while (true) {
        Tuple lhs(ctx_a.size());
        for (size_t comp = 0; comp < ctx_a.size(); ++comp) {
          args.clear();
          for (size_t p : pick) args.push_back(domain.elements[p][comp]);
          lhs[comp] = ctx_a[comp]->apply(op, args);
        }
        Tuple rhs(ctx_b.size());
        for (size_t comp = 0; comp < ctx_b.size(); ++comp) {
          args.clear();
          for (size_t p : pick) args.push_back(b_all[choice[p]][comp]);
          rhs[comp] = ctx_b[comp]->apply(op, args);
        }
        if (b_all[choice[static_cast<size_t>(domain.index_of(lhs))]] != rhs) return false;
        int pos = arity - 1;
        while (pos >= 0 && pick[static_cast<size_t>(pos)] == n - 1) {
          pick[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++pick[static_cast<size_t>(pos)];
      }
    }
    return true;
  };

  while (true) {
    if (respects()) return true;
    size_t pos = n;
    while (pos > 0 && choice[pos - 1] == b_all.size() - 1) choice[--pos] = 0;
    if (pos == 0) return false;
    ++choice[pos - 1];
  }
}

// Direct re-statement of closure membership: every point satisfying the
// system satisfies the pair.
inline bool oracle_contains(const AlgebraRef& h, const EquationSystem& sys, const Term& t1,
                            const Term& t2, int budget = 4096) {
  for (const auto& p : enumerate_points(h, sys.generators, budget)) {
    bool sat = true;
    for (const auto& [a, b] : sys.pairs)
      if (eval_term(*h, a, p) != eval_term(*h, b, p)) {
        sat = false;
        break;
      }
    if (sat && eval_term(*h, t1, p) != eval_term(*h, t2, p)) return false;
  }
  return true;
}

inline bool subset_points(const PointSet& a, const PointSet& b) {
  for (const auto& p : a.points)
    if (!b.contains(p)) return false;
  return true;
}

}  // namespace support
