#include "uag/subalgebra.hpp"

#include <algorithm>

namespace uag {

namespace {

void validate_context(const Signature& sig, const ProductContext& ctx) {
  for (const auto& a : ctx)
    if (!(a->signature() == sig))
      fail(ErrorKind::signature_mismatch, "product components have different signatures");
}

void validate_tuple(const ProductContext& ctx, const Tuple& t) {
  if (t.size() != ctx.size())
    fail(ErrorKind::index_out_of_range, "tuple length does not match the product context");
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 || t[i] >= ctx[i]->size())
      fail(ErrorKind::index_out_of_range, "tuple component outside its carrier");
}

Tuple apply_componentwise(const ProductContext& ctx, int op,
                          std::span<const int> element_ids,
                          const std::vector<Tuple>& elements, std::vector<int>& scratch) {
  Tuple out(ctx.size());
  for (size_t comp = 0; comp < ctx.size(); ++comp) {
    scratch.clear();
    for (int id : element_ids) scratch.push_back(elements[static_cast<size_t>(id)][comp]);
    out[comp] = ctx[comp]->apply(op, scratch);
  }
  return out;
}

}  // namespace

SubalgebraClosure generate_subalgebra(SignatureRef sig, ProductContext context,
                                      std::vector<Tuple> generators) {
  validate_context(*sig, context);
  for (const auto& g : generators) validate_tuple(context, g);
  if (generators.empty() && !sig->has_constant())
    fail(ErrorKind::empty_generation,
         "no generators and no constants: the generated subalgebra would be empty");

  SubalgebraClosure sub;
  sub.signature = sig;
  sub.context = std::move(context);
  sub.generators = generators;

  auto add = [&sub](Tuple t, Term witness) -> int {
    auto it = sub.index.find(t);
    if (it != sub.index.end()) return it->second;
    int id = static_cast<int>(sub.elements.size());
    sub.index.emplace(t, id);
    sub.elements.push_back(std::move(t));
    sub.witnesses.push_back(std::move(witness));
    return id;
  };

  for (size_t i = 0; i < generators.size(); ++i)
    add(generators[i], Term::var(static_cast<int>(i) + 1));

  // Rounds of breadth-first application: operations in signature order,
  // argument tuples lexicographic over already-discovered element ids, with at
  // least one argument from the previous round's discoveries.
  std::vector<int> scratch;
  size_t round_start = 0;
  bool first_round = true;
  while (true) {
    size_t known = sub.elements.size();
    size_t before = known;
    for (int op = 0; op < sig->op_count(); ++op) {
      int arity = sig->arity(op);
      if (arity == 0) {
        if (first_round) {
          Tuple t = apply_componentwise(sub.context, op, {}, sub.elements, scratch);
          add(std::move(t), Term::app(op, {}));
        }
        continue;
      }
      if (known == 0) continue;
      std::vector<int> args(static_cast<size_t>(arity), 0);
      while (true) {
        bool fresh = first_round;
        for (int id : args)
          if (id >= static_cast<int>(round_start)) fresh = true;
        if (fresh) {
          Tuple t = apply_componentwise(sub.context, op, args, sub.elements, scratch);
          if (sub.index.find(t) == sub.index.end()) {
            std::vector<Term> children;
            children.reserve(args.size());
            for (int id : args) children.push_back(sub.witnesses[static_cast<size_t>(id)]);
            add(std::move(t), Term::app(op, std::move(children)));
          }
        }
        int pos = arity - 1;
        while (pos >= 0 && args[static_cast<size_t>(pos)] == static_cast<int>(known) - 1) {
          args[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++args[static_cast<size_t>(pos)];
      }
    }
    if (sub.elements.size() == before) break;
    first_round = false;
    round_start = before;
  }
  if (sub.elements.empty())
    fail(ErrorKind::empty_generation, "generation produced an empty carrier");
  return sub;
}

FiniteAlgebra export_algebra(const SubalgebraClosure& sub, std::string name) {
  const Signature& sig = *sub.signature;
  int n = static_cast<int>(sub.elements.size());
  std::vector<std::vector<int>> tables(static_cast<size_t>(sig.op_count()));
  std::vector<int> args, scratch;
  for (int op = 0; op < sig.op_count(); ++op) {
    int arity = sig.arity(op);
    long long len = 1;
    for (int i = 0; i < arity; ++i) len *= n;
    auto& table = tables[static_cast<size_t>(op)];
    table.reserve(static_cast<size_t>(len));
    args.assign(static_cast<size_t>(arity), 0);
    for (long long flat = 0; flat < len; ++flat) {
      Tuple t = apply_componentwise(sub.context, op, args, sub.elements, scratch);
      int id = sub.index_of(t);
      if (id < 0) fail(ErrorKind::table_error, "closure is not closed under operations");
      table.push_back(id);
      int pos = arity - 1;
      while (pos >= 0 && args[static_cast<size_t>(pos)] == n - 1) {
        args[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos >= 0) ++args[static_cast<size_t>(pos)];
    }
  }
  return FiniteAlgebra(sub.signature, n, std::move(tables), std::move(name));
}

FunctionalVerdict graph_functional(const ProductContext& context_a,
                                   const ProductContext& context_b,
                                   const std::vector<std::pair<Tuple, Tuple>>& seeds) {
  SignatureRef sig;
  if (!context_a.empty()) sig = context_a.front()->signature_ref();
  else if (!context_b.empty()) sig = context_b.front()->signature_ref();
  else fail(ErrorKind::signature_mismatch, "both product contexts are empty");
  validate_context(*sig, context_a);
  validate_context(*sig, context_b);

  ProductContext joint = context_a;
  joint.insert(joint.end(), context_b.begin(), context_b.end());
  std::vector<Tuple> joint_seeds;
  for (const auto& [a, b] : seeds) {
    validate_tuple(context_a, a);
    validate_tuple(context_b, b);
    Tuple t = a;
    t.insert(t.end(), b.begin(), b.end());
    joint_seeds.push_back(std::move(t));
  }

  SubalgebraClosure graph = generate_subalgebra(sig, joint, std::move(joint_seeds));

  size_t na = context_a.size();
  std::unordered_map<Tuple, int, TupleHash> by_a;
  for (size_t i = 0; i < graph.elements.size(); ++i) {
    Tuple a(graph.elements[i].begin(), graph.elements[i].begin() + static_cast<long>(na));
    auto [it, inserted] = by_a.emplace(std::move(a), static_cast<int>(i));
    if (!inserted) {
      const Tuple& prev = graph.elements[static_cast<size_t>(it->second)];
      const Tuple& cur = graph.elements[i];
      Tuple b1(prev.begin() + static_cast<long>(na), prev.end());
      Tuple b2(cur.begin() + static_cast<long>(na), cur.end());
      if (b1 != b2) {
        FunctionalVerdict v;
        v.violation = GraphViolation{it->first, std::move(b1), std::move(b2),
                                     graph.witnesses[static_cast<size_t>(it->second)],
                                     graph.witnesses[i]};
        return v;
      }
    }
  }

  // Functional: build the induced map between the separately generated sides.
  std::vector<Tuple> a_seeds, b_seeds;
  for (const auto& [a, b] : seeds) {
    a_seeds.push_back(a);
    b_seeds.push_back(b);
  }
  GraphMapping m;
  m.domain = generate_subalgebra(sig, context_a, std::move(a_seeds));
  m.codomain = generate_subalgebra(sig, context_b, std::move(b_seeds));
  m.map.assign(m.domain.elements.size(), -1);
  for (const auto& joint_el : graph.elements) {
    Tuple a(joint_el.begin(), joint_el.begin() + static_cast<long>(na));
    Tuple b(joint_el.begin() + static_cast<long>(na), joint_el.end());
    int ia = m.domain.index_of(a);
    int ib = m.codomain.index_of(b);
    if (ia < 0 || ib < 0) fail(ErrorKind::table_error, "graph projection missed a generated element");
    m.map[static_cast<size_t>(ia)] = ib;
  }
  FunctionalVerdict v;
  v.mapping = std::move(m);
  return v;
}

HomExtension extend_to_hom(const FiniteAlgebra& a, std::span<const int> a_gens,
                           const FiniteAlgebra& b, std::span<const int> b_images) {
  require_same_signature(a, b);
  if (a_gens.size() != b_images.size())
    fail(ErrorKind::rank_mismatch, "generator and image counts differ");

  HomExtension out;
  std::vector<int> map(static_cast<size_t>(a.size()), -1);
  std::vector<int> discovered;
  discovered.reserve(static_cast<size_t>(a.size()));

  auto assign = [&](int elem, int image) -> bool {
    int& slot = map[static_cast<size_t>(elem)];
    if (slot == -1) {
      slot = image;
      discovered.push_back(elem);
      return true;
    }
    if (slot != image) {
      out.conflict_element = elem;
      out.conflict_first = slot;
      out.conflict_second = image;
      return false;
    }
    return true;
  };

  for (size_t i = 0; i < a_gens.size(); ++i)
    if (!assign(a_gens[i], b_images[i])) return out;

  const Signature& sig = a.signature();
  std::vector<int> args, imgs;
  size_t round_start = 0;
  bool first_round = true;
  while (true) {
    size_t known = discovered.size();
    size_t before = known;
    for (int op = 0; op < sig.op_count(); ++op) {
      int arity = sig.arity(op);
      if (arity == 0) {
        if (first_round)
          if (!assign(a.apply(op, {}), b.apply(op, {}))) return out;
        continue;
      }
      if (known == 0) continue;
      std::vector<size_t> pick(static_cast<size_t>(arity), 0);
      while (true) {
        bool fresh = first_round;
        for (size_t p : pick)
          if (p >= round_start) fresh = true;
        if (fresh) {
          args.clear();
          imgs.clear();
          for (size_t p : pick) {
            args.push_back(discovered[p]);
            imgs.push_back(map[static_cast<size_t>(discovered[p])]);
          }
          if (!assign(a.apply(op, args), b.apply(op, imgs))) return out;
        }
        int pos = arity - 1;
        while (pos >= 0 && pick[static_cast<size_t>(pos)] == known - 1) {
          pick[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++pick[static_cast<size_t>(pos)];
      }
    }
    if (discovered.size() == before) break;
    first_round = false;
    round_start = before;
  }
  if (discovered.empty())
    fail(ErrorKind::empty_generation, "no generators and no constants");
  out.map = std::move(map);
  return out;
}

}  // namespace uag
