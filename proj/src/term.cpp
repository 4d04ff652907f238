#include "uag/term.hpp"

#include <algorithm>

namespace uag {

Term Term::var(int index) {
  if (index < 1) fail(ErrorKind::rank_mismatch, "generator index must be >= 1");
  auto node = std::make_shared<Node>();
  node->head = -index;
  node->depth = 0;
  node->max_var = index;
  return Term(std::move(node));
}

Term Term::app(int op_index, std::vector<Term> children) {
  auto node = std::make_shared<Node>();
  node->head = op_index;
  node->depth = 1;
  node->max_var = 0;
  for (const Term& c : children) {
    node->depth = std::max(node->depth, c.depth() + 1);
    node->max_var = std::max(node->max_var, c.max_var());
  }
  node->children = std::move(children);
  return Term(std::move(node));
}

Term Term::app(const Signature& sig, int op_index, std::vector<Term> children) {
  if (op_index < 0 || op_index >= sig.op_count())
    fail(ErrorKind::unknown_symbol, "operation index outside signature");
  if (static_cast<int>(children.size()) != sig.arity(op_index))
    fail(ErrorKind::arity_mismatch,
         "'" + sig.op(op_index).name + "' expects " + std::to_string(sig.arity(op_index)) +
             " children, got " + std::to_string(children.size()));
  return app(op_index, std::move(children));
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->head != other.node_->head) return false;
  if (node_->children.size() != other.node_->children.size()) return false;
  for (size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == other.node_->children[i])) return false;
  return true;
}

std::string to_string(const Term& t, const Signature& sig) {
  if (t.is_var()) return "x" + std::to_string(t.var_index());
  std::string out = sig.op(t.op()).name;
  if (!t.children().empty()) {
    out += "(";
    for (size_t i = 0; i < t.children().size(); ++i) {
      if (i) out += ",";
      out += to_string(t.children()[i], sig);
    }
    out += ")";
  }
  return out;
}

TermMorphism identity_morphism(int rank) {
  TermMorphism m{rank, rank, {}};
  for (int i = 1; i <= rank; ++i) m.images.push_back(Term::var(i));
  return m;
}

TermMorphism compose(const TermMorphism& first, const TermMorphism& second) {
  if (first.target_rank != second.source_rank)
    fail(ErrorKind::rank_mismatch, "morphism ranks do not compose");
  TermMorphism out{first.source_rank, second.target_rank, {}};
  for (const Term& img : first.images) out.images.push_back(substitute(img, second));
  return out;
}

void validate_morphism(const TermMorphism& m) {
  if (m.source_rank < 1 || m.target_rank < 1)
    fail(ErrorKind::rank_mismatch, "morphism ranks must be >= 1");
  if (static_cast<int>(m.images.size()) != m.source_rank)
    fail(ErrorKind::rank_mismatch, "morphism needs one image per source generator");
  for (const Term& img : m.images)
    if (img.max_var() > m.target_rank)
      fail(ErrorKind::rank_mismatch, "image uses a generator beyond the target rank");
}

int eval_term(const FiniteAlgebra& a, const Term& t, std::span<const int> assignment) {
  if (t.is_var()) {
    int i = t.var_index();
    if (i > static_cast<int>(assignment.size()))
      fail(ErrorKind::rank_mismatch, "term uses x" + std::to_string(i) +
                                         " but only " + std::to_string(assignment.size()) +
                                         " generators are assigned");
    return assignment[static_cast<size_t>(i - 1)];
  }
  int op = t.op();
  if (op >= a.signature().op_count())
    fail(ErrorKind::signature_mismatch, "term operation outside the algebra's signature");
  if (static_cast<int>(t.children().size()) != a.signature().arity(op))
    fail(ErrorKind::arity_mismatch, "term node has wrong arity for '" + a.signature().op(op).name + "'");
  std::vector<int> vals;
  vals.reserve(t.children().size());
  for (const Term& c : t.children()) vals.push_back(eval_term(a, c, assignment));
  return a.apply(op, vals);
}

int eval_term(const FiniteAlgebra& a, const Term& t, const Point& p) {
  if (p.target && !same_signature(a, *p.target))
    fail(ErrorKind::signature_mismatch, "point targets an algebra of a different signature");
  for (int v : p.assignment)
    if (v < 0 || v >= a.size())
      fail(ErrorKind::index_out_of_range, "point assignment outside carrier");
  return eval_term(a, t, std::span<const int>(p.assignment));
}

Term substitute(const Term& t, const TermMorphism& m) {
  if (t.max_var() > m.source_rank)
    fail(ErrorKind::rank_mismatch, "term uses generators beyond the morphism source rank");
  if (t.is_var()) return m.images[static_cast<size_t>(t.var_index() - 1)];
  std::vector<Term> children;
  children.reserve(t.children().size());
  for (const Term& c : t.children()) children.push_back(substitute(c, m));
  return Term::app(t.op(), std::move(children));
}

long long checked_point_count(int size, int rank, int point_budget) {
  long long n = 1;
  for (int i = 0; i < rank; ++i) {
    n *= size;
    if (n > point_budget)
      fail(ErrorKind::budget_exceeded, "|H|^rank = " + std::to_string(size) + "^" +
                                           std::to_string(rank) + " exceeds the point budget of " +
                                           std::to_string(point_budget));
  }
  return n;
}

std::vector<Point> enumerate_points(const AlgebraRef& h, GeneratorSet x, int point_budget) {
  if (x.rank < 1) fail(ErrorKind::rank_mismatch, "generator set rank must be >= 1");
  long long count = checked_point_count(h->size(), x.rank, point_budget);
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(count));
  std::vector<int> assignment(static_cast<size_t>(x.rank), 0);
  while (true) {
    out.push_back(Point{h, assignment});
    int pos = x.rank - 1;
    while (pos >= 0 && assignment[static_cast<size_t>(pos)] == h->size() - 1) {
      assignment[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++assignment[static_cast<size_t>(pos)];
  }
  return out;
}

std::vector<Term> enumerate_terms(const Signature& sig, GeneratorSet x, int max_depth) {
  if (x.rank < 1) fail(ErrorKind::rank_mismatch, "generator set rank must be >= 1");
  std::vector<Term> all;
  for (int i = 1; i <= x.rank; ++i) all.push_back(Term::var(i));
  for (int d = 1; d <= max_depth; ++d) {
    size_t pool = all.size();  // children come from terms of depth < d
    for (int op = 0; op < sig.op_count(); ++op) {
      int arity = sig.arity(op);
      if (arity == 0) {
        if (d == 1) all.push_back(Term::app(op, {}));
        continue;
      }
      std::vector<size_t> pick(static_cast<size_t>(arity), 0);
      while (true) {
        int deepest = 0;
        for (size_t p : pick) deepest = std::max(deepest, all[p].depth());
        if (deepest == d - 1) {
          std::vector<Term> children;
          children.reserve(pick.size());
          for (size_t p : pick) children.push_back(all[p]);
          all.push_back(Term::app(op, std::move(children)));
        }
        int pos = arity - 1;
        while (pos >= 0 && pick[static_cast<size_t>(pos)] == pool - 1) {
          pick[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++pick[static_cast<size_t>(pos)];
      }
    }
  }
  return all;
}

}  // namespace uag
