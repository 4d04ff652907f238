#include "uag/verbal.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>
#include <unordered_set>

namespace uag {

namespace {

void validate_term_shape(const Signature& sig, const Term& t) {
  if (t.is_var()) return;
  if (t.op() < 0 || t.op() >= sig.op_count())
    fail(ErrorKind::unknown_symbol, "term operation outside the signature");
  if (static_cast<int>(t.children().size()) != sig.arity(t.op()))
    fail(ErrorKind::arity_mismatch, "term node has wrong arity");
  for (const Term& c : t.children()) validate_term_shape(sig, c);
}

/// The map F_{r1} -> F_{r2} induced by m on relatively free carriers: each
/// element goes through its witness term, substituted and re-evaluated on the
/// target support.
std::vector<int> induced_on_free(const CoordinateAlgebra& src, const CoordinateAlgebra& dst,
                                 const TermMorphism& m) {
  const FiniteAlgebra& h = *dst.base_algebra;
  std::vector<int> map(static_cast<size_t>(src.size()));
  for (int e = 0; e < src.size(); ++e) {
    Term image = substitute(src.witness(e), m);
    Tuple row;
    row.reserve(dst.support.points.size());
    for (const auto& p : dst.support.points)
      row.push_back(eval_term(h, image, std::span<const int>(p)));
    int idx = dst.sub.index_of(row);
    assert(idx >= 0);
    map[static_cast<size_t>(e)] = idx;
  }
  return map;
}

/// Class ids for rows of values; two elements share a class iff their rows are equal.
std::vector<int> partition_ids(const std::vector<Tuple>& keys) {
  std::unordered_map<Tuple, int, TupleHash> ids;
  std::vector<int> cls(keys.size());
  int next = 0;
  for (size_t i = 0; i < keys.size(); ++i) {
    auto [it, inserted] = ids.emplace(keys[i], next);
    if (inserted) ++next;
    cls[i] = it->second;
  }
  return cls;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::unordered_map<int, int> fwd, bwd;
  for (size_t i = 0; i < a.size(); ++i) {
    auto [f, fi] = fwd.emplace(a[i], b[i]);
    if (!fi && f->second != b[i]) return false;
    auto [g, gi] = bwd.emplace(b[i], a[i]);
    if (!gi && g->second != a[i]) return false;
  }
  return true;
}

}  // namespace

const char* to_string(RankStatus s) {
  switch (s) {
    case RankStatus::iso_found: return "iso_found";
    case RankStatus::not_homomorphism: return "not_homomorphism";
    case RankStatus::not_bijective: return "not_bijective";
    case RankStatus::budget_exceeded: return "budget_exceeded";
  }
  return "unknown";
}

WordSystem identity_words(SignatureRef sig, std::string name) {
  WordSystem w{sig, {}, std::move(name)};
  for (int op = 0; op < sig->op_count(); ++op) {
    std::vector<Term> xs;
    for (int i = 1; i <= sig->arity(op); ++i) xs.push_back(Term::var(i));
    w.words.push_back(Term::app(op, std::move(xs)));
  }
  return w;
}

void validate_word_system(const WordSystem& w) {
  if (!w.signature) fail(ErrorKind::signature_mismatch, "word system has no signature");
  if (static_cast<int>(w.words.size()) != w.signature->op_count())
    fail(ErrorKind::arity_mismatch, "word system needs exactly one word per operation symbol");
  for (int op = 0; op < w.signature->op_count(); ++op) {
    const Term& word = w.words[static_cast<size_t>(op)];
    validate_term_shape(*w.signature, word);
    if (word.max_var() > w.signature->arity(op))
      fail(ErrorKind::rank_mismatch, "word for '" + w.signature->op(op).name +
                                         "' uses generators beyond its arity");
  }
}

FiniteAlgebra derive_algebra(const FiniteAlgebra& h, const WordSystem& w) {
  validate_word_system(w);
  if (!(h.signature() == *w.signature))
    fail(ErrorKind::signature_mismatch, "word system signature differs from the algebra's");
  const Signature& sig = h.signature();
  std::vector<std::vector<int>> tables(static_cast<size_t>(sig.op_count()));
  for (int op = 0; op < sig.op_count(); ++op) {
    int arity = sig.arity(op);
    long long len = 1;
    for (int i = 0; i < arity; ++i) len *= h.size();
    auto& table = tables[static_cast<size_t>(op)];
    table.reserve(static_cast<size_t>(len));
    std::vector<int> args(static_cast<size_t>(arity), 0);
    for (long long flat = 0; flat < len; ++flat) {
      table.push_back(eval_term(h, w.words[static_cast<size_t>(op)], std::span<const int>(args)));
      int pos = arity - 1;
      while (pos >= 0 && args[static_cast<size_t>(pos)] == h.size() - 1) {
        args[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos >= 0) ++args[static_cast<size_t>(pos)];
    }
  }
  return FiniteAlgebra(h.signature_ref(), h.size(), std::move(tables),
                       h.name().empty() ? std::string{} : h.name() + "*" + w.name);
}

AlgebraRef derive_algebra(const AlgebraRef& h, const WordSystem& w) {
  return std::make_shared<const FiniteAlgebra>(derive_algebra(*h, w));
}

Term apply_words(const Term& t, const WordSystem& w) {
  if (t.is_var()) return t;
  std::vector<Term> images;
  images.reserve(t.children().size());
  for (const Term& c : t.children()) images.push_back(apply_words(c, w));
  int arity = static_cast<int>(images.size());
  TermMorphism m{arity, 1, std::move(images)};
  for (const Term& img : m.images) m.target_rank = std::max(m.target_rank, img.max_var());
  return substitute(w.words[static_cast<size_t>(t.op())], m);
}

const RankEvidence* ApplicabilityReport::at(int rank) const {
  for (const auto& e : ranks)
    if (e.rank == rank) return &e;
  return nullptr;
}

bool ApplicabilityReport::iso_up_to(int rank) const {
  for (int r = 1; r <= rank; ++r) {
    const RankEvidence* e = at(r);
    if (!e || e->status != RankStatus::iso_found) return false;
  }
  return true;
}

ApplicabilityReport check_applicable_rel(const AlgebraRef& h0, const WordSystem& w, int max_rank,
                                         int point_budget) {
  validate_word_system(w);
  if (!(h0->signature() == *w.signature))
    fail(ErrorKind::signature_mismatch, "word system signature differs from h0's");
  ApplicabilityReport report{h0, w, max_rank, {}};
  for (int r = 1; r <= max_rank; ++r) {
    RankEvidence ev;
    ev.rank = r;
    std::shared_ptr<const CoordinateAlgebra> free;
    try {
      free = relatively_free(h0, GeneratorSet{r}, point_budget);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::budget_exceeded) throw;
      ev.status = RankStatus::budget_exceeded;
      report.ranks.push_back(std::move(ev));
      break;  // higher ranks only grow
    }
    ev.free_algebra = free;
    FiniteAlgebra derived = derive_algebra(free->algebra, w);
    auto ext = extend_to_hom(free->algebra, free->generator_images, derived,
                             free->generator_images);
    if (!ext.ok()) {
      ev.status = RankStatus::not_homomorphism;
      ev.violation = {ext.conflict_element, ext.conflict_first, ext.conflict_second};
    } else {
      std::vector<int>& map = *ext.map;
      std::vector<int> seen(map.size(), -1);
      int a1 = -1, a2 = -1;
      for (size_t a = 0; a < map.size(); ++a) {
        assert(map[a] >= 0);
        if (seen[static_cast<size_t>(map[a])] >= 0) {
          a1 = seen[static_cast<size_t>(map[a])];
          a2 = static_cast<int>(a);
          break;
        }
        seen[static_cast<size_t>(map[a])] = static_cast<int>(a);
      }
      if (a1 >= 0) {
        ev.status = RankStatus::not_bijective;
        ev.violation = {a1, a2, map[static_cast<size_t>(a1)]};
      } else {
        ev.status = RankStatus::iso_found;
        ev.s_map = std::move(map);
      }
    }
    report.ranks.push_back(std::move(ev));
  }
  return report;
}

CarrierMap apply_automorphism_to_morphism(const TermMorphism& m, const WordSystem& w,
                                          const AlgebraRef& h0,
                                          const ApplicabilityReport& report) {
  validate_morphism(m);
  const RankEvidence* src = report.at(m.source_rank);
  const RankEvidence* dst = report.at(m.target_rank);
  if (!src || src->status != RankStatus::iso_found || !dst ||
      dst->status != RankStatus::iso_found)
    fail(ErrorKind::precondition, "no iso_found evidence at the morphism ranks");
  if (report.h0 != h0 && !report.h0->table_equal(*h0))
    fail(ErrorKind::precondition, "report was computed for a different variety generator");
  bool same_words = *report.words.signature == *w.signature &&
                    report.words.words.size() == w.words.size();
  for (size_t i = 0; same_words && i < w.words.size(); ++i)
    same_words = report.words.words[i] == w.words[i];
  if (!same_words)
    fail(ErrorKind::precondition, "report was computed for a different word system");

  std::vector<int> induced = induced_on_free(*src->free_algebra, *dst->free_algebra, m);
  std::vector<int> s1_inv(src->s_map.size());
  for (size_t a = 0; a < src->s_map.size(); ++a)
    s1_inv[static_cast<size_t>(src->s_map[a])] = static_cast<int>(a);

  CarrierMap out{m.source_rank, m.target_rank, {}};
  out.map.resize(src->s_map.size());
  for (size_t a = 0; a < out.map.size(); ++a)
    out.map[a] = dst->s_map[static_cast<size_t>(
        induced[static_cast<size_t>(s1_inv[a])])];
  return out;
}

ClosedCongruence transport_closed(const ClosedCongruence& t, const WordSystem& w,
                                  const AlgebraRef& h0, const ApplicabilityReport& report,
                                  int point_budget) {
  int r = t.rank();
  const AlgebraRef& h = t.algebra();
  const RankEvidence* ev = report.at(r);
  if (!ev || ev->status != RankStatus::iso_found)
    fail(ErrorKind::precondition, "no iso_found evidence at rank " + std::to_string(r));
  if (!same_signature(*h, *h0))
    fail(ErrorKind::signature_mismatch, "algebra and variety generator signatures differ");

  const CoordinateAlgebra& free = *ev->free_algebra;
  int n = free.size();

  // Membership evidence: every rank-r identity of Var(h0) holds in H.
  auto free_h = relatively_free(h, GeneratorSet{r}, point_budget);
  if (!extend_to_hom(free.algebra, free.generator_images, free_h->algebra,
                     free_h->generator_images)
           .ok())
    fail(ErrorKind::precondition,
         "the algebra fails rank-" + std::to_string(r) + " identities of Var(h0)");

  // T as a partition of the free carrier, via witness rows over T's base.
  std::vector<Tuple> keys(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    Tuple& key = keys[static_cast<size_t>(c)];
    key.reserve(t.base().points.size());
    for (const auto& phi : t.base().points)
      key.push_back(eval_term(*h, free.witness(c), std::span<const int>(phi)));
  }
  std::vector<int> cls_t = partition_ids(keys);

  // Transported congruence: c1 ~ c2 iff s(c1) ~_T s(c2).
  std::vector<int> pushed(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c)
    pushed[static_cast<size_t>(c)] = cls_t[static_cast<size_t>(ev->s_map[static_cast<size_t>(c)])];

  AlgebraRef derived = derive_algebra(h, w);
  std::vector<std::vector<int>> kept;
  std::vector<std::vector<int>> value_maps;  // factoring map per kept point
  int n_classes = 1 + *std::max_element(pushed.begin(), pushed.end());
  std::vector<int> class_value(static_cast<size_t>(n_classes));
  for (const auto& p : enumerate_points(derived, GeneratorSet{r}, point_budget)) {
    auto ext = extend_to_hom(free.algebra, free.generator_images, *derived, p.assignment);
    if (!ext.ok()) continue;
    std::fill(class_value.begin(), class_value.end(), -1);
    bool ok = true;
    for (int c = 0; c < n && ok; ++c) {
      int& slot = class_value[static_cast<size_t>(pushed[static_cast<size_t>(c)])];
      int v = (*ext.map)[static_cast<size_t>(c)];
      if (slot == -1) slot = v;
      else if (slot != v) ok = false;
    }
    if (!ok) continue;
    kept.push_back(p.assignment);
    value_maps.push_back(std::move(*ext.map));
  }

  ClosedCongruence result(make_point_set(derived, r, kept));

  // The congruence of the result must not be coarser than the transported one.
  std::vector<Tuple> result_keys(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    Tuple& key = result_keys[static_cast<size_t>(c)];
    key.reserve(value_maps.size());
    for (const auto& vm : value_maps) key.push_back(vm[static_cast<size_t>(c)]);
  }
  if (!same_partition(partition_ids(result_keys), pushed))
    fail(ErrorKind::transport_not_closed,
         "the transported congruence is not closed over the derived algebra");

  PointSet reclosed = galois_close_points(result.base(), point_budget);
  if (reclosed.points != result.base().points)
    fail(ErrorKind::transport_not_closed,
         "the transported point set is not a Galois fixpoint");
  return result;
}

std::optional<InnerWitness> inner_search(const AlgebraRef& h0, const WordSystem& w, int max_rank,
                                         int max_depth, int point_budget) {
  validate_word_system(w);
  if (max_rank < 1) fail(ErrorKind::rank_mismatch, "max_rank must be >= 1");

  std::vector<std::shared_ptr<const CoordinateAlgebra>> free;   // index r-1
  std::vector<FiniteAlgebra> derived;
  for (int r = 1; r <= max_rank; ++r) {
    free.push_back(relatively_free(h0, GeneratorSet{r}, point_budget));
    derived.push_back(derive_algebra(free.back()->algebra, w));
  }

  const Signature& sig = h0->signature();
  std::unordered_set<int> seen;
  int gen1 = free[0]->generator_images[0];
  for (const Term& c : enumerate_terms(sig, GeneratorSet{1}, max_depth)) {
    int key = eval_term(free[0]->algebra, c, std::span<const int>(&gen1, 1));
    if (!seen.insert(key).second) continue;

    bool ok = true;
    for (int r = 1; r <= max_rank && ok; ++r) {
      const FiniteAlgebra& fr = free[static_cast<size_t>(r - 1)]->algebra;
      const FiniteAlgebra& dr = derived[static_cast<size_t>(r - 1)];
      int n = fr.size();
      std::vector<int> map(static_cast<size_t>(n));
      std::vector<int> hit(static_cast<size_t>(n), 0);
      for (int a = 0; a < n && ok; ++a) {
        int v = eval_term(fr, c, std::span<const int>(&a, 1));
        map[static_cast<size_t>(a)] = v;
        if (hit[static_cast<size_t>(v)]++) ok = false;  // not injective
      }
      if (ok && !is_homomorphism(fr, dr, map)) ok = false;
    }
    if (ok) {
      InnerWitness witness{c, {}};
      for (int r = 1; r <= max_rank; ++r) witness.verified_ranks.push_back(r);
      return witness;
    }
  }
  return std::nullopt;
}

AutoEqVerdict auto_equiv(const AlgebraRef& h1, const AlgebraRef& h2, const WordSystem& w,
                         int max_rank, ApplicabilityBasis basis, int point_budget) {
  if (basis.kind == ApplicabilityBasis::Kind::relative_evidence) {
    if (!basis.evidence)
      fail(ErrorKind::missing_basis, "relative_evidence basis requires an applicability report");
    if (!basis.evidence->iso_up_to(max_rank))
      fail(ErrorKind::missing_basis,
           "applicability evidence does not establish iso_found at every rank up to " +
               std::to_string(max_rank));
  }
  AlgebraRef derived = derive_algebra(h2, w);
  GeomVerdict geom = geom_equiv(h1, derived, max_rank, point_budget);
  return AutoEqVerdict{geom.equivalent_up_to_rank, max_rank, std::move(basis), std::move(geom)};
}

}  // namespace uag
