#pragma once

#include <array>
#include <optional>

#include "uag/geometry.hpp"

namespace uag {

/// One word per signature symbol; w for an n-ary symbol is a term over x1..xn.
struct WordSystem {
  SignatureRef signature;
  std::vector<Term> words;  // parallel to signature ops
  std::string name;
};

WordSystem identity_words(SignatureRef sig, std::string name = "Wid");
void validate_word_system(const WordSystem& w);

/// Same carrier, every operation reinterpreted through its word.
FiniteAlgebra derive_algebra(const FiniteAlgebra& h, const WordSystem& w);
AlgebraRef derive_algebra(const AlgebraRef& h, const WordSystem& w);

/// Rewrite every operation node of t through the words of w (one level).
Term apply_words(const Term& t, const WordSystem& w);

enum class RankStatus { iso_found, not_homomorphism, not_bijective, budget_exceeded };
const char* to_string(RankStatus s);

struct RankEvidence {
  int rank = 0;
  RankStatus status = RankStatus::budget_exceeded;
  std::shared_ptr<const CoordinateAlgebra> free_algebra;  // F_rank over h0 (null on budget)
  std::vector<int> s_map;                                 // iso_found only
  // not_homomorphism: (element, image, image) with two distinct images;
  // not_bijective: (element, element, shared image).
  std::array<int, 3> violation{-1, -1, -1};
};

/// Evidence that the generator-fixing maps s : F_r -> (F_r)*_W are
/// isomorphisms, exact for Var(h0) at each checked rank.
struct ApplicabilityReport {
  AlgebraRef h0;
  WordSystem words;
  int max_rank = 0;
  std::vector<RankEvidence> ranks;

  const RankEvidence* at(int rank) const;
  bool iso_up_to(int rank) const;
};

ApplicabilityReport check_applicable_rel(const AlgebraRef& h0, const WordSystem& w, int max_rank,
                                         int point_budget = kDefaultPointBudget);

/// Conjugation of the induced map of m by the s-bijections:
/// s_{r2} . m^ . s_{r1}^{-1} on the relatively free carriers.
struct CarrierMap {
  int source_rank = 0;
  int target_rank = 0;
  std::vector<int> map;
};

CarrierMap apply_automorphism_to_morphism(const TermMorphism& m, const WordSystem& w,
                                          const AlgebraRef& h0, const ApplicabilityReport& report);

/// Transport of a closed congruence over H to one over derive(H, W) through
/// the s-bijection at its rank. Verifies that the transported congruence is
/// closed and throws ErrorKind::transport_not_closed otherwise.
ClosedCongruence transport_closed(const ClosedCongruence& t, const WordSystem& w,
                                  const AlgebraRef& h0, const ApplicabilityReport& report,
                                  int point_budget = kDefaultPointBudget);

struct InnerWitness {
  Term c;  // over x1
  std::vector<int> verified_ranks;
};

/// Search for a unary term c such that f |-> c(f) is an isomorphism
/// F_r -> (F_r)*_W at every rank r <= max_rank. Candidates are enumerated to
/// max_depth and deduplicated by their image in the rank-1 relatively free
/// algebra; the first witness in enumeration order wins.
std::optional<InnerWitness> inner_search(const AlgebraRef& h0, const WordSystem& w, int max_rank,
                                         int max_depth, int point_budget = kDefaultPointBudget);

struct ApplicabilityBasis {
  enum class Kind { user_asserted, relative_evidence };
  Kind kind = Kind::user_asserted;
  std::optional<ApplicabilityReport> evidence;

  static ApplicabilityBasis user_asserted() { return {Kind::user_asserted, std::nullopt}; }
  static ApplicabilityBasis relative(ApplicabilityReport report) {
    return {Kind::relative_evidence, std::move(report)};
  }
};

struct AutoEqVerdict {
  bool verdict = false;
  int max_rank = 0;
  ApplicabilityBasis basis;
  GeomVerdict geom;
};

/// Automorphic equivalence through W: geom_equiv(h1, derive(h2, W), max_rank),
/// carrying the epistemic basis of W's applicability.
AutoEqVerdict auto_equiv(const AlgebraRef& h1, const AlgebraRef& h2, const WordSystem& w,
                         int max_rank, ApplicabilityBasis basis,
                         int point_budget = kDefaultPointBudget);

}  // namespace uag
