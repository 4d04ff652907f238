#include "uag/report.hpp"

namespace uag {

std::string content_hash(std::string_view text) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

Json json_point_set(const PointSet& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back(p);
  return pts;
}

Json json_congruence(const ClosedCongruence& t) {
  Json out;
  out["algebra"] = t.algebra()->name();
  out["rank"] = t.rank();
  out["points"] = json_point_set(t.base());
  out["coordinate_size"] = t.coordinate()->size();
  return out;
}

Json json_algebra(const FiniteAlgebra& a) {
  Json out;
  out["name"] = a.name();
  out["signature"] = a.signature().name();
  out["size"] = a.size();
  Json tables;
  for (int op = 0; op < a.signature().op_count(); ++op)
    tables[a.signature().op(op).name] = a.table(op);
  out["tables"] = std::move(tables);
  return out;
}

Json json_geom_verdict(const GeomVerdict& v) {
  Json out;
  out["verdict"] = v.equivalent_up_to_rank;
  out["checked_rank"] = v.checked_rank;
  if (v.counterexample) {
    Json ce = json_congruence(v.counterexample->congruence);
    ce["rank"] = v.counterexample->rank;
    ce["closed_for"] = v.counterexample->closed_for == GeomVerdict::Side::first ? "first" : "second";
    ce["fails_for"] = v.counterexample->fails_for == GeomVerdict::Side::first ? "first" : "second";
    out["counterexample"] = std::move(ce);
  }
  return out;
}

Json json_applicability(const ApplicabilityReport& r) {
  Json out;
  out["h0"] = r.h0->name();
  out["words"] = r.words.name;
  out["max_rank"] = r.max_rank;
  Json ranks = Json::array();
  for (const auto& e : r.ranks) {
    Json je;
    je["rank"] = e.rank;
    je["status"] = to_string(e.status);
    if (e.status == RankStatus::iso_found) {
      je["free_size"] = e.free_algebra->size();
      je["s_map"] = e.s_map;
    } else if (e.status != RankStatus::budget_exceeded) {
      je["free_size"] = e.free_algebra->size();
      je["violation"] = e.violation;
    }
    ranks.push_back(std::move(je));
  }
  out["ranks"] = std::move(ranks);
  return out;
}

Json json_basis(const ApplicabilityBasis& b) {
  if (b.kind == ApplicabilityBasis::Kind::user_asserted) return "user_asserted";
  Json out;
  out["relative_evidence"] = json_applicability(*b.evidence);
  return out;
}

Json json_auto_verdict(const AutoEqVerdict& v) {
  Json out = json_geom_verdict(v.geom);
  out["max_rank"] = v.max_rank;
  out["basis"] = json_basis(v.basis);
  return out;
}

std::string render_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace uag
