#include "uag/signature.hpp"

namespace uag {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::unknown_symbol: return "unknown_symbol";
    case ErrorKind::arity_mismatch: return "arity_mismatch";
    case ErrorKind::index_out_of_range: return "index_out_of_range";
    case ErrorKind::signature_mismatch: return "signature_mismatch";
    case ErrorKind::rank_mismatch: return "rank_mismatch";
    case ErrorKind::empty_generation: return "empty_generation";
    case ErrorKind::budget_exceeded: return "budget_exceeded";
    case ErrorKind::duplicate_name: return "duplicate_name";
    case ErrorKind::table_error: return "table_error";
    case ErrorKind::lexical_error: return "lexical_error";
    case ErrorKind::unknown_name: return "unknown_name";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::transport_not_closed: return "transport_not_closed";
    case ErrorKind::missing_basis: return "missing_basis";
  }
  return "error";
}

Signature::Signature(std::string name, std::vector<OpSymbol> ops)
    : name_(std::move(name)), ops_(std::move(ops)) {
  for (size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].arity < 0)
      fail(ErrorKind::arity_mismatch, "negative arity for symbol '" + ops_[i].name + "'");
    auto [it, inserted] = index_.emplace(ops_[i].name, static_cast<int>(i));
    if (!inserted)
      fail(ErrorKind::duplicate_name, "duplicate operation symbol '" + ops_[i].name + "'");
  }
}

int Signature::index_of(std::string_view symbol) const {
  auto it = index_.find(symbol);
  return it == index_.end() ? -1 : it->second;
}

int Signature::require(std::string_view symbol) const {
  int i = index_of(symbol);
  if (i < 0)
    fail(ErrorKind::unknown_symbol,
         "unknown operation symbol '" + std::string(symbol) + "' in signature " + name_);
  return i;
}

bool Signature::has_constant() const {
  for (const auto& op : ops_)
    if (op.arity == 0) return true;
  return false;
}

}  // namespace uag
