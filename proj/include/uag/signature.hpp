#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "uag/errors.hpp"

namespace uag {

struct OpSymbol {
  std::string name;
  int arity = 0;
  bool operator==(const OpSymbol&) const = default;
};

/// An ordered list of operation symbols with arities. The position of a
/// symbol in the list is its canonical operation index.
class Signature {
 public:
  Signature(std::string name, std::vector<OpSymbol> ops);

  const std::string& name() const { return name_; }
  int op_count() const { return static_cast<int>(ops_.size()); }
  const OpSymbol& op(int index) const { return ops_[static_cast<size_t>(index)]; }
  const std::vector<OpSymbol>& ops() const { return ops_; }
  int arity(int index) const { return ops_[static_cast<size_t>(index)].arity; }

  /// Index of a symbol, or -1 if absent.
  int index_of(std::string_view symbol) const;
  /// Index of a symbol; throws ErrorKind::unknown_symbol if absent.
  int require(std::string_view symbol) const;

  bool has_constant() const;

  bool operator==(const Signature& other) const {
    return name_ == other.name_ && ops_ == other.ops_;
  }

 private:
  std::string name_;
  std::vector<OpSymbol> ops_;
  std::map<std::string, int, std::less<>> index_;
};

using SignatureRef = std::shared_ptr<const Signature>;

inline SignatureRef make_signature(std::string name, std::vector<OpSymbol> ops) {
  return std::make_shared<Signature>(std::move(name), std::move(ops));
}

}  // namespace uag
