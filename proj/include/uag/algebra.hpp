#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "uag/signature.hpp"

namespace uag {

/// A finite algebra: a carrier {0..size-1} plus one total operation table per
/// signature symbol. Tables are stored flat in row-major order with the first
/// argument most significant, so increasing flat index enumerates argument
/// tuples lexicographically.
class FiniteAlgebra {
 public:
  FiniteAlgebra(SignatureRef sig, int size, std::vector<std::vector<int>> tables,
                std::string name = {});

  const Signature& signature() const { return *sig_; }
  const SignatureRef& signature_ref() const { return sig_; }
  const std::string& name() const { return name_; }
  int size() const { return size_; }

  /// Table lookup by operation index. Arguments must already be valid.
  int apply(int op_index, std::span<const int> args) const;

  const std::vector<std::vector<int>>& tables() const { return tables_; }
  const std::vector<int>& table(int op_index) const { return tables_[static_cast<size_t>(op_index)]; }

  /// Same signature, same size, identical table entries. Names are labels and
  /// do not participate.
  bool table_equal(const FiniteAlgebra& other) const;

 private:
  SignatureRef sig_;
  int size_;
  std::vector<std::vector<int>> tables_;
  std::string name_;
};

using AlgebraRef = std::shared_ptr<const FiniteAlgebra>;

inline AlgebraRef make_algebra(SignatureRef sig, int size,
                               std::vector<std::vector<int>> tables, std::string name = {}) {
  return std::make_shared<FiniteAlgebra>(std::move(sig), size, std::move(tables), std::move(name));
}

/// Validated table lookup by symbol name.
int apply_op(const FiniteAlgebra& a, std::string_view symbol, std::span<const int> args);

/// Exhaustive homomorphism check of a total map f : A -> B.
bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, std::span<const int> f);

bool same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b);
void require_same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b);

}  // namespace uag
