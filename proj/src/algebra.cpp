#include "uag/algebra.hpp"

#include <cassert>

namespace uag {

namespace {

long long table_length(int size, int arity) {
  long long n = 1;
  for (int i = 0; i < arity; ++i) n *= size;
  return n;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(SignatureRef sig, int size, std::vector<std::vector<int>> tables,
                             std::string name)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), name_(std::move(name)) {
  if (size_ < 1) fail(ErrorKind::table_error, "algebra carrier must be nonempty");
  if (static_cast<int>(tables_.size()) != sig_->op_count())
    fail(ErrorKind::table_error, "expected one table per operation symbol");
  for (int i = 0; i < sig_->op_count(); ++i) {
    const auto& t = tables_[static_cast<size_t>(i)];
    if (static_cast<long long>(t.size()) != table_length(size_, sig_->arity(i)))
      fail(ErrorKind::table_error, "table for '" + sig_->op(i).name + "' has wrong shape");
    for (int v : t)
      if (v < 0 || v >= size_)
        fail(ErrorKind::table_error, "table entry out of range for '" + sig_->op(i).name + "'");
  }
}

int FiniteAlgebra::apply(int op_index, std::span<const int> args) const {
  const auto& t = tables_[static_cast<size_t>(op_index)];
  long long idx = 0;
  for (int a : args) idx = idx * size_ + a;
  return t[static_cast<size_t>(idx)];
}

bool FiniteAlgebra::table_equal(const FiniteAlgebra& other) const {
  return *sig_ == *other.sig_ && size_ == other.size_ && tables_ == other.tables_;
}

int apply_op(const FiniteAlgebra& a, std::string_view symbol, std::span<const int> args) {
  int op = a.signature().require(symbol);
  int arity = a.signature().arity(op);
  if (static_cast<int>(args.size()) != arity)
    fail(ErrorKind::arity_mismatch, "'" + std::string(symbol) + "' expects " +
                                        std::to_string(arity) + " arguments, got " +
                                        std::to_string(args.size()));
  for (int v : args)
    if (v < 0 || v >= a.size())
      fail(ErrorKind::index_out_of_range, "element index " + std::to_string(v) +
                                              " outside carrier of size " +
                                              std::to_string(a.size()));
  return a.apply(op, args);
}

bool same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return a.signature_ref() == b.signature_ref() || a.signature() == b.signature();
}

void require_same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!same_signature(a, b))
    fail(ErrorKind::signature_mismatch, "algebras have different signatures");
}

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, std::span<const int> f) {
  require_same_signature(a, b);
  if (static_cast<int>(f.size()) != a.size())
    fail(ErrorKind::index_out_of_range, "map is not total on the source carrier");
  for (int v : f)
    if (v < 0 || v >= b.size())
      fail(ErrorKind::index_out_of_range, "map value outside target carrier");

  const Signature& sig = a.signature();
  std::vector<int> args, fargs;
  for (int op = 0; op < sig.op_count(); ++op) {
    int arity = sig.arity(op);
    args.assign(static_cast<size_t>(arity), 0);
    fargs.assign(static_cast<size_t>(arity), 0);
    while (true) {
      for (int i = 0; i < arity; ++i) fargs[static_cast<size_t>(i)] = f[static_cast<size_t>(args[static_cast<size_t>(i)])];
      if (f[static_cast<size_t>(a.apply(op, args))] != b.apply(op, fargs)) return false;
      int pos = arity - 1;
      while (pos >= 0 && args[static_cast<size_t>(pos)] == a.size() - 1) {
        args[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++args[static_cast<size_t>(pos)];
    }
  }
  return true;
}

}  // namespace uag
