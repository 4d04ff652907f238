#include "fixtures.hpp"

#include <array>

namespace fx {

namespace {

std::vector<int> mod_add_table(int n) {
  std::vector<int> t;
  t.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.push_back((a + b) % n);
  return t;
}

std::vector<int> mod_inv_table(int n) {
  std::vector<int> t;
  for (int a = 0; a < n; ++a) t.push_back((n - a) % n);
  return t;
}

AlgebraRef cyclic_group(int n, std::string name) {
  return make_algebra(grp(), n, {{0}, mod_inv_table(n), mod_add_table(n)}, std::move(name));
}

}  // namespace

SignatureRef grp() {
  static SignatureRef sig = make_signature("Grp", {{"e", 0}, {"inv", 1}, {"mul", 2}});
  return sig;
}

SignatureRef sgr() {
  static SignatureRef sig = make_signature("Sgr", {{"mul", 2}});
  return sig;
}

SignatureRef slat() {
  static SignatureRef sig = make_signature("Slat", {{"meet", 2}});
  return sig;
}

AlgebraRef z2() {
  static AlgebraRef a = cyclic_group(2, "Z2");
  return a;
}

AlgebraRef z3() {
  static AlgebraRef a = cyclic_group(3, "Z3");
  return a;
}

AlgebraRef z4() {
  static AlgebraRef a = cyclic_group(4, "Z4");
  return a;
}

AlgebraRef k4() {
  // Z2 x Z2 with elements indexed by bit pairs; addition is xor.
  static AlgebraRef a = [] {
    std::vector<int> mul;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) mul.push_back(x ^ y);
    return make_algebra(grp(), 4, {{0}, {0, 1, 2, 3}, std::move(mul)}, "K4");
  }();
  return a;
}

AlgebraRef s3() {
  static AlgebraRef a = [] {
    const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
    }};
    auto find = [&](const std::array<int, 3>& p) {
      for (int i = 0; i < 6; ++i)
        if (perms[static_cast<size_t>(i)] == p) return i;
      return -1;
    };
    std::vector<int> mul, inv;
    for (int i = 0; i < 6; ++i) {
      std::array<int, 3> ip{};
      for (int x = 0; x < 3; ++x) ip[static_cast<size_t>(perms[static_cast<size_t>(i)][static_cast<size_t>(x)])] = x;
      inv.push_back(find(ip));
    }
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        std::array<int, 3> comp{};
        for (int x = 0; x < 3; ++x)
          comp[static_cast<size_t>(x)] =
              perms[static_cast<size_t>(i)][static_cast<size_t>(perms[static_cast<size_t>(j)][static_cast<size_t>(x)])];
        mul.push_back(find(comp));
      }
    return make_algebra(grp(), 6, {{0}, std::move(inv), std::move(mul)}, "S3");
  }();
  return a;
}

AlgebraRef q8() {
  // Elements 2*basis + sign with basis 0..3 for 1, i, j, k; sign 1 = negative.
  static AlgebraRef a = [] {
    auto basis_mul = [](int x, int y) -> std::pair<int, int> {  // (basis, negative?)
      if (x == 0) return {y, 0};
      if (y == 0) return {x, 0};
      if (x == y) return {0, 1};
      static const int third[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
      int z = third[x][y];
      // i*j=k, j*k=i, k*i=j positive; reversed order negative.
      bool positive = (x == 1 && y == 2) || (x == 2 && y == 3) || (x == 3 && y == 1);
      return {z, positive ? 0 : 1};
    };
    std::vector<int> mul, inv;
    for (int u = 0; u < 8; ++u) {
      int b = u / 2, s = u % 2;
      inv.push_back(b == 0 ? u : 2 * b + (1 - s));
    }
    for (int u = 0; u < 8; ++u)
      for (int v = 0; v < 8; ++v) {
        auto [b, neg] = basis_mul(u / 2, v / 2);
        int s = (u % 2) ^ (v % 2) ^ neg;
        mul.push_back(2 * b + s);
      }
    return make_algebra(grp(), 8, {{0}, std::move(inv), std::move(mul)}, "Q8");
  }();
  return a;
}

AlgebraRef one_grp() {
  static AlgebraRef a = make_algebra(grp(), 1, {{0}, {0}, {0}}, "OneG");
  return a;
}

AlgebraRef lz2() {
  static AlgebraRef a = make_algebra(sgr(), 2, {{0, 0, 1, 1}}, "LZ2");
  return a;
}

AlgebraRef rz2() {
  static AlgebraRef a = make_algebra(sgr(), 2, {{0, 1, 0, 1}}, "RZ2");
  return a;
}

AlgebraRef lzrz() {
  // (l, r) indexed as 2l + r; product keeps the left coordinate of the first
  // factor and the right coordinate of the second.
  static AlgebraRef a = [] {
    std::vector<int> mul;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) mul.push_back(2 * (x / 2) + (y % 2));
    return make_algebra(sgr(), 4, {std::move(mul)}, "LZRZ");
  }();
  return a;
}

AlgebraRef one_sgr() {
  static AlgebraRef a = make_algebra(sgr(), 1, {{0}}, "OneS");
  return a;
}

AlgebraRef s2_meet() {
  static AlgebraRef a = make_algebra(slat(), 2, {{0, 0, 0, 1}}, "S2");
  return a;
}

Term ge() { return Term::app(0, {}); }
Term ginv(Term t) { return Term::app(1, {std::move(t)}); }
Term gmul(Term a, Term b) { return Term::app(2, {std::move(a), std::move(b)}); }
Term bop(Term a, Term b) { return Term::app(0, {std::move(a), std::move(b)}); }

WordSystem wid_grp() { return identity_words(grp(), "WidG"); }
WordSystem wid_sgr() { return identity_words(sgr(), "WidS"); }

WordSystem wop_sgr() {
  return WordSystem{sgr(), {bop(Term::var(2), Term::var(1))}, "Wop"};
}

WordSystem wop_grp() {
  return WordSystem{grp(),
                    {ge(), ginv(Term::var(1)), gmul(Term::var(2), Term::var(1))},
                    "WopG"};
}

WordSystem wq8() {
  // x1 * x2 * (x2,x1)^2 with (a,b) = inv(a) inv(b) a b.
  Term x1 = Term::var(1), x2 = Term::var(2);
  Term comm = gmul(gmul(ginv(x2), ginv(x1)), gmul(x2, x1));
  Term word = gmul(gmul(x1, x2), gmul(comm, comm));
  return WordSystem{grp(), {ge(), ginv(Term::var(1)), word}, "Wq8"};
}

EquationSystem square_trivial() {
  return EquationSystem{GeneratorSet{1}, {{gmul(Term::var(1), Term::var(1)), ge()}}};
}

EquationSystem commuting_pair() {
  return EquationSystem{GeneratorSet{2},
                        {{gmul(Term::var(1), Term::var(2)), gmul(Term::var(2), Term::var(1))}}};
}

EquationSystem empty_system(int rank) { return EquationSystem{GeneratorSet{rank}, {}}; }

ModelFile full_model() {
  ModelFile m;
  m.signatures.emplace_back("Grp", grp());
  m.signatures.emplace_back("Sgr", sgr());
  m.signatures.emplace_back("Slat", slat());
  for (const auto& a : {z2(), z3(), z4(), k4(), s3(), q8(), one_grp()})
    m.algebras.emplace_back(a->name(), a);
  for (const auto& a : {lz2(), rz2(), lzrz(), one_sgr()})
    m.algebras.emplace_back(a->name(), a);
  m.algebras.emplace_back(s2_meet()->name(), s2_meet());
  m.systems.push_back({"Tsq", grp(), square_trivial()});
  m.systems.push_back({"Tcomm", grp(), commuting_pair()});
  m.systems.push_back({"TdiagG", grp(), empty_system(1)});
  m.systems.push_back({"TdiagS", sgr(), empty_system(2)});
  m.word_systems.push_back(wid_grp());
  m.word_systems.push_back(wid_sgr());
  m.word_systems.push_back(wop_sgr());
  m.word_systems.push_back(wop_grp());
  m.word_systems.push_back(wq8());
  return m;
}

}  // namespace fx
