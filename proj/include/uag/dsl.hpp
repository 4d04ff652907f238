#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uag/verbal.hpp"

namespace uag {

/// Parsed .uag model: named signatures, algebras, equation systems and word
/// systems. Names are unique per kind; every other declaration references a
/// previously declared signature.
struct ModelFile {
  std::vector<std::pair<std::string, SignatureRef>> signatures;
  std::vector<std::pair<std::string, AlgebraRef>> algebras;
  struct NamedSystem {
    std::string name;
    SignatureRef signature;
    EquationSystem system;
  };
  std::vector<NamedSystem> systems;
  std::vector<WordSystem> word_systems;

  SignatureRef find_signature(std::string_view name) const;
  AlgebraRef find_algebra(std::string_view name) const;
  const NamedSystem* find_system(std::string_view name) const;
  const WordSystem* find_word_system(std::string_view name) const;

  SignatureRef require_signature(std::string_view name) const;
  AlgebraRef require_algebra(std::string_view name) const;
  const NamedSystem& require_system(std::string_view name) const;
  const WordSystem& require_word_system(std::string_view name) const;
};

ModelFile parse_model(std::string_view text);

/// Canonical text form; parse_model(render_model(m)) is structurally equal to m.
std::string render_model(const ModelFile& m);

std::string render_signature(const std::string& name, const Signature& sig);
std::string render_algebra(const std::string& name, const FiniteAlgebra& a);
std::string render_system(const ModelFile::NamedSystem& s);
std::string render_word_system(const WordSystem& w);

/// Parse a single term in the model term syntax over x1..x{rank}.
Term parse_term(std::string_view text, const Signature& sig, int rank);

bool model_equal(const ModelFile& a, const ModelFile& b);

}  // namespace uag
