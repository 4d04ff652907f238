#include "uag/dsl.hpp"

#include <algorithm>
#include <cctype>

namespace uag {

namespace {

struct Token {
  enum class Kind { ident, number, punct, end };
  Kind kind = Kind::end;
  std::string text;
  long long value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void error(ErrorKind kind, const std::string& message) const {
    throw ParseError(kind, current_.line, current_.col, message);
  }

  Token expect_punct(const std::string& p) {
    if (current_.kind != Token::Kind::punct || current_.text != p)
      error(ErrorKind::lexical_error, "expected '" + p + "', found '" + describe() + "'");
    return next();
  }

  Token expect_ident(const char* what) {
    if (current_.kind != Token::Kind::ident)
      error(ErrorKind::lexical_error, std::string("expected ") + what + ", found '" + describe() + "'");
    return next();
  }

  Token expect_number(const char* what) {
    if (current_.kind != Token::Kind::number)
      error(ErrorKind::lexical_error, std::string("expected ") + what + ", found '" + describe() + "'");
    return next();
  }

  bool at_punct(const std::string& p) const {
    return current_.kind == Token::Kind::punct && current_.text == p;
  }
  bool at_ident(const std::string& word) const {
    return current_.kind == Token::Kind::ident && current_.text == word;
  }
  bool at_end() const { return current_.kind == Token::Kind::end; }

  std::string describe() const {
    if (current_.kind == Token::Kind::end) return "end of input";
    return current_.text;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
        continue;
      }
      break;
    }
    current_ = Token{};
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::Kind::end;
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      current_.kind = Token::Kind::ident;
      current_.text = std::string(text_.substr(start, pos_ - start));
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      current_.kind = Token::Kind::number;
      current_.text = std::string(text_.substr(start, pos_ - start));
      try {
        current_.value = std::stoll(current_.text);
      } catch (const std::out_of_range&) {
        throw ParseError(ErrorKind::lexical_error, line_, col_,
                         "number '" + current_.text + "' is out of range");
      }
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      current_.kind = Token::Kind::punct;
      current_.text = "->";
      pos_ += 2;
      col_ += 2;
      return;
    }
    static const std::string singles = "{}()[],;:/=";
    if (singles.find(c) != std::string::npos) {
      current_.kind = Token::Kind::punct;
      current_.text = std::string(1, c);
      ++pos_;
      ++col_;
      return;
    }
    throw ParseError(ErrorKind::lexical_error, line_, col_,
                     std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

bool is_generator_name(const std::string& name, int* index) {
  if (name.size() < 2 || name[0] != 'x') return false;
  if (name[1] == '0') return false;
  for (size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  *index = std::stoi(name.substr(1));
  return true;
}

Term parse_term_inner(Lexer& lex, const Signature& sig, int rank) {
  Token head = lex.expect_ident("a term");
  int gen = 0;
  if (is_generator_name(head.text, &gen)) {
    if (gen > rank)
      throw ParseError(ErrorKind::unknown_symbol, head.line, head.col,
                       "generator " + head.text + " exceeds the declared rank " +
                           std::to_string(rank));
    return Term::var(gen);
  }
  int op = sig.index_of(head.text);
  if (op < 0)
    throw ParseError(ErrorKind::unknown_symbol, head.line, head.col,
                     "unknown symbol '" + head.text + "'");
  int arity = sig.arity(op);
  if (!lex.at_punct("(")) {
    if (arity != 0)
      throw ParseError(ErrorKind::arity_mismatch, head.line, head.col,
                       "'" + head.text + "' expects " + std::to_string(arity) + " arguments");
    return Term::app(op, {});
  }
  lex.expect_punct("(");
  std::vector<Term> children;
  if (!lex.at_punct(")")) {
    children.push_back(parse_term_inner(lex, sig, rank));
    while (lex.at_punct(",")) {
      lex.expect_punct(",");
      children.push_back(parse_term_inner(lex, sig, rank));
    }
  }
  lex.expect_punct(")");
  if (static_cast<int>(children.size()) != arity)
    throw ParseError(ErrorKind::arity_mismatch, head.line, head.col,
                     "'" + head.text + "' expects " + std::to_string(arity) + " arguments, got " +
                         std::to_string(children.size()));
  return Term::app(op, std::move(children));
}

std::vector<int> parse_table(Lexer& lex, int depth, int size) {
  if (depth == 0) {
    Token n = lex.expect_number("a table entry");
    if (n.value < 0 || n.value >= size)
      throw ParseError(ErrorKind::table_error, n.line, n.col,
                       "table entry " + n.text + " outside carrier of size " +
                           std::to_string(size));
    return {static_cast<int>(n.value)};
  }
  Token open = lex.expect_punct("[");
  std::vector<int> out;
  for (int i = 0; i < size; ++i) {
    if (i) lex.expect_punct(",");
    auto inner = parse_table(lex, depth - 1, size);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  if (lex.at_punct(","))
    throw ParseError(ErrorKind::table_error, lex.peek().line, lex.peek().col,
                     "table row longer than the carrier size " + std::to_string(size));
  lex.expect_punct("]");
  (void)open;
  return out;
}

struct Parser {
  Lexer lex;
  ModelFile model;

  explicit Parser(std::string_view text) : lex(text) {}

  SignatureRef resolve_signature(const Token& name) {
    SignatureRef sig = model.find_signature(name.text);
    if (!sig)
      throw ParseError(ErrorKind::unknown_name, name.line, name.col,
                       "unknown signature '" + name.text + "'");
    return sig;
  }

  void check_fresh(const char* kind, const Token& name, bool exists) {
    if (exists)
      throw ParseError(ErrorKind::duplicate_name, name.line, name.col,
                       std::string("duplicate ") + kind + " name '" + name.text + "'");
  }

  void parse_signature() {
    Token name = lex.expect_ident("a signature name");
    check_fresh("signature", name, model.find_signature(name.text) != nullptr);
    lex.expect_punct("{");
    std::vector<OpSymbol> ops;
    if (!lex.at_punct("}")) {
      while (true) {
        Token sym = lex.expect_ident("an operation symbol");
        int gen = 0;
        if (is_generator_name(sym.text, &gen))
          throw ParseError(ErrorKind::lexical_error, sym.line, sym.col,
                           "'" + sym.text + "' is reserved for generators");
        lex.expect_punct("/");
        Token arity = lex.expect_number("an arity");
        if (arity.value > 6)
          throw ParseError(ErrorKind::arity_mismatch, arity.line, arity.col,
                           "arity " + arity.text + " exceeds the supported maximum of 6");
        for (const auto& op : ops)
          if (op.name == sym.text)
            throw ParseError(ErrorKind::duplicate_name, sym.line, sym.col,
                             "duplicate operation symbol '" + sym.text + "'");
        ops.push_back(OpSymbol{sym.text, static_cast<int>(arity.value)});
        if (!lex.at_punct(",")) break;
        lex.expect_punct(",");
      }
    }
    lex.expect_punct("}");
    model.signatures.emplace_back(name.text, make_signature(name.text, std::move(ops)));
  }

  void parse_algebra() {
    Token name = lex.expect_ident("an algebra name");
    check_fresh("algebra", name, model.find_algebra(name.text) != nullptr);
    lex.expect_punct(":");
    SignatureRef sig = resolve_signature(lex.expect_ident("a signature name"));
    lex.expect_punct("{");
    if (!lex.at_ident("size"))
      lex.error(ErrorKind::lexical_error, "algebra body must start with 'size N'");
    lex.next();
    Token size_tok = lex.expect_number("a carrier size");
    if (size_tok.value < 1 || size_tok.value > 64)
      throw ParseError(ErrorKind::table_error, size_tok.line, size_tok.col,
                       "carrier size must be between 1 and 64");
    int size = static_cast<int>(size_tok.value);
    std::vector<std::vector<int>> tables(static_cast<size_t>(sig->op_count()));
    std::vector<bool> defined(static_cast<size_t>(sig->op_count()), false);
    while (lex.at_punct(";")) {
      lex.expect_punct(";");
      if (lex.at_punct("}")) break;
      Token sym = lex.expect_ident("an operation symbol");
      int op = sig->index_of(sym.text);
      if (op < 0)
        throw ParseError(ErrorKind::unknown_symbol, sym.line, sym.col,
                         "unknown symbol '" + sym.text + "' in signature " + sig->name());
      if (defined[static_cast<size_t>(op)])
        throw ParseError(ErrorKind::duplicate_name, sym.line, sym.col,
                         "table for '" + sym.text + "' defined twice");
      lex.expect_punct("=");
      tables[static_cast<size_t>(op)] = parse_table(lex, sig->arity(op), size);
      defined[static_cast<size_t>(op)] = true;
    }
    Token close = lex.expect_punct("}");
    for (int op = 0; op < sig->op_count(); ++op)
      if (!defined[static_cast<size_t>(op)])
        throw ParseError(ErrorKind::table_error, close.line, close.col,
                         "missing table for '" + sig->op(op).name + "'");
    model.algebras.emplace_back(
        name.text, make_algebra(sig, size, std::move(tables), name.text));
  }

  void parse_system() {
    Token name = lex.expect_ident("a system name");
    check_fresh("system", name, model.find_system(name.text) != nullptr);
    lex.expect_punct(":");
    SignatureRef sig = resolve_signature(lex.expect_ident("a signature name"));
    if (!lex.at_ident("on")) lex.error(ErrorKind::lexical_error, "expected 'on (x1,...,xn)'");
    lex.next();
    lex.expect_punct("(");
    int rank = 0;
    while (true) {
      Token gen = lex.expect_ident("a generator");
      int idx = 0;
      if (!is_generator_name(gen.text, &idx) || idx != rank + 1)
        throw ParseError(ErrorKind::lexical_error, gen.line, gen.col,
                         "generators must be declared in order as x1,...,xn");
      ++rank;
      if (!lex.at_punct(",")) break;
      lex.expect_punct(",");
    }
    lex.expect_punct(")");
    lex.expect_punct("{");
    EquationSystem system{GeneratorSet{rank}, {}};
    while (!lex.at_punct("}")) {
      Term lhs = parse_term_inner(lex, *sig, rank);
      lex.expect_punct("=");
      Term rhs = parse_term_inner(lex, *sig, rank);
      system.pairs.emplace_back(std::move(lhs), std::move(rhs));
      if (lex.at_punct(";")) {
        lex.expect_punct(";");
        continue;
      }
      break;
    }
    lex.expect_punct("}");
    model.systems.push_back(ModelFile::NamedSystem{name.text, sig, std::move(system)});
  }

  void parse_words() {
    Token name = lex.expect_ident("a word system name");
    check_fresh("word system", name, model.find_word_system(name.text) != nullptr);
    lex.expect_punct(":");
    SignatureRef sig = resolve_signature(lex.expect_ident("a signature name"));
    lex.expect_punct("{");
    std::vector<Term> words(static_cast<size_t>(sig->op_count()), Term::var(1));
    std::vector<bool> defined(static_cast<size_t>(sig->op_count()), false);
    while (!lex.at_punct("}")) {
      Token sym = lex.expect_ident("an operation symbol");
      int op = sig->index_of(sym.text);
      if (op < 0)
        throw ParseError(ErrorKind::unknown_symbol, sym.line, sym.col,
                         "unknown symbol '" + sym.text + "' in signature " + sig->name());
      if (defined[static_cast<size_t>(op)])
        throw ParseError(ErrorKind::duplicate_name, sym.line, sym.col,
                         "word for '" + sym.text + "' defined twice");
      lex.expect_punct("->");
      words[static_cast<size_t>(op)] = parse_term_inner(lex, *sig, sig->arity(op));
      defined[static_cast<size_t>(op)] = true;
      if (lex.at_punct(";")) {
        lex.expect_punct(";");
        continue;
      }
      break;
    }
    Token close = lex.expect_punct("}");
    for (int op = 0; op < sig->op_count(); ++op)
      if (!defined[static_cast<size_t>(op)])
        throw ParseError(ErrorKind::arity_mismatch, close.line, close.col,
                         "missing word for '" + sig->op(op).name + "'");
    model.word_systems.push_back(WordSystem{sig, std::move(words), name.text});
  }

  ModelFile run() {
    while (!lex.at_end()) {
      Token kw = lex.expect_ident("a declaration keyword");
      if (kw.text == "signature") parse_signature();
      else if (kw.text == "algebra") parse_algebra();
      else if (kw.text == "system") parse_system();
      else if (kw.text == "words") parse_words();
      else
        throw ParseError(ErrorKind::lexical_error, kw.line, kw.col,
                         "unknown declaration '" + kw.text + "'");
    }
    return std::move(model);
  }
};

}  // namespace

SignatureRef ModelFile::find_signature(std::string_view name) const {
  for (const auto& [n, s] : signatures)
    if (n == name) return s;
  return nullptr;
}

AlgebraRef ModelFile::find_algebra(std::string_view name) const {
  for (const auto& [n, a] : algebras)
    if (n == name) return a;
  return nullptr;
}

const ModelFile::NamedSystem* ModelFile::find_system(std::string_view name) const {
  for (const auto& s : systems)
    if (s.name == name) return &s;
  return nullptr;
}

const WordSystem* ModelFile::find_word_system(std::string_view name) const {
  for (const auto& w : word_systems)
    if (w.name == name) return &w;
  return nullptr;
}

SignatureRef ModelFile::require_signature(std::string_view name) const {
  auto s = find_signature(name);
  if (!s) fail(ErrorKind::unknown_name, "no signature named '" + std::string(name) + "'");
  return s;
}

AlgebraRef ModelFile::require_algebra(std::string_view name) const {
  auto a = find_algebra(name);
  if (!a) fail(ErrorKind::unknown_name, "no algebra named '" + std::string(name) + "'");
  return a;
}

const ModelFile::NamedSystem& ModelFile::require_system(std::string_view name) const {
  auto* s = find_system(name);
  if (!s) fail(ErrorKind::unknown_name, "no system named '" + std::string(name) + "'");
  return *s;
}

const WordSystem& ModelFile::require_word_system(std::string_view name) const {
  auto* w = find_word_system(name);
  if (!w) fail(ErrorKind::unknown_name, "no word system named '" + std::string(name) + "'");
  return *w;
}

ModelFile parse_model(std::string_view text) { return Parser(text).run(); }

Term parse_term(std::string_view text, const Signature& sig, int rank) {
  Lexer lex(text);
  Term t = parse_term_inner(lex, sig, rank);
  if (!lex.at_end())
    throw ParseError(ErrorKind::lexical_error, lex.peek().line, lex.peek().col,
                     "trailing input after term");
  return t;
}

namespace {

void render_table(std::string& out, const std::vector<int>& table, int arity, int size,
                  long long offset, long long stride) {
  if (arity == 0) {
    out += std::to_string(table[static_cast<size_t>(offset)]);
    return;
  }
  out += "[";
  for (int i = 0; i < size; ++i) {
    if (i) out += ",";
    render_table(out, table, arity - 1, size, offset + i * stride / size, stride / size);
  }
  out += "]";
}

}  // namespace

std::string render_signature(const std::string& name, const Signature& sig) {
  std::string out = "signature " + name + " { ";
  for (int i = 0; i < sig.op_count(); ++i) {
    if (i) out += ", ";
    out += sig.op(i).name + "/" + std::to_string(sig.arity(i));
  }
  out += " }";
  return out;
}

std::string render_algebra(const std::string& name, const FiniteAlgebra& a) {
  const Signature& sig = a.signature();
  std::string out = "algebra " + name + " : " + sig.name() + " { size " +
                    std::to_string(a.size());
  for (int op = 0; op < sig.op_count(); ++op) {
    out += "; " + sig.op(op).name + " = ";
    long long stride = 1;
    for (int i = 0; i < sig.arity(op); ++i) stride *= a.size();
    render_table(out, a.table(op), sig.arity(op), a.size(), 0, stride);
  }
  out += " }";
  return out;
}

std::string render_system(const ModelFile::NamedSystem& s) {
  std::string out = "system " + s.name + " : " + s.signature->name() + " on (";
  for (int i = 1; i <= s.system.generators.rank; ++i) {
    if (i > 1) out += ",";
    out += "x" + std::to_string(i);
  }
  out += ") { ";
  for (size_t i = 0; i < s.system.pairs.size(); ++i) {
    if (i) out += "; ";
    out += to_string(s.system.pairs[i].first, *s.signature) + " = " +
           to_string(s.system.pairs[i].second, *s.signature);
  }
  out += " }";
  return out;
}

std::string render_word_system(const WordSystem& w) {
  std::string out = "words " + w.name + " : " + w.signature->name() + " { ";
  for (int op = 0; op < w.signature->op_count(); ++op) {
    if (op) out += "; ";
    out += w.signature->op(op).name + " -> " + to_string(w.words[static_cast<size_t>(op)], *w.signature);
  }
  out += " }";
  return out;
}

std::string render_model(const ModelFile& m) {
  std::string out;
  for (const auto& [name, sig] : m.signatures) out += render_signature(name, *sig) + "\n";
  for (const auto& [name, alg] : m.algebras) out += render_algebra(name, *alg) + "\n";
  for (const auto& s : m.systems) out += render_system(s) + "\n";
  for (const auto& w : m.word_systems) out += render_word_system(w) + "\n";
  return out;
}

bool model_equal(const ModelFile& a, const ModelFile& b) {
  if (a.signatures.size() != b.signatures.size() || a.algebras.size() != b.algebras.size() ||
      a.systems.size() != b.systems.size() || a.word_systems.size() != b.word_systems.size())
    return false;
  for (size_t i = 0; i < a.signatures.size(); ++i)
    if (a.signatures[i].first != b.signatures[i].first ||
        !(*a.signatures[i].second == *b.signatures[i].second))
      return false;
  for (size_t i = 0; i < a.algebras.size(); ++i)
    if (a.algebras[i].first != b.algebras[i].first ||
        !a.algebras[i].second->table_equal(*b.algebras[i].second))
      return false;
  for (size_t i = 0; i < a.systems.size(); ++i) {
    const auto& x = a.systems[i];
    const auto& y = b.systems[i];
    if (x.name != y.name || !(*x.signature == *y.signature) ||
        x.system.generators.rank != y.system.generators.rank ||
        x.system.pairs.size() != y.system.pairs.size())
      return false;
    for (size_t j = 0; j < x.system.pairs.size(); ++j)
      if (!(x.system.pairs[j].first == y.system.pairs[j].first) ||
          !(x.system.pairs[j].second == y.system.pairs[j].second))
        return false;
  }
  for (size_t i = 0; i < a.word_systems.size(); ++i) {
    const auto& x = a.word_systems[i];
    const auto& y = b.word_systems[i];
    if (x.name != y.name || !(*x.signature == *y.signature) || x.words.size() != y.words.size())
      return false;
    for (size_t j = 0; j < x.words.size(); ++j)
      if (!(x.words[j] == y.words[j])) return false;
  }
  return true;
}

}  // namespace uag
