#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace varietas {

/// Thrown for malformed user input (bad arguments, mismatched shapes,
/// inconsistent presentations).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a requested degree exceeds the configured cap.
class DegreeError : public InputError {
 public:
  using InputError::InputError;
};

enum class Ambient { free_nonassociative, associative_word };

inline const char* ambient_name(Ambient a) {
  return a == Ambient::associative_word ? "associative" : "nonassociative";
}

/// A binary operation. Glyphs of the form "[,]" / "{,}" are written as
/// prefix brackets, every other glyph is infix.
struct Operation {
  std::string name;
  std::string glyph;

  [[nodiscard]] bool bracket_form() const { return glyph.size() == 3 && glyph[1] == ','; }
  friend bool operator==(const Operation&, const Operation&) = default;
};

inline std::string default_op_name(const std::string& glyph) {
  if (glyph == "*") return "mul";
  if (glyph == ">") return "succ";
  if (glyph == "<") return "prec";
  if (glyph == ">=") return "succeq";
  if (glyph == "<=") return "preceq";
  if (glyph == "[,]") return "bracket";
  if (glyph == "{,}") return "brace";
  if (glyph == "@") return "star";
  return glyph;
}

inline bool valid_glyph(const std::string& g) {
  if (g == "[,]" || g == "{,}") return true;
  if (g.empty() || g.size() > 3) return false;
  return std::all_of(g.begin(), g.end(), [](char c) { return std::string_view("*<>=~^&|%@#$!.:;").find(c) != std::string_view::npos; });
}

struct Signature {
  std::vector<Operation> ops;
  Ambient ambient = Ambient::free_nonassociative;
  bool derivations = false;  // letters may carry derivation orders a', a'', ...
  bool atoms = false;        // letters may be operator atoms R(w)
  int degree_cap = 6;

  static Signature make(Ambient ambient, const std::vector<std::string>& glyphs) {
    Signature s;
    s.ambient = ambient;
    for (const auto& g : glyphs) s.ops.push_back({default_op_name(g), g});
    s.validate();
    return s;
  }

  void validate() const {
    if (ops.empty()) throw InputError("signature needs at least one operation");
    if (ambient == Ambient::associative_word && ops.size() != 1)
      throw InputError("associative-word ambient takes exactly one product");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (!valid_glyph(ops[i].glyph)) throw InputError("unsupported operation glyph '" + ops[i].glyph + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (ops[i].name == ops[j].name || ops[i].glyph == ops[j].glyph)
          throw InputError("duplicate operation '" + ops[i].glyph + "'");
    }
    if (ops.size() > 8) throw InputError("at most 8 operations are supported");
    if ((derivations || atoms) && ambient != Ambient::associative_word)
      throw InputError("decorated letters need the associative-word ambient");
  }

  [[nodiscard]] std::optional<int> op_index(const std::string& glyph) const {
    for (std::size_t i = 0; i < ops.size(); ++i)
      if (ops[i].glyph == glyph) return int(i);
    return std::nullopt;
  }

  /// Same operations and ambient (letter features and cap are ignored).
  [[nodiscard]] bool same_algebra(const Signature& o) const { return ambient == o.ambient && ops == o.ops; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

using SignaturePtr = std::shared_ptr<const Signature>;

inline SignaturePtr make_signature(Ambient ambient, const std::vector<std::string>& glyphs) {
  return std::make_shared<const Signature>(Signature::make(ambient, glyphs));
}

inline SignaturePtr with_features(const Signature& base, bool derivations, bool atoms) {
  Signature s = base;
  s.derivations = derivations;
  s.atoms = atoms;
  s.validate();
  return std::make_shared<const Signature>(std::move(s));
}

}  // namespace varietas
