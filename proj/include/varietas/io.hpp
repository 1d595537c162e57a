#pragma once

// Variety files and identity lists.
//
//   variety <name>
//   ambient <associative|nonassociative>
//   op <glyph>                       (repeatable)
//   identity <expr> [= <expr>]       (repeatable)
//
// Identity lists hold one expression per line. In both formats '#' starts a
// comment and blank lines are ignored.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "varietas/embedded_fixtures.hpp"
#include "varietas/engine.hpp"

namespace varietas {

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Non-empty lines with comments stripped, with 1-based line numbers.
inline std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (!line.empty()) out.push_back({no, line});
  }
  return out;
}

inline std::string at_line(const std::string& origin, int no) { return origin + ":" + std::to_string(no) + ": "; }

}  // namespace detail

inline VarietyPresentation parse_variety(std::string_view text, const std::string& origin = "<variety>") {
  std::string name;
  std::optional<Ambient> ambient;
  std::vector<std::string> glyphs;
  std::vector<std::pair<int, std::string>> ids;
  for (const auto& [no, line] : detail::content_lines(text)) {
    const auto sp = line.find_first_of(" \t");
    const std::string key = line.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : detail::trim(line.substr(sp));
    if (key == "variety") {
      if (rest.empty()) throw InputError(detail::at_line(origin, no) + "missing variety name");
      name = rest;
    } else if (key == "ambient") {
      if (rest == "associative")
        ambient = Ambient::associative_word;
      else if (rest == "nonassociative")
        ambient = Ambient::free_nonassociative;
      else
        throw InputError(detail::at_line(origin, no) + "unknown ambient '" + rest + "'");
    } else if (key == "op") {
      if (rest.empty() || rest.find_first_of(" \t") != std::string::npos)
        throw InputError(detail::at_line(origin, no) + "op takes one glyph");
      glyphs.push_back(rest);
    } else if (key == "identity") {
      ids.push_back({no, rest});
    } else {
      throw InputError(detail::at_line(origin, no) + "unknown directive '" + key + "'");
    }
  }
  if (!ambient) throw InputError(origin + ": missing 'ambient' directive");
  if (glyphs.empty()) throw InputError(origin + ": missing 'op' directive");
  VarietyPresentation v;
  v.name = name.empty() ? origin : name;
  try {
    v.signature = make_signature(*ambient, glyphs);
  } catch (const InputError& e) {
    throw InputError(origin + ": " + e.what());
  }
  for (const auto& [no, text_id] : ids) {
    try {
      Polynomial p = parse(text_id, v.signature);
      if (p.is_zero()) throw InputError("identity is trivially zero");
      v.identities.push_back(std::move(p));
    } catch (const InputError& e) {
      throw InputError(detail::at_line(origin, no) + e.what());
    }
  }
  v.validate();
  return v;
}

inline std::vector<Polynomial> parse_identity_list(std::string_view text, const SignaturePtr& sig,
                                                   const std::string& origin = "<identities>") {
  std::vector<Polynomial> out;
  for (const auto& [no, line] : detail::content_lines(text)) {
    try {
      out.push_back(parse(line, sig));
    } catch (const InputError& e) {
      throw InputError(detail::at_line(origin, no) + e.what());
    }
  }
  return out;
}

inline std::string variety_text(const VarietyPresentation& v) {
  std::string out = "variety " + v.name + "\nambient " +
                    (v.signature->ambient == Ambient::associative_word ? "associative" : "nonassociative") + "\n";
  for (const auto& op : v.signature->ops) out += "op " + op.glyph + "\n";
  for (const auto& f : v.identities) out += "identity " + print_canonical(f) + " = 0\n";
  return out;
}

/// Contents of a bundled fixture by file name, if any.
inline std::optional<std::string_view> embedded_fixture(std::string_view name) {
  for (const auto& [n, text] : fixtures::kEmbedded)
    if (n == name) return text;
  return std::nullopt;
}

/// Reads a file; a missing path whose file name is a bundled fixture falls
/// back to the embedded copy.
inline std::string read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  if (auto fx = embedded_fixture(std::filesystem::path(path).filename().string())) return std::string(*fx);
  throw InputError("cannot open '" + path + "'");
}

inline VarietyPresentation load_variety(const std::string& path) { return parse_variety(read_source(path), path); }

inline std::vector<Polynomial> load_identities(const std::string& path, const SignaturePtr& sig) {
  return parse_identity_list(read_source(path), sig, path);
}

inline VarietyPresentation fixture_variety(const std::string& name) {
  auto fx = embedded_fixture(name);
  if (!fx) throw InputError("no bundled fixture '" + name + "'");
  return parse_variety(*fx, name);
}

inline std::vector<Polynomial> fixture_identities(const std::string& name, const SignaturePtr& sig) {
  auto fx = embedded_fixture(name);
  if (!fx) throw InputError("no bundled fixture '" + name + "'");
  return parse_identity_list(*fx, sig, name);
}

}  // namespace varietas
