#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "varietas/rational.hpp"

namespace varietas {

/// One check: what was run, the verdict, and the exact values behind it.
struct CheckRecord {
  std::string group;
  std::string name;
  std::string inputs;
  std::string verdict;
  bool pass = true;
  /// Informational records are shown but do not affect the outcome.
  bool counted = true;
  std::vector<std::pair<std::string, std::string>> values;
  double elapsed = 0;
};

struct RunReport {
  std::string command;
  std::vector<CheckRecord> records;

  [[nodiscard]] bool passed() const {
    for (const auto& r : records)
      if (r.counted && !r.pass) return false;
    return true;
  }

  /// Groups in first-appearance order with their pass state.
  [[nodiscard]] std::vector<std::pair<std::string, bool>> groups() const {
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& r : records) {
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g.first == r.group; });
      if (it == out.end()) {
        out.push_back({r.group, true});
        it = out.end() - 1;
      }
      if (r.counted && !r.pass) it->second = false;
    }
    return out;
  }

  [[nodiscard]] std::string text(bool timing = false) const {
    std::ostringstream os;
    if (!command.empty()) os << "$ " << command << "\n";
    std::string group;
    bool first = true;
    for (const auto& r : records) {
      if (first || r.group != group) {
        group = r.group;
        if (!group.empty()) {
          bool ok = true;
          for (const auto& g : groups())
            if (g.first == group) ok = g.second;
          os << (first ? "" : "\n") << "== " << group << " [" << (ok ? "PASS" : "FAIL") << "]\n";
        }
        first = false;
      }
      os << (r.counted ? (r.pass ? "PASS " : "FAIL ") : "INFO ") << r.name;
      if (!r.verdict.empty()) os << ": " << r.verdict;
      os << "\n";
      if (!r.inputs.empty()) os << "  inputs: " << r.inputs << "\n";
      for (const auto& [k, v] : r.values) os << "  " << k << ": " << v << "\n";
      if (timing) os << "  elapsed: " << seconds(r.elapsed) << "\n";
    }
    os << "overall: " << (passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
  }

  /// Flat key=value lines, one record per index.
  [[nodiscard]] std::string kv(bool timing = false) const {
    std::ostringstream os;
    os << "command=" << command << "\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      const std::string p = "record." + std::to_string(i) + ".";
      os << p << "group=" << r.group << "\n";
      os << p << "name=" << r.name << "\n";
      os << p << "inputs=" << r.inputs << "\n";
      os << p << "verdict=" << r.verdict << "\n";
      os << p << "status=" << (r.counted ? (r.pass ? "pass" : "fail") : "info") << "\n";
      for (const auto& [k, v] : r.values) os << p << "value." << k << "=" << v << "\n";
      if (timing) os << p << "elapsed=" << seconds(r.elapsed) << "\n";
    }
    os << "overall=" << (passed() ? "pass" : "fail") << "\n";
    return os.str();
  }

  static std::string seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3fs", s);
    return buf;
  }
};

template <class T>
std::string join(const std::vector<T>& xs, const std::string& sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    if constexpr (std::is_same_v<T, Rational>)
      os << xs[i].to_string();
    else
      os << xs[i];
  }
  return os.str();
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace varietas
