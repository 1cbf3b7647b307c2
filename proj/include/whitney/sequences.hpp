#pragma once

#include <optional>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

struct LogConcavityResult {
  bool ok = true;
  // Smallest interior index i with s[i-1]*s[i+1] > s[i]^2, when not ok.
  int witness = -1;
};

// Exact cross-multiplication check of s[i-1]*s[i+1] <= s[i]^2 at every
// interior index. Entries must be >= 0.
inline LogConcavityResult is_log_concave(const std::vector<Rat>& s) {
  for (const auto& v : s)
    if (v < 0) throw std::invalid_argument("is_log_concave: negative entry");
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i - 1] * s[i + 1] > s[i] * s[i]) return {false, static_cast<int>(i)};
  }
  return {true, -1};
}

// Floating variant with multiplicative slack, for estimated sequences.
inline LogConcavityResult is_log_concave_approx(const std::vector<double>& s,
                                                double rel_slack) {
  for (double v : s)
    if (v < 0) throw std::invalid_argument("is_log_concave_approx: negative entry");
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    double lhs = s[i - 1] * s[i + 1];
    double rhs = s[i] * s[i];
    if (lhs > rhs + rel_slack * std::max(lhs, rhs)) return {false, static_cast<int>(i)};
  }
  return {true, -1};
}

// Weakly rises then weakly falls.
inline bool is_unimodal(const std::vector<Rat>& s) {
  size_t i = 1;
  while (i < s.size() && s[i - 1] <= s[i]) ++i;
  while (i < s.size() && s[i - 1] >= s[i]) ++i;
  return i >= s.size();
}

}  // namespace whitney
