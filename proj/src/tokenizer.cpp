#include "mobench/tokenizer.hpp"

#include <algorithm>

#include "mobench/error.hpp"

namespace mobench {

namespace {

enum class CharKind { separator, letter, digit };

CharKind kind_of(unsigned char c) {
  if (c >= '0' && c <= '9') return CharKind::digit;
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80) {
    return CharKind::letter;
  }
  return CharKind::separator;
}

}  // namespace

std::size_t token_count(std::string_view text) {
  std::size_t count = 0;
  CharKind prev = CharKind::separator;
  for (unsigned char c : text) {
    const CharKind k = kind_of(c);
    if (k != CharKind::separator && k != prev) ++count;
    prev = k;
  }
  return count;
}

TokenCounter default_token_counter() {
  return [](std::string_view s) { return token_count(s); };
}

double compression_ratio(long long before, long long after) {
  if (before <= 0) throw Error(Errc::non_positive_before, "before=" + std::to_string(before));
  const double r = 1.0 - static_cast<double>(after) / static_cast<double>(before);
  return std::clamp(r, 0.0, 1.0);
}

double mean_compression_ratio(std::span<const std::pair<long long, long long>> rows) {
  if (rows.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [before, after] : rows) sum += compression_ratio(before, after);
  return sum / static_cast<double>(rows.size());
}

}  // namespace mobench
