#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>

namespace mobench {

// Default scheme: maximal runs of letters and maximal runs of digits are
// tokens; whitespace and punctuation only separate. Bytes >= 0x80 count as
// letters so UTF-8 words stay whole. "click [nd3]" -> click, nd, 3.
std::size_t token_count(std::string_view text);

// Pluggable counter; the default wraps token_count.
using TokenCounter = std::function<std::size_t(std::string_view)>;
TokenCounter default_token_counter();

// 1 - after/before, clamped to [0, 1]. Throws NonPositiveBefore.
double compression_ratio(long long before, long long after);

// Mean of the per-row ratios.
double mean_compression_ratio(std::span<const std::pair<long long, long long>> rows);

}  // namespace mobench
