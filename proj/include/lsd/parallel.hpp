#pragma once

#include <optional>
#include <string_view>

namespace lsd {

/// Parses an LSD_THREADS value: a nonnegative integer, 0 meaning auto.
std::optional<int> parse_thread_limit(std::string_view text);

/// Reads LSD_THREADS and caps the OpenMP team size accordingly. Returns the
/// limit applied, or 0 when left to the runtime.
int apply_thread_limit_from_env();

int max_threads();

}  // namespace lsd
