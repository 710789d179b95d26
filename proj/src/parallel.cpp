#include "lsd/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>

namespace lsd {

std::optional<int> parse_thread_limit(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) return std::nullopt;
  return value;
}

int apply_thread_limit_from_env() {
  const char* raw = std::getenv("LSD_THREADS");
  if (raw == nullptr) return 0;
  const auto limit = parse_thread_limit(raw);
  if (!limit || *limit == 0) return 0;
  omp_set_num_threads(*limit);
  return *limit;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace lsd
