#include "oodscreen/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>

#include "oodscreen/error.hpp"

namespace oodscreen {

std::size_t max_threads() {
  if (const char* env = std::getenv("OODSCREEN_THREADS"); env != nullptr) {
    const std::string_view text(env);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
      throw Error(ErrorCode::InvalidInput,
                  "OODSCREEN_THREADS must be a positive integer, got '" + std::string(text) + "'");
    }
    return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace oodscreen
