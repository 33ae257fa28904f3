#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spectral_t {

// Malformed input: bad tokens, violated preconditions on user data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spectral quantity requested on a graph where it is undefined
// (isolated vertices, too few vertices).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lemma was applied to inputs that do not satisfy its hypotheses.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace limits {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;
inline constexpr std::size_t kDefaultMaxVertices = 4000;

// Vertex cap for dense eigensolves; SPECTRAL_T_MAX_VERTICES overrides.
inline std::size_t max_vertices() {
  if (const char* env = std::getenv("SPECTRAL_T_MAX_VERTICES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
  }
  return kDefaultMaxVertices;
}

}  // namespace limits

}  // namespace spectral_t
