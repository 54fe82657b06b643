#pragma once

// Combinatorial size guards.  Basis enumerations grow like |G|^n or C(|G|, n);
// constructions check their size up front and fail with the offending
// dimension and the override flag instead of exhausting memory.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cohomforge {

inline constexpr std::size_t kDefaultMaxBasis = 1'000'000;

class SizeGuardError : public std::runtime_error {
 public:
  SizeGuardError(const std::string& what_failed, std::size_t requested, std::size_t limit)
      : std::runtime_error(what_failed + " needs " + std::to_string(requested) +
                           " basis elements, above the guard of " + std::to_string(limit) +
                           " (raise it with --max-basis)"),
        requested_(requested),
        limit_(limit) {}

  std::size_t requested() const { return requested_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t requested_, limit_;
};

inline void check_basis_guard(const std::string& what, std::size_t requested, std::size_t limit) {
  if (requested > limit) throw SizeGuardError(what, requested, limit);
}

}  // namespace cohomforge
