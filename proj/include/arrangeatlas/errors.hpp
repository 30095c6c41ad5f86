#pragma once

#include "arrangeatlas/linalg.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arrangeatlas {

/// A violated precondition of a domain operation. `reason()` is a stable
/// kebab-case code ("not-a-flat", "not-a-member", ...) suitable for
/// machine consumption; what() carries the human-readable detail and
/// witness() the offending subspaces, when there are any.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string reason, const std::string& message, std::vector<Subspace> witness = {})
      : std::runtime_error(message), reason_(std::move(reason)), witness_(std::move(witness)) {}

  const std::string& reason() const noexcept { return reason_; }
  const std::vector<Subspace>& witness() const noexcept { return witness_; }

 private:
  std::string reason_;
  std::vector<Subspace> witness_;
};

}  // namespace arrangeatlas
