#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "egforge/natural.hpp"

namespace egforge {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad modulus, inconsistent
/// factorization, non-coprime exponent, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Requested a modular inverse of a non-invertible element.
struct NotInvertibleError : DomainError {
  Natural gcd;
  NotInvertibleError(const std::string& what, Natural g)
      : DomainError(what), gcd(std::move(g)) {}
};

/// The factorization effort budget ran out. Carries what was found so far
/// and the remaining composite cofactor.
struct IncompleteFactorizationError : Error {
  std::vector<std::pair<Natural, unsigned>> partial;
  Natural cofactor;
  IncompleteFactorizationError(const std::string& what,
                               std::vector<std::pair<Natural, unsigned>> found,
                               Natural rest)
      : Error(what), partial(std::move(found)), cofactor(std::move(rest)) {}
};

/// The discrete-log target is not a power of the base.
struct NoSolutionError : Error {
  using Error::Error;
};

/// Base class for forgery failures: the key does not meet an attack's
/// hypotheses, or every strategy ran out within its budget.
struct AttackError : Error {
  using Error::Error;
};

/// One attack's stated hypotheses do not hold for this key.
struct AttackPreconditionError : AttackError {
  using AttackError::AttackError;
};

/// No strategy produced a verifying signature within the given budgets.
/// Carries one reason per strategy that was tried.
struct AttackInapplicableError : AttackError {
  std::vector<std::string> reasons;
  explicit AttackInapplicableError(const std::string& what,
                                   std::vector<std::string> why = {})
      : AttackError(what), reasons(std::move(why)) {}
};

/// The modulus is 3 mod 4 and the digest falls in the unreachable parity
/// class, so the linear congruence for s has no solution.
struct ParityObstructionError : AttackInapplicableError {
  using AttackInapplicableError::AttackInapplicableError;
};

/// Key generation gave up (no prime found, or p-1 kept resisting
/// factorization within the effort budget).
struct KeygenError : Error {
  using Error::Error;
};

/// Malformed key / signature / report document.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace egforge
