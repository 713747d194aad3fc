#pragma once

#include <utility>

#include "egforge/errors.hpp"
#include "egforge/natural.hpp"
#include "egforge/numtheory.hpp"

namespace egforge {

/// An ElGamal public key (p, alpha, y): prime modulus, generator, and
/// alpha^x mod p. Construction checks the ranges and the primality of p;
/// primitivity of alpha is verified too whenever p-1 factors within the
/// default effort, and skipped (best effort) when it does not.
class PublicKey {
 public:
  PublicKey(Natural p, Natural alpha, Natural y)
      : p_(std::move(p)), alpha_(std::move(alpha)), y_(std::move(y)) {
    if (!is_prime(p_)) throw DomainError("p is not prime");
    if (alpha_ < 2 || alpha_ > p_ - 2)
      throw DomainError("alpha must lie in [2, p-2]");
    if (y_ < 1 || y_ > p_ - 1) throw DomainError("y must lie in [1, p-1]");
    try {
      Factorization phi = factorize(p_ - 1);
      if (!is_primitive_root(alpha_, p_, phi))
        throw DomainError("alpha is not a primitive root mod p");
    } catch (const IncompleteFactorizationError&) {
      // p-1 resisted factoring; accept the key without the primitivity check.
    }
  }

  const Natural& p() const { return p_; }
  const Natural& alpha() const { return alpha_; }
  const Natural& y() const { return y_; }

  bool operator==(const PublicKey& other) const {
    return p_ == other.p_ && alpha_ == other.alpha_ && y_ == other.y_;
  }

 private:
  Natural p_;
  Natural alpha_;
  Natural y_;
};

/// The signature pair (r, s).
struct Signature {
  Natural r;
  Natural s;
  bool operator==(const Signature&) const = default;
};

/// A hashed message, reduced mod p-1.
struct Digest {
  Natural m;
  bool operator==(const Digest&) const = default;
};

/// Reduces an arbitrary non-negative value into the digest range [0, p-2].
inline Digest reduce_digest(const Natural& value, const PublicKey& pub) {
  return Digest{mod_floor(value, pub.p() - 1)};
}

enum class VerifyMode {
  strict,  // require 0 < r < p (default; blocks classic r-aliasing)
  bare,    // the raw congruence alpha^m == y^r * r^s only
};

/// True iff alpha^m == y^r * r^s (mod p), plus the r-range rule in
/// strict mode. Pure predicate; malformed values simply fail.
inline bool verify(const PublicKey& pub, const Digest& digest,
                   const Signature& sig,
                   VerifyMode mode = VerifyMode::strict) {
  const Natural& p = pub.p();
  if (mode == VerifyMode::strict && (sig.r < 1 || sig.r >= p)) return false;
  Natural lhs = mod_pow(pub.alpha(), digest.m, p);
  Natural rhs = mod_pow(pub.y(), sig.r, p) * mod_pow(sig.r, sig.s, p) % p;
  return lhs == rhs;
}

}  // namespace egforge
