#pragma once

#include <utility>

#include "egforge/errors.hpp"
#include "egforge/keys.hpp"
#include "egforge/natural.hpp"
#include "egforge/numtheory.hpp"
#include "egforge/rng.hpp"

namespace egforge {

/// A full ElGamal key: the public triple plus the secret exponent x with
/// alpha^x == y (mod p).
class PrivateKey {
 public:
  PrivateKey(PublicKey pub, Natural x)
      : pub_(std::move(pub)), x_(std::move(x)) {
    if (x_ < 2 || x_ > pub_.p() - 2)
      throw DomainError("x must lie in [2, p-2]");
    if (mod_pow(pub_.alpha(), x_, pub_.p()) != pub_.y())
      throw DomainError("alpha^x != y (mod p)");
  }

  const PublicKey& public_key() const { return pub_; }
  const Natural& x() const { return x_; }

 private:
  PublicKey pub_;
  Natural x_;
};

/// Generates a fresh key: p prime of exactly bit_length bits (and == 1
/// mod 4 when requested), alpha a primitive root, x uniform in [2, p-2].
/// Deterministic for a fixed rng seed.
inline PrivateKey keygen(unsigned bit_length, Rng& rng,
                         bool require_1_mod_4 = false,
                         const FactorEffort& effort = {}) {
  if (bit_length < 8) throw DomainError("keygen requires bit_length >= 8");

  const unsigned max_candidates = 400 * bit_length;
  for (unsigned attempt = 0; attempt < max_candidates; ++attempt) {
    Natural p = rng.bits(bit_length);
    mpz_setbit(p.get_mpz_t(), bit_length - 1);
    mpz_setbit(p.get_mpz_t(), 0);
    if (require_1_mod_4) mpz_clrbit(p.get_mpz_t(), 1);  // force p == 1 (mod 4)
    if (!is_prime(p)) continue;

    Factorization phi;
    try {
      phi = factorize(p - 1, effort);
    } catch (const IncompleteFactorizationError&) {
      continue;  // counts against the attempt budget
    }

    Natural alpha = 0;
    for (unsigned tries = 0; tries < 512; ++tries) {
      Natural candidate = rng.between(2, p - 2);
      if (is_primitive_root(candidate, p, phi)) {
        alpha = candidate;
        break;
      }
    }
    if (alpha == 0) continue;

    Natural x = rng.between(2, p - 2);
    Natural y = mod_pow(alpha, x, p);
    return PrivateKey(PublicKey(p, alpha, y), std::move(x));
  }
  throw KeygenError("no usable prime found within the retry budget");
}

/// Signs with a caller-fixed nonce k; k must be invertible mod p-1.
/// Deterministic: same key, digest and k give the same signature.
inline Signature sign(const PrivateKey& key, const Digest& digest,
                      const Natural& fixed_k) {
  const Natural& p = key.public_key().p();
  Natural k_inv = mod_inv(fixed_k, p - 1);  // NotInvertibleError if shared factor
  Natural r = mod_pow(key.public_key().alpha(), fixed_k, p);
  Natural s = mod_floor((digest.m - key.x() * r) * k_inv, p - 1);
  return Signature{r, s};
}

/// Signs with a random nonce, rejection-sampled until invertible mod p-1.
inline Signature sign(const PrivateKey& key, const Digest& digest, Rng& rng) {
  const Natural& p = key.public_key().p();
  for (;;) {
    Natural k = rng.between(2, p - 2);
    if (gcd(k, p - 1) == 1) return sign(key, digest, k);
  }
}

}  // namespace egforge
