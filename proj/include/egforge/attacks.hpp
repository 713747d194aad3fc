#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egforge/dlog.hpp"
#include "egforge/errors.hpp"
#include "egforge/keys.hpp"
#include "egforge/natural.hpp"
#include "egforge/numtheory.hpp"

// Universal forgeries against weak (p, alpha) parameters. Everything here
// works from the public key alone; nothing in this header may touch a
// private key.

namespace egforge {

enum class ForgeStrategy {
  alpha_direct,           // alpha itself is smooth and divides p-1
  inverse_alpha,          // 1/alpha mod p qualifies (i = p-2)
  negated_alpha,          // p-alpha qualifies (i = (p-1)/2 + 1)
  negated_inverse_alpha,  // -1/alpha mod p qualifies (i = (p-1)/2 - 1)
  exponent_search,        // some i with alpha^i mod p smooth and dividing p-1
  two_generator,          // 2 is primitive; reduce to the alpha = 2 case
};

inline const char* to_string(ForgeStrategy s) {
  switch (s) {
    case ForgeStrategy::alpha_direct: return "alpha_direct";
    case ForgeStrategy::inverse_alpha: return "inverse_alpha";
    case ForgeStrategy::negated_alpha: return "negated_alpha";
    case ForgeStrategy::negated_inverse_alpha: return "negated_inverse_alpha";
    case ForgeStrategy::exponent_search: return "exponent_search";
    case ForgeStrategy::two_generator: return "two_generator";
  }
  return "?";
}

/// The public key (p, beta, z) = (p, alpha^i, y^i) of an imaginary user.
/// A signature (u, v) under it converts to one under the real key via
/// r = u, s = v/i mod (p-1), which is why i must be coprime to p-1.
struct FictiveKey {
  PublicKey base_key;
  Natural i;
  Natural beta;  // alpha^i mod p
  Natural z;     // y^i mod p
};

inline FictiveKey make_fictive_key(const PublicKey& pub, const Natural& i) {
  if (gcd(i, pub.p() - 1) != 1)
    throw DomainError("fictive-key exponent must be coprime to p-1");
  return FictiveKey{pub, i, mod_pow(pub.alpha(), i, pub.p()),
                    mod_pow(pub.y(), i, pub.p())};
}

/// Everything the forgery computed on the way, printable next to the
/// algorithm's steps: nonce k, subgroup index w, subgroup generator b and
/// target y^w, the small discrete log x0, and the fictive-key signature
/// (u, v) before conversion.
struct ForgeIntermediates {
  Natural nonce;               // k = (p-3)/2
  Natural subgroup_index;      // w = (p-1)/beta
  Natural subgroup_generator;  // b = beta^w mod p, of order beta
  Natural subgroup_target;     // z^w mod p
  Natural subgroup_dlog;       // x0 with b^x0 == subgroup_target
  Natural fictive_r;           // u
  Natural fictive_s;           // v
};

struct ForgeryOutcome {
  Signature signature;
  ForgeStrategy strategy;
  Natural exponent_i;
  ForgeIntermediates intermediates;
};

/// The direct attack on a key whose generator is smooth and divides p-1.
/// Unconditional for p == 1 (mod 4); for p == 3 (mod 4) it succeeds only
/// when the digest parity admits a solution for s, and throws
/// ParityObstructionError otherwise.
inline ForgeryOutcome forge_bleichenbacher(const PublicKey& pub,
                                           const Digest& digest,
                                           const SmoothnessBound& bound) {
  const Natural& p = pub.p();
  const Natural& alpha = pub.alpha();
  const Natural& y = pub.y();
  const Natural phi = p - 1;

  if (!divides(alpha, phi))
    throw AttackPreconditionError("alpha = " + to_decimal(alpha) +
                                  " does not divide p-1");
  if (!is_b_smooth(alpha, bound))
    throw AttackPreconditionError("alpha = " + to_decimal(alpha) +
                                  " is not " + to_decimal(bound.value) +
                                  "-smooth");

  // With alpha primitive and dividing p-1, alpha^((p-3)/2) is the integer
  // (p-1)/alpha: a known nonce/signature pair for free.
  Natural k = (p - 3) / 2;
  Natural r = mod_pow(alpha, k, p);
  if (r != phi / alpha)
    throw AttackPreconditionError(
        "alpha^((p-3)/2) != (p-1)/alpha; the generator is not primitive");

  Natural w = phi / alpha;
  Natural b = mod_pow(alpha, w, p);
  Natural subgroup_target = mod_pow(y, w, p);

  // b must generate a subgroup of order exactly alpha for the digit
  // lifting below to be meaningful.
  Factorization alpha_factors = factorize(alpha);
  if (mod_pow(b, alpha, p) != 1)
    throw AttackPreconditionError("subgroup generator order mismatch");
  for (const auto& entry : alpha_factors.entries()) {
    if (mod_pow(b, alpha / entry.prime, p) == 1)
      throw AttackPreconditionError("subgroup generator order mismatch");
  }

  Natural x0 = pohlig_hellman(DlogInstance(b, subgroup_target, p, alpha),
                              alpha_factors);

  // x0 == x (mod alpha) and r == (p-1)/alpha kill the secret term in
  // m == x*r + k*s (mod p-1), so s follows without x.
  Natural s;
  bool solved = false;
  if (mod_floor(p, 4) == 1) {
    s = mod_floor((digest.m - r * x0) * mod_inv(k, phi), phi);
    solved = true;
  } else {
    for (const Natural& candidate :
         solve_linear_congruence(k, mod_floor(digest.m - r * x0, phi), phi)) {
      if (verify(pub, digest, Signature{r, candidate})) {
        s = candidate;
        solved = true;
        break;
      }
    }
    if (!solved)
      throw ParityObstructionError(
          "p == 3 (mod 4): this digest falls in the unreachable parity class");
  }

  ForgeryOutcome outcome{Signature{r, s}, ForgeStrategy::alpha_direct, 1,
                         ForgeIntermediates{k, w, b, subgroup_target, x0, r, s}};
  if (!verify(pub, digest, outcome.signature))
    throw Error("internal: forged signature failed verification");
  return outcome;
}

/// Forgery through the fictive key (p, alpha^i, y^i): run the direct
/// attack there, then pull the signature back with s = v/i mod (p-1).
inline ForgeryOutcome forge_theorem3(const PublicKey& pub, const Digest& digest,
                                     const Natural& i,
                                     const SmoothnessBound& bound) {
  const Natural& p = pub.p();
  FictiveKey fictive = make_fictive_key(pub, i);
  PublicKey fictive_pub(p, fictive.beta, fictive.z);
  ForgeryOutcome inner = forge_bleichenbacher(fictive_pub, digest, bound);

  Natural s = mod_floor(inner.signature.s * mod_inv(i, p - 1), p - 1);
  ForgeryOutcome outcome{
      Signature{inner.signature.r, s},
      i == 1 ? ForgeStrategy::alpha_direct : ForgeStrategy::exponent_search, i,
      inner.intermediates};
  if (!verify(pub, digest, outcome.signature))
    throw Error("internal: forged signature failed verification");
  return outcome;
}

struct SmoothExponent {
  Natural i;
  Natural beta;
};

/// Smallest i in [1, max_i], coprime to p-1, whose power beta = alpha^i
/// mod p exceeds 1, divides p-1 and is B-smooth. Scans incrementally (one
/// modular multiplication per i).
inline std::optional<SmoothExponent> find_smooth_exponent(
    const PublicKey& pub, const SmoothnessBound& bound, const Natural& max_i) {
  if (max_i < 1) throw DomainError("find_smooth_exponent requires max_i >= 1");
  const Natural& p = pub.p();
  const Natural phi = p - 1;
  Natural beta = 1;
  for (Natural i = 1; i <= max_i; ++i) {
    beta = beta * pub.alpha() % p;
    if (gcd(i, phi) != 1) continue;
    if (beta == 1 || !divides(beta, phi)) continue;
    if (!is_b_smooth(beta, bound)) continue;
    return SmoothExponent{i, beta};
  }
  return std::nullopt;
}

struct Corollary2Candidate {
  ForgeStrategy variant;
  Natural i;
  Natural beta;
};

/// The four exponents whose powers are alpha, 1/alpha, -alpha and
/// -1/alpha mod p. Since alpha^((p-1)/2) == -1 for a primitive alpha, the
/// negated pair sits at i = (p-1)/2 +/- 1; all four i are coprime to p-1.
/// Needs p == 1 (mod 4) so that (p-1)/2 is even and the +/- exponents odd.
inline std::vector<Corollary2Candidate> corollary2_candidates(
    const PublicKey& pub) {
  const Natural& p = pub.p();
  if (mod_floor(p, 4) != 1)
    throw DomainError("corollary2_candidates requires p == 1 (mod 4)");
  const Natural& alpha = pub.alpha();
  Natural half = (p - 1) / 2;  // == 2^(k-1) * l for p-1 = 2^k * l
  Natural inv_alpha = mod_inv(alpha, p);

  std::vector<Corollary2Candidate> candidates{
      {ForgeStrategy::alpha_direct, 1, alpha},
      {ForgeStrategy::inverse_alpha, p - 2, inv_alpha},
      {ForgeStrategy::negated_alpha, half + 1, p - alpha},
      {ForgeStrategy::negated_inverse_alpha, half - 1, p - inv_alpha},
  };
  for (const Corollary2Candidate& c : candidates) {
    if (mod_pow(alpha, c.i, p) != c.beta)
      throw DomainError(
          "candidate exponent table broken: alpha is not primitive");
  }
  return candidates;
}

/// Tries the four corollary-2 candidates in order and forges through the
/// first that divides p-1 and is B-smooth.
inline ForgeryOutcome forge_corollary2(const PublicKey& pub,
                                       const Digest& digest,
                                       const SmoothnessBound& bound) {
  if (mod_floor(pub.p(), 4) != 1)
    throw AttackPreconditionError("corollary 2 requires p == 1 (mod 4)");
  std::vector<std::string> reasons;
  for (const Corollary2Candidate& c : corollary2_candidates(pub)) {
    if (!divides(c.beta, pub.p() - 1)) {
      reasons.push_back(std::string(to_string(c.variant)) + ": beta = " +
                        to_decimal(c.beta) + " does not divide p-1");
      continue;
    }
    if (!is_b_smooth(c.beta, bound)) {
      reasons.push_back(std::string(to_string(c.variant)) + ": beta = " +
                        to_decimal(c.beta) + " is not smooth");
      continue;
    }
    ForgeryOutcome outcome = forge_theorem3(pub, digest, c.i, bound);
    outcome.strategy = c.variant;
    return outcome;
  }
  throw AttackInapplicableError("no corollary-2 candidate qualifies",
                                std::move(reasons));
}

/// The alpha = 2 special case, extended: when 2 is a primitive root mod
/// p, a bounded baby-step giant-step finds i with alpha^i == 2 and the
/// fictive-key forgery applies (beta = 2 always divides p-1).
inline ForgeryOutcome forge_corollary3(const PublicKey& pub,
                                       const Digest& digest,
                                       const SmoothnessBound& bound,
                                       const Natural& dlog_budget) {
  const Natural& p = pub.p();
  if (pub.alpha() == 2) return forge_bleichenbacher(pub, digest, bound);

  Factorization phi_factors;
  try {
    phi_factors = factorize(p - 1);
  } catch (const IncompleteFactorizationError&) {
    throw AttackInapplicableError(
        "cannot tell whether 2 is primitive: p-1 did not factor within effort");
  }
  if (!is_primitive_root(2, p, phi_factors))
    throw AttackPreconditionError("2 is not a primitive root mod p");

  if (ceil_sqrt(p - 1) > dlog_budget)
    throw AttackInapplicableError(
        "discrete-log budget too small for a full-group baby-step table");
  Natural i = bsgs(DlogInstance(pub.alpha(), 2, p, p - 1));
  // alpha and 2 are both primitive, which forces gcd(i, p-1) = 1.
  ForgeryOutcome outcome = forge_theorem3(pub, digest, i, bound);
  outcome.strategy = ForgeStrategy::two_generator;
  return outcome;
}

namespace detail {

// The two candidates that survive without the p == 1 (mod 4) hypothesis:
// alpha itself and its inverse (i = p-2 is always coprime to p-1). Used
// when p == 3 (mod 4), where the forgery is parity-conditional.
inline ForgeryOutcome forge_parity_agnostic_candidates(
    const PublicKey& pub, const Digest& digest, const SmoothnessBound& bound) {
  const Natural& p = pub.p();
  std::vector<Corollary2Candidate> candidates{
      {ForgeStrategy::alpha_direct, 1, pub.alpha()},
      {ForgeStrategy::inverse_alpha, p - 2, mod_inv(pub.alpha(), p)},
  };
  std::vector<std::string> reasons;
  for (const Corollary2Candidate& c : candidates) {
    if (!divides(c.beta, p - 1) || !is_b_smooth(c.beta, bound)) {
      reasons.push_back(std::string(to_string(c.variant)) + ": beta = " +
                        to_decimal(c.beta) +
                        " is not a smooth divisor of p-1");
      continue;
    }
    try {
      ForgeryOutcome outcome = forge_theorem3(pub, digest, c.i, bound);
      outcome.strategy = c.variant;
      return outcome;
    } catch (const ParityObstructionError& e) {
      // The next candidate's subgroup dlog may sit in the other class.
      reasons.push_back(std::string(to_string(c.variant)) + ": " + e.what());
    }
  }
  throw AttackInapplicableError("no candidate qualifies", std::move(reasons));
}

}  // namespace detail

/// Strategy dispatcher, cheapest first: the candidate family (corollary
/// 2, or its parity-agnostic half when p == 3 mod 4), then the
/// two-as-generator reduction, then the smooth-exponent search. Collects
/// one failure reason per strategy when everything misses.
inline ForgeryOutcome forge_auto(const PublicKey& pub, const Digest& digest,
                                 const SmoothnessBound& bound,
                                 const Natural& max_i,
                                 const Natural& dlog_budget) {
  std::vector<std::string> reasons;
  auto record = [&reasons](const std::string& label, const AttackError& e) {
    reasons.push_back(label + ": " + e.what());
    if (const auto* inapplicable =
            dynamic_cast<const AttackInapplicableError*>(&e)) {
      for (const std::string& sub : inapplicable->reasons)
        reasons.push_back(label + ": " + sub);
    }
  };

  try {
    if (mod_floor(pub.p(), 4) == 1)
      return forge_corollary2(pub, digest, bound);
    return detail::forge_parity_agnostic_candidates(pub, digest, bound);
  } catch (const AttackError& e) {
    record("corollary2", e);
  }

  try {
    return forge_corollary3(pub, digest, bound, dlog_budget);
  } catch (const AttackError& e) {
    record("corollary3", e);
  }

  if (std::optional<SmoothExponent> hit =
          find_smooth_exponent(pub, bound, max_i)) {
    try {
      return forge_theorem3(pub, digest, hit->i, bound);
    } catch (const AttackError& e) {
      record("exponent_search", e);
    }
  } else {
    reasons.push_back(
        "exponent_search: no i <= " + to_decimal(max_i) +
        " with alpha^i mod p smooth and dividing p-1");
  }

  throw AttackInapplicableError(
      "no attack applies to this key within the given budgets",
      std::move(reasons));
}

}  // namespace egforge
