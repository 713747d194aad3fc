#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "egforge/errors.hpp"
#include "egforge/natural.hpp"
#include "egforge/numtheory.hpp"

namespace egforge {

/// One discrete-log problem: find e with base^e == target (mod
/// prime_modulus), where `order` is the multiplicative order of base.
struct DlogInstance {
  Natural base;
  Natural target;
  Natural prime_modulus;
  Natural order;

  DlogInstance(Natural base_in, Natural target_in, Natural modulus_in,
               Natural order_in)
      : base(std::move(base_in)),
        target(std::move(target_in)),
        prime_modulus(std::move(modulus_in)),
        order(std::move(order_in)) {
    if (order < 1) throw DomainError("dlog order must be >= 1");
    if (base < 1 || base >= prime_modulus || target < 1 ||
        target >= prime_modulus)
      throw DomainError("dlog base and target must lie in [1, p)");
    if (mod_pow(base, order, prime_modulus) != 1)
      throw DomainError("base^order != 1 (mod p): order is wrong");
  }
};

/// Reference solver: linear scan for the smallest exponent. Guarded to
/// orders <= 10^7 so tests cannot accidentally run forever.
inline Natural brute_force_dlog(const DlogInstance& inst) {
  if (inst.order > 10'000'000)
    throw DomainError("brute_force_dlog is limited to order <= 10^7");
  Natural acc = 1;
  for (Natural e = 0; e < inst.order; ++e) {
    if (acc == inst.target) return e;
    acc = acc * inst.base % inst.prime_modulus;
  }
  throw NoSolutionError("target is not a power of the base");
}

struct BsgsStats {
  std::uint64_t steps = 0;        // group operations performed
  std::uint64_t table_entries = 0;
};

/// Baby-step giant-step. Returns the smallest exponent in [0, order);
/// step count stays within 2*ceil(sqrt(order)) + 2.
inline Natural bsgs(const DlogInstance& inst, BsgsStats* stats = nullptr) {
  const Natural& p = inst.prime_modulus;
  Natural m = ceil_sqrt(inst.order);

  BsgsStats local;
  std::map<Natural, Natural> table;  // value -> smallest baby exponent
  Natural baby = 1;
  for (Natural j = 0; j < m; ++j) {
    table.emplace(baby, j);  // keeps the first (smallest) j
    baby = baby * inst.base % p;
    ++local.steps;
  }
  local.table_entries = table.size();

  Natural giant_step = mod_inv(mod_pow(inst.base, m, p), p);
  Natural gamma = inst.target;
  for (Natural i = 0; i <= m; ++i) {
    auto hit = table.find(gamma);
    if (hit != table.end()) {
      if (stats) *stats = local;
      Natural e = i * m + hit->second;
      // i == m can overshoot the order; anything >= order is a repeat.
      if (e < inst.order) return e;
      return mod_floor(e, inst.order);
    }
    gamma = gamma * giant_step % p;
    ++local.steps;
  }
  if (stats) *stats = local;
  throw NoSolutionError("target is not a power of the base");
}

/// Pohlig-Hellman: per prime power q^e of the order, lift the exponent
/// digit by digit with bsgs in the order-q subgroup, then recombine with
/// crt. Needs the complete factorization of the order.
inline Natural pohlig_hellman(const DlogInstance& inst,
                              const Factorization& order_factors) {
  if (order_factors.value() != inst.order)
    throw DomainError("order_factors does not factor the instance order");
  const Natural& p = inst.prime_modulus;
  if (inst.order == 1) {
    if (inst.target == 1) return 0;
    throw NoSolutionError("order-1 base only reaches 1");
  }

  Natural inv_base = mod_inv(inst.base, p);
  std::vector<std::pair<Natural, Natural>> residues;
  for (const auto& entry : order_factors.entries()) {
    const Natural& q = entry.prime;
    Natural subgroup_generator = mod_pow(inst.base, inst.order / q, p);
    Natural prime_power = 1;
    Natural residue = 0;
    Natural digit_weight = 1;  // q^t
    for (unsigned t = 0; t < entry.exponent; ++t) {
      prime_power *= q;
      // Peel the digit at weight q^t into the order-q subgroup.
      Natural shifted = inst.target * mod_pow(inv_base, residue, p) % p;
      Natural component = mod_pow(shifted, inst.order / prime_power, p);
      Natural digit = bsgs(
          DlogInstance(subgroup_generator, component, p, q));
      residue += digit * digit_weight;
      digit_weight *= q;
    }
    residues.emplace_back(residue, prime_power);
  }
  return crt(residues).value;
}

}  // namespace egforge
