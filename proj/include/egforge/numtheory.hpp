#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "egforge/errors.hpp"
#include "egforge/natural.hpp"

namespace egforge {

/// The B of B-smoothness: an integer is B-smooth when every prime factor
/// is <= B.
struct SmoothnessBound {
  Natural value;
  explicit SmoothnessBound(Natural b) : value(std::move(b)) {
    if (value < 2) throw DomainError("smoothness bound must be >= 2");
  }
};

/// Effort budget for factorize(): trial division up to a fixed cutoff,
/// then Pollard-Brent rho with an iteration cap shared across all
/// composite cofactors.
struct FactorEffort {
  std::uint64_t trial_division_bound = 1'000'000;
  std::uint64_t rho_iterations = 20'000'000;
};

namespace detail {

// 2, 3, then the 6k +/- 1 wheel.
inline std::uint64_t wheel_next(std::uint64_t d) {
  if (d < 3) return 3;
  if (d == 3) return 5;
  return d % 6 == 5 ? d + 2 : d + 4;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; d = wheel_next(d))
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t next_prime_u64(std::uint64_t after) {
  std::uint64_t c = after + 1;
  while (!is_prime_u64(c)) ++c;
  return c;
}

}  // namespace detail

/// base^exponent mod modulus, result in [0, modulus).
inline Natural mod_pow(const Natural& base, const Natural& exponent,
                       const Natural& modulus) {
  if (modulus < 2) throw DomainError("mod_pow requires modulus >= 2");
  Natural r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(),
           modulus.get_mpz_t());
  return r;
}

struct EgcdResult {
  Natural g;
  Integer u;
  Integer v;  // u*a + v*b == g
};

inline EgcdResult egcd(const Natural& a, const Natural& b) {
  if (a == 0 && b == 0) throw DomainError("egcd(0, 0) is undefined");
  EgcdResult r;
  mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

/// Inverse of a modulo n, in [1, n). Throws NotInvertibleError (carrying
/// the offending gcd) when gcd(a, n) != 1.
inline Natural mod_inv(const Natural& a, const Natural& n) {
  if (n < 2) throw DomainError("mod_inv requires modulus >= 2");
  EgcdResult e = egcd(mod_floor(a, n), n);
  if (e.g != 1)
    throw NotInvertibleError(
        "not invertible modulo " + to_decimal(n) + ": gcd is " + to_decimal(e.g),
        e.g);
  return mod_floor(e.u, n);
}

/// All solutions s in [0, n) of a*s == c (mod n), ascending. There are
/// gcd(a, n) of them when gcd(a, n) divides c, none otherwise.
inline std::vector<Natural> solve_linear_congruence(const Natural& a,
                                                    const Natural& c,
                                                    const Natural& n) {
  if (n < 2) throw DomainError("solve_linear_congruence requires modulus >= 2");
  Natural a0 = mod_floor(a, n);
  Natural c0 = mod_floor(c, n);
  Natural g = gcd(a0, n);  // a0 == 0 gives g == n
  if (!mpz_divisible_p(c0.get_mpz_t(), g.get_mpz_t())) return {};
  Natural step = n / g;
  Natural x0 = 0;
  if (step != 1) x0 = mod_floor((c0 / g) * mod_inv(a0 / g, step), step);
  std::vector<Natural> solutions;
  for (Natural t = 0; t < g; ++t) solutions.push_back(x0 + t * step);
  return solutions;
}

/// Primality: exact (trial division) below 2^16, Miller-Rabin with the
/// first `rounds` primes as witnesses above. Deterministic, RNG-free.
inline bool is_prime(const Natural& n, unsigned rounds = 40) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  if (n < 65536) return detail::is_prime_u64(n.get_ui());

  Natural d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  d >>= r;

  std::uint64_t base = 1;
  for (unsigned round = 0; round < rounds; ++round) {
    base = detail::next_prime_u64(base);
    Natural b = mod_floor(Natural(static_cast<unsigned long>(base)), n);
    if (b <= 1 || b == n - 1) continue;
    Natural x = mod_pow(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness_of_compositeness = true;
    for (unsigned long i = 1; i < r; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        witness_of_compositeness = false;
        break;
      }
    }
    if (witness_of_compositeness) return false;
  }
  return true;
}

/// Multiset of (prime, exponent) pairs whose product is value(). The
/// constructor rejects unsorted, composite, or non-multiplying entries,
/// so a Factorization in hand is always internally consistent.
class Factorization {
 public:
  struct Entry {
    Natural prime;
    unsigned exponent;
  };

  Factorization() : value_(1) {}

  Factorization(Natural value, std::vector<Entry> entries)
      : value_(std::move(value)), entries_(std::move(entries)) {
    Natural product = 1;
    const Natural* previous = nullptr;
    for (const Entry& e : entries_) {
      if (previous && !(*previous < e.prime))
        throw DomainError("factorization primes must be strictly increasing");
      if (e.exponent == 0)
        throw DomainError("factorization exponents must be positive");
      if (!is_prime(e.prime))
        throw DomainError("factorization entry " + to_decimal(e.prime) +
                          " is not prime");
      Natural power;
      mpz_pow_ui(power.get_mpz_t(), e.prime.get_mpz_t(), e.exponent);
      product *= power;
      previous = &e.prime;
    }
    if (product != value_)
      throw DomainError("factorization entries do not multiply to " +
                        to_decimal(value_));
  }

  const Natural& value() const { return value_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Largest prime factor; nullopt for value 1.
  std::optional<Natural> largest_prime() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.back().prime;
  }

 private:
  Natural value_;
  std::vector<Entry> entries_;
};

namespace detail {

// Pollard-Brent rho. Consumes from `budget` (one unit per squaring);
// returns a nontrivial factor of odd composite n, or nullopt when the
// budget runs out.
inline std::optional<Natural> pollard_brent(const Natural& n,
                                            std::uint64_t& budget) {
  for (unsigned long increment = 1; budget > 0; ++increment) {
    Natural y = 2 + increment;
    Natural g = 1, q = 1, x, ys;
    const unsigned long batch = 128;
    for (std::uint64_t r = 1; g == 1 && budget > 0; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r && budget > 0; ++i, --budget)
        y = mod_floor(y * y + increment, n);
      for (std::uint64_t k = 0; k < r && g == 1 && budget > 0;) {
        ys = y;
        std::uint64_t limit = std::min<std::uint64_t>(batch, r - k);
        for (std::uint64_t i = 0; i < limit && budget > 0; ++i, --budget) {
          y = mod_floor(y * y + increment, n);
          q = mod_floor(q * (x > y ? x - y : y - x), n);
        }
        g = gcd(q, n);
        k += limit;
      }
    }
    if (g == n) {
      // Batched gcd overshot; replay one step at a time.
      do {
        ys = mod_floor(ys * ys + increment, n);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    // g == n even after replay: retry with the next polynomial.
  }
  return std::nullopt;
}

}  // namespace detail

/// Complete factorization of n within the effort budget; throws
/// IncompleteFactorizationError (partial factors + composite cofactor)
/// when the budget is exhausted first.
inline Factorization factorize(const Natural& n,
                               const FactorEffort& effort = {}) {
  if (n == 0) throw DomainError("factorize requires n >= 1");
  std::map<Natural, unsigned> found;
  Natural m = n;

  Natural root;
  mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
  for (std::uint64_t d = 2;
       d <= effort.trial_division_bound && mpz_cmp_ui(root.get_mpz_t(), d) >= 0;
       d = detail::wheel_next(d)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      unsigned count = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
        ++count;
      }
      found[Natural(static_cast<unsigned long>(d))] = count;
      mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
    }
  }

  std::vector<Natural> pending;
  if (m != 1) pending.push_back(m);
  std::uint64_t budget = effort.rho_iterations;
  while (!pending.empty()) {
    Natural c = pending.back();
    pending.pop_back();
    if (is_prime(c)) {
      ++found[c];
      continue;
    }
    std::optional<Natural> f = detail::pollard_brent(c, budget);
    if (!f) {
      std::vector<std::pair<Natural, unsigned>> partial(found.begin(),
                                                        found.end());
      Natural cofactor = c;
      for (const Natural& left : pending) cofactor *= left;
      throw IncompleteFactorizationError(
          "factorization effort exhausted at cofactor " + to_decimal(cofactor),
          std::move(partial), cofactor);
    }
    pending.push_back(*f);
    pending.push_back(c / *f);
  }

  std::vector<Factorization::Entry> entries;
  entries.reserve(found.size());
  for (const auto& [prime, exponent] : found) entries.push_back({prime, exponent});
  return Factorization(n, std::move(entries));
}

/// True iff every prime factor of n is <= bound. Decides by stripping
/// small primes; only reaches for factorize() when the bound exceeds the
/// trial-division range (in which case an effort failure can propagate).
inline bool is_b_smooth(const Natural& n, const SmoothnessBound& bound) {
  if (n == 0) throw DomainError("is_b_smooth requires n >= 1");
  Natural m = n;
  if (m == 1) return true;

  constexpr std::uint64_t kTrialCap = 1'000'000;
  std::uint64_t cap = kTrialCap;
  bool bound_in_trial_range = bound.value <= Natural(static_cast<unsigned long>(kTrialCap));
  if (bound_in_trial_range) cap = bound.value.get_ui();

  Natural root;
  mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
  for (std::uint64_t d = 2;
       d <= cap && mpz_cmp_ui(root.get_mpz_t(), d) >= 0;
       d = detail::wheel_next(d)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      while (mpz_divisible_ui_p(m.get_mpz_t(), d))
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      if (m == 1) return true;
      mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
    }
  }
  if (mpz_cmp_ui(root.get_mpz_t(), cap) <= 0) {
    // Loop ended past sqrt(m): the remainder is prime.
    return m <= bound.value;
  }
  if (bound_in_trial_range) return false;  // all remaining factors > bound
  if (is_prime(m)) return m <= bound.value;
  Factorization rest = factorize(m);
  return *rest.largest_prime() <= bound.value;
}

/// True iff a generates the full multiplicative group mod p. phi_factors
/// must be the complete factorization of p-1.
inline bool is_primitive_root(const Natural& a, const Natural& p,
                              const Factorization& phi_factors) {
  if (p < 2) throw DomainError("is_primitive_root requires prime p >= 2");
  if (a < 1 || a >= p)
    throw DomainError("is_primitive_root requires 1 <= a < p");
  if (phi_factors.value() != p - 1)
    throw DomainError("phi_factors does not factor p-1");
  for (const auto& entry : phi_factors.entries()) {
    if (mod_pow(a, (p - 1) / entry.prime, p) == 1) return false;
  }
  return true;
}

struct CrtResult {
  Natural value;    // in [0, modulus)
  Natural modulus;  // product of the input moduli
};

/// Chinese remainder recombination for pairwise coprime moduli.
inline CrtResult crt(const std::vector<std::pair<Natural, Natural>>& pairs) {
  if (pairs.empty()) throw DomainError("crt requires at least one pair");
  Natural x = 0, n = 1;
  for (const auto& [residue, modulus] : pairs) {
    if (modulus < 2) throw DomainError("crt moduli must be >= 2");
    EgcdResult e = egcd(n, modulus);
    if (e.g != 1) throw DomainError("crt moduli must be pairwise coprime");
    // e.u*n + e.v*modulus == 1, so x' hits x mod n and residue mod modulus.
    Natural combined = n * modulus;
    x = mod_floor(x * e.v * modulus + residue * e.u * n, combined);
    n = combined;
  }
  return {x, n};
}

struct TwoAdicSplit {
  unsigned long exponent;  // k >= 1
  Natural odd_part;        // l, odd: n == 2^k * l
};

inline TwoAdicSplit two_adic_split(const Natural& n) {
  if (n == 0 || mpz_odd_p(n.get_mpz_t()))
    throw DomainError("two_adic_split requires even n >= 2");
  unsigned long k = mpz_scan1(n.get_mpz_t(), 0);
  return {k, n >> k};
}

}  // namespace egforge
