#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egforge/attacks.hpp"
#include "egforge/errors.hpp"
#include "egforge/keys.hpp"
#include "egforge/natural.hpp"
#include "egforge/numtheory.hpp"

// Read-only weakness assessment of a public key: one entry per known
// dangerous-parameter condition. "safe" always means "not exploitable by
// the attacks implemented here within the stated budgets", never a proof.

namespace egforge {

enum class AuditCondition {
  cor1_alpha,           // alpha smooth and divides p-1
  thm2b_inverse,        // 1/alpha mod p smooth and divides p-1
  thm2c_alpha_squared,  // alpha^2 mod p smooth and divides p-1 (detect only)
  cor2_negated_alpha,   // p-alpha smooth and divides p-1
  cor2_negated_inverse, // -1/alpha mod p smooth and divides p-1
  cor3_two,             // alpha = 2, or 2 primitive with computable dlog
  thm3_search,          // some i <= max_i with alpha^i smooth dividing p-1
};

enum class CheckStatus { vulnerable, safe, indeterminate };

enum class OverallVerdict { forgeable, not_forgeable_within_budget, indeterminate };

inline const char* to_string(AuditCondition c) {
  switch (c) {
    case AuditCondition::cor1_alpha: return "cor1_alpha";
    case AuditCondition::thm2b_inverse: return "thm2b_inverse";
    case AuditCondition::thm2c_alpha_squared: return "thm2c_alpha_squared";
    case AuditCondition::cor2_negated_alpha: return "cor2_negated_alpha";
    case AuditCondition::cor2_negated_inverse: return "cor2_negated_inverse";
    case AuditCondition::cor3_two: return "cor3_two";
    case AuditCondition::thm3_search: return "thm3_search";
  }
  return "?";
}

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::vulnerable: return "vulnerable";
    case CheckStatus::safe: return "safe";
    case CheckStatus::indeterminate: return "indeterminate";
  }
  return "?";
}

inline const char* to_string(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::forgeable: return "forgeable";
    case OverallVerdict::not_forgeable_within_budget:
      return "not_forgeable_within_budget";
    case OverallVerdict::indeterminate: return "indeterminate";
  }
  return "?";
}

struct AuditWitness {
  Natural i;
  Natural beta;
};

struct AuditCheck {
  AuditCondition condition;
  CheckStatus status;
  std::optional<AuditWitness> witness;
  std::string notes;

  /// thm2c is detected but has no implemented forgery; everything else
  /// that is vulnerable can actually be forged.
  bool has_forgery_path() const {
    return condition != AuditCondition::thm2c_alpha_squared;
  }
};

struct AuditReport {
  PublicKey key;
  int p_mod_4;
  std::vector<AuditCheck> checks;  // fixed condition order
  OverallVerdict overall;
};

namespace detail {

inline AuditCheck audit_beta_condition(AuditCondition condition,
                                       const PublicKey& pub, const Natural& i,
                                       const Natural& beta,
                                       const SmoothnessBound& bound,
                                       const std::string& parity_note) {
  AuditCheck check{condition, CheckStatus::safe, std::nullopt, ""};
  if (beta <= 1) {
    check.notes = "degenerate beta";
    return check;
  }
  if (!divides(beta, pub.p() - 1)) {
    check.notes = "beta = " + to_decimal(beta) + " does not divide p-1";
    return check;
  }
  try {
    if (!is_b_smooth(beta, bound)) {
      check.notes = "beta = " + to_decimal(beta) +
                    " divides p-1 but is not smooth for this bound";
      return check;
    }
  } catch (const IncompleteFactorizationError&) {
    check.status = CheckStatus::indeterminate;
    check.notes = "smoothness of beta = " + to_decimal(beta) +
                  " undecided within the factoring effort";
    return check;
  }
  check.status = CheckStatus::vulnerable;
  check.witness = AuditWitness{i, beta};
  check.notes = parity_note;
  if (condition == AuditCondition::thm2c_alpha_squared) {
    check.notes = "condition detected; no forgery is implemented for it" +
                  (parity_note.empty() ? "" : "; " + parity_note);
  }
  return check;
}

}  // namespace detail

/// Evaluates every known dangerous-parameter condition independently.
/// Budget failures surface as "indeterminate", never as a silent "safe".
inline AuditReport audit_key(const PublicKey& pub, const SmoothnessBound& bound,
                             const Natural& max_i, const Natural& dlog_budget,
                             const FactorEffort& effort = {}) {
  const Natural& p = pub.p();
  const Natural& alpha = pub.alpha();
  const int p_mod_4 = static_cast<int>(mod_floor(p, 4).get_ui());
  const std::string parity_note =
      p_mod_4 == 3 ? "p == 3 (mod 4): forgery reaches only one digest parity"
                   : "";

  std::vector<AuditCheck> checks;

  checks.push_back(detail::audit_beta_condition(
      AuditCondition::cor1_alpha, pub, 1, alpha, bound, parity_note));

  Natural inv_alpha = mod_inv(alpha, p);
  checks.push_back(detail::audit_beta_condition(
      AuditCondition::thm2b_inverse, pub, p - 2, inv_alpha, bound, parity_note));

  checks.push_back(detail::audit_beta_condition(
      AuditCondition::thm2c_alpha_squared, pub, 2, alpha * alpha % p, bound,
      parity_note));

  if (p_mod_4 == 1) {
    Natural half = (p - 1) / 2;
    checks.push_back(detail::audit_beta_condition(
        AuditCondition::cor2_negated_alpha, pub, half + 1, p - alpha, bound,
        ""));
    checks.push_back(detail::audit_beta_condition(
        AuditCondition::cor2_negated_inverse, pub, half - 1, p - inv_alpha,
        bound, ""));
  } else {
    checks.push_back(
        {AuditCondition::cor2_negated_alpha, CheckStatus::safe, std::nullopt,
         "construction requires p == 1 (mod 4)"});
    checks.push_back(
        {AuditCondition::cor2_negated_inverse, CheckStatus::safe, std::nullopt,
         "construction requires p == 1 (mod 4)"});
  }

  // cor3: alpha = 2 directly, otherwise 2 primitive + computable dlog.
  if (alpha == 2) {
    checks.push_back({AuditCondition::cor3_two, CheckStatus::vulnerable,
                      AuditWitness{1, 2}, parity_note});
  } else {
    AuditCheck cor3{AuditCondition::cor3_two, CheckStatus::safe, std::nullopt,
                    ""};
    try {
      Factorization phi_factors = factorize(p - 1, effort);
      if (!is_primitive_root(2, p, phi_factors)) {
        cor3.notes = "2 is not a primitive root mod p";
      } else if (ceil_sqrt(p - 1) > dlog_budget) {
        cor3.status = CheckStatus::indeterminate;
        cor3.notes =
            "2 is primitive but the discrete-log budget cannot cover the group";
      } else {
        Natural i = bsgs(DlogInstance(alpha, 2, p, p - 1));
        cor3.status = CheckStatus::vulnerable;
        cor3.witness = AuditWitness{i, 2};
        cor3.notes = parity_note;
      }
    } catch (const IncompleteFactorizationError&) {
      cor3.status = CheckStatus::indeterminate;
      cor3.notes = "primitivity of 2 undecided: p-1 did not factor within effort";
    }
    checks.push_back(std::move(cor3));
  }

  {
    AuditCheck search{AuditCondition::thm3_search, CheckStatus::safe,
                      std::nullopt, ""};
    try {
      if (std::optional<SmoothExponent> hit =
              find_smooth_exponent(pub, bound, max_i)) {
        search.status = CheckStatus::vulnerable;
        search.witness = AuditWitness{hit->i, hit->beta};
        search.notes = parity_note;
      } else {
        search.notes =
            "no exponent i <= " + to_decimal(max_i) +
            " with alpha^i mod p smooth and dividing p-1";
      }
    } catch (const IncompleteFactorizationError&) {
      search.status = CheckStatus::indeterminate;
      search.notes = "search aborted: smoothness undecided within effort";
    }
    checks.push_back(std::move(search));
  }

  OverallVerdict overall = OverallVerdict::not_forgeable_within_budget;
  bool any_indeterminate = false;
  for (const AuditCheck& c : checks) {
    if (c.status == CheckStatus::vulnerable && c.has_forgery_path()) {
      overall = OverallVerdict::forgeable;
      break;
    }
    if (c.status == CheckStatus::indeterminate) any_indeterminate = true;
  }
  if (overall != OverallVerdict::forgeable && any_indeterminate)
    overall = OverallVerdict::indeterminate;

  return AuditReport{pub, p_mod_4, std::move(checks), overall};
}

}  // namespace egforge
