#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "egforge/audit.hpp"
#include "egforge/elgamal.hpp"
#include "egforge/rng.hpp"

using namespace egforge;

namespace {

const SmoothnessBound kBound{Natural(65536)};

const AuditCheck& check_for(const AuditReport& report, AuditCondition which) {
  for (const AuditCheck& c : report.checks)
    if (c.condition == which) return c;
  FAIL("condition missing from report");
  static AuditCheck unreachable{AuditCondition::cor1_alpha, CheckStatus::safe,
                                std::nullopt, ""};
  return unreachable;
}

PublicKey key_from_secret(unsigned long p, unsigned long alpha, unsigned long x) {
  return PublicKey(p, alpha, mod_pow(alpha, x, p));
}

}  // namespace

TEST_CASE("audit of the worked key", "[audit]") {
  AuditReport report = audit_key(PublicKey(1597, 11, 159), kBound, 10'000, 100'000);

  CHECK(report.p_mod_4 == 1);
  REQUIRE(report.checks.size() == 7);

  // Fixed condition order.
  CHECK(report.checks[0].condition == AuditCondition::cor1_alpha);
  CHECK(report.checks[1].condition == AuditCondition::thm2b_inverse);
  CHECK(report.checks[2].condition == AuditCondition::thm2c_alpha_squared);
  CHECK(report.checks[3].condition == AuditCondition::cor2_negated_alpha);
  CHECK(report.checks[4].condition == AuditCondition::cor2_negated_inverse);
  CHECK(report.checks[5].condition == AuditCondition::cor3_two);
  CHECK(report.checks[6].condition == AuditCondition::thm3_search);

  CHECK(check_for(report, AuditCondition::cor1_alpha).status == CheckStatus::safe);
  CHECK(check_for(report, AuditCondition::thm2b_inverse).status ==
        CheckStatus::safe);
  CHECK(check_for(report, AuditCondition::thm2c_alpha_squared).status ==
        CheckStatus::safe);
  CHECK(check_for(report, AuditCondition::cor2_negated_alpha).status ==
        CheckStatus::safe);
  CHECK(check_for(report, AuditCondition::cor2_negated_inverse).status ==
        CheckStatus::safe);
  CHECK(check_for(report, AuditCondition::cor3_two).status == CheckStatus::safe);

  const AuditCheck& search = check_for(report, AuditCondition::thm3_search);
  CHECK(search.status == CheckStatus::vulnerable);
  REQUIRE(search.witness.has_value());
  CHECK(search.witness->i == 275);
  CHECK(search.witness->beta == 38);

  CHECK(report.overall == OverallVerdict::forgeable);
}

TEST_CASE("audit of an alpha = 2 key", "[audit]") {
  AuditReport report = audit_key(key_from_secret(13, 2, 5), kBound, 100, 1000);

  const AuditCheck& cor1 = check_for(report, AuditCondition::cor1_alpha);
  CHECK(cor1.status == CheckStatus::vulnerable);
  REQUIRE(cor1.witness.has_value());
  CHECK(cor1.witness->i == 1);
  CHECK(cor1.witness->beta == 2);

  const AuditCheck& cor3 = check_for(report, AuditCondition::cor3_two);
  CHECK(cor3.status == CheckStatus::vulnerable);

  // 2^2 = 4 divides 12: detected, but flagged as having no forgery path.
  const AuditCheck& thm2c = check_for(report, AuditCondition::thm2c_alpha_squared);
  CHECK(thm2c.status == CheckStatus::vulnerable);
  CHECK_FALSE(thm2c.has_forgery_path());
  CHECK(thm2c.notes.find("no forgery") != std::string::npos);

  CHECK(report.overall == OverallVerdict::forgeable);
}

TEST_CASE("witnesses of forgeable conditions divide p-1 and are smooth",
          "[audit]") {
  Rng rng(77);
  for (int round = 0; round < 20; ++round) {
    PrivateKey key = keygen(16, rng, /*require_1_mod_4=*/true);
    AuditReport report = audit_key(key.public_key(), kBound, 2000, 5000);
    for (const AuditCheck& c : report.checks) {
      if (c.status != CheckStatus::vulnerable || !c.has_forgery_path()) continue;
      REQUIRE(c.witness.has_value());
      CHECK(divides(c.witness->beta, key.public_key().p() - 1));
      CHECK(is_b_smooth(c.witness->beta, kBound));
      CHECK(mod_pow(key.public_key().alpha(), c.witness->i,
                    key.public_key().p()) == c.witness->beta);
    }
  }
}

TEST_CASE("audit verdict matches forge_auto on sampled keys", "[audit]") {
  Rng rng(31337);
  int forgeable_seen = 0, resistant_seen = 0;
  for (int round = 0; round < 36; ++round) {
    unsigned bits = 16 + static_cast<unsigned>(round % 4);  // p < 2^19 < 10^6
    PrivateKey key = keygen(bits, rng, /*require_1_mod_4=*/true);
    const PublicKey& pub = key.public_key();
    AuditReport report = audit_key(pub, kBound, 2000, 5000);
    Digest m{rng.below(pub.p() - 1)};

    bool forged;
    try {
      ForgeryOutcome outcome = forge_auto(pub, m, kBound, 2000, 5000);
      CHECK(verify(pub, m, outcome.signature));
      forged = true;
    } catch (const AttackInapplicableError&) {
      forged = false;
    }
    if (forged) {
      ++forgeable_seen;
      CHECK(report.overall == OverallVerdict::forgeable);
    } else {
      ++resistant_seen;
      CHECK(report.overall != OverallVerdict::forgeable);
    }
  }
  // The sample must exercise both sides to mean anything.
  CHECK(forgeable_seen > 0);
  CHECK(resistant_seen > 0);
}

TEST_CASE("audit of a p == 3 (mod 4) key", "[audit]") {
  PublicKey pub = key_from_secret(7, 3, 2);
  AuditReport report = audit_key(pub, kBound, 100, 1000);

  CHECK(report.p_mod_4 == 3);
  const AuditCheck& cor1 = check_for(report, AuditCondition::cor1_alpha);
  CHECK(cor1.status == CheckStatus::vulnerable);
  CHECK(cor1.notes.find("parity") != std::string::npos);
  CHECK(check_for(report, AuditCondition::cor2_negated_alpha).status ==
        CheckStatus::safe);
  CHECK(check_for(report, AuditCondition::cor2_negated_alpha)
            .notes.find("p == 1") != std::string::npos);
  CHECK(report.overall == OverallVerdict::forgeable);

  // Forgeable here means: one of the two digest parities is reachable.
  bool some_parity_forged = false;
  for (unsigned long m : {4ul, 5ul}) {
    try {
      ForgeryOutcome outcome = forge_auto(pub, Digest{m}, kBound, 100, 1000);
      CHECK(verify(pub, Digest{m}, outcome.signature));
      some_parity_forged = true;
    } catch (const AttackInapplicableError&) {
    }
  }
  CHECK(some_parity_forged);
}

TEST_CASE("factorization failures surface as indeterminate", "[audit]") {
  FactorEffort starved;
  starved.trial_division_bound = 50;
  starved.rho_iterations = 0;

  Rng rng(4242);
  bool saw_indeterminate = false;
  for (int round = 0; round < 40 && !saw_indeterminate; ++round) {
    PrivateKey key = keygen(20, rng, /*require_1_mod_4=*/true);
    if (key.public_key().alpha() == 2) continue;
    AuditReport report =
        audit_key(key.public_key(), kBound, 500, 5000, starved);
    const AuditCheck& cor3 = check_for(report, AuditCondition::cor3_two);
    if (cor3.status != CheckStatus::indeterminate) continue;
    saw_indeterminate = true;
    if (report.overall != OverallVerdict::forgeable)
      CHECK(report.overall == OverallVerdict::indeterminate);
  }
  CHECK(saw_indeterminate);
}

TEST_CASE("dlog budget exhaustion is indeterminate, not safe", "[audit]") {
  // 2 is primitive mod 13; a budget of 1 cannot build the table.
  PublicKey pub = key_from_secret(13, 6, 5);
  AuditReport report = audit_key(pub, kBound, 100, 1);
  const AuditCheck& cor3 = check_for(report, AuditCondition::cor3_two);
  CHECK(cor3.status == CheckStatus::indeterminate);
  CHECK(cor3.notes.find("budget") != std::string::npos);
}

TEST_CASE("raising the bound never flips vulnerable to safe", "[audit]") {
  Rng rng(888);
  const std::vector<unsigned long> bounds{2, 16, 256, 65536};
  for (int round = 0; round < 10; ++round) {
    PrivateKey key = keygen(16, rng, /*require_1_mod_4=*/true);
    std::vector<AuditReport> reports;
    for (unsigned long b : bounds)
      reports.push_back(audit_key(key.public_key(), SmoothnessBound(b), 500,
                                  5000));
    for (std::size_t step = 1; step < reports.size(); ++step) {
      for (std::size_t c = 0; c < reports[step].checks.size(); ++c) {
        if (reports[step - 1].checks[c].status == CheckStatus::vulnerable)
          CHECK(reports[step].checks[c].status == CheckStatus::vulnerable);
      }
    }
  }
}
