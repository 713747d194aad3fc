// Command-line surface: keygen / sign / verify plus the weak-parameter
// audit, the forgery strategies, and the smooth-exponent search.
//
// Exit codes: 0 success or valid signature, 1 invalid signature,
// 2 usage or parameter error, 3 attack inapplicable within budgets.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "egforge/egforge.hpp"

namespace {

using namespace egforge;

struct BudgetOptions {
  std::string smooth_bound = "65536";   // tool default, not a protocol value
  std::string max_exponent = "1000000"; // tool default
  std::string dlog_budget = "1000000";  // max baby-step table entries
};

void add_budget_options(CLI::App* cmd, BudgetOptions& budget) {
  cmd->add_option("--smooth-bound", budget.smooth_bound,
                  "smoothness bound B (decimal)")
      ->capture_default_str();
  cmd->add_option("--max-exponent", budget.max_exponent,
                  "largest exponent i tried by the search (decimal)")
      ->capture_default_str();
  cmd->add_option("--dlog-budget", budget.dlog_budget,
                  "largest baby-step table the dlog step may build (decimal)")
      ->capture_default_str();
}

struct DigestOptions {
  std::string digest_text;
  std::string message_file;
  bool hash = false;
};

void add_digest_options(CLI::App* cmd, DigestOptions& opts) {
  CLI::Option* digest =
      cmd->add_option("--digest", opts.digest_text,
                      "digest m as a decimal integer, reduced mod p-1");
  CLI::Option* file = cmd->add_option(
      "--message-file", opts.message_file,
      "read the message from this file instead of --digest");
  cmd->add_flag("--hash", opts.hash,
                "hash the message file (sha256) instead of parsing a decimal");
  digest->excludes(file);
  file->excludes(digest);
}

Digest resolve_digest(const DigestOptions& opts, const PublicKey& pub) {
  if (!opts.digest_text.empty())
    return reduce_digest(parse_natural(opts.digest_text), pub);
  if (opts.message_file.empty())
    throw DomainError("one of --digest or --message-file is required");
  std::ifstream in(opts.message_file, std::ios::binary);
  if (!in) throw ParseError("cannot open " + opts.message_file);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return digest_of(bytes.str(),                // whole file contents
                   pub,
                   opts.hash ? DigestMode::sha256 : DigestMode::pass_through);
}

std::uint64_t seed_or_random(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void print_forgery(const ForgeryOutcome& outcome, bool structured) {
  if (structured) {
    std::cout << to_json(outcome).dump(2) << '\n';
    return;
  }
  const ForgeIntermediates& mid = outcome.intermediates;
  std::cout << "r = " << to_decimal(outcome.signature.r) << '\n'
            << "s = " << to_decimal(outcome.signature.s) << '\n'
            << "strategy = " << to_string(outcome.strategy) << '\n'
            << "i = " << to_decimal(outcome.exponent_i) << '\n'
            << "k = " << to_decimal(mid.nonce) << '\n'
            << "w = " << to_decimal(mid.subgroup_index) << '\n'
            << "b = " << to_decimal(mid.subgroup_generator) << '\n'
            << "subgroup_target = " << to_decimal(mid.subgroup_target) << '\n'
            << "x0 = " << to_decimal(mid.subgroup_dlog) << '\n'
            << "u = " << to_decimal(mid.fictive_r) << '\n'
            << "v = " << to_decimal(mid.fictive_s) << '\n';
}

void print_audit(const AuditReport& report, bool structured) {
  if (structured) {
    std::cout << to_json(report).dump(2) << '\n';
    return;
  }
  std::cout << "p = " << to_decimal(report.key.p()) << " (p mod 4 = "
            << report.p_mod_4 << ")\n"
            << "alpha = " << to_decimal(report.key.alpha()) << '\n';
  for (const AuditCheck& check : report.checks) {
    std::cout << to_string(check.condition) << ": "
              << to_string(check.status);
    if (check.witness)
      std::cout << " (i = " << to_decimal(check.witness->i)
                << ", beta = " << to_decimal(check.witness->beta) << ")";
    if (!check.notes.empty()) std::cout << " -- " << check.notes;
    std::cout << '\n';
  }
  std::cout << "overall: " << to_string(report.overall) << '\n'
            << "note: \"safe\" means not exploitable by the attacks "
               "implemented here within the stated budgets\n";
}

int run(int argc, char** argv) {
  CLI::App app{"ElGamal signature toolkit: honest protocol, weak-parameter "
               "audit, and universal forgeries"};
  app.require_subcommand(1);
  int rc = 0;

  // keygen
  auto* keygen_cmd = app.add_subcommand("keygen", "generate a key pair");
  unsigned bits = 0;
  std::optional<std::uint64_t> seed;
  bool require_1_mod_4 = false;
  bool keygen_structured = false;
  std::string pub_out = "public_key.json";
  std::string priv_out = "private_key.json";
  keygen_cmd->add_option("--bits", bits, "prime size in bits (>= 8)")
      ->required();
  keygen_cmd->add_option("--seed", seed, "RNG seed for reproducible keys");
  keygen_cmd->add_flag("--require-1-mod-4", require_1_mod_4,
                       "force p == 1 (mod 4)");
  keygen_cmd->add_option("--pub-out", pub_out, "public key file")
      ->capture_default_str();
  keygen_cmd->add_option("--priv-out", priv_out, "private key file")
      ->capture_default_str();
  keygen_cmd->add_flag("--structured", keygen_structured, "emit JSON");
  keygen_cmd->callback([&] {
    Rng rng(seed_or_random(seed));
    PrivateKey key = keygen(bits, rng, require_1_mod_4);
    save_json_file(pub_out, to_json(key.public_key()));
    save_json_file(priv_out, to_json(key));
    if (keygen_structured) {
      std::cout << to_json(key.public_key()).dump(2) << '\n';
    } else {
      std::cout << "p = " << to_decimal(key.public_key().p()) << '\n'
                << "alpha = " << to_decimal(key.public_key().alpha()) << '\n'
                << "y = " << to_decimal(key.public_key().y()) << '\n'
                << "wrote " << pub_out << '\n'
                << "wrote " << priv_out << '\n';
    }
  });

  // sign
  auto* sign_cmd = app.add_subcommand("sign", "sign a digest");
  std::string key_file;
  DigestOptions sign_digest;
  std::string fixed_k_text;
  std::optional<std::uint64_t> sign_seed;
  bool sign_structured = false;
  sign_cmd->add_option("--key", key_file, "private key file")->required();
  add_digest_options(sign_cmd, sign_digest);
  sign_cmd->add_option("--k", fixed_k_text,
                       "fixed nonce k (decimal, coprime to p-1)");
  sign_cmd->add_option("--seed", sign_seed, "RNG seed for the random nonce");
  sign_cmd->add_flag("--structured", sign_structured, "emit JSON");
  sign_cmd->callback([&] {
    PrivateKey key = load_private_key(key_file);
    Digest digest = resolve_digest(sign_digest, key.public_key());
    Signature sig;
    if (!fixed_k_text.empty()) {
      sig = sign(key, digest, parse_natural(fixed_k_text));
    } else {
      Rng rng(seed_or_random(sign_seed));
      sig = sign(key, digest, rng);
    }
    if (sign_structured) {
      std::cout << to_json(sig).dump(2) << '\n';
    } else {
      std::cout << "r = " << to_decimal(sig.r) << '\n'
                << "s = " << to_decimal(sig.s) << '\n';
    }
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "check a signature");
  std::string verify_pub_file, r_text, s_text;
  DigestOptions verify_digest;
  bool bare = false;
  bool verify_structured = false;
  verify_cmd->add_option("--pub", verify_pub_file, "public key file")
      ->required();
  add_digest_options(verify_cmd, verify_digest);
  verify_cmd->add_option("--r", r_text, "signature r (decimal)")->required();
  verify_cmd->add_option("--s", s_text, "signature s (decimal)")->required();
  verify_cmd->add_flag("--bare", bare,
                       "skip the 0 < r < p range rule; raw congruence only");
  verify_cmd->add_flag("--structured", verify_structured, "emit JSON");
  verify_cmd->callback([&] {
    PublicKey pub = load_public_key(verify_pub_file);
    Digest digest = resolve_digest(verify_digest, pub);
    Signature sig{parse_natural(r_text), parse_natural(s_text)};
    bool ok = verify(pub, digest, sig,
                     bare ? VerifyMode::bare : VerifyMode::strict);
    if (verify_structured) {
      std::cout << json{{"valid", ok}}.dump(2) << '\n';
    } else {
      std::cout << (ok ? "valid" : "invalid") << '\n';
    }
    rc = ok ? 0 : 1;
  });

  // forge
  auto* forge_cmd = app.add_subcommand("forge", "forge a signature");
  std::string forge_pub_file, strategy = "auto", forced_i_text;
  DigestOptions forge_digest;
  BudgetOptions forge_budget;
  bool forge_structured = false;
  forge_cmd->add_option("--pub", forge_pub_file, "public key file")
      ->required();
  add_digest_options(forge_cmd, forge_digest);
  forge_cmd
      ->add_option("--strategy", strategy,
                   "auto | bleichenbacher | theorem3 | corollary2 | corollary3")
      ->check(CLI::IsMember(
          {"auto", "bleichenbacher", "theorem3", "corollary2", "corollary3"}))
      ->capture_default_str();
  forge_cmd->add_option("--i", forced_i_text,
                        "exponent i for --strategy theorem3 (decimal)");
  add_budget_options(forge_cmd, forge_budget);
  forge_cmd->add_flag("--structured", forge_structured, "emit JSON");
  forge_cmd->callback([&] {
    PublicKey pub = load_public_key(forge_pub_file);
    Digest digest = resolve_digest(forge_digest, pub);
    SmoothnessBound bound(parse_natural(forge_budget.smooth_bound));
    Natural max_i = parse_natural(forge_budget.max_exponent);
    Natural dlog_budget = parse_natural(forge_budget.dlog_budget);

    ForgeryOutcome outcome = [&] {
      if (strategy == "bleichenbacher")
        return forge_bleichenbacher(pub, digest, bound);
      if (strategy == "theorem3") {
        if (forced_i_text.empty())
          throw DomainError("--strategy theorem3 needs --i");
        return forge_theorem3(pub, digest, parse_natural(forced_i_text), bound);
      }
      if (strategy == "corollary2") return forge_corollary2(pub, digest, bound);
      if (strategy == "corollary3")
        return forge_corollary3(pub, digest, bound, dlog_budget);
      return forge_auto(pub, digest, bound, max_i, dlog_budget);
    }();
    print_forgery(outcome, forge_structured);
  });

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "assess a public key");
  std::string audit_pub_file;
  BudgetOptions audit_budget;
  bool audit_structured = false;
  audit_cmd->add_option("--pub", audit_pub_file, "public key file")
      ->required();
  add_budget_options(audit_cmd, audit_budget);
  audit_cmd->add_flag("--structured", audit_structured, "emit JSON");
  audit_cmd->callback([&] {
    PublicKey pub = load_public_key(audit_pub_file);
    AuditReport report = audit_key(
        pub, SmoothnessBound(parse_natural(audit_budget.smooth_bound)),
        parse_natural(audit_budget.max_exponent),
        parse_natural(audit_budget.dlog_budget));
    print_audit(report, audit_structured);
  });

  // search-exponent
  auto* search_cmd =
      app.add_subcommand("search-exponent",
                         "smallest i with alpha^i mod p smooth, dividing p-1");
  std::string search_pub_file;
  BudgetOptions search_budget;
  bool search_structured = false;
  search_cmd->add_option("--pub", search_pub_file, "public key file")
      ->required();
  add_budget_options(search_cmd, search_budget);
  search_cmd->add_flag("--structured", search_structured, "emit JSON");
  search_cmd->callback([&] {
    PublicKey pub = load_public_key(search_pub_file);
    std::optional<SmoothExponent> hit = find_smooth_exponent(
        pub, SmoothnessBound(parse_natural(search_budget.smooth_bound)),
        parse_natural(search_budget.max_exponent));
    if (hit) {
      if (search_structured) {
        std::cout << json{{"found", true},
                          {"i", to_decimal(hit->i)},
                          {"beta", to_decimal(hit->beta)}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "i = " << to_decimal(hit->i) << '\n'
                  << "beta = " << to_decimal(hit->beta) << '\n';
      }
    } else {
      if (search_structured) {
        std::cout << json{{"found", false}}.dump(2) << '\n';
      } else {
        std::cout << "none\n";
      }
      rc = 3;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const egforge::AttackInapplicableError& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const std::string& reason : e.reasons)
      std::cerr << "  - " << reason << '\n';
    return 3;
  } catch (const egforge::AttackError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const egforge::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
