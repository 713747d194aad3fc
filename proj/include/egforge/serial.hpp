#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "egforge/attacks.hpp"
#include "egforge/audit.hpp"
#include "egforge/elgamal.hpp"
#include "egforge/errors.hpp"
#include "egforge/keys.hpp"

// Structured-text (JSON) formats. All numbers travel as decimal strings;
// field names are part of the interface and must not change.

namespace egforge {

using json = nlohmann::json;

namespace detail {

inline Natural require_number(const json& doc, const std::string& field) {
  if (!doc.contains(field) || !doc[field].is_string())
    throw ParseError("missing decimal-string field \"" + field + "\"");
  try {
    return parse_natural(doc[field].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError("field \"" + field + "\": " + e.what());
  }
}

}  // namespace detail

inline json to_json(const PublicKey& pub) {
  return json{{"p", to_decimal(pub.p())},
              {"alpha", to_decimal(pub.alpha())},
              {"y", to_decimal(pub.y())}};
}

inline json to_json(const PrivateKey& key) {
  json doc = to_json(key.public_key());
  doc["x"] = to_decimal(key.x());
  return doc;
}

inline json to_json(const Signature& sig) {
  return json{{"r", to_decimal(sig.r)}, {"s", to_decimal(sig.s)}};
}

inline PublicKey public_key_from_json(const json& doc) {
  try {
    return PublicKey(detail::require_number(doc, "p"),
                     detail::require_number(doc, "alpha"),
                     detail::require_number(doc, "y"));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid public key: ") + e.what());
  }
}

inline PrivateKey private_key_from_json(const json& doc) {
  PublicKey pub = public_key_from_json(doc);
  try {
    return PrivateKey(std::move(pub), detail::require_number(doc, "x"));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid private key: ") + e.what());
  }
}

inline Signature signature_from_json(const json& doc) {
  return Signature{detail::require_number(doc, "r"),
                   detail::require_number(doc, "s")};
}

inline json to_json(const ForgeryOutcome& outcome) {
  const ForgeIntermediates& mid = outcome.intermediates;
  return json{{"r", to_decimal(outcome.signature.r)},
              {"s", to_decimal(outcome.signature.s)},
              {"strategy", to_string(outcome.strategy)},
              {"i", to_decimal(outcome.exponent_i)},
              {"intermediates",
               json{{"k", to_decimal(mid.nonce)},
                    {"w", to_decimal(mid.subgroup_index)},
                    {"b", to_decimal(mid.subgroup_generator)},
                    {"subgroup_target", to_decimal(mid.subgroup_target)},
                    {"x0", to_decimal(mid.subgroup_dlog)},
                    {"u", to_decimal(mid.fictive_r)},
                    {"v", to_decimal(mid.fictive_s)}}}};
}

inline json to_json(const AuditReport& report) {
  json checks = json::array();
  for (const AuditCheck& check : report.checks) {
    json entry{{"condition", to_string(check.condition)},
               {"status", to_string(check.status)},
               {"notes", check.notes}};
    if (check.witness) {
      entry["witness"] = json{{"i", to_decimal(check.witness->i)},
                              {"beta", to_decimal(check.witness->beta)}};
    } else {
      entry["witness"] = nullptr;
    }
    checks.push_back(std::move(entry));
  }
  return json{
      {"key", to_json(report.key)},
      {"p_mod_4", report.p_mod_4},
      {"checks", std::move(checks)},
      {"overall", to_string(report.overall)},
      {"note",
       "\"safe\" means: not exploitable by the attacks implemented here "
       "within the stated budgets; it is not a security proof"}};
}

inline json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

inline void save_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

inline PublicKey load_public_key(const std::filesystem::path& path) {
  return public_key_from_json(load_json_file(path));
}

inline PrivateKey load_private_key(const std::filesystem::path& path) {
  return private_key_from_json(load_json_file(path));
}

}  // namespace egforge
