#pragma once

#include <openssl/evp.h>

#include <cctype>
#include <string>
#include <string_view>

#include "egforge/errors.hpp"
#include "egforge/keys.hpp"

namespace egforge {

enum class DigestMode {
  pass_through,  // the bytes spell a decimal integer
  sha256,        // hash the bytes, then reduce
};

/// Maps message bytes to a digest in [0, p-2]. Pass-through parses a
/// decimal integer (surrounding whitespace tolerated); sha256 interprets
/// the hash as a big-endian integer. Both reduce mod p-1.
inline Digest digest_of(std::string_view message, const PublicKey& pub,
                        DigestMode mode) {
  if (mode == DigestMode::pass_through) {
    std::size_t begin = 0, end = message.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(message[begin])))
      ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(message[end - 1])))
      --end;
    Natural value;
    try {
      value = parse_natural(std::string(message.substr(begin, end - begin)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("pass-through digest: ") + e.what());
    }
    return reduce_digest(value, pub);
  }

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  if (EVP_Digest(message.data(), message.size(), md, &md_len, EVP_sha256(),
                 nullptr) != 1)
    throw Error("sha256 digest failed");
  Natural value;
  mpz_import(value.get_mpz_t(), md_len, 1, 1, 1, 0, md);
  return reduce_digest(value, pub);
}

}  // namespace egforge
