// Forging an ElGamal signature without the private key, step by step.
//
// The target key is (p, alpha, y) = (1597, 11, 159). Neither alpha nor
// 1/alpha divides p-1, so the direct smooth-generator attack does not
// apply -- but some power of alpha does divide p-1, and that is enough.

#include <iostream>

#include "egforge/egforge.hpp"

using namespace egforge;

int main() {
  PublicKey pub(1597, 11, 159);
  Digest digest{1234};
  SmoothnessBound bound(65536);

  std::cout << "Target key: p = " << pub.p() << ", alpha = " << pub.alpha()
            << ", y = " << pub.y() << "\n";
  std::cout << "Digest to sign: m = " << digest.m << "\n\n";

  std::cout << "1. The four cheap candidates (alpha, 1/alpha, -alpha, "
               "-1/alpha):\n";
  for (const Corollary2Candidate& c : corollary2_candidates(pub)) {
    bool ok = divides(c.beta, pub.p() - 1);
    std::cout << "   " << to_string(c.variant) << ": i = " << c.i
              << ", beta = " << c.beta << " -> "
              << (ok ? "divides p-1" : "does not divide p-1") << "\n";
  }

  std::cout << "\n2. Searching for i with alpha^i mod p dividing p-1...\n";
  auto hit = find_smooth_exponent(pub, bound, 10'000);
  if (!hit) {
    std::cout << "   none found; this key resists the search\n";
    return 1;
  }
  std::cout << "   found i = " << hit->i << ", beta = " << hit->beta
            << " (p-1 = " << pub.p() - 1 << " = " << hit->beta << " * "
            << (pub.p() - 1) / hit->beta << ")\n";

  std::cout << "\n3. Forging through the fictive key (p, alpha^i, y^i):\n";
  ForgeryOutcome outcome = forge_theorem3(pub, digest, hit->i, bound);
  const ForgeIntermediates& mid = outcome.intermediates;
  std::cout << "   recorded steps:\n"
            << "   k = " << mid.nonce << ", w = " << mid.subgroup_index
            << ", b = " << mid.subgroup_generator
            << ", target = " << mid.subgroup_target
            << ", x0 = " << mid.subgroup_dlog << "\n"
            << "   fictive signature (u, v) = (" << mid.fictive_r << ", "
            << mid.fictive_s << ")\n";

  std::cout << "\n4. Converted signature: (r, s) = ("
            << outcome.signature.r << ", " << outcome.signature.s << ")\n";
  std::cout << "   verify: "
            << (verify(pub, digest, outcome.signature) ? "ACCEPTED"
                                                       : "rejected")
            << "\n";
  return 0;
}
