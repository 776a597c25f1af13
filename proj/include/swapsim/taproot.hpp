#pragma once

#include "swapsim/oracle.hpp"

namespace swapsim {

// Everything the key tweak commits to. Amounts and timeouts are plain
// integers (satoshi / wei, blocks / virtual seconds); swap_id is derived from
// the other fields, so any parameter change moves the tweak.
struct SwapMetadata {
    std::uint64_t asset_amount_btc = 0;  // satoshi
    std::uint64_t asset_amount_eth = 0;  // wei
    std::uint64_t timeout_btc = 0;       // refund delay, blocks
    std::uint64_t timeout_eth = 0;       // refund delay, virtual seconds
    SecretCommitment commitment;
    Bytes swap_id;

    // Injective serialization: fixed field order, fixed-width integers,
    // length-prefixed byte fields.
    Bytes canonical_bytes() const;

    // Digest bound into the tweak. Toy profile: sum of the field values
    // mod 23 (hand-checkable); secp256k1: SHA-256 of the canonical bytes.
    Bytes digest(const Group& g) const;

    // swap_id over the non-id fields; the caller stores the result.
    static Bytes derive_swap_id(const Group& g, const SwapMetadata& m);

    friend bool operator==(const SwapMetadata&, const SwapMetadata&) = default;
};

// t = H_tag("TapTweak", enc(P) || metadata digest), reduced mod q.
Scalar derive_tweak(const Group& g, const Point& base_pub, const SwapMetadata& meta);

struct TweakedKeyPair {
    KeyPair base;
    Scalar tweak;
    Scalar tweaked_secret;  // x + t
    Point tweaked_pub;      // P + t*G

    KeyPair signing_pair() const { return {tweaked_secret, tweaked_pub}; }
};

TweakedKeyPair tweak_keypair(const Group& g, const KeyPair& base, const SwapMetadata& meta);
// Verifier side: P_tweak from the public key alone.
Point tweak_public_key(const Group& g, const Point& base_pub, const SwapMetadata& meta);

// Digest of the simulated spend transaction: which output, how much, to whom.
// Signing this binds the recipient irrevocably.
Bytes spend_message_digest(const Group& g, ByteSpan swap_id, std::uint64_t value_sats,
                           const std::string& beneficiary);

// Composite witness for the scripted output: completed signature plus the
// oracle release that supplied the unlocking value.
struct TaprootSpend {
    Signature final_sig;
    UnlockRelease release;
};

// The three conjunctive checks, plus structural guards:
//   1. final_sig verifies under the tweaked key for message m;
//   2. the released value opens the commitment and matches the adaptor point;
//   3. the oracle signature verifies and its message is bound to this swap.
// A nonce point differing from the pre-signature's is a structural error.
bool verify_taproot_spend(const Group& g, const TaprootSpend& spend, const PreSignature& ps,
                          const Point& tweaked_pub, ByteSpan msg,
                          const SecretCommitment& commitment, const Point& oracle_key,
                          ByteSpan expected_swap_id);

}  // namespace swapsim
