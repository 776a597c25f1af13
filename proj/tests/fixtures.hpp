#pragma once

#include <string>

#include "swapsim/taproot.hpp"

// One fully-wired swap: consistent metadata, tweaked maker key, pre-signature
// over the spend digest, and an oracle able to sign releases. Tests knock out
// individual pieces to show each verification leg failing on its own.
namespace fixtures {

using namespace swapsim;

struct Swap {
    const Group& g;
    AdaptorSecret secret;
    SecretCommitment commitment;
    SwapMetadata meta;
    KeyPair maker_btc;
    TweakedKeyPair tweaked;
    KeyPair oracle_kp;
    std::string beneficiary;
    Bytes spend_msg;
    PreSignature presig;
};

inline Swap make_swap(const Group& g, std::uint64_t variant = 0) {
    Swap s{g,
           AdaptorSecret{g.scalar_from_u64(4 + variant)},
           {},
           {},
           {},
           {},
           {},
           "bob",
           {},
           {}};
    s.commitment = commit_secret(g, s.secret);
    s.meta.asset_amount_btc = 100'000;
    s.meta.asset_amount_eth = 1'000'000;
    s.meta.timeout_btc = 12;
    s.meta.timeout_eth = 14'400;
    s.meta.commitment = s.commitment;
    s.meta.swap_id = SwapMetadata::derive_swap_id(g, s.meta);

    Bytes seed{0x5e, static_cast<std::uint8_t>(variant)};
    s.maker_btc = keygen(g, concat({seed, {{'m'}}}));
    s.tweaked = tweak_keypair(g, s.maker_btc, s.meta);
    s.oracle_kp = keygen(g, concat({seed, {{'o'}}}));

    s.spend_msg = spend_message_digest(g, s.meta.swap_id, s.meta.asset_amount_btc, s.beneficiary);
    s.presig = presign(g, s.tweaked.signing_pair(), s.spend_msg, s.secret, seed);
    return s;
}

inline UnlockRelease make_release(const Swap& s, std::uint64_t lock_height = 1) {
    UnlockMessage msg{s.meta.swap_id, s.commitment, lock_height, s.meta.swap_id};
    Bytes digest = msg.digest(s.g);
    static const Bytes kSeed = {'r', 'e', 'l'};
    return UnlockRelease{s.secret, sign(s.g, s.oracle_kp, digest, kSeed), msg};
}

inline TaprootSpend make_spend(const Swap& s, const UnlockRelease& release) {
    return TaprootSpend{complete(s.g, s.presig, release.unlock_value), release};
}

}  // namespace fixtures
