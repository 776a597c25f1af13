#include "swapsim/taproot.hpp"

namespace swapsim {

namespace {

// Field-value sum mod 23; the toy digest is defined over values, not bytes,
// so it stays a one-line hand computation.
std::uint8_t toy_field_sum(const SwapMetadata& m) {
    std::uint64_t acc = 0;
    acc = (acc + m.asset_amount_btc % 23) % 23;
    acc = (acc + m.asset_amount_eth % 23) % 23;
    acc = (acc + m.timeout_btc % 23) % 23;
    acc = (acc + m.timeout_eth % 23) % 23;
    for (std::uint8_t b : m.commitment.digest) acc = (acc + b) % 23;
    for (std::uint8_t b : m.swap_id) acc = (acc + b) % 23;
    return static_cast<std::uint8_t>(acc);
}

}  // namespace

Bytes SwapMetadata::canonical_bytes() const {
    Bytes out;
    append_u64be(out, asset_amount_btc);
    append_u64be(out, asset_amount_eth);
    append_u64be(out, timeout_btc);
    append_u64be(out, timeout_eth);
    append_field(out, commitment.digest);
    append_field(out, swap_id);
    return out;
}

Bytes SwapMetadata::digest(const Group& g) const {
    if (g.name() == "toy") return {toy_field_sum(*this)};
    return g.message_digest(canonical_bytes());
}

Bytes SwapMetadata::derive_swap_id(const Group& g, const SwapMetadata& m) {
    SwapMetadata core = m;
    core.swap_id.clear();
    return g.message_digest(core.canonical_bytes());
}

Scalar derive_tweak(const Group& g, const Point& base_pub, const SwapMetadata& meta) {
    Bytes payload = concat({base_pub.bytes(), meta.digest(g)});
    return g.tagged_hash_to_scalar("TapTweak", payload);
}

TweakedKeyPair tweak_keypair(const Group& g, const KeyPair& base, const SwapMetadata& meta) {
    Scalar t = derive_tweak(g, base.pub, meta);
    Scalar xt = g.scalar_add(base.secret, t);
    Point pt = g.point_add(base.pub, g.mul_gen(t));
    return {base, t, xt, pt};
}

Point tweak_public_key(const Group& g, const Point& base_pub, const SwapMetadata& meta) {
    Scalar t = derive_tweak(g, base_pub, meta);
    return g.point_add(base_pub, g.mul_gen(t));
}

Bytes spend_message_digest(const Group& g, ByteSpan swap_id, std::uint64_t value_sats,
                           const std::string& beneficiary) {
    Bytes tx;
    append_field(tx, swap_id);
    append_u64be(tx, value_sats);
    append_field(tx, {reinterpret_cast<const std::uint8_t*>(beneficiary.data()),
                      beneficiary.size()});
    return g.message_digest(tx);
}

bool verify_taproot_spend(const Group& g, const TaprootSpend& spend, const PreSignature& ps,
                          const Point& tweaked_pub, ByteSpan msg,
                          const SecretCommitment& commitment, const Point& oracle_key,
                          ByteSpan expected_swap_id) {
    if (spend.final_sig.nonce_point != ps.nonce_point)
        throw ProtocolError("spend nonce point does not match pre-signature");

    // 1. completed signature, under the tweaked key
    if (!verify(g, spend.final_sig, tweaked_pub, msg)) return false;

    // 2. unlocking value opens the commitment and matches the adaptor point
    if (!check_commitment(g, spend.release.unlock_value, commitment, ps.adaptor_point))
        return false;

    // 3. oracle signature over a message bound to this swap and commitment
    const UnlockMessage& om = spend.release.message;
    if (Bytes(expected_swap_id.begin(), expected_swap_id.end()) != om.swap_id) return false;
    if (om.commitment != commitment) return false;
    return verify(g, spend.release.oracle_sig, oracle_key, om.digest(g));
}

}  // namespace swapsim
