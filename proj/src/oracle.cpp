#include "swapsim/oracle.hpp"

namespace swapsim {

std::string_view to_string(InstanceState s) {
    switch (s) {
        case InstanceState::Deployed: return "deployed";
        case InstanceState::Locked: return "locked";
        case InstanceState::Released: return "released";
        case InstanceState::Refunded: return "refunded";
    }
    return "?";
}

Bytes UnlockMessage::canonical_bytes() const {
    Bytes out;
    append_field(out, swap_id);
    append_field(out, commitment.digest);
    append_u64be(out, lock_height);
    append_field(out, contract_id);
    return out;
}

Bytes UnlockMessage::digest(const Group& g) const { return g.message_digest(canonical_bytes()); }

Oracle::Oracle(const Group& g, KeyPair identity, std::uint64_t min_confirmations)
    : g_(g), identity_(std::move(identity)), min_confirmations_(min_confirmations) {
    if (min_confirmations_ == 0) throw ProtocolError("oracle needs at least 1 confirmation");
}

bool Oracle::escrow_secret(ByteSpan swap_id, const AdaptorSecret& secret,
                           const SecretCommitment& commitment) {
    if (secret.value.is_zero()) return false;
    if (commit_secret(g_, secret) != commitment) return false;
    Bytes key(swap_id.begin(), swap_id.end());
    if (escrows_.contains(key)) return false;  // one escrow per swap, ever
    escrows_.emplace(std::move(key), std::make_pair(secret, commitment));
    return true;
}

bool Oracle::has_escrow(ByteSpan swap_id) const {
    return escrows_.contains(Bytes(swap_id.begin(), swap_id.end()));
}

std::optional<UnlockRelease> Oracle::observe_and_release(const ContractView& chain,
                                                         ByteSpan swap_id) const {
    auto it = escrows_.find(Bytes(swap_id.begin(), swap_id.end()));
    auto status = chain.instance_status(swap_id);
    if (it == escrows_.end() && !status)
        throw ProtocolError("unknown swap_id: " + to_hex(swap_id));
    if (it == escrows_.end() || !status) return std::nullopt;
    if (status->state != InstanceState::Locked) return std::nullopt;
    std::uint64_t confirmations = chain.height() - status->lock_height + 1;
    if (confirmations < min_confirmations_) return std::nullopt;

    const auto& [secret, commitment] = it->second;
    UnlockMessage msg{it->first, commitment, status->lock_height, status->contract_id};
    Bytes digest = msg.digest(g_);
    // Fixed domain seed keeps release bytes a function of chain state only.
    static const Bytes kSeed = {'o', 'r', 'a', 'c', 'l', 'e', '-', 'r', 'e', 'l'};
    Signature sig = sign(g_, identity_, digest, kSeed);
    return UnlockRelease{secret, sig, std::move(msg)};
}

bool verify_release(const Group& g, const UnlockRelease& release, const Point& oracle_key,
                    const SecretCommitment& expected_commitment) {
    if (release.message.commitment != expected_commitment) return false;
    if (!verify(g, release.oracle_sig, oracle_key, release.message.digest(g))) return false;
    if (release.unlock_value.value.is_zero()) return false;
    return commit_secret(g, release.unlock_value) == expected_commitment;
}

}  // namespace swapsim
