#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "swapsim/adaptor.hpp"

namespace swapsim {

enum class InstanceState { Deployed, Locked, Released, Refunded };

std::string_view to_string(InstanceState s);

// What the oracle signs: which swap, which commitment, where the lock was
// observed. Canonical serialization is injective; the signature covers the
// profile digest of these bytes.
struct UnlockMessage {
    Bytes swap_id;
    SecretCommitment commitment;
    std::uint64_t lock_height = 0;
    Bytes contract_id;

    Bytes canonical_bytes() const;
    Bytes digest(const Group& g) const;

    friend bool operator==(const UnlockMessage&, const UnlockMessage&) = default;
};

// Published unlocking value plus the oracle's signature over the message.
struct UnlockRelease {
    AdaptorSecret unlock_value;  // delta'
    Signature oracle_sig;
    UnlockMessage message;
};

// Narrow view of the contract chain, implemented by the simulator's EthChain.
class ContractView {
public:
    struct InstanceStatus {
        InstanceState state = InstanceState::Deployed;
        std::uint64_t lock_height = 0;  // meaningful once Locked
        Bytes contract_id;
    };

    virtual ~ContractView() = default;
    virtual std::uint64_t height() const = 0;
    virtual std::optional<InstanceStatus> instance_status(ByteSpan swap_id) const = 0;
};

// Holds escrowed unlocking values and signs releases once the lock condition
// is met on the contract chain. Single keypair, deterministic signing, so a
// release is a pure function of (chain state, swap_id).
class Oracle {
public:
    Oracle(const Group& g, KeyPair identity, std::uint64_t min_confirmations = 1);

    const Point& public_key() const { return identity_.pub; }

    // Accepts the escrow iff the commitment matches and the swap is new.
    bool escrow_secret(ByteSpan swap_id, const AdaptorSecret& secret,
                       const SecretCommitment& commitment);

    bool has_escrow(ByteSpan swap_id) const;

    // Release iff the instance is Locked with enough confirmations and an
    // escrow exists. Not-ready (including Refunded, permanently) -> nullopt.
    // Unknown swap_id on the chain with no escrow either -> throws.
    std::optional<UnlockRelease> observe_and_release(const ContractView& chain,
                                                     ByteSpan swap_id) const;

private:
    const Group& g_;
    KeyPair identity_;
    std::uint64_t min_confirmations_;
    std::map<Bytes, std::pair<AdaptorSecret, SecretCommitment>> escrows_;
};

// Taker-side check: oracle signature valid under O, message bound to the
// expected commitment, and the released value actually opens the commitment.
bool verify_release(const Group& g, const UnlockRelease& release, const Point& oracle_key,
                    const SecretCommitment& expected_commitment);

}  // namespace swapsim
