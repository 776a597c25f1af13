#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swapsim/chainsim.hpp"
#include "swapsim/taproot.hpp"

namespace swapsim {

// ---------------------------------------------------------------------------
// swap proposal: the maker's signed off-chain offer

enum class Role { Taker, Maker, Oracle, Facilitator, Adversary };
std::string to_string(Role role);

struct MakerKeys {
    KeyPair btc;  // base funding key; spends happen under its tweak
    KeyPair eth;  // long-lived account key the maker's reputation hangs on
};

struct ProposalInputs {
    SwapMetadata metadata;          // commitment and swap_id already derived
    std::string maker_eth_account;  // payout account on the contract chain
    std::string btc_beneficiary;    // taker account fixed in the signed spend
    Bytes presign_seed;
    Bytes identity_seed;
};

struct SwapProposal {
    SwapMetadata metadata;
    PreSignature presignature;  // under the maker's tweaked key
    Point maker_btc_key;        // base key; verifiers re-derive the tweak
    std::string maker_eth_account;
    std::string btc_beneficiary;
    Signature identity_sig;

    // Everything the identity signature covers, in fixed field order.
    Bytes canonical_bytes() const;
    Bytes digest(const Group& g) const;
};

// Builds the proposal without any precondition checks. The honest entry
// point is build_and_sign_proposal; this one exists so a misbehaving actor
// can still produce a well-formed proposal it never intends to honour.
SwapProposal assemble_proposal(const Group& g, const MakerKeys& keys, const AdaptorSecret& secret,
                               const ProposalInputs& in);

// Refuses unless the oracle has acknowledged escrow of the secret and the
// metadata commitment actually opens to it.
SwapProposal build_and_sign_proposal(const Group& g, const MakerKeys& keys,
                                     const AdaptorSecret& secret, bool oracle_escrow_acked,
                                     const ProposalInputs& in);

// True iff the identity signature verifies under the known maker key, the
// metadata is internally consistent (positive amounts, contract timeout
// strictly covering the whole UTXO claim window, swap_id and commitment
// derived correctly) and the embedded pre-signature verifies under the
// re-derived tweaked key. Malformed contents yield false, never a throw.
bool verify_proposal(const Group& g, const SwapProposal& p, const Point& known_maker_eth_key);

// Nominal UTXO-chain block interval used for the static timeout-ordering
// check inside verify_proposal (metadata carries that timeout in blocks).
inline constexpr std::uint64_t kNominalBtcBlockSeconds = 600;

// ---------------------------------------------------------------------------
// scenario scripts

struct ScenarioOverrides {
    std::optional<std::uint64_t> amount_btc_sats;
    std::optional<std::uint64_t> amount_eth_wei;
    std::optional<std::uint64_t> collateral_wei;
    std::optional<std::uint64_t> timeout_eth_seconds;
    std::optional<std::uint64_t> timeout_btc_blocks;
    std::optional<std::uint64_t> deploy_cost_wei;
    std::optional<Rational> fee_alpha;
    std::optional<std::uint64_t> oracle_min_confirmations;
    std::optional<VirtualTime> btc_block_interval;
    std::optional<VirtualTime> eth_block_interval;
    std::optional<VirtualTime> bus_latency;
};

struct ScenarioScript {
    std::string name;  // happy | maker_ghost | taker_ghost | eve_replay | facilitated
    std::string profile = "toy";
    std::uint64_t seed = 1;
    ScenarioOverrides overrides;

    static ScenarioScript from_json(const Json& j);  // throws on unknown fields/values
    Json to_json() const;
};

const std::vector<std::string>& scenario_names();

// ---------------------------------------------------------------------------
// running and analyzing scenarios

struct ScenarioResult {
    ScenarioScript script;
    std::vector<TraceEvent> trace;

    bool atomic = false;
    std::string outcome;                  // "completed" | "refunded" | "violated"
    std::optional<std::string> ghosted;   // party that walked away, if any
    bool oracle_released = false;
    bool conservation_ok = false;
    bool extraction_match = false;        // secret recovered from the spend == escrowed
    std::optional<VirtualTime> maker_window;
    std::optional<VirtualTime> taker_total;
    std::map<std::string, std::int64_t> btc_deltas;  // account -> net sats
    std::map<std::string, std::int64_t> eth_deltas;  // account -> net wei
    std::string maker_eth_account;
    std::string taker_eth_account;

    Json summary() const;
};

// Runs the named choreography on a fresh simulation. Deterministic in
// (script): same script, same trace bytes.
ScenarioResult run_scenario(const ScenarioScript& script);

// Span from the maker's first commitment of funds after the taker's lock
// announcement to the oracle release: the maker's active exposure window.
// Throws ProtocolError if the trace lacks either endpoint.
VirtualTime maker_critical_path(const std::vector<TraceEvent>& trace);

// Taker's wall-to-wall wait: deploy submission to spend confirmation.
std::optional<VirtualTime> taker_end_to_end(const std::vector<TraceEvent>& trace);

// ---------------------------------------------------------------------------
// reputation

struct ReputationCounts {
    std::uint64_t completed = 0;
    std::uint64_t ghosted = 0;
};

struct ReputationRecord {
    std::map<std::string, ReputationCounts> accounts;
    std::set<std::string> seen_traces;  // trace hashes; replays are no-ops
};

// Folds a terminal trace into the record: both parties' completed counts on
// an atomic completion, the deserter's ghosted count on a timeout outcome.
// Applying the same trace twice changes nothing. Throws on a trace with no
// terminal outcome event.
ReputationRecord update_reputation(ReputationRecord record, const std::vector<TraceEvent>& trace);

}  // namespace swapsim
