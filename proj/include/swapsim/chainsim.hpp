#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "swapsim/taproot.hpp"

namespace swapsim {

using VirtualTime = std::uint64_t;  // seconds on the simulation clock
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// trace

// Timestamped, seed-deterministic record of everything observable in a run.
// Serialized as JSON lines with a fixed field order so byte identity is the
// determinism check. Payloads carry only public data, never private keys or
// escrowed secrets.
struct TraceEvent {
    VirtualTime time = 0;
    std::string chain;  // "btc" | "eth" | "oracle" | "protocol"
    std::string kind;
    Bytes swap_id;  // empty when not swap-scoped
    Json payload = Json::object();

    std::string to_json_line() const;
    static TraceEvent from_json_line(const std::string& line);
};

std::string trace_to_jsonl(const std::vector<TraceEvent>& events);
std::vector<TraceEvent> trace_from_jsonl(const std::string& text);
Bytes trace_hash(const std::vector<TraceEvent>& events);

struct TraceDiff {
    bool identical = true;
    std::size_t index = 0;  // first divergent event (or the shorter length)
    std::string left, right;
    std::string note;
};

// Field-order-insensitive comparison of two event streams.
TraceDiff trace_diff(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b);

// ---------------------------------------------------------------------------
// fees

// Exact fee fraction; numerator/denominator, canonicalized by gcd.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational parse(const std::string& text);  // "1/100" or "0.01"
    std::string str() const;
    bool is_zero() const { return num == 0; }

    friend bool operator==(const Rational&, const Rational&) = default;
};

// fee = floor(alpha * amount), net = amount - fee. alpha must lie in [0, 1).
std::pair<std::uint64_t, std::uint64_t> compute_fee(std::uint64_t amount, const Rational& alpha);

// ---------------------------------------------------------------------------
// BTC side: balances plus swap-bound Taproot outputs

// Verification context the simulator keeps with each swap output. On a real
// chain this lives in the script; here it is explicit state.
struct BtcSpendContext {
    PreSignature presig;
    SecretCommitment commitment;
    Point oracle_key;
};

struct TaprootOutput {
    std::uint64_t value = 0;  // satoshi
    Point tweaked_key;
    Point refund_key;
    std::uint64_t refund_height = 0;  // absolute; set when the funding confirms
    Bytes swap_id;
};

enum class UtxoState { Unspent, Spent, Refunded };

// Spend submission: the chain recomputes the signed message from the claimed
// beneficiary, so diverting the payout invalidates the signature.
struct SpendClaim {
    Bytes swap_id;
    std::string beneficiary;
    TaprootSpend spend;
};

class Simulation;

class BtcChain {
public:
    std::uint64_t height() const { return height_; }

    void credit(const std::string& account, std::uint64_t sats);
    std::uint64_t balance(const std::string& account) const;
    // Conservation quantity: all balances plus all unspent output values.
    std::uint64_t total_value() const;

    bool submit_lock(const std::string& funder, std::uint64_t value, const Point& tweaked_key,
                     const Point& refund_key, std::uint64_t refund_delay_blocks, ByteSpan swap_id,
                     BtcSpendContext context);
    bool submit_spend(SpendClaim claim);
    bool submit_refund(ByteSpan swap_id, const std::string& caller);

    const TaprootOutput* output(ByteSpan swap_id) const;
    const BtcSpendContext* spend_context(ByteSpan swap_id) const;
    std::optional<UtxoState> utxo_state(ByteSpan swap_id) const;

private:
    friend class Simulation;
    explicit BtcChain(Simulation& sim) : sim_(sim) {}

    struct PendingLock {
        std::string funder;
        std::uint64_t value;
        Point tweaked_key;
        Point refund_key;
        std::uint64_t refund_delay;
        Bytes swap_id;
        BtcSpendContext context;
    };
    struct PendingRefund {
        Bytes swap_id;
        std::string caller;
    };
    using PendingTx = std::variant<PendingLock, SpendClaim, PendingRefund>;

    void mine_block();
    bool validate_spend(const SpendClaim& claim, std::string& reason) const;

    Simulation& sim_;
    std::uint64_t height_ = 0;
    std::map<std::string, std::uint64_t> balances_;
    std::map<Bytes, TaprootOutput> outputs_;
    std::map<Bytes, BtcSpendContext> contexts_;
    std::map<Bytes, UtxoState> states_;
    std::deque<PendingTx> mempool_;
};

// ---------------------------------------------------------------------------
// contract side: factory-deployed swap instances

struct SwapInstance {
    SwapMetadata params;
    std::string beneficiary;                 // paid on release
    std::optional<std::string> facilitator;  // paid the fee, if any
    Rational fee;
    std::uint64_t collateral_required = 0;  // maker bond, wei
    std::string deployer;
    Bytes contract_id;

    InstanceState state = InstanceState::Deployed;
    std::uint64_t deploy_height = 0;
    VirtualTime deploy_time = 0;

    std::string locker;
    std::uint64_t locked_amount = 0;
    std::uint64_t locker_collateral = 0;
    std::uint64_t lock_height = 0;

    std::string bond_poster;
    std::uint64_t bond_amount = 0;
};

class EthChain final : public ContractView {
public:
    std::uint64_t height() const override { return height_; }
    std::optional<InstanceStatus> instance_status(ByteSpan swap_id) const override;

    void credit(const std::string& account, std::uint64_t wei);
    std::uint64_t balance(const std::string& account) const;
    // Conservation quantity: balances + instance escrows + collected gas.
    std::uint64_t total_value() const;
    std::uint64_t gas_collected() const { return gas_collected_; }

    bool submit_deploy(SwapMetadata params, const std::string& beneficiary,
                       std::optional<std::string> facilitator, Rational fee,
                       std::uint64_t collateral_required, const std::string& deployer);
    bool submit_collateral(ByteSpan swap_id, const std::string& from);
    bool submit_lock(ByteSpan swap_id, const std::string& from, std::uint64_t amount,
                     std::uint64_t extra_collateral = 0);
    bool submit_claim(ByteSpan swap_id, const AdaptorSecret& secret, const std::string& caller);
    bool submit_refund(ByteSpan swap_id, const std::string& caller);

    const SwapInstance* instance(ByteSpan swap_id) const;

private:
    friend class Simulation;
    explicit EthChain(Simulation& sim) : sim_(sim) {}

    struct PendingDeploy {
        SwapMetadata params;
        std::string beneficiary;
        std::optional<std::string> facilitator;
        Rational fee;
        std::uint64_t collateral_required;
        std::string deployer;
    };
    struct PendingCollateral {
        Bytes swap_id;
        std::string from;
    };
    struct PendingLock {
        Bytes swap_id;
        std::string from;
        std::uint64_t amount;
        std::uint64_t extra_collateral;
    };
    struct PendingClaim {
        Bytes swap_id;
        AdaptorSecret secret;
        std::string caller;
    };
    struct PendingRefund {
        Bytes swap_id;
        std::string caller;
    };
    using PendingTx =
        std::variant<PendingDeploy, PendingCollateral, PendingLock, PendingClaim, PendingRefund>;

    void mine_block();
    void apply(const PendingDeploy& tx);
    void apply(const PendingCollateral& tx);
    void apply(const PendingLock& tx);
    void apply(const PendingClaim& tx);
    void apply(const PendingRefund& tx);
    void reject(ByteSpan swap_id, const std::string& op, const std::string& reason);

    Simulation& sim_;
    std::uint64_t height_ = 0;
    std::map<std::string, std::uint64_t> balances_;
    std::map<Bytes, SwapInstance> instances_;
    std::uint64_t gas_collected_ = 0;
    std::deque<PendingTx> mempool_;
};

// ---------------------------------------------------------------------------
// simulation: virtual clock, both chains, trace

struct SimParams {
    VirtualTime btc_block_interval = 600;
    VirtualTime eth_block_interval = 15;
    std::uint64_t deploy_cost_wei = 0;  // charged to the deployer at inclusion
};

class Simulation {
public:
    explicit Simulation(const Group& g, SimParams params = {});

    const Group& group() const { return group_; }
    const SimParams& params() const { return params_; }
    VirtualTime now() const { return now_; }
    BtcChain& btc() { return btc_; }
    EthChain& eth() { return eth_; }
    const BtcChain& btc() const { return btc_; }
    const EthChain& eth() const { return eth_; }

    // Advance the clock by dt, mining every due block and firing every due
    // timer in deterministic order. Returns the events recorded on the way.
    std::vector<TraceEvent> advance_time(VirtualTime dt);

    // Earliest queued non-recurring action (timers), if any.
    void schedule(VirtualTime at, std::function<void()> fn);
    // True while either mempool holds transactions or a timer is pending.
    bool has_pending_work() const;

    void subscribe(std::function<void(const TraceEvent&)> listener);
    void record(const std::string& chain, const std::string& kind, Bytes swap_id, Json payload);

    const std::vector<TraceEvent>& trace() const { return trace_; }

private:
    friend class BtcChain;
    friend class EthChain;

    struct QueueItem {
        VirtualTime time;
        std::uint64_t seq;
        bool recurring;  // block mines; ignored by has_pending_work
        std::function<void()> fn;
    };
    struct QueueOrder {
        bool operator()(const QueueItem& a, const QueueItem& b) const {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    void push(VirtualTime at, bool recurring, std::function<void()> fn);
    void schedule_block(VirtualTime at, bool is_btc);

    const Group& group_;
    SimParams params_;
    VirtualTime now_ = 0;
    std::uint64_t seq_ = 0;
    std::size_t pending_timers_ = 0;
    std::priority_queue<QueueItem, std::vector<QueueItem>, QueueOrder> queue_;
    BtcChain btc_;
    EthChain eth_;
    std::vector<TraceEvent> trace_;
    std::vector<std::function<void(const TraceEvent&)>> listeners_;
};

}  // namespace swapsim
