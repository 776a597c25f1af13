#include "swapsim/chainsim.hpp"

#include <numeric>
#include <sstream>

namespace swapsim {

// ---------------------------------------------------------------------------
// trace

std::string TraceEvent::to_json_line() const {
    Json j;
    j["time"] = time;
    j["chain"] = chain;
    j["kind"] = kind;
    j["swap_id"] = to_hex(swap_id);
    j["payload"] = payload;
    return j.dump();
}

TraceEvent TraceEvent::from_json_line(const std::string& line) {
    Json j = Json::parse(line);
    TraceEvent ev;
    ev.time = j.at("time").get<VirtualTime>();
    ev.chain = j.at("chain").get<std::string>();
    ev.kind = j.at("kind").get<std::string>();
    ev.swap_id = from_hex(j.at("swap_id").get<std::string>());
    ev.payload = j.at("payload");
    return ev;
}

std::string trace_to_jsonl(const std::vector<TraceEvent>& events) {
    std::string out;
    for (const TraceEvent& ev : events) {
        out += ev.to_json_line();
        out += '\n';
    }
    return out;
}

std::vector<TraceEvent> trace_from_jsonl(const std::string& text) {
    std::vector<TraceEvent> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(TraceEvent::from_json_line(line));
    }
    return out;
}

Bytes trace_hash(const std::vector<TraceEvent>& events) {
    std::string text = trace_to_jsonl(events);
    return sha256({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

TraceDiff trace_diff(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const TraceEvent& ea = a[i];
        const TraceEvent& eb = b[i];
        bool same = ea.time == eb.time && ea.chain == eb.chain && ea.kind == eb.kind &&
                    ea.swap_id == eb.swap_id &&
                    nlohmann::json(ea.payload) == nlohmann::json(eb.payload);
        if (!same)
            return {false, i, ea.to_json_line(), eb.to_json_line(), "events differ"};
    }
    if (a.size() != b.size()) {
        std::string note = "traces have different lengths (" + std::to_string(a.size()) +
                           " vs " + std::to_string(b.size()) + ")";
        std::string left = a.size() > n ? a[n].to_json_line() : "";
        std::string right = b.size() > n ? b[n].to_json_line() : "";
        return {false, n, left, right, note};
    }
    return {};
}

// ---------------------------------------------------------------------------
// fees

Rational Rational::parse(const std::string& text) {
    auto bad = [&] { throw DecodeError("invalid fee fraction: " + text); };
    std::uint64_t num = 0, den = 1;
    auto parse_u64 = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.size() > 18) bad();
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') bad();
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return v;
    };
    auto slash = text.find('/');
    auto dot = text.find('.');
    if (slash != std::string::npos) {
        num = parse_u64(text.substr(0, slash));
        den = parse_u64(text.substr(slash + 1));
        if (den == 0) bad();
    } else if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.empty()) bad();
        std::uint64_t w = parse_u64(whole.empty() ? "0" : whole);
        std::uint64_t f = parse_u64(frac);
        den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        num = w * den + f;
    } else {
        num = parse_u64(text);
    }
    std::uint64_t g = std::gcd(num, den);
    if (g != 0) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

std::string Rational::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

std::pair<std::uint64_t, std::uint64_t> compute_fee(std::uint64_t amount, const Rational& alpha) {
    if (alpha.den == 0 || (alpha.num != 0 && alpha.num >= alpha.den))
        throw ProtocolError("fee fraction must lie in [0, 1): " + alpha.str());
    if (alpha.num == 0) return {0, amount};
    using u128 = unsigned __int128;
    std::uint64_t fee = static_cast<std::uint64_t>(u128(amount) * alpha.num / alpha.den);
    return {fee, amount - fee};
}

// ---------------------------------------------------------------------------
// BTC chain

void BtcChain::credit(const std::string& account, std::uint64_t sats) {
    balances_[account] += sats;
}

std::uint64_t BtcChain::balance(const std::string& account) const {
    auto it = balances_.find(account);
    return it == balances_.end() ? 0 : it->second;
}

std::uint64_t BtcChain::total_value() const {
    std::uint64_t total = 0;
    for (const auto& [_, v] : balances_) total += v;
    for (const auto& [id, out] : outputs_)
        if (states_.at(id) == UtxoState::Unspent) total += out.value;
    return total;
}

bool BtcChain::submit_lock(const std::string& funder, std::uint64_t value,
                           const Point& tweaked_key, const Point& refund_key,
                           std::uint64_t refund_delay_blocks, ByteSpan swap_id,
                           BtcSpendContext context) {
    Bytes id(swap_id.begin(), swap_id.end());
    if (value == 0) {
        sim_.record("btc", "rejected", id, {{"op", "lock"}, {"reason", "zero value"}});
        return false;
    }
    if (balance(funder) < value) {
        sim_.record("btc", "rejected", id, {{"op", "lock"}, {"reason", "insufficient balance"}});
        return false;
    }
    if (outputs_.contains(id)) {
        sim_.record("btc", "rejected", id, {{"op", "lock"}, {"reason", "duplicate swap output"}});
        return false;
    }
    mempool_.push_back(PendingLock{funder, value, tweaked_key, refund_key, refund_delay_blocks,
                                   id, std::move(context)});
    sim_.record("btc", "lock_submitted", id,
                {{"funder", funder}, {"value", value}, {"refund_delay", refund_delay_blocks}});
    return true;
}

bool BtcChain::validate_spend(const SpendClaim& claim, std::string& reason) const {
    auto out_it = outputs_.find(claim.swap_id);
    if (out_it == outputs_.end()) {
        reason = "unknown output";
        return false;
    }
    if (states_.at(claim.swap_id) != UtxoState::Unspent) {
        reason = "output already consumed";
        return false;
    }
    const TaprootOutput& out = out_it->second;
    const BtcSpendContext& ctx = contexts_.at(claim.swap_id);
    Bytes msg = spend_message_digest(sim_.group(), out.swap_id, out.value, claim.beneficiary);
    try {
        if (!verify_taproot_spend(sim_.group(), claim.spend, ctx.presig, out.tweaked_key, msg,
                                  ctx.commitment, ctx.oracle_key, out.swap_id)) {
            reason = "spend verification failed";
            return false;
        }
    } catch (const ProtocolError&) {
        reason = "malformed spend";
        return false;
    }
    return true;
}

bool BtcChain::submit_spend(SpendClaim claim) {
    std::string reason;
    if (!validate_spend(claim, reason)) {
        sim_.record("btc", "rejected", claim.swap_id,
                    {{"op", "spend"}, {"reason", reason}, {"beneficiary", claim.beneficiary}});
        return false;
    }
    // The broadcast carries the whole witness; mempool watchers see it all.
    sim_.record("btc", "spend_submitted", claim.swap_id,
                {{"beneficiary", claim.beneficiary},
                 {"nonce_point", claim.spend.final_sig.nonce_point.hex()},
                 {"s_final", claim.spend.final_sig.s.hex()},
                 {"oracle_r", claim.spend.release.oracle_sig.nonce_point.hex()},
                 {"oracle_s", claim.spend.release.oracle_sig.s.hex()}});
    mempool_.push_back(std::move(claim));
    return true;
}

bool BtcChain::submit_refund(ByteSpan swap_id, const std::string& caller) {
    Bytes id(swap_id.begin(), swap_id.end());
    auto out_it = outputs_.find(id);
    if (out_it == outputs_.end() || states_.at(id) != UtxoState::Unspent) {
        sim_.record("btc", "rejected", id, {{"op", "refund"}, {"reason", "no spendable output"}});
        return false;
    }
    mempool_.push_back(PendingRefund{id, caller});
    sim_.record("btc", "refund_submitted", id, {{"caller", caller}});
    return true;
}

const TaprootOutput* BtcChain::output(ByteSpan swap_id) const {
    auto it = outputs_.find(Bytes(swap_id.begin(), swap_id.end()));
    return it == outputs_.end() ? nullptr : &it->second;
}

const BtcSpendContext* BtcChain::spend_context(ByteSpan swap_id) const {
    auto it = contexts_.find(Bytes(swap_id.begin(), swap_id.end()));
    return it == contexts_.end() ? nullptr : &it->second;
}

std::optional<UtxoState> BtcChain::utxo_state(ByteSpan swap_id) const {
    auto it = states_.find(Bytes(swap_id.begin(), swap_id.end()));
    if (it == states_.end()) return std::nullopt;
    return it->second;
}

void BtcChain::mine_block() {
    ++height_;
    // Swap before announcing the block: listeners reacting to this block's
    // events submit into the next block, never into this one.
    std::deque<PendingTx> batch;
    batch.swap(mempool_);
    sim_.record("btc", "block", {}, {{"height", height_}});
    for (PendingTx& tx : batch) {
        if (auto* lock = std::get_if<PendingLock>(&tx)) {
            if (balance(lock->funder) < lock->value) {
                sim_.record("btc", "rejected", lock->swap_id,
                            {{"op", "lock"}, {"reason", "insufficient balance"}});
                continue;
            }
            balances_[lock->funder] -= lock->value;
            TaprootOutput out{lock->value, lock->tweaked_key, lock->refund_key,
                              height_ + lock->refund_delay, lock->swap_id};
            outputs_[lock->swap_id] = out;
            contexts_[lock->swap_id] = std::move(lock->context);
            states_[lock->swap_id] = UtxoState::Unspent;
            sim_.record("btc", "lock_confirmed", lock->swap_id,
                        {{"height", height_},
                         {"value", out.value},
                         {"refund_height", out.refund_height},
                         {"tweaked_key", out.tweaked_key.hex()}});
        } else if (auto* claim = std::get_if<SpendClaim>(&tx)) {
            std::string reason;
            if (!validate_spend(*claim, reason)) {  // double-spends die here
                sim_.record("btc", "rejected", claim->swap_id,
                            {{"op", "spend"}, {"reason", reason}});
                continue;
            }
            const TaprootOutput& out = outputs_.at(claim->swap_id);
            states_[claim->swap_id] = UtxoState::Spent;
            balances_[claim->beneficiary] += out.value;
            sim_.record("btc", "spend_confirmed", claim->swap_id,
                        {{"height", height_},
                         {"beneficiary", claim->beneficiary},
                         {"value", out.value},
                         {"nonce_point", claim->spend.final_sig.nonce_point.hex()},
                         {"s_final", claim->spend.final_sig.s.hex()},
                         {"unlock_value", claim->spend.release.unlock_value.value.hex()},
                         {"oracle_s", claim->spend.release.oracle_sig.s.hex()}});
        } else if (auto* refund = std::get_if<PendingRefund>(&tx)) {
            auto it = outputs_.find(refund->swap_id);
            if (it == outputs_.end() || states_.at(refund->swap_id) != UtxoState::Unspent) {
                sim_.record("btc", "rejected", refund->swap_id,
                            {{"op", "refund"}, {"reason", "no spendable output"}});
                continue;
            }
            const TaprootOutput& out = it->second;
            if (height_ < out.refund_height) {
                sim_.record("btc", "rejected", refund->swap_id,
                            {{"op", "refund"},
                             {"reason", "refund height not reached"},
                             {"height", height_},
                             {"refund_height", out.refund_height}});
                continue;
            }
            std::string owner = to_hex(out.refund_key.bytes());
            if (refund->caller != owner) {
                sim_.record("btc", "rejected", refund->swap_id,
                            {{"op", "refund"}, {"reason", "caller does not own refund path"}});
                continue;
            }
            states_[refund->swap_id] = UtxoState::Refunded;
            balances_[refund->caller] += out.value;
            sim_.record("btc", "refund_confirmed", refund->swap_id,
                        {{"height", height_}, {"caller", refund->caller}, {"value", out.value}});
        }
    }
}

// ---------------------------------------------------------------------------
// contract chain

std::optional<ContractView::InstanceStatus> EthChain::instance_status(ByteSpan swap_id) const {
    const SwapInstance* inst = instance(swap_id);
    if (!inst) return std::nullopt;
    return InstanceStatus{inst->state, inst->lock_height, inst->contract_id};
}

void EthChain::credit(const std::string& account, std::uint64_t wei) {
    balances_[account] += wei;
}

std::uint64_t EthChain::balance(const std::string& account) const {
    auto it = balances_.find(account);
    return it == balances_.end() ? 0 : it->second;
}

std::uint64_t EthChain::total_value() const {
    std::uint64_t total = gas_collected_;
    for (const auto& [_, v] : balances_) total += v;
    for (const auto& [_, inst] : instances_)
        total += inst.locked_amount + inst.locker_collateral + inst.bond_amount;
    return total;
}

const SwapInstance* EthChain::instance(ByteSpan swap_id) const {
    auto it = instances_.find(Bytes(swap_id.begin(), swap_id.end()));
    return it == instances_.end() ? nullptr : &it->second;
}

bool EthChain::submit_deploy(SwapMetadata params, const std::string& beneficiary,
                             std::optional<std::string> facilitator, Rational fee,
                             std::uint64_t collateral_required, const std::string& deployer) {
    sim_.record("eth", "deploy_submitted", params.swap_id,
                {{"deployer", deployer}, {"beneficiary", beneficiary}});
    mempool_.push_back(PendingDeploy{std::move(params), beneficiary, std::move(facilitator), fee,
                                     collateral_required, deployer});
    return true;
}

bool EthChain::submit_collateral(ByteSpan swap_id, const std::string& from) {
    Bytes id(swap_id.begin(), swap_id.end());
    sim_.record("eth", "collateral_submitted", id, {{"from", from}});
    mempool_.push_back(PendingCollateral{std::move(id), from});
    return true;
}

bool EthChain::submit_lock(ByteSpan swap_id, const std::string& from, std::uint64_t amount,
                           std::uint64_t extra_collateral) {
    Bytes id(swap_id.begin(), swap_id.end());
    sim_.record("eth", "lock_submitted", id,
                {{"from", from}, {"amount", amount}, {"collateral", extra_collateral}});
    mempool_.push_back(PendingLock{std::move(id), from, amount, extra_collateral});
    return true;
}

bool EthChain::submit_claim(ByteSpan swap_id, const AdaptorSecret& secret,
                            const std::string& caller) {
    Bytes id(swap_id.begin(), swap_id.end());
    sim_.record("eth", "claim_submitted", id, {{"caller", caller}});
    mempool_.push_back(PendingClaim{std::move(id), secret, caller});
    return true;
}

bool EthChain::submit_refund(ByteSpan swap_id, const std::string& caller) {
    Bytes id(swap_id.begin(), swap_id.end());
    sim_.record("eth", "refund_submitted", id, {{"caller", caller}});
    mempool_.push_back(PendingRefund{std::move(id), caller});
    return true;
}

void EthChain::reject(ByteSpan swap_id, const std::string& op, const std::string& reason) {
    sim_.record("eth", "rejected", Bytes(swap_id.begin(), swap_id.end()),
                {{"op", op}, {"reason", reason}});
}

void EthChain::apply(const PendingDeploy& tx) {
    const Bytes& id = tx.params.swap_id;
    if (id.empty() || instances_.contains(id)) {
        reject(id, "deploy", instances_.contains(id) ? "duplicate swap_id" : "missing swap_id");
        return;
    }
    Bytes derived = SwapMetadata::derive_swap_id(sim_.group(), tx.params);
    if (derived != id) {
        reject(id, "deploy", "swap_id does not match params digest");
        return;
    }
    if (!tx.fee.is_zero() && tx.fee.num >= tx.fee.den) {
        reject(id, "deploy", "fee fraction outside [0, 1)");
        return;
    }
    if (!tx.fee.is_zero() && !tx.facilitator) {
        reject(id, "deploy", "fee configured without facilitator");
        return;
    }
    std::uint64_t cost = sim_.params().deploy_cost_wei;
    if (balance(tx.deployer) < cost) {
        reject(id, "deploy", "deployer cannot cover deployment cost");
        return;
    }
    balances_[tx.deployer] -= cost;
    gas_collected_ += cost;

    SwapInstance inst;
    inst.params = tx.params;
    inst.beneficiary = tx.beneficiary;
    inst.facilitator = tx.facilitator;
    inst.fee = tx.fee;
    inst.collateral_required = tx.collateral_required;
    inst.deployer = tx.deployer;
    inst.contract_id = id;  // factory keys instances by swap_id
    inst.state = InstanceState::Deployed;
    inst.deploy_height = height_;
    inst.deploy_time = sim_.now();
    instances_[id] = std::move(inst);
    sim_.record("eth", "deploy_confirmed", id,
                {{"height", height_},
                 {"deployer", tx.deployer},
                 {"beneficiary", tx.beneficiary},
                 {"facilitator", tx.facilitator ? Json(*tx.facilitator) : Json(nullptr)},
                 {"fee", tx.fee.str()},
                 {"collateral_required", tx.collateral_required},
                 {"deploy_cost", cost}});
}

void EthChain::apply(const PendingCollateral& tx) {
    auto it = instances_.find(tx.swap_id);
    if (it == instances_.end()) {
        reject(tx.swap_id, "collateral", "unknown swap_id");
        return;
    }
    SwapInstance& inst = it->second;
    if (inst.state != InstanceState::Deployed) {
        reject(tx.swap_id, "collateral", "wrong state");
        return;
    }
    if (inst.bond_amount != 0) {
        reject(tx.swap_id, "collateral", "bond already posted");
        return;
    }
    std::uint64_t required = inst.collateral_required;
    if (required == 0) {
        reject(tx.swap_id, "collateral", "no bond required");
        return;
    }
    if (balance(tx.from) < required) {
        reject(tx.swap_id, "collateral", "insufficient balance");
        return;
    }
    balances_[tx.from] -= required;
    inst.bond_poster = tx.from;
    inst.bond_amount = required;
    sim_.record("eth", "collateral_confirmed", tx.swap_id,
                {{"height", height_}, {"from", tx.from}, {"amount", required}});
}

void EthChain::apply(const PendingLock& tx) {
    auto it = instances_.find(tx.swap_id);
    if (it == instances_.end()) {
        reject(tx.swap_id, "lock", "unknown swap_id");
        return;
    }
    SwapInstance& inst = it->second;
    if (inst.state != InstanceState::Deployed) {
        reject(tx.swap_id, "lock", "wrong state");
        return;
    }
    if (tx.amount != inst.params.asset_amount_eth) {
        reject(tx.swap_id, "lock", "amount does not match params");
        return;
    }
    std::uint64_t debit = tx.amount + tx.extra_collateral;
    if (balance(tx.from) < debit) {
        reject(tx.swap_id, "lock", "insufficient balance");
        return;
    }
    balances_[tx.from] -= debit;
    inst.locker = tx.from;
    inst.locked_amount = tx.amount;
    inst.locker_collateral = tx.extra_collateral;
    inst.lock_height = height_;
    inst.state = InstanceState::Locked;
    sim_.record("eth", "lock_confirmed", tx.swap_id,
                {{"height", height_},
                 {"from", tx.from},
                 {"amount", tx.amount},
                 {"collateral", tx.extra_collateral}});
}

void EthChain::apply(const PendingClaim& tx) {
    auto it = instances_.find(tx.swap_id);
    if (it == instances_.end()) {
        reject(tx.swap_id, "claim", "unknown swap_id");
        return;
    }
    SwapInstance& inst = it->second;
    if (inst.state != InstanceState::Locked) {
        reject(tx.swap_id, "claim", "wrong state");
        return;
    }
    bool opens = false;
    try {
        opens = !tx.secret.value.is_zero() &&
                commit_secret(sim_.group(), tx.secret) == inst.params.commitment;
    } catch (const ProtocolError&) {
        opens = false;
    }
    if (!opens) {
        reject(tx.swap_id, "claim", "wrong secret");
        return;
    }
    auto [fee, net] = compute_fee(inst.locked_amount, inst.fee);
    inst.state = InstanceState::Released;
    balances_[inst.beneficiary] += net;
    if (fee > 0) balances_[*inst.facilitator] += fee;
    std::uint64_t bond = inst.bond_amount;
    if (bond > 0) balances_[inst.bond_poster] += bond;  // returned to its poster
    std::uint64_t locker_coll = inst.locker_collateral;
    if (locker_coll > 0) balances_[inst.locker] += locker_coll;
    inst.locked_amount = 0;
    inst.locker_collateral = 0;
    inst.bond_amount = 0;
    sim_.record("eth", "released", tx.swap_id,
                {{"height", height_},
                 {"caller", tx.caller},
                 {"beneficiary", inst.beneficiary},
                 {"amount_net", net},
                 {"fee", fee},
                 {"bond_returned", bond}});
}

void EthChain::apply(const PendingRefund& tx) {
    auto it = instances_.find(tx.swap_id);
    if (it == instances_.end()) {
        reject(tx.swap_id, "refund", "unknown swap_id");
        return;
    }
    SwapInstance& inst = it->second;
    if (inst.state != InstanceState::Locked) {
        reject(tx.swap_id, "refund", "wrong state");
        return;
    }
    VirtualTime deadline = inst.deploy_time + inst.params.timeout_eth;
    if (sim_.now() < deadline) {
        reject(tx.swap_id, "refund", "timeout not reached");
        return;
    }
    if (tx.caller != inst.locker && tx.caller != inst.bond_poster) {
        reject(tx.swap_id, "refund", "caller not a party");
        return;
    }
    inst.state = InstanceState::Refunded;
    std::uint64_t amount = inst.locked_amount + inst.locker_collateral;
    balances_[inst.locker] += amount;  // escrow returns to the locker
    // The bond goes to whichever party showed up to call the timeout: the
    // locker when the maker ghosted, the poster when the locker did.
    std::uint64_t bond = inst.bond_amount;
    std::string bond_to = tx.caller == inst.locker ? inst.locker : inst.bond_poster;
    if (bond > 0) balances_[bond_to] += bond;
    inst.locked_amount = 0;
    inst.locker_collateral = 0;
    inst.bond_amount = 0;
    sim_.record("eth", "refunded", tx.swap_id,
                {{"height", height_},
                 {"caller", tx.caller},
                 {"amount_to", inst.locker},
                 {"amount", amount},
                 {"bond_to", bond > 0 ? Json(bond_to) : Json(nullptr)},
                 {"bond", bond}});
}

void EthChain::mine_block() {
    ++height_;
    std::deque<PendingTx> batch;
    batch.swap(mempool_);
    sim_.record("eth", "block", {}, {{"height", height_}});
    for (PendingTx& tx : batch)
        std::visit([this](const auto& t) { apply(t); }, tx);
}

// ---------------------------------------------------------------------------
// simulation

Simulation::Simulation(const Group& g, SimParams params)
    : group_(g), params_(params), btc_(*this), eth_(*this) {
    if (params_.btc_block_interval == 0 || params_.eth_block_interval == 0)
        throw ProtocolError("block intervals must be positive");
    // BTC registered first: at shared timestamps its block mines first.
    schedule_block(params_.btc_block_interval, true);
    schedule_block(params_.eth_block_interval, false);
}

void Simulation::schedule_block(VirtualTime at, bool is_btc) {
    push(at, true, [this, is_btc] {
        if (is_btc)
            btc_.mine_block();
        else
            eth_.mine_block();
        schedule_block(
            now_ + (is_btc ? params_.btc_block_interval : params_.eth_block_interval), is_btc);
    });
}

void Simulation::push(VirtualTime at, bool recurring, std::function<void()> fn) {
    if (!recurring) ++pending_timers_;
    queue_.push(QueueItem{at, seq_++, recurring, std::move(fn)});
}

void Simulation::schedule(VirtualTime at, std::function<void()> fn) {
    if (at < now_) throw ProtocolError("cannot schedule in the past");
    push(at, false, std::move(fn));
}

bool Simulation::has_pending_work() const {
    return pending_timers_ > 0 || !btc_.mempool_.empty() || !eth_.mempool_.empty();
}

std::vector<TraceEvent> Simulation::advance_time(VirtualTime dt) {
    std::size_t start = trace_.size();
    VirtualTime target = now_ + dt;
    while (!queue_.empty() && queue_.top().time <= target) {
        QueueItem item = queue_.top();
        queue_.pop();
        if (!item.recurring) --pending_timers_;
        now_ = item.time;
        item.fn();
    }
    now_ = target;
    return {trace_.begin() + static_cast<std::ptrdiff_t>(start), trace_.end()};
}

void Simulation::subscribe(std::function<void(const TraceEvent&)> listener) {
    listeners_.push_back(std::move(listener));
}

void Simulation::record(const std::string& chain, const std::string& kind, Bytes swap_id,
                        Json payload) {
    trace_.push_back(TraceEvent{now_, chain, kind, std::move(swap_id), std::move(payload)});
    const TraceEvent& ev = trace_.back();
    for (const auto& l : listeners_) l(ev);
}

}  // namespace swapsim
