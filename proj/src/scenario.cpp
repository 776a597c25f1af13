#include <set>

#include "swapsim/protocol.hpp"

namespace swapsim {

namespace {

// Everything a run needs, defaults filled and overrides applied.
struct ResolvedConfig {
    std::string name;
    std::uint64_t seed = 1;

    SimParams sim;
    std::uint64_t amount_btc = 100'000;    // sats
    std::uint64_t amount_eth = 1'000'000;  // wei
    std::uint64_t collateral = 100'000;    // maker bond, wei (10% of notional)
    std::uint64_t timeout_eth = 14'400;    // seconds from deploy
    std::uint64_t timeout_btc = 12;        // blocks from funding
    Rational alpha;                        // facilitator cut
    std::uint64_t min_confirmations = 1;
    VirtualTime bus_latency = 0;

    bool maker_escrows = true;
    bool maker_funds_btc = true;
    bool taker_completes = true;
    bool use_facilitator = false;
    bool adversary = false;
    VirtualTime maker_claim_delay = 0;

    std::uint64_t taker_eth_funds = 2'000'000;
    std::uint64_t maker_eth_funds = 500'000;
    std::uint64_t maker_btc_funds = 200'000;
    std::uint64_t facilitator_eth_funds = 100'000;
};

ResolvedConfig resolve(const ScenarioScript& script) {
    ResolvedConfig c;
    c.name = script.name;
    c.seed = script.seed;
    if (script.name == "maker_ghost") {
        c.maker_escrows = false;
        c.maker_funds_btc = false;
    } else if (script.name == "taker_ghost") {
        c.taker_completes = false;
    } else if (script.name == "eve_replay") {
        c.adversary = true;
        c.maker_claim_delay = 15;
    } else if (script.name == "facilitated") {
        c.use_facilitator = true;
        c.alpha = {1, 100};
        c.sim.deploy_cost_wei = 50;
    }

    const ScenarioOverrides& o = script.overrides;
    if (o.amount_btc_sats) c.amount_btc = *o.amount_btc_sats;
    if (o.amount_eth_wei) c.amount_eth = *o.amount_eth_wei;
    if (o.collateral_wei) c.collateral = *o.collateral_wei;
    if (o.timeout_eth_seconds) c.timeout_eth = *o.timeout_eth_seconds;
    if (o.timeout_btc_blocks) c.timeout_btc = *o.timeout_btc_blocks;
    if (o.deploy_cost_wei) c.sim.deploy_cost_wei = *o.deploy_cost_wei;
    if (o.fee_alpha) c.alpha = *o.fee_alpha;
    if (o.oracle_min_confirmations) c.min_confirmations = *o.oracle_min_confirmations;
    if (o.btc_block_interval) c.sim.btc_block_interval = *o.btc_block_interval;
    if (o.eth_block_interval) c.sim.eth_block_interval = *o.eth_block_interval;
    if (o.bus_latency) c.bus_latency = *o.bus_latency;
    return c;
}

// Keys whose public points collide with none derived before them. Two extra
// constraints exist only because of the toy profile's size: 22 usable points
// mean actors could land on the same account id, and 23 possible message
// digests mean two account strings could hash alike, which would let a
// signature naming one recipient verify for the other. Demo identities are
// picked from distinct digest classes so recipient binding stays visible;
// the tiny-modulus collision itself is exercised by tests instead.
struct KeyPool {
    const Group& g;
    std::uint64_t seed = 0;
    std::set<Bytes> points{};
    std::set<std::uint8_t> digest_classes{};

    KeyPair draw(const std::string& domain) {
        for (std::uint32_t i = 0;; ++i) {
            Bytes material;
            append_u64be(material, seed);
            material.insert(material.end(), domain.begin(), domain.end());
            append_u64be(material, i);
            Scalar x = random_scalar(g, material);
            Point pub = g.mul_gen(x);
            if (!points.insert(pub.bytes()).second) continue;
            if (g.name() == "toy") {
                std::string account = to_hex(pub.bytes());
                std::uint8_t cls = 0;
                for (char ch : account)
                    cls = static_cast<std::uint8_t>((cls + static_cast<std::uint8_t>(ch)) % 23);
                if (!digest_classes.insert(cls).second) continue;
            }
            return {x, pub};
        }
    }
};

class Engine {
public:
    explicit Engine(ScenarioScript script)
        : script_(std::move(script)),
          cfg_(resolve(script_)),
          g_(Group::by_name(script_.profile)),
          keys_{g_, cfg_.seed},
          sim_(g_, cfg_.sim),
          oracle_(g_, derive_keypair("oracle"), cfg_.min_confirmations) {
        maker_.keys.btc = derive_keypair("maker-btc");
        maker_.keys.eth = derive_keypair("maker-eth");
        taker_eth_ = derive_keypair("taker-eth");
        taker_btc_ = derive_keypair("taker-btc");
        facilitator_eth_ = derive_keypair("facilitator-eth");
        eve_eth_ = derive_keypair("eve-eth");
        eve_btc_ = derive_keypair("eve-btc");
        maker_.secret = AdaptorSecret{random_scalar(g_, seed_material("adaptor-secret"))};

        maker_.eth_account = to_hex(maker_.keys.eth.pub.bytes());
        maker_.btc_account = to_hex(maker_.keys.btc.pub.bytes());
        taker_.eth_account = to_hex(taker_eth_.pub.bytes());
        taker_.btc_account = to_hex(taker_btc_.pub.bytes());
        fac_account_ = to_hex(facilitator_eth_.pub.bytes());
        eve_.eth_account = to_hex(eve_eth_.pub.bytes());
        eve_.btc_account = to_hex(eve_btc_.pub.bytes());

        sim_.eth().credit(taker_.eth_account, cfg_.taker_eth_funds);
        sim_.eth().credit(maker_.eth_account, cfg_.maker_eth_funds);
        sim_.btc().credit(maker_.btc_account, cfg_.maker_btc_funds);
        if (cfg_.use_facilitator) sim_.eth().credit(fac_account_, cfg_.facilitator_eth_funds);

        btc_initial_total_ = sim_.btc().total_value();
        eth_initial_total_ = sim_.eth().total_value();
        record_initial_balances();

        sim_.subscribe([this](const TraceEvent& ev) { on_event(ev); });
    }

    ScenarioResult run() {
        sim_.schedule(0, [this] { maker_start(); });

        VirtualTime horizon = cfg_.timeout_eth +
                              (cfg_.timeout_btc + 2) * cfg_.sim.btc_block_interval +
                              cfg_.sim.btc_block_interval + cfg_.sim.eth_block_interval;
        VirtualTime step = cfg_.sim.eth_block_interval;
        while (sim_.now() < horizon) {
            sim_.advance_time(step);
            if (terminal() && !sim_.has_pending_work()) break;
        }
        record_outcome();
        return analyze();
    }

private:
    struct MakerActor {
        enum class Phase { Init, Escrowing, Proposed, AwaitLock, Funded, Claiming, Done };
        Phase phase = Phase::Init;
        MakerKeys keys;
        AdaptorSecret secret;
        bool escrow_acked = false;
        std::string eth_account;
        std::string btc_account;
        bool funded_btc = false;
        bool eth_refund_done = false;
        bool btc_refund_done = false;
    };
    struct TakerActor {
        enum class Phase { Init, Deployed, Locked, Spent, Done };
        Phase phase = Phase::Init;
        std::string eth_account;
        std::string btc_account;
        std::optional<SwapProposal> proposal;
        std::optional<UnlockRelease> release;
        bool funding_confirmed = false;
        bool spend_submitted = false;
        bool eth_refund_done = false;
    };
    struct EveActor {
        std::string eth_account;
        std::string btc_account;
        bool struck = false;
    };

    Bytes seed_material(const std::string& domain) {
        Bytes material;
        append_u64be(material, cfg_.seed);
        material.insert(material.end(), domain.begin(), domain.end());
        return material;
    }

    KeyPair derive_keypair(const std::string& domain) { return keys_.draw(domain); }

    void record_initial_balances() {
        Json btc = Json::object();
        btc[maker_.btc_account] = cfg_.maker_btc_funds;
        Json eth = Json::object();
        eth[taker_.eth_account] = cfg_.taker_eth_funds;
        eth[maker_.eth_account] = cfg_.maker_eth_funds;
        if (cfg_.use_facilitator) eth[fac_account_] = cfg_.facilitator_eth_funds;
        sim_.record("protocol", "setup", {},
                    {{"scenario", cfg_.name},
                     {"profile", g_.name()},
                     {"seed", cfg_.seed},
                     {"balances", Json{{"btc", btc}, {"eth", eth}}}});
    }

    // --- bus -------------------------------------------------------------

    void send(const std::string& from, const std::string& to, const std::string& topic,
              std::function<void()> deliver) {
        sim_.record("protocol", "message", swap_id_,
                    {{"from", from}, {"to", to}, {"topic", topic}});
        sim_.schedule(sim_.now() + cfg_.bus_latency, std::move(deliver));
    }

    // --- maker -----------------------------------------------------------

    void maker_start() {
        SwapMetadata meta;
        meta.asset_amount_btc = cfg_.amount_btc;
        meta.asset_amount_eth = cfg_.amount_eth;
        meta.timeout_btc = cfg_.timeout_btc;
        meta.timeout_eth = cfg_.timeout_eth;
        meta.commitment = commit_secret(g_, maker_.secret);
        meta.swap_id = SwapMetadata::derive_swap_id(g_, meta);
        metadata_ = meta;
        swap_id_ = meta.swap_id;

        if (cfg_.maker_escrows) {
            maker_.phase = MakerActor::Phase::Escrowing;
            send("maker", "oracle", "escrow", [this] { oracle_on_escrow(); });
        } else {
            // Ghosting maker: skips the oracle entirely but still issues a
            // well-formed proposal it has no intention of honouring.
            maker_propose();
        }
    }

    void oracle_on_escrow() {
        bool ok = oracle_.escrow_secret(swap_id_, maker_.secret, metadata_.commitment);
        send("oracle", "maker", "escrow_ack", [this, ok] { maker_on_escrow_ack(ok); });
    }

    void maker_on_escrow_ack(bool ok) {
        if (!ok) throw ProtocolError("oracle rejected the escrow");
        maker_.escrow_acked = true;
        sim_.record("protocol", "escrow_acked", swap_id_, {{"oracle", oracle_key_hex()}});
        maker_propose();
    }

    void maker_propose() {
        ProposalInputs in;
        in.metadata = metadata_;
        in.maker_eth_account = maker_.eth_account;
        in.btc_beneficiary = taker_.btc_account;
        in.presign_seed = seed_material("presign");
        in.identity_seed = seed_material("identity");
        proposal_ = cfg_.maker_escrows
                        ? build_and_sign_proposal(g_, maker_.keys, maker_.secret,
                                                  maker_.escrow_acked, in)
                        : assemble_proposal(g_, maker_.keys, maker_.secret, in);
        maker_.phase = MakerActor::Phase::Proposed;
        sim_.record("protocol", "proposal_sent", swap_id_,
                    {{"maker_eth_account", maker_.eth_account},
                     {"btc_beneficiary", taker_.btc_account},
                     {"commitment", metadata_.commitment.hex()}});
        if (cfg_.use_facilitator) {
            send("maker", "facilitator", "proposal", [this] {
                sim_.record("protocol", "proposal_relayed", swap_id_,
                            {{"facilitator", fac_account_}});
                send("facilitator", "taker", "proposal", [this] { taker_on_proposal(); });
            });
        } else {
            send("maker", "taker", "proposal", [this] { taker_on_proposal(); });
        }
    }

    void maker_on_lock_announced() {
        if (maker_.phase != MakerActor::Phase::Proposed) return;
        maker_.phase = MakerActor::Phase::AwaitLock;
        if (!cfg_.maker_funds_btc) return;
        // The maker's only exposure starts here: fund the UTXO the moment
        // the taker commits on the contract chain.
        sim_.record("protocol", "maker_funding", swap_id_,
                    {{"funder", maker_.btc_account}, {"value", cfg_.amount_btc}});
        BtcSpendContext ctx{proposal_->presignature, metadata_.commitment, oracle_.public_key()};
        Point tweaked = tweak_public_key(g_, maker_.keys.btc.pub, metadata_);
        sim_.btc().submit_lock(maker_.btc_account, cfg_.amount_btc, tweaked,
                               maker_.keys.btc.pub, cfg_.timeout_btc, swap_id_, std::move(ctx));
        maker_.funded_btc = true;
    }

    void maker_on_spend_confirmed(const TraceEvent& ev) {
        if (!maker_.funded_btc || maker_.phase == MakerActor::Phase::Claiming) return;
        maker_.phase = MakerActor::Phase::Claiming;
        // Recover the unlocking value from public data alone: the witness in
        // the block and the pre-signature stored with the output.
        Scalar s_final = g_.scalar_decode(from_hex(ev.payload.at("s_final").get<std::string>()));
        Signature final_sig{proposal_->presignature.nonce_point, s_final};
        AdaptorSecret extracted = extract_secret(g_, final_sig, proposal_->presignature);
        bool matches = extracted == maker_.secret;
        sim_.record("protocol", "extracted_secret", swap_id_,
                    {{"by", "maker"}, {"matches", matches}});
        extraction_seen_ = true;
        extraction_match_ = matches;
        if (cfg_.use_facilitator) return;  // claiming is the facilitator's job
        if (cfg_.maker_claim_delay > 0) {
            sim_.schedule(sim_.now() + cfg_.maker_claim_delay, [this, extracted] {
                sim_.eth().submit_claim(swap_id_, extracted, maker_.eth_account);
            });
        } else {
            sim_.eth().submit_claim(swap_id_, extracted, maker_.eth_account);
        }
    }

    void maker_check_btc_refund(std::uint64_t height) {
        if (!maker_.funded_btc || maker_.btc_refund_done) return;
        auto state = sim_.btc().utxo_state(swap_id_);
        if (state != UtxoState::Unspent) return;
        const TaprootOutput* out = sim_.btc().output(swap_id_);
        if (!out || height + 1 < out->refund_height) return;
        maker_.btc_refund_done = true;
        sim_.btc().submit_refund(swap_id_, maker_.btc_account);
    }

    void maker_check_eth_refund() {
        // The bond poster calls the timeout to salvage the bond when the
        // locker has walked away.
        if (!maker_.escrow_acked || maker_.eth_refund_done) return;
        const SwapInstance* inst = sim_.eth().instance(swap_id_);
        if (!inst || inst->state != InstanceState::Locked) return;
        if (sim_.now() < inst->deploy_time + inst->params.timeout_eth) return;
        if (maker_.phase == MakerActor::Phase::Claiming || !maker_.funded_btc) return;
        maker_.eth_refund_done = true;
        sim_.eth().submit_refund(swap_id_, maker_.eth_account);
    }

    // --- taker -----------------------------------------------------------

    void taker_on_proposal() {
        bool ok = verify_proposal(g_, *proposal_, maker_.keys.eth.pub);
        sim_.record("protocol", "proposal_verified", swap_id_, {{"by", "taker"}, {"ok", ok}});
        if (!ok) return;
        taker_.proposal = proposal_;
        taker_.phase = TakerActor::Phase::Deployed;
        std::optional<std::string> facilitator;
        if (cfg_.use_facilitator) facilitator = fac_account_;
        std::string deployer = cfg_.use_facilitator ? fac_account_ : taker_.eth_account;
        if (cfg_.use_facilitator) {
            send("taker", "facilitator", "accept", [this, facilitator, deployer] {
                sim_.eth().submit_deploy(metadata_, maker_.eth_account, facilitator, cfg_.alpha,
                                         cfg_.collateral, deployer);
            });
        } else {
            sim_.eth().submit_deploy(metadata_, maker_.eth_account, facilitator, cfg_.alpha,
                                     cfg_.collateral, deployer);
        }
    }

    void taker_on_ready_to_lock() {
        if (taker_.phase != TakerActor::Phase::Deployed) return;
        taker_.phase = TakerActor::Phase::Locked;
        sim_.record("protocol", "lock_announced", swap_id_, {{"by", taker_.eth_account}});
        send("taker", "maker", "lock_announced", [this] { maker_on_lock_announced(); });
        sim_.eth().submit_lock(swap_id_, taker_.eth_account, cfg_.amount_eth);
    }

    void taker_on_release(const UnlockRelease& release) {
        if (!taker_.proposal) return;
        if (!verify_release(g_, release, oracle_.public_key(), metadata_.commitment)) {
            sim_.record("protocol", "release_rejected", swap_id_, {{"by", "taker"}});
            return;
        }
        taker_.release = release;
        sim_.record("protocol", "release_received", swap_id_, {{"by", "taker"}});
        taker_try_spend();
    }

    void taker_on_funding_confirmed() {
        taker_.funding_confirmed = true;
        taker_try_spend();
    }

    void taker_try_spend() {
        if (!cfg_.taker_completes) return;
        if (!taker_.funding_confirmed || !taker_.release || taker_.spend_submitted) return;
        taker_.spend_submitted = true;
        Signature final_sig =
            complete(g_, taker_.proposal->presignature, taker_.release->unlock_value);
        TaprootSpend spend{final_sig, *taker_.release};
        sim_.btc().submit_spend({swap_id_, taker_.btc_account, std::move(spend)});
    }

    void taker_check_eth_refund() {
        // Locker-side timeout: reclaim the deposit when no release came.
        if (taker_.phase != TakerActor::Phase::Locked || taker_.eth_refund_done) return;
        if (taker_.release) return;
        const SwapInstance* inst = sim_.eth().instance(swap_id_);
        if (!inst || inst->state != InstanceState::Locked) return;
        if (sim_.now() < inst->deploy_time + inst->params.timeout_eth) return;
        taker_.eth_refund_done = true;
        sim_.eth().submit_refund(swap_id_, taker_.eth_account);
    }

    // --- oracle ----------------------------------------------------------

    std::string oracle_key_hex() const { return to_hex(oracle_.public_key().bytes()); }

    void oracle_poll() {
        if (oracle_released_ || !oracle_.has_escrow(swap_id_)) return;
        if (!sim_.eth().instance(swap_id_)) return;
        auto release = oracle_.observe_and_release(sim_.eth(), swap_id_);
        if (!release) return;
        oracle_released_ = true;
        sim_.record("oracle", "release", swap_id_,
                    {{"lock_height", release->message.lock_height},
                     {"commitment", release->message.commitment.hex()},
                     {"oracle_s", release->oracle_sig.s.hex()}});
        UnlockRelease r = *release;
        send("oracle", "taker", "release", [this, r] { taker_on_release(r); });
    }

    // --- facilitator -----------------------------------------------------

    void facilitator_on_spend_confirmed(const TraceEvent& ev) {
        if (!cfg_.use_facilitator || fac_claimed_) return;
        fac_claimed_ = true;
        const BtcSpendContext* ctx = sim_.btc().spend_context(swap_id_);
        Scalar s_final = g_.scalar_decode(from_hex(ev.payload.at("s_final").get<std::string>()));
        Signature final_sig{ctx->presig.nonce_point, s_final};
        AdaptorSecret extracted = extract_secret(g_, final_sig, ctx->presig);
        sim_.record("protocol", "extracted_secret", swap_id_,
                    {{"by", "facilitator"}, {"matches", check_commitment(g_, extracted,
                      ctx->commitment, ctx->presig.adaptor_point)}});
        sim_.eth().submit_claim(swap_id_, extracted, fac_account_);
    }

    // --- adversary -------------------------------------------------------

    void eve_on_spend_broadcast(const TraceEvent& ev) {
        if (!cfg_.adversary || eve_.struck) return;
        eve_.struck = true;
        // Everything Eve works with is public: the pre-signature stored with
        // the funded output, the broadcast witness, and the instance status.
        const BtcSpendContext* ctx = sim_.btc().spend_context(swap_id_);
        Scalar s_final = g_.scalar_decode(from_hex(ev.payload.at("s_final").get<std::string>()));
        AdaptorSecret stolen{g_.scalar_sub(s_final, ctx->presig.s_star)};

        auto status = sim_.eth().instance_status(swap_id_);
        UnlockMessage msg{swap_id_, ctx->commitment, status->lock_height, status->contract_id};
        Signature oracle_sig{
            g_.point_decode(from_hex(ev.payload.at("oracle_r").get<std::string>())),
            g_.scalar_decode(from_hex(ev.payload.at("oracle_s").get<std::string>()))};
        UnlockRelease release{stolen, oracle_sig, msg};
        Signature final_sig{ctx->presig.nonce_point, s_final};

        // Strategy 1: replay the exact broadcast spend and race it.
        bool replay =
            sim_.btc().submit_spend({swap_id_, taker_.btc_account, {final_sig, release}});
        sim_.record("protocol", "adversary_replay_spend", swap_id_, {{"accepted", replay}});

        // Strategy 2: divert the payout to herself, reusing the signature.
        bool divert =
            sim_.btc().submit_spend({swap_id_, eve_.btc_account, {final_sig, release}});
        sim_.record("protocol", "adversary_divert_spend", swap_id_, {{"accepted", divert}});

        // Strategy 3: doctor the scalar and try the diversion again.
        Signature forged{ctx->presig.nonce_point,
                         g_.scalar_add(s_final, g_.scalar_from_u64(1))};
        bool forge =
            sim_.btc().submit_spend({swap_id_, eve_.btc_account, {forged, release}});
        sim_.record("protocol", "adversary_forge_sig", swap_id_, {{"accepted", forge}});

        // Strategy 4: race the maker to the contract claim with the stolen
        // secret. The instance accepts it but pays the immutable beneficiary.
        sim_.record("protocol", "adversary_claim", swap_id_, {{"caller", eve_.eth_account}});
        sim_.eth().submit_claim(swap_id_, stolen, eve_.eth_account);
    }

    // --- wiring ----------------------------------------------------------

    // Events recorded while a handler runs are queued and drained in order,
    // so every event is dispatched exactly once and never recursively.
    void on_event(const TraceEvent& ev) {
        pending_events_.push_back(ev);
        if (dispatching_) return;
        dispatching_ = true;
        while (!pending_events_.empty()) {
            TraceEvent next = std::move(pending_events_.front());
            pending_events_.pop_front();
            dispatch(next);
        }
        dispatching_ = false;
    }

    void dispatch(const TraceEvent& ev) {
        if (ev.chain == "eth") {
            if (ev.kind == "deploy_confirmed") {
                if (cfg_.collateral > 0)
                    sim_.eth().submit_collateral(swap_id_, maker_.eth_account);
                else
                    taker_on_ready_to_lock();
            } else if (ev.kind == "collateral_confirmed") {
                taker_on_ready_to_lock();
            } else if (ev.kind == "lock_confirmed") {
                oracle_poll();
            } else if (ev.kind == "block") {
                oracle_poll();
                taker_check_eth_refund();
                maker_check_eth_refund();
            }
        } else if (ev.chain == "btc") {
            if (ev.kind == "lock_confirmed") {
                taker_on_funding_confirmed();
            } else if (ev.kind == "spend_submitted") {
                eve_on_spend_broadcast(ev);  // mempool snooping
            } else if (ev.kind == "spend_confirmed") {
                maker_on_spend_confirmed(ev);
                facilitator_on_spend_confirmed(ev);
            } else if (ev.kind == "block") {
                std::uint64_t height = ev.payload.at("height").get<std::uint64_t>();
                maker_check_btc_refund(height);
            }
        }
    }

    // --- shutdown and analysis -------------------------------------------

    bool terminal() const {
        const SwapInstance* inst = sim_.eth().instance(swap_id_);
        if (!inst) return false;
        if (inst->state != InstanceState::Released && inst->state != InstanceState::Refunded)
            return false;
        auto btc_state = sim_.btc().utxo_state(swap_id_);
        if (btc_state == UtxoState::Unspent) return false;
        return true;
    }

    void record_outcome() {
        const SwapInstance* inst = sim_.eth().instance(swap_id_);
        auto btc_state = sim_.btc().utxo_state(swap_id_);
        bool eth_released = inst && inst->state == InstanceState::Released;
        bool btc_spent = btc_state == UtxoState::Spent;

        std::string outcome;
        Json ghosted = nullptr;
        if (eth_released && btc_spent) {
            outcome = "completed";
        } else if (!eth_released && !btc_spent) {
            outcome = "refunded";
            if (oracle_released_)
                ghosted = "taker";  // secret was released, spender never came
            else
                ghosted = "maker";  // no escrow or no funding: seller vanished
        } else {
            outcome = "violated";
        }
        sim_.record("protocol", "outcome", swap_id_,
                    {{"outcome", outcome},
                     {"ghosted", ghosted},
                     {"oracle_released", oracle_released_},
                     {"maker_eth_account", maker_.eth_account},
                     {"taker_eth_account", taker_.eth_account},
                     {"eth_state", inst ? std::string(to_string(inst->state)) : "absent"},
                     {"btc_spent", btc_spent}});

        Json maker_window = nullptr;
        try {
            maker_window = maker_critical_path(sim_.trace());
        } catch (const ProtocolError&) {
        }
        auto taker_total = taker_end_to_end(sim_.trace());
        sim_.record("protocol", "timing", swap_id_,
                    {{"maker_window", maker_window},
                     {"taker_total", taker_total ? Json(*taker_total) : Json(nullptr)}});
    }

    ScenarioResult analyze() {
        ScenarioResult res;
        res.script = script_;
        res.trace = sim_.trace();
        res.maker_eth_account = maker_.eth_account;
        res.taker_eth_account = taker_.eth_account;

        const TraceEvent* outcome = nullptr;
        for (const TraceEvent& ev : res.trace)
            if (ev.chain == "protocol" && ev.kind == "outcome") outcome = &ev;
        res.outcome = outcome->payload.at("outcome").get<std::string>();
        const Json& ghosted = outcome->payload.at("ghosted");
        if (!ghosted.is_null()) res.ghosted = ghosted.get<std::string>();
        res.oracle_released = oracle_released_;
        res.atomic = res.outcome != "violated";
        res.extraction_match = extraction_seen_ && extraction_match_;

        res.conservation_ok = sim_.btc().total_value() == btc_initial_total_ &&
                              sim_.eth().total_value() == eth_initial_total_;

        try {
            res.maker_window = maker_critical_path(res.trace);
        } catch (const ProtocolError&) {
        }
        res.taker_total = taker_end_to_end(res.trace);

        auto delta = [](std::uint64_t now, std::uint64_t before) {
            return static_cast<std::int64_t>(now) - static_cast<std::int64_t>(before);
        };
        res.btc_deltas["maker"] =
            delta(sim_.btc().balance(maker_.btc_account), cfg_.maker_btc_funds);
        res.btc_deltas["taker"] = delta(sim_.btc().balance(taker_.btc_account), 0);
        res.eth_deltas["maker"] =
            delta(sim_.eth().balance(maker_.eth_account), cfg_.maker_eth_funds);
        res.eth_deltas["taker"] =
            delta(sim_.eth().balance(taker_.eth_account), cfg_.taker_eth_funds);
        if (cfg_.use_facilitator)
            res.eth_deltas["facilitator"] =
                delta(sim_.eth().balance(fac_account_), cfg_.facilitator_eth_funds);
        if (cfg_.adversary) {
            res.eth_deltas["adversary"] = delta(sim_.eth().balance(eve_.eth_account), 0);
            res.btc_deltas["adversary"] = delta(sim_.btc().balance(eve_.btc_account), 0);
        }
        return res;
    }

    // Declaration order matters: derive_keypair consumes keys_ inside the
    // oracle_ member initializer.
    ScenarioScript script_;
    ResolvedConfig cfg_;
    const Group& g_;
    KeyPool keys_;
    Simulation sim_;
    Oracle oracle_;

    MakerActor maker_;
    TakerActor taker_;
    EveActor eve_;
    KeyPair taker_eth_, taker_btc_, facilitator_eth_, eve_eth_, eve_btc_;
    std::string fac_account_;

    SwapMetadata metadata_;
    Bytes swap_id_;
    std::optional<SwapProposal> proposal_;

    bool oracle_released_ = false;
    bool fac_claimed_ = false;
    bool extraction_seen_ = false;
    bool extraction_match_ = false;
    bool dispatching_ = false;
    std::deque<TraceEvent> pending_events_;
    std::uint64_t btc_initial_total_ = 0;
    std::uint64_t eth_initial_total_ = 0;
};

}  // namespace

ScenarioResult run_scenario(const ScenarioScript& script) {
    Engine engine(script);
    return engine.run();
}

}  // namespace swapsim
