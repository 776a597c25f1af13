#include "swapsim/protocol.hpp"

#include <algorithm>

namespace swapsim {

std::string to_string(Role role) {
    switch (role) {
        case Role::Taker: return "taker";
        case Role::Maker: return "maker";
        case Role::Oracle: return "oracle";
        case Role::Facilitator: return "facilitator";
        case Role::Adversary: return "adversary";
    }
    throw ProtocolError("unknown role");
}

// ---------------------------------------------------------------------------
// proposal

Bytes SwapProposal::canonical_bytes() const {
    Bytes out = metadata.canonical_bytes();
    append_field(out, presignature.nonce_point.bytes());
    append_field(out, presignature.s_star.bytes());
    append_field(out, presignature.adaptor_point.point.bytes());
    append_field(out, presignature.commitment.digest);
    append_field(out, maker_btc_key.bytes());
    append_field(out, {reinterpret_cast<const std::uint8_t*>(maker_eth_account.data()),
                       maker_eth_account.size()});
    append_field(out, {reinterpret_cast<const std::uint8_t*>(btc_beneficiary.data()),
                       btc_beneficiary.size()});
    return out;
}

Bytes SwapProposal::digest(const Group& g) const {
    return g.message_digest(canonical_bytes());
}

SwapProposal assemble_proposal(const Group& g, const MakerKeys& keys, const AdaptorSecret& secret,
                               const ProposalInputs& in) {
    TweakedKeyPair tweaked = tweak_keypair(g, keys.btc, in.metadata);
    Bytes spend_msg = spend_message_digest(g, in.metadata.swap_id, in.metadata.asset_amount_btc,
                                           in.btc_beneficiary);
    SwapProposal p;
    p.metadata = in.metadata;
    p.presignature = presign(g, tweaked.signing_pair(), spend_msg, secret, in.presign_seed);
    p.maker_btc_key = keys.btc.pub;
    p.maker_eth_account = in.maker_eth_account;
    p.btc_beneficiary = in.btc_beneficiary;
    p.identity_sig = sign(g, keys.eth, p.digest(g), in.identity_seed);
    return p;
}

SwapProposal build_and_sign_proposal(const Group& g, const MakerKeys& keys,
                                     const AdaptorSecret& secret, bool oracle_escrow_acked,
                                     const ProposalInputs& in) {
    if (!oracle_escrow_acked)
        throw ProtocolError("refusing to propose before the oracle acknowledges escrow");
    if (commit_secret(g, secret) != in.metadata.commitment)
        throw ProtocolError("metadata commitment does not open to the escrowed secret");
    return assemble_proposal(g, keys, secret, in);
}

bool verify_proposal(const Group& g, const SwapProposal& p, const Point& known_maker_eth_key) {
    try {
        if (!verify(g, p.identity_sig, known_maker_eth_key, p.digest(g))) return false;

        const SwapMetadata& m = p.metadata;
        if (m.asset_amount_btc == 0 || m.asset_amount_eth == 0) return false;
        // The contract-chain timeout must outlast the whole UTXO claim
        // window or the maker could be left unable to collect.
        if (m.timeout_eth <= (m.timeout_btc + 1) * kNominalBtcBlockSeconds) return false;
        if (SwapMetadata::derive_swap_id(g, m) != m.swap_id) return false;
        if (p.presignature.commitment != m.commitment) return false;

        Point tweaked = tweak_public_key(g, p.maker_btc_key, m);
        Bytes spend_msg =
            spend_message_digest(g, m.swap_id, m.asset_amount_btc, p.btc_beneficiary);
        return verify_presignature(g, p.presignature, tweaked, spend_msg);
    } catch (const ProtocolError&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// scenario scripts

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"happy", "maker_ghost", "taker_ghost",
                                                "eve_replay", "facilitated"};
    return names;
}

ScenarioScript ScenarioScript::from_json(const Json& j) {
    ScenarioScript s;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "scenario")
            s.name = it.value().get<std::string>();
        else if (key == "profile")
            s.profile = it.value().get<std::string>();
        else if (key == "seed")
            s.seed = it.value().get<std::uint64_t>();
        else if (key == "overrides") {
            const Json& o = it.value();
            for (auto ot = o.begin(); ot != o.end(); ++ot) {
                const std::string& ok = ot.key();
                if (ok == "amount_btc")
                    s.overrides.amount_btc_sats = ot.value().get<std::uint64_t>();
                else if (ok == "amount_eth")
                    s.overrides.amount_eth_wei = ot.value().get<std::uint64_t>();
                else if (ok == "collateral")
                    s.overrides.collateral_wei = ot.value().get<std::uint64_t>();
                else if (ok == "timeout_eth")
                    s.overrides.timeout_eth_seconds = ot.value().get<std::uint64_t>();
                else if (ok == "timeout_btc")
                    s.overrides.timeout_btc_blocks = ot.value().get<std::uint64_t>();
                else if (ok == "deploy_cost")
                    s.overrides.deploy_cost_wei = ot.value().get<std::uint64_t>();
                else if (ok == "alpha")
                    s.overrides.fee_alpha = Rational::parse(ot.value().get<std::string>());
                else if (ok == "min_confirmations")
                    s.overrides.oracle_min_confirmations = ot.value().get<std::uint64_t>();
                else if (ok == "btc_block_interval")
                    s.overrides.btc_block_interval = ot.value().get<VirtualTime>();
                else if (ok == "eth_block_interval")
                    s.overrides.eth_block_interval = ot.value().get<VirtualTime>();
                else if (ok == "bus_latency")
                    s.overrides.bus_latency = ot.value().get<VirtualTime>();
                else
                    throw ProtocolError("unknown override: " + ok);
            }
        } else {
            throw ProtocolError("unknown config field: " + key);
        }
    }
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), s.name) == names.end())
        throw ProtocolError("unknown scenario: " + s.name);
    if (s.profile != "toy" && s.profile != "secp256k1")
        throw ProtocolError("unknown profile: " + s.profile);
    if (s.overrides.fee_alpha) {
        const Rational& a = *s.overrides.fee_alpha;
        if (a.den == 0 || (a.num != 0 && a.num >= a.den))
            throw ProtocolError("fee fraction outside [0, 1): " + a.str());
    }
    return s;
}

Json ScenarioScript::to_json() const {
    Json j;
    j["scenario"] = name;
    j["profile"] = profile;
    j["seed"] = seed;
    Json o = Json::object();
    auto put = [&o](const char* key, const auto& opt) {
        if (opt) o[key] = *opt;
    };
    put("amount_btc", overrides.amount_btc_sats);
    put("amount_eth", overrides.amount_eth_wei);
    put("collateral", overrides.collateral_wei);
    put("timeout_eth", overrides.timeout_eth_seconds);
    put("timeout_btc", overrides.timeout_btc_blocks);
    put("deploy_cost", overrides.deploy_cost_wei);
    if (overrides.fee_alpha) o["alpha"] = overrides.fee_alpha->str();
    put("min_confirmations", overrides.oracle_min_confirmations);
    put("btc_block_interval", overrides.btc_block_interval);
    put("eth_block_interval", overrides.eth_block_interval);
    put("bus_latency", overrides.bus_latency);
    if (!o.empty()) j["overrides"] = o;
    return j;
}

// ---------------------------------------------------------------------------
// trace analysis

namespace {

const TraceEvent* find_event(const std::vector<TraceEvent>& trace, const std::string& chain,
                             const std::string& kind) {
    for (const TraceEvent& ev : trace)
        if (ev.chain == chain && ev.kind == kind) return &ev;
    return nullptr;
}

}  // namespace

VirtualTime maker_critical_path(const std::vector<TraceEvent>& trace) {
    const TraceEvent* funding = find_event(trace, "protocol", "maker_funding");
    const TraceEvent* release = find_event(trace, "oracle", "release");
    if (!funding || !release)
        throw ProtocolError("trace lacks a maker funding or an oracle release");
    if (release->time < funding->time)
        throw ProtocolError("oracle released before the maker funded");
    return release->time - funding->time;
}

std::optional<VirtualTime> taker_end_to_end(const std::vector<TraceEvent>& trace) {
    const TraceEvent* deploy = find_event(trace, "eth", "deploy_submitted");
    const TraceEvent* spend = find_event(trace, "btc", "spend_confirmed");
    if (!deploy || !spend) return std::nullopt;
    return spend->time - deploy->time;
}

Json ScenarioResult::summary() const {
    Json j;
    j["scenario"] = script.name;
    j["profile"] = script.profile;
    j["seed"] = script.seed;
    j["outcome"] = outcome;
    j["atomic"] = atomic;
    j["ghosted"] = ghosted ? Json(*ghosted) : Json(nullptr);
    j["oracle_released"] = oracle_released;
    j["conservation_ok"] = conservation_ok;
    j["extraction_match"] = extraction_match;
    j["maker_window"] = maker_window ? Json(*maker_window) : Json(nullptr);
    j["taker_total"] = taker_total ? Json(*taker_total) : Json(nullptr);
    Json btc = Json::object();
    for (const auto& [account, delta] : btc_deltas) btc[account] = delta;
    Json eth = Json::object();
    for (const auto& [account, delta] : eth_deltas) eth[account] = delta;
    j["btc_deltas"] = btc;
    j["eth_deltas"] = eth;
    j["events"] = trace.size();
    return j;
}

// ---------------------------------------------------------------------------
// reputation

ReputationRecord update_reputation(ReputationRecord record,
                                   const std::vector<TraceEvent>& trace) {
    const TraceEvent* outcome = find_event(trace, "protocol", "outcome");
    if (!outcome) throw ProtocolError("trace has no terminal outcome event");

    std::string hash = to_hex(trace_hash(trace));
    if (record.seen_traces.contains(hash)) return record;
    record.seen_traces.insert(hash);

    std::string maker = outcome->payload.at("maker_eth_account").get<std::string>();
    std::string taker = outcome->payload.at("taker_eth_account").get<std::string>();
    std::string result = outcome->payload.at("outcome").get<std::string>();
    const Json& ghosted = outcome->payload.at("ghosted");

    if (result == "completed") {
        record.accounts[maker].completed += 1;
        record.accounts[taker].completed += 1;
    } else if (!ghosted.is_null()) {
        std::string who = ghosted.get<std::string>();
        record.accounts[who == "maker" ? maker : taker].ghosted += 1;
    }
    return record;
}

}  // namespace swapsim
