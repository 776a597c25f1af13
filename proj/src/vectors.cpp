#include "swapsim/vectors.hpp"

#include <sstream>

namespace swapsim {

namespace {

std::string hex_or_empty(ByteSpan b) { return b.empty() ? "-" : to_hex(b); }

Bytes parse_bytes(const std::string& tok) {
    if (tok == "-") return {};
    return from_hex(tok);
}

std::string sign_line(const Group& g, const Scalar& x, ByteSpan msg, const Scalar& k) {
    KeyPair kp = keypair_from_secret(g, x);
    Signature sig = sign_with_nonce(g, kp, msg, k);
    std::ostringstream out;
    out << "sign " << g.name() << ' ' << x.hex() << ' ' << hex_or_empty(msg) << ' ' << k.hex()
        << ' ' << sig.nonce_point.hex() << ' ' << sig.s.hex();
    return out.str();
}

std::string presign_line(const Group& g, const Scalar& x, ByteSpan msg, const Scalar& k,
                         const AdaptorSecret& secret) {
    KeyPair kp = keypair_from_secret(g, x);
    PreSignature ps = presign_with_nonce(g, kp, msg, secret, k);
    std::ostringstream out;
    out << "presign " << g.name() << ' ' << x.hex() << ' ' << hex_or_empty(msg) << ' '
        << k.hex() << ' ' << secret.value.hex() << ' ' << ps.nonce_point.hex() << ' '
        << ps.s_star.hex() << ' ' << ps.adaptor_point.point.hex() << ' '
        << ps.commitment.hex();
    return out.str();
}

std::string complete_line(const Group& g, const PreSignature& ps, const AdaptorSecret& delta) {
    Signature final_sig = complete(g, ps, delta);
    std::ostringstream out;
    out << "complete " << g.name() << ' ' << ps.nonce_point.hex() << ' ' << ps.s_star.hex()
        << ' ' << delta.value.hex() << ' ' << final_sig.s.hex();
    return out.str();
}

std::string extract_line(const Group& g, const PreSignature& ps, const Signature& final_sig) {
    AdaptorSecret delta = extract_secret(g, final_sig, ps);
    std::ostringstream out;
    out << "extract " << g.name() << ' ' << ps.nonce_point.hex() << ' ' << ps.s_star.hex()
        << ' ' << final_sig.s.hex() << ' ' << delta.value.hex();
    return out.str();
}

std::string tweak_line(const Group& g, const Scalar& x, const SwapMetadata& meta) {
    KeyPair kp = keypair_from_secret(g, x);
    TweakedKeyPair tk = tweak_keypair(g, kp, meta);
    std::ostringstream out;
    out << "tweak " << g.name() << ' ' << x.hex() << ' ' << meta.asset_amount_btc << ' '
        << meta.asset_amount_eth << ' ' << meta.timeout_btc << ' ' << meta.timeout_eth << ' '
        << meta.commitment.hex() << ' ' << hex_or_empty(meta.swap_id) << ' ' << tk.tweak.hex()
        << ' ' << tk.tweaked_pub.hex();
    return out.str();
}

// Seeded inputs, distinct per (profile, label, index).
Scalar seeded_scalar(const Group& g, std::uint64_t seed, const char* label, std::uint64_t i) {
    Bytes material;
    append_u64be(material, seed);
    for (const char* p = label; *p; ++p) material.push_back(static_cast<std::uint8_t>(*p));
    append_u64be(material, i);
    return random_scalar(g, material);
}

Bytes seeded_msg(const Group& g, std::uint64_t seed, std::uint64_t i) {
    Bytes material;
    append_u64be(material, seed);
    material.push_back('m');
    append_u64be(material, i);
    if (g.name() == "toy") return {static_cast<std::uint8_t>(material.back() % 23)};
    return sha256(material);
}

void emit_profile(std::vector<std::string>& out, const Group& g, std::uint64_t seed,
                  std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        Scalar x = seeded_scalar(g, seed, "x", i);
        Scalar k = seeded_scalar(g, seed, "k", i);
        AdaptorSecret sa{seeded_scalar(g, seed, "a", i)};
        Bytes msg = seeded_msg(g, seed, i);
        KeyPair kp = keypair_from_secret(g, x);
        PreSignature ps = presign_with_nonce(g, kp, msg, sa, k);
        Signature final_sig = complete(g, ps, sa);

        out.push_back(sign_line(g, x, msg, k));
        out.push_back(presign_line(g, x, msg, k, sa));
        out.push_back(complete_line(g, ps, sa));
        out.push_back(extract_line(g, ps, final_sig));

        SwapMetadata meta;
        meta.asset_amount_btc = 100'000 + i;
        meta.asset_amount_eth = 1'000'000 + i;
        meta.timeout_btc = 12;
        meta.timeout_eth = 14'400;
        meta.commitment = commit_secret(g, sa);
        meta.swap_id = SwapMetadata::derive_swap_id(g, meta);
        out.push_back(tweak_line(g, x, meta));
    }
}

struct LineChecker {
    const std::string& line;
    std::istringstream in;
    std::string reason;

    explicit LineChecker(const std::string& l) : line(l), in(l) {}

    std::string tok() {
        std::string t;
        if (!(in >> t)) throw ProtocolError("missing field");
        return t;
    }
    std::uint64_t num() {
        std::string t = tok();
        return std::stoull(t);
    }
};

std::string check_line(const std::string& line) {
    LineChecker c(line);
    std::string kind = c.tok();
    const Group& g = Group::by_name(c.tok());

    if (kind == "sign") {
        Scalar x = g.scalar_decode(parse_bytes(c.tok()));
        Bytes msg = parse_bytes(c.tok());
        Scalar k = g.scalar_decode(parse_bytes(c.tok()));
        std::string expected = sign_line(g, x, msg, k);
        if (expected != line) return "signature does not reproduce";
        KeyPair kp = keypair_from_secret(g, x);
        Signature sig = sign_with_nonce(g, kp, msg, k);
        if (!verify(g, sig, kp.pub, msg)) return "signature does not verify";
        return {};
    }
    if (kind == "presign") {
        Scalar x = g.scalar_decode(parse_bytes(c.tok()));
        Bytes msg = parse_bytes(c.tok());
        Scalar k = g.scalar_decode(parse_bytes(c.tok()));
        AdaptorSecret sa{g.scalar_decode(parse_bytes(c.tok()))};
        if (presign_line(g, x, msg, k, sa) != line) return "pre-signature does not reproduce";
        KeyPair kp = keypair_from_secret(g, x);
        PreSignature ps = presign_with_nonce(g, kp, msg, sa, k);
        if (!verify_presignature(g, ps, kp.pub, msg)) return "pre-signature does not verify";
        return {};
    }
    if (kind == "complete") {
        Point r = g.point_decode(parse_bytes(c.tok()));
        Scalar s_star = g.scalar_decode(parse_bytes(c.tok()));
        AdaptorSecret delta{g.scalar_decode(parse_bytes(c.tok()))};
        PreSignature ps;
        ps.nonce_point = r;
        ps.s_star = s_star;
        if (complete_line(g, ps, delta) != line) return "completion does not reproduce";
        return {};
    }
    if (kind == "extract") {
        Point r = g.point_decode(parse_bytes(c.tok()));
        Scalar s_star = g.scalar_decode(parse_bytes(c.tok()));
        Scalar s_final = g.scalar_decode(parse_bytes(c.tok()));
        PreSignature ps;
        ps.nonce_point = r;
        ps.s_star = s_star;
        Signature final_sig{r, s_final};
        if (extract_line(g, ps, final_sig) != line) return "extraction does not reproduce";
        return {};
    }
    if (kind == "tweak") {
        Scalar x = g.scalar_decode(parse_bytes(c.tok()));
        SwapMetadata meta;
        meta.asset_amount_btc = c.num();
        meta.asset_amount_eth = c.num();
        meta.timeout_btc = c.num();
        meta.timeout_eth = c.num();
        meta.commitment = SecretCommitment{parse_bytes(c.tok())};
        meta.swap_id = parse_bytes(c.tok());
        if (tweak_line(g, x, meta) != line) return "tweak does not reproduce";
        return {};
    }
    return "unknown vector kind: " + kind;
}

}  // namespace

std::vector<std::string> generate_vectors(std::uint64_t seed) {
    std::vector<std::string> out;
    const Group& toy = Group::by_name("toy");
    const Group& prod = Group::by_name("secp256k1");

    // Hand-checkable anchors; every value reproducible with pencil and paper.
    {
        Scalar x5 = toy.scalar_from_u64(5);
        Scalar k7 = toy.scalar_from_u64(7);
        Bytes m3 = {3};
        AdaptorSecret a4{toy.scalar_from_u64(4)};
        out.push_back(sign_line(toy, x5, m3, k7));
        out.push_back(presign_line(toy, x5, m3, k7, a4));
        KeyPair kp = keypair_from_secret(toy, x5);
        PreSignature ps = presign_with_nonce(toy, kp, m3, a4, k7);
        out.push_back(complete_line(toy, ps, a4));
        out.push_back(extract_line(toy, ps, complete(toy, ps, a4)));
    }

    emit_profile(out, toy, seed, 8);
    emit_profile(out, prod, seed, 8);
    return out;
}

std::vector<VectorFailure> verify_vector_lines(const std::vector<std::string>& lines) {
    std::vector<VectorFailure> failures;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        std::string reason;
        try {
            reason = check_line(line);
        } catch (const std::exception& e) {
            reason = e.what();
        }
        if (!reason.empty()) failures.push_back({i + 1, reason});
    }
    return failures;
}

}  // namespace swapsim
