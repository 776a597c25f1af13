#include <doctest.h>

#include "fixtures.hpp"
#include "handcalc.hpp"
#include "swapsim/taproot.hpp"

using namespace swapsim;
using handcalc::P;
using handcalc::S;

namespace {
const Group& toy() { return Group::by_name("toy"); }
const Group& prod() { return Group::by_name("secp256k1"); }
}  // namespace

TEST_CASE("metadata serialization is fixed-width and length-prefixed") {
    SwapMetadata m;
    m.asset_amount_btc = 1;
    m.asset_amount_eth = 2;
    m.timeout_btc = 3;
    m.timeout_eth = 4;
    m.commitment.digest = {9};
    m.swap_id = {7};
    Bytes canon = m.canonical_bytes();
    CHECK(canon.size() == 4 * 8 + (2 + 1) + (2 + 1));

    // the length prefixes keep adjacent byte fields from bleeding into each
    // other: moving a byte across the boundary changes the serialization
    SwapMetadata a = m, b = m;
    a.commitment.digest = {1, 2};
    a.swap_id = {};
    b.commitment.digest = {1};
    b.swap_id = {2};
    CHECK(a.canonical_bytes() != b.canonical_bytes());
}

TEST_CASE("toy metadata digest is the field-value sum") {
    const Group& g = toy();
    SwapMetadata m;
    m.asset_amount_btc = 100'000;
    m.asset_amount_eth = 1'000'000;
    m.timeout_btc = 12;
    m.timeout_eth = 14'400;
    m.commitment.digest = {8};
    m.swap_id = SwapMetadata::derive_swap_id(g, m);
    unsigned expected = (100'000 % 23 + 1'000'000 % 23 + 12 + 14'400 % 23 + 8 +
                         m.swap_id.at(0)) % 23;
    CHECK(m.digest(g) == Bytes{static_cast<std::uint8_t>(expected)});
}

TEST_CASE("swap_id derivation ignores the id field itself") {
    for (const Group* g : {&toy(), &prod()}) {
        SwapMetadata m;
        m.asset_amount_btc = 5;
        m.asset_amount_eth = 6;
        m.timeout_btc = 7;
        m.timeout_eth = 8;
        m.commitment.digest = g->tagged_hash("SecretCommit", Bytes{4});
        Bytes id = SwapMetadata::derive_swap_id(*g, m);
        m.swap_id = id;
        CHECK(SwapMetadata::derive_swap_id(*g, m) == id);
        m.swap_id = {1, 2, 3};
        CHECK(SwapMetadata::derive_swap_id(*g, m) == id);
        // ... but any priced-in field moves it
        m.asset_amount_btc = 6;
        CHECK(SwapMetadata::derive_swap_id(*g, m) != id);
    }
}

TEST_CASE("tweak derivation anchors") {
    const Group& g = toy();
    // metadata whose field-value sum is 6, by hand: 1 + 2 + 1 + 2 = 6
    SwapMetadata m;
    m.asset_amount_btc = 1;
    m.asset_amount_eth = 2;
    m.timeout_btc = 1;
    m.timeout_eth = 2;
    REQUIRE(m.digest(g) == Bytes{6});
    CHECK(derive_tweak(g, P(5), m) == S(g, 13));
    m.timeout_eth = 3;  // digest 7
    CHECK(derive_tweak(g, P(5), m) == S(g, 14));

    m.timeout_eth = 2;
    KeyPair base = keypair_from_secret(g, S(g, 5));
    TweakedKeyPair tk = tweak_keypair(g, base, m);
    CHECK(tk.tweak == S(g, 13));
    CHECK(tk.tweaked_secret == S(g, 18));
    CHECK(tk.tweaked_pub == P(18));
    CHECK(tk.signing_pair().pub == P(18));
    CHECK(tweak_public_key(g, base.pub, m) == tk.tweaked_pub);
    CHECK(g.mul_gen(tk.tweaked_secret) == tk.tweaked_pub);
}

TEST_CASE("every metadata field reaches the tweak") {
    const Group& g = prod();
    fixtures::Swap s = fixtures::make_swap(g);
    Scalar t0 = derive_tweak(g, s.maker_btc.pub, s.meta);

    auto tweak_of = [&](auto mutate) {
        SwapMetadata m = s.meta;
        mutate(m);
        m.swap_id = SwapMetadata::derive_swap_id(g, m);
        return derive_tweak(g, s.maker_btc.pub, m);
    };
    CHECK(tweak_of([](SwapMetadata& m) { m.asset_amount_btc += 1; }) != t0);
    CHECK(tweak_of([](SwapMetadata& m) { m.asset_amount_eth += 1; }) != t0);
    CHECK(tweak_of([](SwapMetadata& m) { m.timeout_btc += 1; }) != t0);
    CHECK(tweak_of([](SwapMetadata& m) { m.timeout_eth += 1; }) != t0);
    CHECK(tweak_of([](SwapMetadata& m) { m.commitment.digest[0] ^= 1; }) != t0);
    // unchanged metadata reproduces the tweak
    CHECK(tweak_of([](SwapMetadata&) {}) == t0);
}

TEST_CASE("spend digest binds output, value and recipient") {
    const Group& g = toy();
    Bytes id{0x14};
    unsigned expected = handcalc::field_sum(id);
    expected = handcalc::u64_sum(100'000, expected);
    expected = handcalc::field_sum(Bytes{'0', '2'}, expected);
    CHECK(spend_message_digest(g, id, 100'000, "02") ==
          Bytes{static_cast<std::uint8_t>(expected)});
    CHECK(spend_message_digest(g, id, 100'000, "A") != spend_message_digest(g, id, 100'000, "B"));
    CHECK(spend_message_digest(g, id, 100'000, "A") != spend_message_digest(g, id, 100'001, "A"));
}

TEST_CASE("toy digests collide for permuted recipients; production separates them") {
    // 1-byte digests are sums, so "ab" and "ba" hash alike and a signature
    // naming one verifies for the other. This is the price of hand-checkable
    // arithmetic; anything picking toy account strings has to keep them in
    // distinct digest classes. The production profile has no such aliasing.
    Bytes id{0x14};
    CHECK(spend_message_digest(toy(), id, 7, "ab") == spend_message_digest(toy(), id, 7, "ba"));
    CHECK(spend_message_digest(prod(), id, 7, "ab") != spend_message_digest(prod(), id, 7, "ba"));

    const Group& g = toy();
    KeyPair kp = keypair_from_secret(g, S(g, 5));
    Signature sig = sign_with_nonce(g, kp, spend_message_digest(g, id, 7, "ab"), S(g, 7));
    CHECK(verify(g, sig, kp.pub, spend_message_digest(g, id, 7, "ba")));
}

TEST_CASE("scripted-output spend verification") {
    for (const Group* gp : {&toy(), &prod()}) {
        const Group& g = *gp;
        CAPTURE(g.name());
        fixtures::Swap s = fixtures::make_swap(g);
        UnlockRelease release = fixtures::make_release(s);
        TaprootSpend spend = fixtures::make_spend(s, release);

        auto check = [&](const TaprootSpend& sp, ByteSpan msg, const Point& key,
                         const SecretCommitment& c, const Point& oracle, ByteSpan id) {
            return verify_taproot_spend(g, sp, s.presig, key, msg, c, oracle, id);
        };

        CHECK(check(spend, s.spend_msg, s.tweaked.tweaked_pub, s.commitment, s.oracle_kp.pub,
                    s.meta.swap_id));

        SUBCASE("tampered completed signature") {
            TaprootSpend bad = spend;
            bad.final_sig.s = g.scalar_add(bad.final_sig.s, g.scalar_from_u64(1));
            CHECK_FALSE(check(bad, s.spend_msg, s.tweaked.tweaked_pub, s.commitment,
                              s.oracle_kp.pub, s.meta.swap_id));
        }
        SUBCASE("signature checked under the untweaked key") {
            CHECK_FALSE(check(spend, s.spend_msg, s.maker_btc.pub, s.commitment,
                              s.oracle_kp.pub, s.meta.swap_id));
        }
        SUBCASE("recipient swapped in the signed message") {
            Bytes other = spend_message_digest(g, s.meta.swap_id, s.meta.asset_amount_btc, "eve");
            REQUIRE(other != s.spend_msg);
            CHECK_FALSE(check(spend, other, s.tweaked.tweaked_pub, s.commitment,
                              s.oracle_kp.pub, s.meta.swap_id));
        }
        SUBCASE("released value does not open the commitment") {
            TaprootSpend bad = spend;
            bad.release.unlock_value = {g.scalar_add(s.secret.value, g.scalar_from_u64(1))};
            CHECK_FALSE(check(bad, s.spend_msg, s.tweaked.tweaked_pub, s.commitment,
                              s.oracle_kp.pub, s.meta.swap_id));
        }
        SUBCASE("zero released value") {
            TaprootSpend bad = spend;
            bad.release.unlock_value = {g.scalar_from_u64(0)};
            CHECK_FALSE(check(bad, s.spend_msg, s.tweaked.tweaked_pub, s.commitment,
                              s.oracle_kp.pub, s.meta.swap_id));
        }
        SUBCASE("oracle message names a foreign commitment") {
            TaprootSpend bad = spend;
            bad.release.message.commitment = commit_secret(g, {g.scalar_from_u64(9)});
            CHECK_FALSE(check(bad, s.spend_msg, s.tweaked.tweaked_pub, s.commitment,
                              s.oracle_kp.pub, s.meta.swap_id));
        }
        SUBCASE("release signed by someone other than the oracle") {
            fixtures::Swap mallory = fixtures::make_swap(g, 1);
            TaprootSpend bad = spend;
            bad.release.oracle_sig =
                sign(g, mallory.oracle_kp, release.message.digest(g), Bytes{'x'});
            CHECK_FALSE(check(bad, s.spend_msg, s.tweaked.tweaked_pub, s.commitment,
                              s.oracle_kp.pub, s.meta.swap_id));
        }
        SUBCASE("oracle message bound to a different swap") {
            Bytes other_id = s.meta.swap_id;
            other_id[0] ^= 1;
            CHECK_FALSE(check(spend, s.spend_msg, s.tweaked.tweaked_pub, s.commitment,
                              s.oracle_kp.pub, other_id));
        }
        SUBCASE("nonce point not matching the pre-signature is structural") {
            TaprootSpend bad = spend;
            bad.final_sig.nonce_point = g.point_add(bad.final_sig.nonce_point, g.generator());
            CHECK_THROWS_AS(check(bad, s.spend_msg, s.tweaked.tweaked_pub, s.commitment,
                                  s.oracle_kp.pub, s.meta.swap_id),
                            ProtocolError);
        }
    }
}
