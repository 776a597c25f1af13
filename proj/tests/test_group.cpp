#include <doctest.h>

#include "handcalc.hpp"
#include "swapsim/group.hpp"

using namespace swapsim;
using handcalc::P;
using handcalc::S;
using handcalc::val;

namespace {
const Group& toy() { return Group::by_name("toy"); }
const Group& prod() { return Group::by_name("secp256k1"); }
}  // namespace

TEST_CASE("profile registry") {
    CHECK(toy().name() == "toy");
    CHECK(prod().name() == "secp256k1");
    CHECK_THROWS_AS(Group::by_name("p256"), ProtocolError);
    CHECK(toy().scalar_size() == 1);
    CHECK(toy().point_size() == 1);
    CHECK(prod().scalar_size() == 32);
    CHECK(prod().point_size() == 33);
}

TEST_CASE("toy scalar arithmetic agrees with hand calculation everywhere") {
    const Group& g = toy();
    for (unsigned a = 0; a < 23; ++a)
        for (unsigned b = 0; b < 23; ++b) {
            CHECK(val(g.scalar_add(S(g, a), S(g, b))) == handcalc::add(a, b));
            CHECK(val(g.scalar_sub(S(g, a), S(g, b))) == handcalc::sub(a, b));
            CHECK(val(g.scalar_mul(S(g, a), S(g, b))) == handcalc::mul(a, b));
        }
    // anchors: the signing equation's pieces
    CHECK(g.scalar_add(S(g, 7), g.scalar_mul(S(g, 16), S(g, 5))) == S(g, 18));
    CHECK(g.scalar_sub(S(g, 18), S(g, 4)) == S(g, 14));
}

TEST_CASE("toy point algebra: laws, anchors, identity") {
    const Group& g = toy();
    CHECK(g.mul_gen(S(g, 7)) == P(7));
    CHECK(g.point_mul(S(g, 5), P(5)) == P(2));
    CHECK(g.point_mul(S(g, 0), P(9)) == g.identity());
    CHECK(g.point_add(P(7), P(18)) == P(2));
    CHECK(g.point_add(P(11), P(12)) == g.identity());
    CHECK(g.point_add(P(6), g.point_negate(P(6))) == g.identity());
    CHECK(g.is_identity(g.identity()));

    bool laws_hold = true;
    for (unsigned a = 0; a < 23 && laws_hold; ++a)
        for (unsigned b = 0; b < 23 && laws_hold; ++b) {
            if (g.point_add(P(a), P(b)) != g.point_add(P(b), P(a))) laws_hold = false;
            // k(P+Q) == kP + kQ
            Point lhs = g.point_mul(S(g, a), g.point_add(P(b), P(a)));
            Point rhs = g.point_add(g.point_mul(S(g, a), P(b)), g.point_mul(S(g, a), P(a)));
            if (lhs != rhs) laws_hold = false;
        }
    CHECK(laws_hold);
}

TEST_CASE("toy scalar_reduce is big-endian Horner mod 23") {
    const Group& g = toy();
    CHECK(g.scalar_reduce(Bytes{}) == S(g, 0));
    CHECK(g.scalar_reduce(Bytes{0x01, 0x00}) == S(g, 256 % 23));
    CHECK(g.scalar_reduce(Bytes{0xff, 0xff}) == S(g, 65535 % 23));
    CHECK(g.scalar_to_u64(S(g, 22)) == 22);
}

TEST_CASE("toy decoding rejects wrong width and out-of-range values") {
    const Group& g = toy();
    CHECK(g.scalar_decode(Bytes{22}) == S(g, 22));
    CHECK_THROWS_AS(g.scalar_decode(Bytes{23}), DecodeError);
    CHECK_THROWS_AS(g.scalar_decode(Bytes{1, 2}), DecodeError);
    CHECK(g.point_decode(Bytes{0}) == g.identity());
    CHECK_THROWS_AS(g.point_decode(Bytes{23}), DecodeError);
    CHECK_THROWS_AS(g.point_decode(Bytes{}), DecodeError);
    // cross-profile material is structurally malformed, not just invalid
    Scalar wide = prod().scalar_from_u64(5);
    CHECK_THROWS_AS(toy().scalar_add(S(g, 1), wide), DecodeError);
}

TEST_CASE("toy tagged hashes: closed table, additive digests") {
    const Group& g = toy();
    CHECK(g.tagged_hash("Challenge", Bytes{}) == Bytes{1});
    CHECK(g.tagged_hash("Challenge", Bytes{7, 5, 3}) == Bytes{16});
    CHECK(g.tagged_hash("TapTweak", Bytes{5, 6}) == Bytes{13});
    CHECK(g.tagged_hash("SecretCommit", Bytes{4}) == Bytes{8});
    CHECK(g.tagged_hash("SecretCommit", Bytes{19}) == Bytes{0});
    CHECK_THROWS_AS(g.tagged_hash("Unknown", Bytes{}), ProtocolError);
    CHECK(g.message_digest(Bytes{}) == Bytes{0});
    CHECK(g.message_digest(Bytes{200, 56}) == Bytes{256 % 23});
}

TEST_CASE("secp256k1 anchors: generator, order, identity wraparound") {
    const Group& g = prod();
    CHECK(g.generator().hex() ==
          "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
    CHECK(to_hex(g.order()) ==
          "fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141");
    CHECK(g.identity().bytes() == Bytes{0});

    // (q-1)G + G walks off the end of the cycle
    Scalar q_minus_1 = g.scalar_sub(g.scalar_from_u64(0), g.scalar_from_u64(1));
    CHECK(g.point_add(g.mul_gen(q_minus_1), g.generator()) == g.identity());
    CHECK(g.point_add(g.generator(), g.point_negate(g.generator())) == g.identity());
}

TEST_CASE("secp256k1 small multiples match repeated addition") {
    const Group& g = prod();
    Point acc = g.identity();
    for (std::uint64_t k = 1; k <= 8; ++k) {
        acc = g.point_add(acc, g.generator());
        CHECK(acc == g.mul_gen(g.scalar_from_u64(k)));
    }
}

TEST_CASE("secp256k1 scalar field semantics") {
    const Group& g = prod();
    CHECK(g.scalar_to_u64(g.scalar_from_u64(123456789)) == 123456789);
    CHECK(g.scalar_add(g.scalar_from_u64(3), g.scalar_from_u64(4)) == g.scalar_from_u64(7));
    CHECK(g.scalar_mul(g.scalar_from_u64(6), g.scalar_from_u64(7)) == g.scalar_from_u64(42));
    CHECK(g.scalar_sub(g.scalar_from_u64(1), g.scalar_from_u64(2)) ==
          g.scalar_sub(g.scalar_from_u64(0), g.scalar_from_u64(1)));
    // the order itself reduces to zero but does not decode
    CHECK(g.scalar_reduce(g.order()).is_zero());
    CHECK_THROWS_AS(g.scalar_decode(g.order()), DecodeError);
    Bytes big(32, 0xff);  // 2^256 - 1, above the order
    CHECK_THROWS_AS(g.scalar_decode(big), DecodeError);
    Bytes garbage(33, 0xff);  // not a curve point
    CHECK_THROWS_AS(g.point_decode(garbage), DecodeError);
    // large scalars refuse the 64-bit narrowing accessor
    CHECK_THROWS_AS(g.scalar_to_u64(g.scalar_reduce(Bytes(31, 0xee))), ProtocolError);
    // canonical encodings round-trip
    CHECK(g.point_decode(g.generator().bytes()) == g.generator());
    CHECK(g.point_decode(g.identity().bytes()) == g.identity());
}

TEST_CASE("random_scalar is deterministic, seed-sensitive and never zero") {
    for (const Group* g : {&toy(), &prod()}) {
        Bytes seed{1, 2, 3};
        Scalar a = random_scalar(*g, seed);
        Scalar b = random_scalar(*g, seed);
        CHECK(a == b);
        CHECK_FALSE(a.is_zero());
        Scalar c = random_scalar(*g, Bytes{1, 2, 4});
        CHECK_FALSE(c.is_zero());
    }
}
