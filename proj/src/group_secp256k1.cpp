#define OPENSSL_SUPPRESS_DEPRECATED  // low-level EC/BN API, deliberate

#include <memory>

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/obj_mac.h>

#include "swapsim/group.hpp"

// secp256k1 via OpenSSL libcrypto. Scalars are 32-byte big-endian values
// below the curve order; points are 33-byte compressed encodings, with the
// identity as a single zero byte (OpenSSL's infinity encoding). Tagged hashes
// follow the double-tag-prefix SHA-256 construction.

namespace swapsim {

namespace {

struct BnDeleter {
    void operator()(BIGNUM* p) const { BN_free(p); }
};
struct BnCtxDeleter {
    void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct EcPointDeleter {
    void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using EcPointPtr = std::unique_ptr<EC_POINT, EcPointDeleter>;

[[noreturn]] void fail(const char* what) { throw ProtocolError(what); }

const EC_GROUP* curve() {
    static EC_GROUP* g = [] {
        EC_GROUP* grp = EC_GROUP_new_by_curve_name(NID_secp256k1);
        if (!grp) fail("EC_GROUP_new_by_curve_name failed");
        return grp;
    }();
    return g;
}

const BIGNUM* curve_order() {
    static BIGNUM* n = [] {
        BIGNUM* bn = BN_new();
        if (!bn || EC_GROUP_get_order(curve(), bn, nullptr) != 1)
            fail("EC_GROUP_get_order failed");
        return bn;
    }();
    return n;
}

Bytes bn_to_bytes32(const BIGNUM* bn) {
    Bytes out(32);
    if (BN_bn2binpad(bn, out.data(), 32) != 32) fail("BN_bn2binpad failed");
    return out;
}

BnPtr bytes_to_bn(ByteSpan in) {
    BnPtr bn(BN_bin2bn(in.data(), static_cast<int>(in.size()), nullptr));
    if (!bn) fail("BN_bin2bn failed");
    return bn;
}

// SHA256(SHA256(tag) || SHA256(tag) || payload)
Bytes sha256_tagged(std::string_view tag, ByteSpan payload) {
    Bytes tag_hash = sha256({reinterpret_cast<const std::uint8_t*>(tag.data()), tag.size()});
    Bytes buf = concat({tag_hash, tag_hash, payload});
    return sha256(buf);
}

class Secp256k1Group final : public Group {
public:
    std::string_view name() const override { return "secp256k1"; }
    std::size_t scalar_size() const override { return 32; }
    std::size_t point_size() const override { return 33; }
    Bytes order() const override { return bn_to_bytes32(curve_order()); }

    Scalar scalar_from_u64(std::uint64_t v) const override {
        Bytes wide;
        append_u64be(wide, v);
        return scalar_reduce(wide);  // v < n always, reduction is a formality
    }

    Scalar scalar_decode(ByteSpan in) const override {
        if (in.size() != 32) throw DecodeError("scalar must be 32 bytes");
        BnPtr bn = bytes_to_bn(in);
        if (BN_cmp(bn.get(), curve_order()) >= 0)
            throw DecodeError("scalar not below group order");
        return Scalar{Bytes(in.begin(), in.end())};
    }

    Scalar scalar_add(const Scalar& a, const Scalar& b) const override {
        return mod_op(a, b, BN_mod_add);
    }
    Scalar scalar_sub(const Scalar& a, const Scalar& b) const override {
        return mod_op(a, b, BN_mod_sub);
    }
    Scalar scalar_mul(const Scalar& a, const Scalar& b) const override {
        return mod_op(a, b, BN_mod_mul);
    }

    Scalar scalar_reduce(ByteSpan wide) const override {
        BnPtr bn = bytes_to_bn(wide);
        BnCtxPtr ctx(BN_CTX_new());
        BnPtr r(BN_new());
        if (!ctx || !r || BN_nnmod(r.get(), bn.get(), curve_order(), ctx.get()) != 1)
            fail("BN_nnmod failed");
        return Scalar{bn_to_bytes32(r.get())};
    }

    std::uint64_t scalar_to_u64(const Scalar& s) const override {
        const Bytes& b = s.bytes();
        if (b.size() != 32) throw DecodeError("scalar from another profile");
        for (std::size_t i = 0; i < 24; ++i)
            if (b[i] != 0) throw ProtocolError("scalar exceeds 64 bits");
        return read_u64be(b, 24);
    }

    Point generator() const override {
        return encode_point(EC_GROUP_get0_generator(curve()));
    }

    Point identity() const override { return Point{{0}}; }

    Point point_decode(ByteSpan in) const override {
        if (in.size() == 1 && in[0] == 0) return identity();
        if (in.size() != 33) throw DecodeError("point must be 33 bytes compressed");
        BnCtxPtr ctx(BN_CTX_new());
        EcPointPtr p(EC_POINT_new(curve()));
        if (!ctx || !p) fail("EC_POINT_new failed");
        if (EC_POINT_oct2point(curve(), p.get(), in.data(), in.size(), ctx.get()) != 1)
            throw DecodeError("invalid point encoding");
        return Point{Bytes(in.begin(), in.end())};
    }

    Point point_add(const Point& a, const Point& b) const override {
        BnCtxPtr ctx(BN_CTX_new());
        EcPointPtr pa = decode_point(a), pb = decode_point(b), r(EC_POINT_new(curve()));
        if (!ctx || !r || EC_POINT_add(curve(), r.get(), pa.get(), pb.get(), ctx.get()) != 1)
            fail("EC_POINT_add failed");
        return encode_point(r.get());
    }

    Point point_negate(const Point& a) const override {
        BnCtxPtr ctx(BN_CTX_new());
        EcPointPtr p = decode_point(a);
        if (!ctx || EC_POINT_invert(curve(), p.get(), ctx.get()) != 1)
            fail("EC_POINT_invert failed");
        return encode_point(p.get());
    }

    Point point_mul(const Scalar& k, const Point& p) const override {
        BnCtxPtr ctx(BN_CTX_new());
        BnPtr bk = bytes_to_bn(k.bytes());
        EcPointPtr pp = decode_point(p), r(EC_POINT_new(curve()));
        if (!ctx || !r ||
            EC_POINT_mul(curve(), r.get(), nullptr, pp.get(), bk.get(), ctx.get()) != 1)
            fail("EC_POINT_mul failed");
        return encode_point(r.get());
    }

    Bytes tagged_hash(std::string_view tag, ByteSpan payload) const override {
        return sha256_tagged(tag, payload);
    }

    Bytes message_digest(ByteSpan payload) const override { return sha256(payload); }

private:
    template <typename Op>
    Scalar mod_op(const Scalar& a, const Scalar& b, Op op) const {
        BnCtxPtr ctx(BN_CTX_new());
        BnPtr ba = bytes_to_bn(a.bytes());
        BnPtr bb = bytes_to_bn(b.bytes());
        BnPtr r(BN_new());
        if (!ctx || !r || op(r.get(), ba.get(), bb.get(), curve_order(), ctx.get()) != 1)
            fail("BN mod arithmetic failed");
        return Scalar{bn_to_bytes32(r.get())};
    }

    static EcPointPtr decode_point(const Point& p) {
        BnCtxPtr ctx(BN_CTX_new());
        EcPointPtr out(EC_POINT_new(curve()));
        if (!ctx || !out) fail("EC_POINT_new failed");
        const Bytes& b = p.bytes();
        if (b.size() == 1 && b[0] == 0) {
            if (EC_POINT_set_to_infinity(curve(), out.get()) != 1)
                fail("EC_POINT_set_to_infinity failed");
            return out;
        }
        if (EC_POINT_oct2point(curve(), out.get(), b.data(), b.size(), ctx.get()) != 1)
            throw DecodeError("invalid point encoding");
        return out;
    }

    static Point encode_point(const EC_POINT* p) {
        BnCtxPtr ctx(BN_CTX_new());
        if (EC_POINT_is_at_infinity(curve(), p)) return Point{{0}};
        Bytes out(33);
        std::size_t n = EC_POINT_point2oct(curve(), p, POINT_CONVERSION_COMPRESSED,
                                           out.data(), out.size(), ctx.get());
        if (n != 33) fail("EC_POINT_point2oct failed");
        return Point{std::move(out)};
    }
};

}  // namespace

const Group& secp256k1_group() {
    static const Secp256k1Group g;
    return g;
}

}  // namespace swapsim
