#include "swapsim/group.hpp"

// Additive group Z_23: points and scalars are residues mod 23, the generator
// is 1, point "multiplication" k*P is modular multiplication. One-byte
// encodings keep every vector hand-checkable. Cryptographically void by
// design; its job is exhaustive algebra, not security.

namespace swapsim {

namespace {

constexpr std::uint64_t kOrder = 23;

std::uint64_t tag_constant(std::string_view tag) {
    if (tag == "Challenge") return 1;
    if (tag == "TapTweak") return 2;
    if (tag == "Nonce") return 3;
    if (tag == "SecretCommit") return 4;
    if (tag == "Random") return 5;
    throw ProtocolError("unknown hash tag: " + std::string(tag));
}

class ToyGroup final : public Group {
public:
    std::string_view name() const override { return "toy"; }
    std::size_t scalar_size() const override { return 1; }
    std::size_t point_size() const override { return 1; }
    Bytes order() const override { return {kOrder}; }

    Scalar scalar_from_u64(std::uint64_t v) const override {
        return Scalar{{static_cast<std::uint8_t>(v % kOrder)}};
    }

    Scalar scalar_decode(ByteSpan in) const override {
        if (in.size() != 1) throw DecodeError("toy scalar must be 1 byte");
        if (in[0] >= kOrder) throw DecodeError("toy scalar out of range");
        return Scalar{{in[0]}};
    }

    Scalar scalar_add(const Scalar& a, const Scalar& b) const override {
        return scalar_from_u64(value(a) + value(b));
    }

    Scalar scalar_sub(const Scalar& a, const Scalar& b) const override {
        return scalar_from_u64(value(a) + kOrder - value(b));
    }

    Scalar scalar_mul(const Scalar& a, const Scalar& b) const override {
        return scalar_from_u64(value(a) * value(b));
    }

    Scalar scalar_reduce(ByteSpan wide) const override {
        std::uint64_t acc = 0;
        // Horner mod 23 over big-endian bytes.
        for (std::uint8_t b : wide) acc = (acc * 256 + b) % kOrder;
        return Scalar{{static_cast<std::uint8_t>(acc)}};
    }

    std::uint64_t scalar_to_u64(const Scalar& s) const override { return value(s); }

    Point generator() const override { return Point{{1}}; }
    Point identity() const override { return Point{{0}}; }

    Point point_decode(ByteSpan in) const override {
        if (in.size() != 1) throw DecodeError("toy point must be 1 byte");
        if (in[0] >= kOrder) throw DecodeError("toy point out of range");
        return Point{{in[0]}};
    }

    Point point_add(const Point& a, const Point& b) const override {
        return Point{{static_cast<std::uint8_t>((pvalue(a) + pvalue(b)) % kOrder)}};
    }

    Point point_negate(const Point& a) const override {
        return Point{{static_cast<std::uint8_t>((kOrder - pvalue(a)) % kOrder)}};
    }

    Point point_mul(const Scalar& k, const Point& p) const override {
        return Point{{static_cast<std::uint8_t>(value(k) * pvalue(p) % kOrder)}};
    }

    Bytes tagged_hash(std::string_view tag, ByteSpan payload) const override {
        std::uint64_t acc = tag_constant(tag);
        for (std::uint8_t b : payload) acc = (acc + b) % kOrder;
        return {static_cast<std::uint8_t>(acc)};
    }

    Bytes message_digest(ByteSpan payload) const override {
        std::uint64_t acc = 0;
        for (std::uint8_t b : payload) acc = (acc + b) % kOrder;
        return {static_cast<std::uint8_t>(acc)};
    }

private:
    static std::uint64_t value(const Scalar& s) {
        if (s.bytes().size() != 1) throw DecodeError("scalar from another profile");
        return s.bytes()[0];
    }
    static std::uint64_t pvalue(const Point& p) {
        if (p.bytes().size() != 1) throw DecodeError("point from another profile");
        return p.bytes()[0];
    }
};

}  // namespace

const Group& toy_group() {
    static const ToyGroup g;
    return g;
}

}  // namespace swapsim
