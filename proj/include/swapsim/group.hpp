#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "swapsim/bytes.hpp"

namespace swapsim {

// Scalar in [0, q), held as its fixed-width big-endian encoding.
// Instances are only produced by a Group, so the range invariant always holds.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(Bytes b) : b_(std::move(b)) {}

    const Bytes& bytes() const { return b_; }
    bool is_zero() const;
    std::string hex() const { return to_hex(b_); }

    friend bool operator==(const Scalar&, const Scalar&) = default;

private:
    Bytes b_;
};

// Group element, held as its canonical encoding. The identity encodes as a
// single zero byte on every profile.
class Point {
public:
    Point() = default;
    explicit Point(Bytes b) : b_(std::move(b)) {}

    const Bytes& bytes() const { return b_; }
    std::string hex() const { return to_hex(b_); }

    friend bool operator==(const Point&, const Point&) = default;

private:
    Bytes b_;
};

// Pluggable cyclic group of prime order q with an attached hash convention.
// Two profiles exist: "toy" (additive group mod 23, additive tagged hashes,
// cryptographically void but fully hand-checkable) and "secp256k1"
// (production curve, tagged SHA-256).
class Group {
public:
    virtual ~Group() = default;

    // Profile registry. Throws ProtocolError for unknown names.
    static const Group& by_name(std::string_view name);

    virtual std::string_view name() const = 0;
    virtual std::size_t scalar_size() const = 0;
    virtual std::size_t point_size() const = 0;  // nominal; identity is 1 byte
    virtual Bytes order() const = 0;             // q, big-endian

    // --- scalars ---------------------------------------------------------
    virtual Scalar scalar_from_u64(std::uint64_t v) const = 0;  // reduced mod q
    virtual Scalar scalar_decode(ByteSpan in) const = 0;        // exact width, < q
    virtual Scalar scalar_add(const Scalar& a, const Scalar& b) const = 0;
    virtual Scalar scalar_sub(const Scalar& a, const Scalar& b) const = 0;
    virtual Scalar scalar_mul(const Scalar& a, const Scalar& b) const = 0;
    // Interprets arbitrary-length big-endian bytes, reduced mod q.
    virtual Scalar scalar_reduce(ByteSpan wide) const = 0;
    virtual std::uint64_t scalar_to_u64(const Scalar& s) const = 0;

    // --- points ----------------------------------------------------------
    virtual Point generator() const = 0;
    virtual Point identity() const = 0;
    virtual Point point_decode(ByteSpan in) const = 0;
    virtual Point point_add(const Point& a, const Point& b) const = 0;
    virtual Point point_negate(const Point& a) const = 0;
    virtual Point point_mul(const Scalar& k, const Point& p) const = 0;

    bool is_identity(const Point& p) const { return p == identity(); }
    Point mul_gen(const Scalar& k) const { return point_mul(k, generator()); }

    // --- hashing ---------------------------------------------------------
    // Domain-separated hash. Tags are a closed table shared by both profiles:
    // Challenge, TapTweak, Nonce, SecretCommit, Random.
    virtual Bytes tagged_hash(std::string_view tag, ByteSpan payload) const = 0;
    // Profile message digest (1 byte on toy, SHA-256 on secp256k1).
    virtual Bytes message_digest(ByteSpan payload) const = 0;

    Scalar tagged_hash_to_scalar(std::string_view tag, ByteSpan payload) const;
};

// Deterministic scalar in [1, q): tagged hash of the seed, resampled with an
// appended counter byte while the reduction hits zero.
Scalar random_scalar(const Group& g, ByteSpan seed);

}  // namespace swapsim
