#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swapsim {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

// Base error for protocol-level failures (precondition violations, misuse).
class ProtocolError : public std::runtime_error {
public:
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed wire data: bad hex, wrong length, out-of-range scalar, off-curve
// point. Deliberately distinct from a verification returning false.
class DecodeError : public ProtocolError {
public:
    explicit DecodeError(const std::string& what) : ProtocolError(what) {}
};

std::string to_hex(ByteSpan data);
Bytes from_hex(const std::string& hex);  // throws DecodeError

Bytes concat(std::initializer_list<ByteSpan> parts);

// Big-endian fixed-width integer append, used by every canonical serialization.
void append_u64be(Bytes& out, std::uint64_t v);
// Length-prefixed (16-bit big-endian) byte field; keeps serializations injective.
void append_field(Bytes& out, ByteSpan field);

std::uint64_t read_u64be(ByteSpan in, std::size_t offset);

// Plain SHA-256, independent of any group profile. Used for trace hashing.
Bytes sha256(ByteSpan data);

}  // namespace swapsim
