#include "swapsim/group.hpp"

#include <algorithm>

namespace swapsim {

const Group& toy_group();        // group_toy.cpp
const Group& secp256k1_group();  // group_secp256k1.cpp

bool Scalar::is_zero() const {
    return !b_.empty() &&
           std::all_of(b_.begin(), b_.end(), [](std::uint8_t x) { return x == 0; });
}

const Group& Group::by_name(std::string_view name) {
    if (name == "toy") return toy_group();
    if (name == "secp256k1") return secp256k1_group();
    throw ProtocolError("unknown group profile: " + std::string(name));
}

Scalar Group::tagged_hash_to_scalar(std::string_view tag, ByteSpan payload) const {
    return scalar_reduce(tagged_hash(tag, payload));
}

Scalar random_scalar(const Group& g, ByteSpan seed) {
    Bytes material(seed.begin(), seed.end());
    for (std::uint8_t counter = 1;; ++counter) {
        Scalar s = g.scalar_reduce(g.tagged_hash("Random", material));
        if (!s.is_zero()) return s;
        material.push_back(counter);  // nonzero byte, changes both profiles' digests
    }
}

}  // namespace swapsim
