#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swapsim/taproot.hpp"

namespace swapsim {

// Deterministic test vectors, one per line:
//   sign    <profile> <x> <msg> <k> <R> <s>
//   presign <profile> <x> <msg> <k> <s_a> <R> <s_star> <Delta> <C>
//   complete <profile> <R> <s_star> <delta> <s_final>
//   extract <profile> <R> <s_star> <s_final> <delta>
//   tweak   <profile> <x> <amount_btc> <amount_eth> <timeout_btc> <timeout_eth>
//           <C> <swap_id> <tweak> <tweaked_pub>
// Scalars, points and byte strings are hex; amounts and timeouts decimal.
// The toy block leads with a fixed hand-checkable anchor set; the rest are
// seeded. Same seed, same lines.
std::vector<std::string> generate_vectors(std::uint64_t seed);

struct VectorFailure {
    std::size_t line = 0;  // 1-based
    std::string reason;
};

// Replays every line and returns the ones that do not reproduce. Blank lines
// and '#' comments are skipped. Malformed lines fail rather than throw.
std::vector<VectorFailure> verify_vector_lines(const std::vector<std::string>& lines);

}  // namespace swapsim
