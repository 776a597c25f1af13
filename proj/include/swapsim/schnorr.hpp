#pragma once

#include "swapsim/group.hpp"

namespace swapsim {

struct KeyPair {
    Scalar secret;
    Point pub;
};

// Create a keypair from seed material (secret drawn uniformly from [1, q)).
KeyPair keygen(const Group& g, ByteSpan seed);
// Rebuild a keypair from a known secret. Zero secrets are rejected.
KeyPair keypair_from_secret(const Group& g, const Scalar& secret);

struct Signature {
    Point nonce_point;  // R
    Scalar s;

    friend bool operator==(const Signature&, const Signature&) = default;
};

// e = H_tag("Challenge", enc(R) || enc(P) || m), reduced mod q.
Scalar challenge(const Group& g, const Point& nonce_point, const Point& pub, ByteSpan msg);

// Deterministic nonce in [1, q) from (secret, message, seed).
Scalar derive_nonce(const Group& g, const Scalar& secret, ByteSpan msg, ByteSpan seed);

// s = k + e*x mod q with a deterministically derived nonce.
Signature sign(const Group& g, const KeyPair& kp, ByteSpan msg, ByteSpan nonce_seed);
// Same equation with a caller-chosen nonce; k = 0 is rejected.
Signature sign_with_nonce(const Group& g, const KeyPair& kp, ByteSpan msg, const Scalar& k);

// True iff s*G == R + e*P.
bool verify(const Group& g, const Signature& sig, const Point& pub, ByteSpan msg);

}  // namespace swapsim
