#pragma once

#include "swapsim/schnorr.hpp"

namespace swapsim {

// Secret unlocking value s_a. Nonzero wherever one is created on purpose.
struct AdaptorSecret {
    Scalar value;

    friend bool operator==(const AdaptorSecret&, const AdaptorSecret&) = default;
};

// Hash commitment C = H(s_a).
struct SecretCommitment {
    Bytes digest;

    std::string hex() const { return to_hex(digest); }
    friend bool operator==(const SecretCommitment&, const SecretCommitment&) = default;
};

// Public image of the secret under the hiding map, here f(s_a) = s_a, so the
// point is s_a * G. Kept behind its own name so a different one-way f could
// slot in without touching call sites.
struct AdaptorPoint {
    Point point;

    friend bool operator==(const AdaptorPoint&, const AdaptorPoint&) = default;
};

AdaptorPoint adaptor_point_of(const Group& g, const AdaptorSecret& secret);

// Pre-signature (R, s*) plus the public adaptor data it was built against.
struct PreSignature {
    Point nonce_point;       // R, shared with the completed signature
    Scalar s_star;           // s* = s_B - delta
    AdaptorPoint adaptor_point;
    SecretCommitment commitment;
};

SecretCommitment commit_secret(const Group& g, const AdaptorSecret& secret);

// Full signature minus the secret: s* = k + e*x - s_a. Deterministic nonce.
PreSignature presign(const Group& g, const KeyPair& kp, ByteSpan msg,
                     const AdaptorSecret& secret, ByteSpan nonce_seed);
PreSignature presign_with_nonce(const Group& g, const KeyPair& kp, ByteSpan msg,
                                const AdaptorSecret& secret, const Scalar& k);

// True iff s**G == R + e*P - Delta, i.e. (R, s*) completes to a valid
// signature exactly under the committed secret.
bool verify_presignature(const Group& g, const PreSignature& ps, const Point& pub,
                         ByteSpan msg);

// s_final = s* + delta. The result verifies iff delta equals the original s_a.
Signature complete(const Group& g, const PreSignature& ps, const AdaptorSecret& delta);

// delta = s_final - s*. Nonce points must match.
AdaptorSecret extract_secret(const Group& g, const Signature& final_sig,
                             const PreSignature& ps);

// H(s) == C and s*G == Delta, both; zero s is always false.
bool check_commitment(const Group& g, const AdaptorSecret& s, const SecretCommitment& c,
                      const AdaptorPoint& adaptor_point);

}  // namespace swapsim
