#include "swapsim/schnorr.hpp"

namespace swapsim {

KeyPair keygen(const Group& g, ByteSpan seed) {
    return keypair_from_secret(g, random_scalar(g, seed));
}

KeyPair keypair_from_secret(const Group& g, const Scalar& secret) {
    if (secret.is_zero()) throw ProtocolError("secret key must be nonzero");
    return {secret, g.mul_gen(secret)};
}

Scalar challenge(const Group& g, const Point& nonce_point, const Point& pub, ByteSpan msg) {
    Bytes payload = concat({nonce_point.bytes(), pub.bytes(), msg});
    return g.tagged_hash_to_scalar("Challenge", payload);
}

Scalar derive_nonce(const Group& g, const Scalar& secret, ByteSpan msg, ByteSpan seed) {
    Bytes material = concat({secret.bytes(), msg, seed});
    for (std::uint8_t counter = 1;; ++counter) {
        Scalar k = g.tagged_hash_to_scalar("Nonce", material);
        if (!k.is_zero()) return k;
        material.push_back(counter);
    }
}

Signature sign(const Group& g, const KeyPair& kp, ByteSpan msg, ByteSpan nonce_seed) {
    return sign_with_nonce(g, kp, msg, derive_nonce(g, kp.secret, msg, nonce_seed));
}

Signature sign_with_nonce(const Group& g, const KeyPair& kp, ByteSpan msg, const Scalar& k) {
    if (k.is_zero()) throw ProtocolError("signing nonce must be nonzero");
    Point r = g.mul_gen(k);
    Scalar e = challenge(g, r, kp.pub, msg);
    Scalar s = g.scalar_add(k, g.scalar_mul(e, kp.secret));
    return {r, s};
}

bool verify(const Group& g, const Signature& sig, const Point& pub, ByteSpan msg) {
    Scalar e = challenge(g, sig.nonce_point, pub, msg);
    Point lhs = g.mul_gen(sig.s);
    Point rhs = g.point_add(sig.nonce_point, g.point_mul(e, pub));
    return lhs == rhs;
}

}  // namespace swapsim
