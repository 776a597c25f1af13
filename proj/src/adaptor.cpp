#include "swapsim/adaptor.hpp"

namespace swapsim {

AdaptorPoint adaptor_point_of(const Group& g, const AdaptorSecret& secret) {
    return {g.mul_gen(secret.value)};
}

SecretCommitment commit_secret(const Group& g, const AdaptorSecret& secret) {
    if (secret.value.is_zero()) throw ProtocolError("adaptor secret must be nonzero");
    return {g.tagged_hash("SecretCommit", secret.value.bytes())};
}

PreSignature presign(const Group& g, const KeyPair& kp, ByteSpan msg,
                     const AdaptorSecret& secret, ByteSpan nonce_seed) {
    return presign_with_nonce(g, kp, msg, secret, derive_nonce(g, kp.secret, msg, nonce_seed));
}

PreSignature presign_with_nonce(const Group& g, const KeyPair& kp, ByteSpan msg,
                                const AdaptorSecret& secret, const Scalar& k) {
    SecretCommitment c = commit_secret(g, secret);  // rejects zero secrets
    Signature full = sign_with_nonce(g, kp, msg, k);
    Scalar s_star = g.scalar_sub(full.s, secret.value);
    return {full.nonce_point, s_star, adaptor_point_of(g, secret), c};
}

bool verify_presignature(const Group& g, const PreSignature& ps, const Point& pub,
                         ByteSpan msg) {
    Scalar e = challenge(g, ps.nonce_point, pub, msg);
    Point lhs = g.mul_gen(ps.s_star);
    Point rhs = g.point_add(g.point_add(ps.nonce_point, g.point_mul(e, pub)),
                            g.point_negate(ps.adaptor_point.point));
    return lhs == rhs;
}

Signature complete(const Group& g, const PreSignature& ps, const AdaptorSecret& delta) {
    return {ps.nonce_point, g.scalar_add(ps.s_star, delta.value)};
}

AdaptorSecret extract_secret(const Group& g, const Signature& final_sig,
                             const PreSignature& ps) {
    if (final_sig.nonce_point != ps.nonce_point)
        throw ProtocolError("nonce point mismatch between signature and pre-signature");
    return {g.scalar_sub(final_sig.s, ps.s_star)};
}

bool check_commitment(const Group& g, const AdaptorSecret& s, const SecretCommitment& c,
                      const AdaptorPoint& adaptor_point) {
    if (s.value.is_zero()) return false;
    return commit_secret(g, s) == c && adaptor_point_of(g, s) == adaptor_point;
}

}  // namespace swapsim
