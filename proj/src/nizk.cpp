#include "tecash/nizk.hpp"

#include <stdexcept>

namespace tecash {

namespace {

Bytes elt_bytes(const NizkElt& e) {
    if (const G1* p = std::get_if<G1>(&e)) return g1_to_bytes(*p);
    if (const G2* p = std::get_if<G2>(&e)) return g2_to_bytes(*p);
    return std::get<Gt>(e).to_bytes();
}

NizkElt elt_mul(const NizkElt& a, const NizkElt& b) {
    if (a.index() != b.index()) throw std::invalid_argument("group mismatch");
    if (const G1* p = std::get_if<G1>(&a)) return *p + std::get<G1>(b);
    if (const G2* p = std::get_if<G2>(&a)) return *p + std::get<G2>(b);
    return std::get<Gt>(a) * std::get<Gt>(b);
}

NizkElt elt_pow(const NizkElt& a, const Scalar& e) {
    if (const G1* p = std::get_if<G1>(&a)) return *p * e;
    if (const G2* p = std::get_if<G2>(&a)) return *p * e;
    return std::get<Gt>(a).pow(e);
}

bool elt_eq(const NizkElt& a, const NizkElt& b) {
    if (a.index() != b.index()) return false;
    if (const G1* p = std::get_if<G1>(&a)) return *p == std::get<G1>(b);
    if (const G2* p = std::get_if<G2>(&a)) return *p == std::get<G2>(b);
    return std::get<Gt>(a) == std::get<Gt>(b);
}

void check_statement(const NizkStatement& st) {
    for (const auto& eq : st.eqs) {
        for (const auto& term : eq.terms) {
            if (term.base.index() != eq.target.index())
                throw std::invalid_argument("mixed groups in equation");
            if (term.witness >= st.witness_count)
                throw std::invalid_argument("witness index out of range");
        }
    }
}

// Evaluates prod base_k ^ s_{i_k} for one equation.
NizkElt eq_combine(const NizkEq& eq, const std::vector<Scalar>& exps) {
    NizkElt acc = eq.target;
    switch (eq.target.index()) {
        case 0: acc = G1::identity(); break;
        case 1: acc = G2::identity(); break;
        default: acc = Gt::unity(); break;
    }
    for (const auto& term : eq.terms)
        acc = elt_mul(acc, elt_pow(term.base, exps[term.witness]));
    return acc;
}

Bytes encode_statement(const NizkStatement& st) {
    Bytes out;
    append_u32(out, st.witness_count);
    append_u32(out, static_cast<std::uint32_t>(st.eqs.size()));
    for (const auto& eq : st.eqs) {
        append_u8(out, static_cast<std::uint8_t>(eq.target.index() + 1));
        append_chunk(out, elt_bytes(eq.target));
        append_u32(out, static_cast<std::uint32_t>(eq.terms.size()));
        for (const auto& term : eq.terms) {
            append_chunk(out, elt_bytes(term.base));
            append_u32(out, term.witness);
        }
    }
    return out;
}

Scalar challenge_of(const NizkStatement& st,
                    const std::vector<NizkElt>& commitments) {
    Bytes transcript = encode_statement(st);
    for (const auto& c : commitments) append_chunk(transcript, elt_bytes(c));
    append_chunk(transcript, st.message);
    return hash_to_scalar(st.context, transcript);
}

}  // namespace

Bytes NizkProof::to_bytes() const {
    Bytes out;
    append(out, scalar_to_bytes(challenge));
    append_u32(out, static_cast<std::uint32_t>(responses.size()));
    for (const auto& s : responses) append(out, scalar_to_bytes(s));
    return out;
}

bool NizkProof::from_bytes(BytesView in, NizkProof& out) {
    try {
        ByteReader rd(in);
        if (!scalar_from_bytes(rd.take(32), out.challenge)) return false;
        std::uint32_t n = rd.u32();
        out.responses.resize(n);
        for (std::uint32_t i = 0; i < n; i++)
            if (!scalar_from_bytes(rd.take(32), out.responses[i])) return false;
        return rd.done();
    } catch (const std::exception&) {
        return false;
    }
}

NizkProof nizk_prove(const NizkStatement& st, const std::vector<Scalar>& wit,
                     Rng& rng) {
    check_statement(st);
    if (wit.size() != st.witness_count)
        throw std::invalid_argument("witness count mismatch");
    for (const auto& eq : st.eqs)
        if (!elt_eq(eq_combine(eq, wit), eq.target))
            throw std::logic_error("statement not satisfied by witness");

    std::vector<Scalar> nonces(st.witness_count);
    for (auto& t : nonces) t = random_scalar(rng);

    std::vector<NizkElt> commitments;
    commitments.reserve(st.eqs.size());
    for (const auto& eq : st.eqs) commitments.push_back(eq_combine(eq, nonces));

    NizkProof pf;
    pf.challenge = challenge_of(st, commitments);
    pf.responses.reserve(st.witness_count);
    for (std::uint32_t i = 0; i < st.witness_count; i++)
        pf.responses.push_back(nonces[i] - pf.challenge * wit[i]);
    return pf;
}

bool nizk_verify(const NizkStatement& st, const NizkProof& proof) {
    try {
        check_statement(st);
    } catch (const std::exception&) {
        return false;
    }
    if (proof.responses.size() != st.witness_count) return false;

    std::vector<NizkElt> commitments;
    commitments.reserve(st.eqs.size());
    for (const auto& eq : st.eqs) {
        NizkElt c = elt_mul(elt_pow(eq.target, proof.challenge),
                            eq_combine(eq, proof.responses));
        commitments.push_back(std::move(c));
    }
    return challenge_of(st, commitments) == proof.challenge;
}

}  // namespace tecash
