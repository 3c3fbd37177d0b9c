#include "tecash/artifact.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace tecash {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "v1";

void put_g1(Bytes& out, const G1& p) { append(out, g1_to_bytes(p)); }
void put_g2(Bytes& out, const G2& p) { append(out, g2_to_bytes(p)); }
void put_scalar(Bytes& out, const Scalar& s) { append(out, scalar_to_bytes(s)); }

G1 get_g1(ByteReader& rd) {
    G1 p;
    if (!g1_from_bytes(rd.take(48), p)) throw std::runtime_error("bad g1");
    return p;
}
G2 get_g2(ByteReader& rd) {
    G2 p;
    if (!g2_from_bytes(rd.take(96), p)) throw std::runtime_error("bad g2");
    return p;
}
Scalar get_scalar(ByteReader& rd) {
    Scalar s;
    if (!scalar_from_bytes(rd.take(32), s)) throw std::runtime_error("bad scalar");
    return s;
}

void put_ps_sig(Bytes& out, const PsSignature& s) {
    put_g1(out, s.h);
    put_g1(out, s.s);
}
PsSignature get_ps_sig(ByteReader& rd) {
    PsSignature s;
    s.h = get_g1(rd);
    s.s = get_g1(rd);
    return s;
}

void put_ps_pk(Bytes& out, const PsPublicKey& pk) {
    put_g2(out, pk.alpha_tilde);
    append_u32(out, static_cast<std::uint32_t>(pk.betas.size()));
    for (const auto& [b, bt] : pk.betas) {
        put_g1(out, b);
        put_g2(out, bt);
    }
}
PsPublicKey get_ps_pk(ByteReader& rd) {
    PsPublicKey pk;
    pk.alpha_tilde = get_g2(rd);
    std::uint32_t q = rd.u32();
    if (q > 64) throw std::runtime_error("bad key arity");
    for (std::uint32_t j = 0; j < q; j++) {
        G1 b = get_g1(rd);
        pk.betas.emplace_back(b, get_g2(rd));
    }
    return pk;
}

void put_pub_share(Bytes& out, const AuthorityPublicShare& s) {
    append_u32(out, s.index);
    put_g2(out, s.alpha_tilde);
    put_g1(out, s.beta1);
    put_g1(out, s.beta2);
    put_g2(out, s.beta1_tilde);
    put_g2(out, s.beta2_tilde);
}
AuthorityPublicShare get_pub_share(ByteReader& rd) {
    AuthorityPublicShare s;
    s.index = rd.u32();
    s.alpha_tilde = get_g2(rd);
    s.beta1 = get_g1(rd);
    s.beta2 = get_g1(rd);
    s.beta1_tilde = get_g2(rd);
    s.beta2_tilde = get_g2(rd);
    return s;
}

template <typename F>
bool safe_decode(BytesView in, F&& body) {
    try {
        ByteReader rd(in);
        body(rd);
        return rd.done();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

void write_artifact(const std::string& path, const std::string& kind,
                    const std::string& scheme, BytesView payload) {
    json j;
    j["kind"] = kind;
    j["scheme"] = scheme;
    j["version"] = kVersion;
    j["payload_b64"] = base64_encode(payload);
    std::ofstream out(path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write " + path);
}

bool read_artifact(const std::string& path, const std::string& expect_kind,
                   const std::string& expect_scheme, Bytes& payload,
                   std::string* scheme_out) {
    try {
        std::ifstream in(path);
        if (!in) return false;
        json j = json::parse(in);
        if (j.at("version").get<std::string>() != kVersion) return false;
        if (j.at("kind").get<std::string>() != expect_kind) return false;
        std::string scheme = j.at("scheme").get<std::string>();
        if (!expect_scheme.empty() && scheme != expect_scheme) return false;
        payload = base64_decode(j.at("payload_b64").get<std::string>());
        if (scheme_out) *scheme_out = scheme;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

Bytes encode_compact_params(const CompactParams& pp) {
    Bytes out;
    append_u32(out, pp.L);
    put_g1(out, pp.gamma1);
    put_g1(out, pp.gamma2);
    put_g1(out, pp.delta);
    put_ps_pk(out, pp.sm_pk);
    for (const auto& s : pp.range_sigs) put_ps_sig(out, s);
    return out;
}

bool decode_compact_params(BytesView in, CompactParams& out) {
    return safe_decode(in, [&](ByteReader& rd) {
        out.L = rd.u32();
        if (out.L == 0 || out.L > 4096) throw std::runtime_error("bad L");
        out.gamma1 = get_g1(rd);
        out.gamma2 = get_g1(rd);
        out.delta = get_g1(rd);
        out.sm_pk = get_ps_pk(rd);
        out.range_sigs.clear();
        for (std::uint32_t l = 0; l < out.L; l++)
            out.range_sigs.push_back(get_ps_sig(rd));
    });
}

Bytes encode_divisible_bundle(const DivisibleParams& pp,
                              const DivisibleAuthorityParams& auth) {
    Bytes out;
    append_u32(out, pp.L);
    for (const G1* p : {&pp.eta, &pp.gamma1, &pp.gamma2, &pp.psi, &pp.zeta,
                        &pp.theta})
        put_g1(out, *p);
    put_g2(out, pp.psi_tilde);
    for (const auto& lvl : pp.levels) {
        put_g1(out, lvl.eta_l);
        put_g1(out, lvl.zeta_l);
        put_g1(out, lvl.theta_l);
        put_g1(out, lvl.tau.R);
        put_g1(out, lvl.tau.S);
        put_g2(out, lvl.tau.T);
    }
    for (const auto& d : pp.delta_tilde) put_g2(out, d);
    for (const G2* p : {&pp.sps_pk.Y, &pp.sps_pk.W1, &pp.sps_pk.W2,
                        &pp.sps_pk.Z})
        put_g2(out, *p);
    for (const auto& row : auth.eta_tilde)
        for (const auto& e : row) put_g2(out, e);
    return out;
}

bool decode_divisible_bundle(BytesView in, DivisibleParams& pp,
                             DivisibleAuthorityParams& auth) {
    return safe_decode(in, [&](ByteReader& rd) {
        pp.L = rd.u32();
        if (pp.L == 0 || pp.L > 512) throw std::runtime_error("bad L");
        pp.eta = get_g1(rd);
        pp.gamma1 = get_g1(rd);
        pp.gamma2 = get_g1(rd);
        pp.psi = get_g1(rd);
        pp.zeta = get_g1(rd);
        pp.theta = get_g1(rd);
        pp.psi_tilde = get_g2(rd);
        pp.levels.clear();
        for (std::uint32_t l = 0; l < pp.L; l++) {
            DivisibleLevel lvl;
            lvl.eta_l = get_g1(rd);
            lvl.zeta_l = get_g1(rd);
            lvl.theta_l = get_g1(rd);
            lvl.tau.R = get_g1(rd);
            lvl.tau.S = get_g1(rd);
            lvl.tau.T = get_g2(rd);
            pp.levels.push_back(std::move(lvl));
        }
        pp.delta_tilde.clear();
        for (std::uint32_t k = 0; k < pp.L; k++)
            pp.delta_tilde.push_back(get_g2(rd));
        pp.sps_pk.Y = get_g2(rd);
        pp.sps_pk.W1 = get_g2(rd);
        pp.sps_pk.W2 = get_g2(rd);
        pp.sps_pk.Z = get_g2(rd);
        auth.eta_tilde.clear();
        for (std::uint32_t l = 1; l <= pp.L; l++) {
            std::vector<G2> row;
            for (std::uint32_t k = 0; k < l; k++) row.push_back(get_g2(rd));
            auth.eta_tilde.push_back(std::move(row));
        }
    });
}

Bytes encode_vk(const VerificationKey& vk) {
    Bytes out;
    put_g2(out, vk.alpha_tilde);
    put_g1(out, vk.beta1);
    put_g1(out, vk.beta2);
    put_g2(out, vk.beta1_tilde);
    put_g2(out, vk.beta2_tilde);
    return out;
}

bool decode_vk(BytesView in, VerificationKey& out) {
    return safe_decode(in, [&](ByteReader& rd) {
        out.alpha_tilde = get_g2(rd);
        out.beta1 = get_g1(rd);
        out.beta2 = get_g1(rd);
        out.beta1_tilde = get_g2(rd);
        out.beta2_tilde = get_g2(rd);
    });
}

Bytes encode_authority_share(const AuthorityKeyShare& sk,
                             const AuthorityPublicShare& pk) {
    Bytes out;
    append_u32(out, sk.index);
    put_scalar(out, sk.x);
    put_scalar(out, sk.y1);
    put_scalar(out, sk.y2);
    put_pub_share(out, pk);
    return out;
}

bool decode_authority_share(BytesView in, AuthorityKeyShare& sk,
                            AuthorityPublicShare& pk) {
    return safe_decode(in, [&](ByteReader& rd) {
        sk.index = rd.u32();
        sk.x = get_scalar(rd);
        sk.y1 = get_scalar(rd);
        sk.y2 = get_scalar(rd);
        pk = get_pub_share(rd);
        if (pk.index != sk.index) throw std::runtime_error("index mismatch");
    });
}

Bytes encode_user_key(const UserKeyPair& user) {
    Bytes out;
    put_scalar(out, user.sk);
    put_g1(out, user.pk);
    return out;
}

bool decode_user_key(BytesView in, UserKeyPair& out) {
    return safe_decode(in, [&](ByteReader& rd) {
        out.sk = get_scalar(rd);
        out.pk = get_g1(rd);
        if (out.pk != g1_generator() * out.sk)
            throw std::runtime_error("inconsistent keypair");
    });
}

Bytes encode_wallet(const Wallet& w) {
    Bytes out;
    append_u8(out, static_cast<std::uint8_t>(w.scheme));
    append_u32(out, w.l);
    put_scalar(out, w.sn);
    put_ps_sig(out, w.sigma);
    return out;
}

bool decode_wallet(BytesView in, Wallet& out) {
    return safe_decode(in, [&](ByteReader& rd) {
        std::uint8_t tag = rd.u8();
        if (tag != 1 && tag != 2) throw std::runtime_error("bad scheme tag");
        out.scheme = static_cast<SchemeTag>(tag);
        out.l = rd.u32();
        out.sn = get_scalar(rd);
        out.sigma = get_ps_sig(rd);
    });
}

Bytes encode_request(const WithdrawalRequest& req) {
    Bytes out;
    put_g1(out, req.h);
    put_g1(out, req.com);
    put_g1(out, req.com1);
    put_g1(out, req.com2);
    append_chunk(out, req.pi.to_bytes());
    return out;
}

bool decode_request(BytesView in, WithdrawalRequest& out) {
    return safe_decode(in, [&](ByteReader& rd) {
        out.h = get_g1(rd);
        out.com = get_g1(rd);
        out.com1 = get_g1(rd);
        out.com2 = get_g1(rd);
        if (!NizkProof::from_bytes(rd.chunk(), out.pi))
            throw std::runtime_error("bad proof");
    });
}

Bytes encode_request_info(const RequestInfo& info) {
    Bytes out;
    put_g1(out, info.h);
    put_scalar(out, info.o1);
    put_scalar(out, info.o2);
    put_scalar(out, info.sn);
    return out;
}

bool decode_request_info(BytesView in, RequestInfo& out) {
    return safe_decode(in, [&](ByteReader& rd) {
        out.h = get_g1(rd);
        out.o1 = get_scalar(rd);
        out.o2 = get_scalar(rd);
        out.sn = get_scalar(rd);
    });
}

Bytes encode_blind_share(const BlindShare& share,
                         const AuthorityPublicShare& pub) {
    Bytes out;
    put_g1(out, share.h);
    put_g1(out, share.c);
    put_pub_share(out, pub);
    return out;
}

bool decode_blind_share(BytesView in, BlindShare& share,
                        AuthorityPublicShare& pub) {
    return safe_decode(in, [&](ByteReader& rd) {
        share.h = get_g1(rd);
        share.c = get_g1(rd);
        pub = get_pub_share(rd);
    });
}

Bytes encode_payment_bundle(BytesView payment, BytesView info) {
    Bytes out;
    append_chunk(out, payment);
    append_chunk(out, info);
    return out;
}

bool decode_payment_bundle(BytesView in, Bytes& payment, Bytes& info) {
    return safe_decode(in, [&](ByteReader& rd) {
        payment = rd.chunk();
        info = rd.chunk();
    });
}

Bytes encode_registry(const std::vector<G1>& pks) {
    Bytes out;
    append_u32(out, static_cast<std::uint32_t>(pks.size()));
    for (const G1& pk : pks) put_g1(out, pk);
    return out;
}

bool decode_registry(BytesView in, std::vector<G1>& out) {
    return safe_decode(in, [&](ByteReader& rd) {
        std::uint32_t n = rd.u32();
        if (n > 100000) throw std::runtime_error("registry too large");
        out.clear();
        for (std::uint32_t i = 0; i < n; i++) out.push_back(get_g1(rd));
    });
}

}  // namespace tecash
