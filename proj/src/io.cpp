#include "rankcrypt/io.hpp"

#include <fstream>

namespace rankcrypt {

namespace {

const json& field_of(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

unsigned uint_of(const json& j, const char* key) {
    const json& v = field_of(j, key);
    if (!v.is_number_unsigned()) throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
    return v.get<unsigned>();
}

}  // namespace

json vec_to_json(const Field& f, const Vec& v) {
    json a = json::array();
    for (Elem x : v) a.push_back(f.to_hex(x));
    return a;
}

Vec vec_from_json(const Field& f, const json& j) {
    if (!j.is_array()) throw FormatError("expected an array of field elements");
    Vec v;
    for (const auto& e : j) {
        if (!e.is_string()) throw FormatError("field elements must be hex strings");
        try {
            v.push_back(f.from_hex(e.get<std::string>()));
        } catch (const FieldError& err) {
            throw FormatError(err.what());
        }
    }
    return v;
}

json matrix_to_json(const Matrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) a.push_back(vec_to_json(*m.field, m.row(i)));
    return a;
}

Matrix matrix_from_json(const FieldPtr& f, const json& j) {
    if (!j.is_array() || j.empty()) throw FormatError("expected a non-empty array of rows");
    std::vector<Vec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(*f, r));
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) throw FormatError("ragged matrix");
    return Matrix::from_rows(f, rows, rows[0].size());
}

json public_key_to_json(const PublicKey& pk) {
    const Params& p = pk.params;
    return json{{"format", kPublicFormat}, {"q", p.q},       {"m", p.m},
                {"n", p.n},                {"k", p.k},       {"lambda", p.lambda},
                {"t", pk.t},               {"modulus", pk.field->modulus()},
                {"g_pub", matrix_to_json(pk.g_pub)}};
}

PublicKey public_key_from_json(const json& j) {
    const json& fmt = field_of(j, "format");
    if (!fmt.is_string() || fmt.get<std::string>() != kPublicFormat) throw FormatError("unsupported key format");
    PublicKey pk;
    Params& p = pk.params;
    p.q = uint_of(j, "q");
    p.m = uint_of(j, "m");
    p.n = uint_of(j, "n");
    p.k = uint_of(j, "k");
    p.lambda = uint_of(j, "lambda");
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    const json& mod = field_of(j, "modulus");
    if (!mod.is_array()) throw FormatError("modulus must be an array of digits");
    std::vector<unsigned> digits;
    for (const auto& d : mod) {
        if (!d.is_number_unsigned()) throw FormatError("modulus digits must be non-negative integers");
        digits.push_back(d.get<unsigned>());
    }
    try {
        pk.field = Field::make(p.q, p.m, digits);
    } catch (const FieldError& e) {
        throw FormatError(e.what());
    }
    pk.t = uint_of(j, "t");
    if (pk.t != p.t()) throw FormatError("t does not match (n-k)/(2 lambda)");
    pk.g_pub = matrix_from_json(pk.field, field_of(j, "g_pub"));
    if (pk.g_pub.rows != p.k || pk.g_pub.cols != p.n) throw FormatError("g_pub must be k x n");
    return pk;
}

json secret_key_to_json(const SecretKey& sk) {
    json j = public_key_to_json(sk.pub);
    const Field& f = *sk.pub.field;
    j["a"] = vec_to_json(f, sk.a);
    j["gammas"] = vec_to_json(f, sk.gammas);
    j["P"] = matrix_to_json(sk.P);
    json parts = json::array();
    for (const auto& part : sk.p_parts) {
        json rows = json::array();
        for (std::size_t i = 0; i < part.rows; ++i) rows.push_back(part.row(i));
        parts.push_back(rows);
    }
    j["p_parts"] = parts;
    return j;
}

SecretKey secret_key_from_json(const json& j) {
    SecretKey sk;
    sk.pub = public_key_from_json(j);
    const FieldPtr& f = sk.pub.field;
    const Params& p = sk.pub.params;
    sk.a = vec_from_json(*f, field_of(j, "a"));
    sk.gammas = vec_from_json(*f, field_of(j, "gammas"));
    sk.P = matrix_from_json(f, field_of(j, "P"));
    if (sk.a.size() != p.n || sk.gammas.size() != p.lambda || sk.P.rows != p.n || sk.P.cols != p.n)
        throw FormatError("secret key shapes do not match the parameters");
    const json& parts = field_of(j, "p_parts");
    if (!parts.is_array() || parts.size() != p.lambda) throw FormatError("p_parts must hold lambda matrices");
    const FieldPtr base = f->base();
    for (const auto& part : parts) {
        if (!part.is_array() || part.size() != p.n) throw FormatError("p_parts entries must be n x n");
        Matrix mtx(base, p.n, p.n);
        for (std::size_t r = 0; r < p.n; ++r) {
            if (!part[r].is_array() || part[r].size() != p.n) throw FormatError("p_parts entries must be n x n");
            for (std::size_t c = 0; c < p.n; ++c) {
                const json& v = part[r][c];
                if (!v.is_number_unsigned() || v.get<unsigned>() >= p.q) throw FormatError("p_parts entries must lie in F_q");
                mtx.at(r, c) = v.get<Elem>();
            }
        }
        sk.p_parts.push_back(std::move(mtx));
    }
    if (!(transpose(combine_parts(f, sk.gammas, sk.p_parts)) == sk.P))
        throw FormatError("P does not match its F_q parts");
    return sk;
}

json ciphertext_to_json(const Field& f, const Vec& c) { return json{{"c", vec_to_json(f, c)}}; }
Vec ciphertext_from_json(const Field& f, const json& j) { return vec_from_json(f, field_of(j, "c")); }

json message_to_json(const Field& f, const Vec& m) { return json{{"m", vec_to_json(f, m)}}; }
Vec message_from_json(const Field& f, const json& j) { return vec_from_json(f, field_of(j, "m")); }

json recovered_key_to_json(const RecoveredKey& key) {
    const Field& f = *key.field;
    json g = json::array();
    for (const auto& v : key.g_vecs) g.push_back(vec_to_json(f, v));
    return json{{"gammas", vec_to_json(f, key.gammas)}, {"g_vecs", g}, {"verified", key.verified}};
}

RecoveredKey recovered_key_from_json(const FieldPtr& f, const json& j) {
    RecoveredKey key;
    key.field = f;
    key.gammas = vec_from_json(*f, field_of(j, "gammas"));
    const json& g = field_of(j, "g_vecs");
    if (!g.is_array()) throw FormatError("g_vecs must be an array");
    for (const auto& v : g) key.g_vecs.push_back(vec_from_json(*f, v));
    key.lambda = static_cast<unsigned>(key.gammas.size() + 1);
    if (key.g_vecs.size() != key.lambda) throw FormatError("g_vecs must hold one more vector than gammas");
    const json& ver = field_of(j, "verified");
    if (!ver.is_boolean()) throw FormatError("verified must be a boolean");
    key.verified = ver.get<bool>();
    return key;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j, std::ostream& stdout_stream) {
    if (path == "-") {
        stdout_stream << j.dump() << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump() << "\n";
}

}  // namespace rankcrypt
