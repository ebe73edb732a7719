// Python bindings. Keys, ciphertexts and recovered keys cross the boundary as
// the same JSON documents the command-line tool reads and writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rankcrypt/attack.hpp"
#include "rankcrypt/identities.hpp"
#include "rankcrypt/io.hpp"
#include "rankcrypt/qspaces.hpp"

namespace py = pybind11;
using namespace rankcrypt;

namespace {

std::pair<std::string, std::string> py_keygen(unsigned q, unsigned m, unsigned n, unsigned k, unsigned lambda,
                                               std::uint64_t seed) {
    const auto kp = keygen(Params{q, m, n, k, lambda}, seed);
    return {public_key_to_json(kp.pub).dump(), secret_key_to_json(kp.sec).dump()};
}

std::string py_encrypt(const std::string& pub, std::optional<std::vector<std::string>> msg, std::uint64_t seed) {
    const auto pk = public_key_from_json(json::parse(pub));
    Vec m;
    if (msg) {
        m = vec_from_json(*pk.field, json(*msg));
        if (m.size() != pk.params.k) throw std::invalid_argument("message must have k entries");
    } else {
        m = random_message(pk, seed);
    }
    return ciphertext_to_json(*pk.field, encrypt(pk, m, seed)).dump();
}

std::vector<std::string> hex_list(const Field& f, const Vec& v) { return vec_to_json(f, v).get<std::vector<std::string>>(); }

std::vector<std::string> py_decrypt(const std::string& sec, const std::string& ct) {
    const auto sk = secret_key_from_json(json::parse(sec));
    return hex_list(*sk.pub.field, decrypt(sk, ciphertext_from_json(*sk.pub.field, json::parse(ct))));
}

std::vector<std::string> py_decrypt_recovered(const std::string& rec, const std::string& pub, const std::string& ct) {
    const auto pk = public_key_from_json(json::parse(pub));
    const auto key = recovered_key_from_json(pk.field, json::parse(rec));
    return hex_list(*pk.field, decrypt_with_recovered(key, pk, ciphertext_from_json(*pk.field, json::parse(ct))));
}

py::dict py_distinguish(const std::string& pub, std::size_t lambda) {
    const auto pk = public_key_from_json(json::parse(pub));
    const auto r = distinguish(pk.g_pub, lambda ? lambda : pk.params.lambda);
    py::dict d;
    d["observed_dim"] = r.observed_dim;
    d["bound"] = r.bound;
    d["random_expected"] = r.random_expected;
    d["is_distinguishable"] = r.is_distinguishable;
    d["reason"] = r.reason;
    return d;
}

std::optional<std::string> py_attack(const std::string& pub, unsigned lambda) {
    const auto pk = public_key_from_json(json::parse(pub));
    if (!lambda) lambda = pk.params.lambda;
    AttackResult res;
    {
        py::gil_scoped_release release;
        if (lambda == 2)
            res = attack2(pk.g_pub);
        else if (lambda == 3)
            res = attack3(pk.g_pub);
        else
            throw std::invalid_argument("key recovery supports lambda 2 and 3");
    }
    if (!res.key) return std::nullopt;
    return recovered_key_to_json(*res.key).dump();
}

bool py_verify(const std::string& pub, const std::string& rec) {
    const auto pk = public_key_from_json(json::parse(pub));
    return verify_alternate(recovered_key_from_json(pk.field, json::parse(rec)), right_kernel(pk.g_pub));
}

std::vector<std::pair<std::string, bool>> py_identities(unsigned q) {
    if (q != 2 && q != 3) throw std::invalid_argument("q must be 2 or 3");
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& c : polynomial_identities(q)) out.emplace_back(c.name, c.ok);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<DecodingError>(m, "DecodingError", PyExc_RuntimeError);
    m.def("keygen", &py_keygen, py::arg("q"), py::arg("m"), py::arg("n"), py::arg("k"), py::arg("lam"),
          py::arg("seed"));
    m.def("encrypt", &py_encrypt, py::arg("pub"), py::arg("msg") = py::none(), py::arg("seed") = 0);
    m.def("decrypt", &py_decrypt, py::arg("sec"), py::arg("ct"));
    m.def("decrypt_recovered", &py_decrypt_recovered, py::arg("recovered"), py::arg("pub"), py::arg("ct"));
    m.def("distinguish", &py_distinguish, py::arg("pub"), py::arg("lam") = 0);
    m.def("attack", &py_attack, py::arg("pub"), py::arg("lam") = 0);
    m.def("verify", &py_verify, py::arg("pub"), py::arg("recovered"));
    m.def("identities", &py_identities, py::arg("q"));
}
