#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rankcrypt/attack.hpp"

namespace rankcrypt {

/// Malformed or inconsistent serialized data.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Keys keep insertion order so files follow the documented schema layout.
using json = nlohmann::ordered_json;

inline constexpr const char* kPublicFormat = "loidreau-pub/v1";

json vec_to_json(const Field& f, const Vec& v);
Vec vec_from_json(const Field& f, const json& j);
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldPtr& f, const json& j);

json public_key_to_json(const PublicKey& pk);
PublicKey public_key_from_json(const json& j);

/// Public fields (same format tag) plus a, gammas (leading 1 included), P
/// and the F_q parts.
json secret_key_to_json(const SecretKey& sk);
SecretKey secret_key_from_json(const json& j);

json ciphertext_to_json(const Field& f, const Vec& c);
Vec ciphertext_from_json(const Field& f, const json& j);

json message_to_json(const Field& f, const Vec& m);
Vec message_from_json(const Field& f, const json& j);

/// gammas exclude the leading 1.
json recovered_key_to_json(const RecoveredKey& key);
RecoveredKey recovered_key_from_json(const FieldPtr& f, const json& j);

json read_json_file(const std::string& path);
/// Writes `j` with a trailing newline; "-" means stdout.
void write_json_file(const std::string& path, const json& j, std::ostream& stdout_stream);

}  // namespace rankcrypt
