#include "rankcrypt/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "rankcrypt/identities.hpp"
#include "rankcrypt/io.hpp"
#include "rankcrypt/qspaces.hpp"

namespace rankcrypt {

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Opts {
    unsigned q = 2, m = 0, n = 0, k = 0, lambda = 0;
    std::optional<std::uint64_t> seed;
    std::string pub, sec, ct, out = "-", msg, msg_out, recovered, suite = "all", csv;
    unsigned workers = 1, baseline = 0, reps = 3, instances = 100;
    std::uint64_t max_roots = 0;
    bool json = false, timings = false, random_control = false;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

Params params_of(const Opts& o) {
    Params p{o.q, o.m, o.n, o.k, o.lambda};
    try {
        p.validate();
        Field::make(p.q, p.m);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return p;
}

std::uint64_t need_seed(const Opts& o) {
    if (!o.seed) throw UsageError("--seed is required for this command");
    return *o.seed;
}

Vec parse_hex_list(const Field& f, const std::string& s) {
    Vec v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(f.from_hex(item));
        } catch (const FieldError& e) {
            throw UsageError(std::string("bad message element: ") + e.what());
        }
    }
    return v;
}

std::string hex_list(const Field& f, const Vec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f.to_hex(v[i]);
    return s;
}

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, Rng& rng) {
    Matrix m(f, r, c);
    for (auto& x : m.data) x = f->random(rng);
    return m;
}

json distinguish_json(const DistinguishReport& r) {
    return json{{"n", r.n},
                {"dual_dim", r.dual_dim},
                {"lambda", r.lambda},
                {"observed_dim", r.observed_dim},
                {"bound", r.bound},
                {"random_expected", r.random_expected},
                {"is_distinguishable", r.is_distinguishable},
                {"reason", r.reason}};
}

json report_json(const AttackReport& r, bool timings) {
    json j{{"q", r.q},       {"m", r.m},
           {"n", r.n},       {"k", r.k},
           {"lambda", r.lambda}, {"roots_tried", r.roots_tried},
           {"x_examined", r.x_examined}, {"success", r.success},
           {"reason", r.reason}};
    if (r.lambda == 3 && r.idx1[0]) {
        j["idx1"] = r.idx1;
        j["idx2"] = r.idx2;
    }
    if (timings) {
        json ph = json::object();
        for (const auto& [name, ms] : r.phase_millis) ph[name] = ms;
        j["phase_millis"] = ph;
    }
    return j;
}

// ---- commands -------------------------------------------------------------

int cmd_keygen(const Opts& o, std::ostream& out) {
    const Params p = params_of(o);
    const std::uint64_t seed = need_seed(o);
    if (o.pub.empty()) throw UsageError("--pub is required");
    PublicKey pk;
    if (o.random_control) {
        pk.field = Field::make(p.q, p.m);
        pk.params = p;
        pk.t = p.t();
        Rng rng(seed);
        pk.g_pub = random_matrix(pk.field, p.k, p.n, rng);
    } else {
        if (o.sec.empty()) throw UsageError("--sec is required");
        const KeyPair kp = keygen(p, seed);
        pk = kp.pub;
        write_json_file(o.sec, secret_key_to_json(kp.sec), out);
    }
    write_json_file(o.pub, public_key_to_json(pk), out);
    if (o.json) {
        out << json{{"q", p.q}, {"m", p.m}, {"n", p.n}, {"k", p.k}, {"lambda", p.lambda}, {"t", p.t()},
                    {"random_control", o.random_control}}
                   .dump()
            << "\n";
    } else if (o.pub != "-" && o.sec != "-") {
        out << (o.random_control ? "random control" : "key pair") << " q=" << p.q << " m=" << p.m << " n=" << p.n
            << " k=" << p.k << " lambda=" << p.lambda << " t=" << p.t() << "\n";
    }
    return 0;
}

int cmd_encrypt(const Opts& o, std::ostream& out) {
    const PublicKey pk = public_key_from_json(read_json_file(o.pub));
    const std::uint64_t seed = need_seed(o);
    Vec msg;
    if (o.msg.empty()) {
        msg = random_message(pk, seed);
    } else {
        msg = parse_hex_list(*pk.field, o.msg);
        if (msg.size() != pk.params.k) throw UsageError("message must have k elements");
    }
    if (!o.msg_out.empty()) write_json_file(o.msg_out, message_to_json(*pk.field, msg), out);
    write_json_file(o.out, ciphertext_to_json(*pk.field, encrypt(pk, msg, seed)), out);
    return 0;
}

int cmd_decrypt(const Opts& o, std::ostream& out, std::ostream& err) {
    Vec msg;
    FieldPtr f;
    try {
        if (!o.recovered.empty()) {
            if (o.pub.empty()) throw UsageError("--recovered needs --pub");
            const PublicKey pk = public_key_from_json(read_json_file(o.pub));
            f = pk.field;
            const RecoveredKey key = recovered_key_from_json(f, read_json_file(o.recovered));
            msg = decrypt_with_recovered(key, pk, ciphertext_from_json(*f, read_json_file(o.ct)));
        } else {
            if (o.sec.empty()) throw UsageError("one of --sec or --recovered is required");
            const SecretKey sk = secret_key_from_json(read_json_file(o.sec));
            f = sk.pub.field;
            msg = decrypt(sk, ciphertext_from_json(*f, read_json_file(o.ct)));
        }
    } catch (const DecodingError& e) {
        err << "decryption failed: " << e.what() << "\n";
        return 1;
    }
    if (o.json)
        out << message_to_json(*f, msg).dump() << "\n";
    else
        out << hex_list(*f, msg) << "\n";
    return 0;
}

int cmd_distinguish(const Opts& o, std::ostream& out) {
    const PublicKey pk = public_key_from_json(read_json_file(o.pub));
    const unsigned lambda = o.lambda ? o.lambda : pk.params.lambda;
    if (lambda < 2) throw UsageError("--lambda must be at least 2");
    const DistinguishReport r = distinguish(pk.g_pub, lambda);
    std::map<std::size_t, unsigned> hist;
    unsigned random_flagged = 0;
    if (o.baseline) {
        Rng rng(need_seed(o));
        for (unsigned t = 0; t < o.baseline; ++t) {
            const auto b = distinguish(random_matrix(pk.field, pk.params.k, pk.params.n, rng), lambda);
            ++hist[b.observed_dim];
            if (b.is_distinguishable) ++random_flagged;
        }
    }
    if (o.json) {
        json j = distinguish_json(r);
        if (o.baseline) {
            json h = json::object();
            for (const auto& [d, c] : hist) h[std::to_string(d)] = c;
            j["baseline"] = json{{"trials", o.baseline}, {"dim_histogram", h}, {"flagged", random_flagged}};
        }
        out << j.dump() << "\n";
    } else {
        out << "n                  " << r.n << "\n"
            << "dual dimension     " << r.dual_dim << "\n"
            << "lambda             " << r.lambda << "\n"
            << "observed dimension " << r.observed_dim << "\n"
            << "structured bound   " << r.bound << "\n"
            << "random expectation " << r.random_expected << "\n"
            << "distinguishable    " << (r.is_distinguishable ? "yes" : "no") << "\n"
            << "reason             " << r.reason << "\n";
        if (o.baseline) {
            out << "baseline trials    " << o.baseline << " (flagged " << random_flagged << ")\n";
            for (const auto& [d, c] : hist) out << "  dim " << d << ": " << c << "\n";
        }
    }
    return 0;
}

int cmd_attack(const Opts& o, std::ostream& out, std::ostream& err) {
    const PublicKey pk = public_key_from_json(read_json_file(o.pub));
    const unsigned lambda = o.lambda ? o.lambda : pk.params.lambda;
    if (lambda != 2 && lambda != 3) throw UsageError("--lambda must be 2 or 3");
    AttackConfig cfg;
    cfg.threads = o.workers;
    cfg.max_roots = o.max_roots;
    const AttackResult res = lambda == 2 ? attack2(pk.g_pub, cfg) : attack3(pk.g_pub, cfg);
    if (res.key) write_json_file(o.out, recovered_key_to_json(*res.key), out);
    const AttackReport& r = res.report;
    if (o.json) {
        out << report_json(r, o.timings).dump() << "\n";
    } else if (o.out != "-") {
        out << "lambda " << r.lambda << " attack: " << (r.success ? "success" : "failure") << " (" << r.reason
            << "), roots tried " << r.roots_tried << "\n";
        if (o.timings)
            for (const auto& [name, ms] : r.phase_millis) out << "  " << name << " " << ms << " ms\n";
    }
    if (!r.success) {
        err << "attack failed: " << r.reason << "\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const Opts& o, std::ostream& out) {
    const PublicKey pk = public_key_from_json(read_json_file(o.pub));
    const RecoveredKey key = recovered_key_from_json(pk.field, read_json_file(o.recovered));
    const bool ok = verify_alternate(key, right_kernel(pk.g_pub));
    if (o.json)
        out << json{{"verified", ok}}.dump() << "\n";
    else
        out << "verified: " << (ok ? "true" : "false") << "\n";
    return ok ? 0 : 1;
}

int cmd_identities(const Opts& o, std::ostream& out) {
    if (o.q != 2 && o.q != 3) throw UsageError("--q must be 2 or 3");
    auto checks = polynomial_identities(o.q);
    for (auto& c : transformation_law(o.q, o.instances, 1)) checks.push_back(std::move(c));
    const GcdEvidence ev = gcd_conjecture_evidence(o.q, 8, 20, 1);
    bool all = true;
    for (const auto& c : checks) all = all && c.ok;
    if (o.json) {
        json arr = json::array();
        for (const auto& c : checks) arr.push_back(json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        out << json{{"q", o.q},
                    {"checks", arr},
                    {"gcd_evidence", json{{"m", ev.m}, {"samples", ev.samples}, {"equal", ev.equal}}},
                    {"all_ok", all}}
                   .dump()
            << "\n";
    } else {
        for (const auto& c : checks)
            out << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        out << "info common-factor gcd matches at " << ev.equal << "/" << ev.samples << " specializations over F_"
            << o.q << "^" << ev.m << " (evidence only)\n";
    }
    return all ? 0 : 1;
}

int cmd_selftest(const Opts& o, std::ostream& out) {
    std::vector<std::pair<std::string, std::function<bool()>>> steps;
    steps.emplace_back("round trip (q=2 m=n=12 k=8 lambda=2)", [] {
        const auto kp = keygen(Params{2, 12, 12, 8, 2}, 1);
        for (std::uint64_t i = 0; i < 10; ++i) {
            const Vec m = random_message(kp.pub, i);
            if (decrypt(kp.sec, encrypt(kp.pub, m, 100 + i)) != m) return false;
        }
        return true;
    });
    steps.emplace_back("serialization round trip", [] {
        const auto kp = keygen(Params{2, 12, 12, 8, 2}, 2);
        const auto sk = secret_key_from_json(json::parse(secret_key_to_json(kp.sec).dump()));
        return sk.P == kp.sec.P && sk.pub.g_pub == kp.pub.g_pub && sk.a == kp.sec.a;
    });
    steps.emplace_back("distinguisher separates key from random code", [] {
        const auto kp = keygen(Params{2, 12, 12, 8, 2}, 3);
        Rng rng(3);
        return distinguish(kp.pub.g_pub, 2).is_distinguishable &&
               !distinguish(random_matrix(kp.pub.field, 8, 12, rng), 2).is_distinguishable;
    });
    steps.emplace_back("polynomial identities q=2", [] {
        for (const auto& c : polynomial_identities(2))
            if (!c.ok) return false;
        return true;
    });
    steps.emplace_back("lambda 2 key recovery and decryption", [] {
        const auto kp = keygen(Params{2, 12, 12, 8, 2}, 4);
        const auto res = attack2(kp.pub.g_pub);
        if (!res.key) return false;
        const Vec m = random_message(kp.pub, 9);
        return decrypt_with_recovered(*res.key, kp.pub, encrypt(kp.pub, m, 10)) == m;
    });
    steps.emplace_back("lambda 3 key recovery (q=2 m=n=19 k=14)", [] {
        const auto kp = keygen(Params{2, 19, 19, 14, 3}, 1);
        const auto res = attack3(kp.pub.g_pub);
        if (!res.key) return false;
        const Vec m = random_message(kp.pub, 9);
        return decrypt_with_recovered(*res.key, kp.pub, encrypt(kp.pub, m, 10)) == m;
    });
    steps.emplace_back("attacks reject a random code", [] {
        Rng rng(5);
        const auto f = Field::make(2, 12);
        return !attack2(random_matrix(f, 8, 12, rng)).key;
    });
    bool all = true;
    json arr = json::array();
    for (const auto& [name, fn] : steps) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception&) {
            ok = false;
        }
        all = all && ok;
        if (o.json)
            arr.push_back(json{{"name", name}, {"ok", ok}});
        else
            out << (ok ? "ok   " : "FAIL ") << name << "\n";
    }
    if (o.json) out << json{{"checks", arr}, {"all_ok", all}}.dump() << "\n";
    return all ? 0 : 1;
}

int cmd_bench(const Opts& o, std::ostream& out) {
    static const std::vector<std::string> suites{"field", "decode", "distinguish", "attack2", "attack3"};
    std::vector<std::string> run;
    if (o.suite == "all")
        run = suites;
    else if (std::find(suites.begin(), suites.end(), o.suite) != suites.end())
        run = {o.suite};
    else
        throw UsageError("unknown suite '" + o.suite + "'");
    if (o.csv.empty()) throw UsageError("--csv is required");
    if (o.reps == 0) throw UsageError("--reps must be positive");

    std::ostringstream rows;
    rows << "suite,params,phase,millis\n";
    auto row = [&](const std::string& s, const std::string& p, const std::string& ph, double ms) {
        rows << s << "," << p << "," << ph << "," << ms << "\n";
    };
    for (const auto& s : run) {
        for (unsigned rep = 0; rep < o.reps; ++rep) {
            if (s == "field") {
                const auto f = Field::make(2, 22);
                Rng rng(rep);
                Elem acc = 1;
                auto t = Clock::now();
                for (int i = 0; i < 200000; ++i) acc = f->add(f->mul(acc, f->random(rng)), 1);
                row(s, "q=2 m=22", "mul 200k", since(t));
                t = Clock::now();
                for (int i = 0; i < 2000; ++i) acc = f->frobenius(f->add(acc, 1), -3);
                row(s, "q=2 m=22", "inverse frobenius 2k", since(t));
            } else if (s == "decode") {
                const auto kp = keygen(Params{2, 12, 12, 8, 2}, rep);
                std::vector<Vec> cts;
                for (std::uint64_t i = 0; i < 20; ++i) cts.push_back(encrypt(kp.pub, random_message(kp.pub, i), 50 + i));
                auto t = Clock::now();
                for (const auto& c : cts) decrypt(kp.sec, c);
                row(s, "q=2 m=n=12 k=8 lambda=2", "decrypt 20", since(t));
            } else if (s == "distinguish") {
                const auto kp = keygen(Params{2, 13, 13, 10, 3}, rep);
                auto t = Clock::now();
                distinguish(kp.pub.g_pub, 3);
                row(s, "q=2 m=n=13 k=10 lambda=3", "sumspace", since(t));
            } else {
                const bool two = s == "attack2";
                const Params p = two ? Params{2, 12, 12, 8, 2} : Params{2, 19, 19, 14, 3};
                const auto kp = keygen(p, rep);
                const auto res = two ? attack2(kp.pub.g_pub) : attack3(kp.pub.g_pub);
                const std::string ps = two ? "q=2 m=n=12 k=8 lambda=2" : "q=2 m=n=19 k=14 lambda=3";
                for (const auto& [name, ms] : res.report.phase_millis) row(s, ps, name, ms);
            }
        }
    }
    std::ofstream f(o.csv);
    if (!f) throw std::runtime_error("cannot write " + o.csv);
    f << rows.str();
    if (!o.json) out << "wrote " << o.csv << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Loidreau rank-metric scheme: keys, encryption, distinguishers and key recovery"};
    app.require_subcommand(1);
    Opts o;

    auto add_params = [&](CLI::App* c) {
        c->add_option("--q", o.q, "base field size")->capture_default_str();
        c->add_option("--m", o.m, "extension degree")->required();
        c->add_option("--n", o.n, "code length")->required();
        c->add_option("--k", o.k, "code dimension")->required();
        c->add_option("--lambda", o.lambda, "dimension of the secret subspace")->required();
    };
    auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.json, "machine-readable report"); };

    auto* kg = app.add_subcommand("keygen", "generate a key pair");
    add_params(kg);
    kg->add_option("--seed", o.seed, "random seed");
    kg->add_option("--pub", o.pub, "public key output");
    kg->add_option("--sec", o.sec, "secret key output");
    kg->add_flag("--random-control", o.random_control, "write a uniformly random public matrix instead");
    add_json(kg);

    auto* enc = app.add_subcommand("encrypt", "encrypt a message");
    enc->add_option("--pub", o.pub, "public key")->required();
    enc->add_option("--msg", o.msg, "comma-separated hex elements (random when omitted)");
    enc->add_option("--msg-out", o.msg_out, "where to store the message");
    enc->add_option("--seed", o.seed, "random seed");
    enc->add_option("--out", o.out, "ciphertext output")->capture_default_str();

    auto* dec = app.add_subcommand("decrypt", "decrypt a ciphertext");
    dec->add_option("--sec", o.sec, "secret key");
    dec->add_option("--recovered", o.recovered, "recovered key (with --pub)");
    dec->add_option("--pub", o.pub, "public key");
    dec->add_option("--ct", o.ct, "ciphertext")->required();
    add_json(dec);

    auto* dis = app.add_subcommand("distinguish", "sumspace distinguisher");
    dis->add_option("--pub", o.pub, "public key")->required();
    dis->add_option("--lambda", o.lambda, "lambda (defaults to the key's)");
    dis->add_option("--baseline-trials", o.baseline, "random codes for comparison");
    dis->add_option("--seed", o.seed, "seed for the baseline");
    add_json(dis);

    auto* att = app.add_subcommand("attack", "key recovery");
    att->add_option("--pub", o.pub, "public key")->required();
    att->add_option("--lambda", o.lambda, "2 or 3 (defaults to the key's)");
    att->add_option("--workers", o.workers, "root search threads")->capture_default_str();
    att->add_option("--max-roots", o.max_roots, "stop after this many candidate roots");
    att->add_option("--out", o.out, "recovered key output")->capture_default_str();
    att->add_flag("--timings", o.timings, "include phase timings");
    add_json(att);

    auto* ver = app.add_subcommand("verify", "check a recovered key against a public key");
    ver->add_option("--pub", o.pub, "public key")->required();
    ver->add_option("--recovered", o.recovered, "recovered key")->required();
    add_json(ver);

    auto* ide = app.add_subcommand("identities", "polynomial identity suite");
    ide->add_option("--q", o.q, "2 or 3")->capture_default_str();
    ide->add_option("--instances", o.instances, "transformation-law instances")->capture_default_str();
    add_json(ide);

    auto* st = app.add_subcommand("selftest", "desk-scale property checks");
    add_json(st);

    auto* be = app.add_subcommand("bench", "timings as CSV");
    be->add_option("--suite", o.suite, "field, decode, distinguish, attack2, attack3 or all")->capture_default_str();
    be->add_option("--csv", o.csv, "CSV output")->required();
    be->add_option("--reps", o.reps, "repetitions")->capture_default_str();
    add_json(be);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (kg->parsed()) return cmd_keygen(o, out);
        if (enc->parsed()) return cmd_encrypt(o, out);
        if (dec->parsed()) return cmd_decrypt(o, out, err);
        if (dis->parsed()) return cmd_distinguish(o, out);
        if (att->parsed()) return cmd_attack(o, out, err);
        if (ver->parsed()) return cmd_verify(o, out);
        if (ide->parsed()) return cmd_identities(o, out);
        if (st->parsed()) return cmd_selftest(o, out);
        if (be->parsed()) return cmd_bench(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace rankcrypt
