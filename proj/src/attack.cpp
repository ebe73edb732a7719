#include "rankcrypt/attack.hpp"

#include <algorithm>
#include <chrono>

#include "rankcrypt/qspaces.hpp"

namespace rankcrypt {

namespace {

using Clock = std::chrono::steady_clock;

class PhaseTimer {
  public:
    explicit PhaseTimer(AttackReport& r) : report_(r), start_(Clock::now()) {}
    void mark(const std::string& name) {
        auto now = Clock::now();
        report_.phase_millis.emplace_back(name, std::chrono::duration<double, std::milli>(now - start_).count());
        start_ = now;
    }

  private:
    AttackReport& report_;
    Clock::time_point start_;
};

Subspace one_dim(const Subspace& s, const std::string& step) {
    if (s.dim() != 1)
        throw ExtractionError(step + ": expected dimension 1, got " + std::to_string(s.dim()));
    return s;
}

Vec scale_vec(const Field& f, const Vec& v, Elem s) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(v[i], s);
    return out;
}

Vec sub_vec(const Field& f, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

// h with D = <h^[0], ..., h^[dim-1]>, taken from the intersection of the
// q^{-j}-th powers of D.
std::optional<Vec> moore_support(const Subspace& d, std::size_t dim) {
    Subspace s = d;
    for (std::size_t j = 1; j < dim; ++j) s = subspace_intersect(s, d.frobenius(-static_cast<long long>(j)));
    if (s.dim() != 1) return std::nullopt;
    return s.vector(0);
}

Elem det_rows(const Field& f, Elem g1, Elem g2, long long a, long long b, long long c) {
    const Elem ya = f.frobenius(g1, a), za = f.frobenius(g2, a);
    const Elem yb = f.frobenius(g1, b), zb = f.frobenius(g2, b);
    const Elem yc = f.frobenius(g1, c), zc = f.frobenius(g2, c);
    Elem d = f.sub(f.mul(yb, zc), f.mul(zb, yc));
    d = f.sub(d, f.mul(ya, f.sub(zc, zb)));
    return f.add(d, f.mul(za, f.sub(yc, yb)));
}

void check_triple(const Triple& t, std::size_t r) {
    if (!(t[0] >= 1 && t[0] < t[1] && t[1] < t[2] && t[2] <= r))
        throw std::invalid_argument("index triple must satisfy 1 <= i < j < k <= r");
}

AttackReport base_report(const Matrix& g_pub, unsigned lambda) {
    AttackReport r;
    r.q = g_pub.field->q();
    r.m = g_pub.field->m();
    r.n = static_cast<unsigned>(g_pub.cols);
    r.k = static_cast<unsigned>(g_pub.rows);
    r.lambda = lambda;
    return r;
}

}  // namespace

Vec RecoveredKey::omega() const {
    Vec w{1};
    w.insert(w.end(), gammas.begin(), gammas.end());
    return w;
}

std::array<Elem, 3> uvw_decompose(const Field& f, unsigned i, unsigned j, unsigned k, Elem gamma1, Elem gamma2) {
    const long long a = -static_cast<long long>(i), b = -static_cast<long long>(j), c = -static_cast<long long>(k);
    const Elem delta = det_rows(f, gamma1, gamma2, a, b, c);
    if (delta == 0) throw std::domain_error("vanishing determinant in coefficient decomposition");
    const Elem inv = f.inv(delta);
    return {f.mul(det_rows(f, gamma1, gamma2, 0, b, c), inv), f.mul(det_rows(f, gamma1, gamma2, 0, c, a), inv),
            f.mul(det_rows(f, gamma1, gamma2, 0, a, b), inv)};
}

std::vector<Vec> decompose(const Vec& v, const std::vector<Subspace>& parts) {
    if (parts.empty()) throw ExtractionError("decomposition over no subspaces");
    const FieldPtr& f = parts[0].field();
    Matrix a(f, v.size(), parts.size());
    for (std::size_t t = 0; t < parts.size(); ++t) {
        if (parts[t].dim() != 1) throw ExtractionError("decomposition: component is not one-dimensional");
        const Vec w = parts[t].vector(0);
        for (std::size_t i = 0; i < v.size(); ++i) a.at(i, t) = w[i];
    }
    if (rank(a) != parts.size()) throw ExtractionError("decomposition: sum is not direct");
    auto c = solve(a, v);
    if (!c) throw ExtractionError("decomposition: vector outside the sum");
    std::vector<Vec> out;
    for (std::size_t t = 0; t < parts.size(); ++t) out.push_back(scale_vec(*f, parts[t].vector(0), (*c)[t]));
    return out;
}

ExtractionState extraction_chain_2(const Subspace& c) {
    if (c.dim() < 4) throw ExtractionError("codimension too small (need n-k-1 >= 3)");
    ExtractionState st;
    st.lambda = 2;
    st.c_dual = c;
    st.r = c.dim() - 1;
    const long long r = static_cast<long long>(st.r);
    const Subspace j = iterated_intersection(c, 2, st.r).frobenius(-r);
    st.x1 = one_dim(subspace_intersect(j, c), "anchor intersection").vector(0);
    const Subspace er = one_dim(subspace_intersect(j, c.frobenius(1 - r)), "last extraction").frobenius(-1);
    st.x2 = er.vector(0);
    st.b_basis = Subspace::span(c.field(), c.ambient(), {st.x1, st.x2});
    if (st.b_basis.dim() != 2) throw ExtractionError("pair space: expected dimension 2");
    for (long long i = 0; i <= r; ++i)
        st.ext.push_back(
            one_dim(subspace_intersect(st.b_basis.frobenius(i), c), "extraction " + std::to_string(i)).frobenius(-i));
    return st;
}

ExtractionState extraction_chain_3(const Subspace& c) {
    if (c.dim() < 5) throw ExtractionError("codimension too small (need n-k-1 >= 4)");
    const FieldPtr& f = c.field();
    ExtractionState st;
    st.lambda = 3;
    st.c_dual = c;
    st.r = c.dim() - 1;
    const long long r = static_cast<long long>(st.r);
    const Subspace t = iterated_intersection(c, 3, st.r).frobenius(-r);
    if (t.dim() != 3) throw ExtractionError("triple intersection: expected dimension 3, got " + std::to_string(t.dim()));
    st.x1 = one_dim(subspace_intersect(t, c), "anchor intersection").vector(0);
    st.x2 = one_dim(subspace_intersect(t, c.frobenius(2 - r)), "second intersection").vector(0);
    const Subspace b2 = subspace_sum(
        t, Subspace::span(f, c.ambient(), {frobenius(*f, st.x1, 1), frobenius(*f, st.x2, -1)}));
    const Subspace b3 = subspace_intersect(b2, c.frobenius(-1)).frobenius(-1);
    st.b_basis = subspace_sum(b3, Subspace::span(f, c.ambient(), {st.x1, frobenius(*f, st.x2, -2)}));
    if (st.b_basis.dim() != 3)
        throw ExtractionError("triple space: expected dimension 3, got " + std::to_string(st.b_basis.dim()));
    st.x3 = one_dim(subspace_intersect(t, st.b_basis.frobenius(1)), "third intersection").vector(0);
    for (long long i = 0; i <= r; ++i)
        st.ext.push_back(
            one_dim(subspace_intersect(st.b_basis.frobenius(i), c), "extraction " + std::to_string(i)).frobenius(-i));
    return st;
}

namespace {

Elem ratio(const Field& f, const Vec& u, const Vec& w) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0 || w[i] == 0) continue;
        const Elem a = f.div(u[i], w[i]);
        if (scale_vec(f, w, a) != u) throw ExtractionError("alpha: components are not proportional");
        return a;
    }
    throw ExtractionError("alpha: zero component");
}

}  // namespace

Elem compute_alpha(const ExtractionState& st, const Triple& idx1, const Triple& idx2) {
    check_triple(idx1, st.r);
    check_triple(idx2, st.r);
    if (idx1[0] != idx2[0]) throw std::invalid_argument("index triples must share their first index");
    if (idx1 == idx2) throw std::invalid_argument("index triples must differ");
    const Field& f = *st.c_dual.field();
    auto c1 = decompose(st.anchor(), {st.ext[idx1[0]], st.ext[idx1[1]], st.ext[idx1[2]]});
    auto c2 = decompose(st.anchor(), {st.ext[idx2[0]], st.ext[idx2[1]], st.ext[idx2[2]]});
    return ratio(f, c1[0], c2[0]);
}

Elem compute_alpha_2(const ExtractionState& st) {
    if (st.ext.size() < 4) throw ExtractionError("alpha: need extractions up to index 3");
    const Field& f = *st.c_dual.field();
    auto c1 = decompose(st.anchor(), {st.ext[1], st.ext[2]});
    auto c2 = decompose(st.anchor(), {st.ext[1], st.ext[3]});
    return ratio(f, c1[0], c2[0]);
}

std::pair<Triple, Triple> default_indices(std::size_t r) {
    if (r < 4) throw std::invalid_argument("codimension too small (need n-k-1 >= 4)");
    if (r >= 5) return {Triple{1, 2, 3}, Triple{1, 4, 5}};
    return {Triple{1, 2, 3}, Triple{1, static_cast<unsigned>(r - 1), static_cast<unsigned>(r)}};
}

std::pair<Triple, Triple> relation_triples(const Triple& idx1, const Triple& idx2) {
    const unsigned s = std::max(idx1[2], idx2[2]);
    return {Triple{s, s - idx1[1], s - idx1[2]}, Triple{s - idx2[0], s - idx2[1], s - idx2[2]}};
}

std::optional<RecoveredKey> recover_tuple_2(const ExtractionState& st, Elem gamma) {
    const Field& f = *st.c_dual.field();
    const Elem gm1 = f.frobenius(gamma, -1), gm2 = f.frobenius(gamma, -2);
    const Elem den = f.sub(gm2, gm1), num = f.sub(gm2, gamma), step = f.sub(gamma, gm1);
    if (den == 0 || num == 0 || step == 0) return std::nullopt;
    const Elem coef = f.div(num, den);
    const Vec u12 = decompose(st.anchor(), {st.ext[1], st.ext[2]})[0];
    const Vec l1 = scale_vec(f, u12, f.inv(coef));
    const Vec h = scale_vec(f, sub_vec(f, st.anchor(), l1), f.inv(step));
    const Vec g = sub_vec(f, st.anchor(), scale_vec(f, h, gamma));
    RecoveredKey key;
    key.field = st.c_dual.field();
    key.lambda = 2;
    key.gammas = {gamma};
    key.g_vecs = {g, h};
    return key;
}

std::optional<RecoveredKey> recover_tuple_3(const ExtractionState& st, const Triple& idx, Elem gamma1, Elem gamma2) {
    const FieldPtr& fp = st.c_dual.field();
    const Field& f = *fp;
    std::array<Elem, 3> kk;
    try {
        kk = uvw_decompose(f, idx[0], idx[1], idx[2], gamma1, gamma2);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    if (kk[0] == 0 || kk[1] == 0) return std::nullopt;
    auto comps = decompose(st.anchor(), {st.ext[idx[0]], st.ext[idx[1]], st.ext[idx[2]]});
    const std::array<long long, 3> shifts{0, idx[0], idx[1]};
    const std::vector<Vec> rhs{st.anchor(), scale_vec(f, comps[0], f.inv(kk[0])), scale_vec(f, comps[1], f.inv(kk[1]))};
    Matrix sys(fp, 3, 3);
    for (std::size_t a = 0; a < 3; ++a) {
        sys.at(a, 0) = 1;
        sys.at(a, 1) = f.frobenius(gamma1, -shifts[a]);
        sys.at(a, 2) = f.frobenius(gamma2, -shifts[a]);
    }
    auto inv = inverse(sys);
    if (!inv) return std::nullopt;
    const Matrix g = mul(*inv, Matrix::from_rows(fp, rhs, st.c_dual.ambient()));
    RecoveredKey key;
    key.field = fp;
    key.lambda = 3;
    key.gammas = {gamma1, gamma2};
    key.g_vecs = g.row_list();
    return key;
}

bool verify_alternate(const RecoveredKey& key, const Subspace& c_dual) {
    const FieldPtr& fp = c_dual.field();
    const Field& f = *fp;
    const Vec w = key.omega();
    if (key.g_vecs.size() != w.size() || key.lambda != w.size()) return false;
    if (fq_rank(f, w) != key.lambda) return false;
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < c_dual.dim(); ++j) {
        Vec v(c_dual.ambient(), 0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (key.g_vecs[i].size() != v.size()) return false;
            const Vec p = frobenius(f, key.g_vecs[i], static_cast<long long>(j));
            for (std::size_t l = 0; l < v.size(); ++l) v[l] = f.add(v[l], f.mul(w[i], p[l]));
        }
        if (!c_dual.contains(v)) return false;
        rows.push_back(std::move(v));
    }
    return Subspace::span(fp, c_dual.ambient(), rows) == c_dual;
}

RecoveredKey transform_tuple(const RecoveredKey& key, const Matrix& t) {
    const FieldPtr& fp = key.field;
    const Field& f = *fp;
    const std::size_t l = key.g_vecs.size();
    if (t.rows != l || t.cols != l) throw std::invalid_argument("transform size must match the tuple");
    auto tinv = inverse(t);
    if (!tinv) throw std::invalid_argument("transform is singular");
    const Matrix te = t.with_field(fp);
    RecoveredKey out;
    out.field = fp;
    out.lambda = key.lambda;
    out.g_vecs = mul(tinv->with_field(fp), Matrix::from_rows(fp, key.g_vecs, key.g_vecs[0].size())).row_list();
    Vec w = vec_mul(key.omega(), te);
    const Elem lead_inv = f.inv(w[0]);
    for (std::size_t i = 1; i < l; ++i) out.gammas.push_back(f.mul(w[i], lead_inv));
    out.verified = false;
    return out;
}

RecoveredKey true_tuple(const SecretKey& sk) {
    const PublicKey& pk = sk.pub;
    const FieldPtr& fp = pk.field;
    GabidulinCode code(fp, sk.a, pk.params.k);
    auto h = moore_support(code.dual(), pk.params.n - pk.params.k);
    if (!h) throw std::logic_error("dual Gabidulin code has no Moore support");
    RecoveredKey key;
    key.field = fp;
    key.lambda = pk.params.lambda;
    key.gammas.assign(sk.gammas.begin() + 1, sk.gammas.end());
    for (const auto& part : sk.p_parts) key.g_vecs.push_back(vec_mul(*h, part.with_field(fp)));
    return key;
}

namespace {

Matrix random_gl(const FieldPtr& base, std::size_t l, Rng& rng) {
    for (;;) {
        Matrix t(base, l, l);
        for (auto& x : t.data) x = static_cast<Elem>(rng.below(base->q()));
        if (rank(t) == l) return t;
    }
}

}  // namespace

Vec decrypt_with_recovered(const RecoveredKey& key, const PublicKey& pk, const Vec& c) {
    const FieldPtr& fp = pk.field;
    const Field& f = *fp;
    const std::size_t n = pk.params.n, k = pk.params.k;
    if (c.size() != n) throw std::invalid_argument("ciphertext has wrong length");
    const Matrix gt = transpose(pk.g_pub);
    auto finish = [&](const Vec& codeword) {
        auto msg = solve(gt, codeword);
        if (!msg) throw DecodingError("codeword is not in the public code");
        return *msg;
    };
    if (pk.t == 0) return finish(c);

    // Pick a tuple representative whose first vector has full rank.
    RecoveredKey rep = key;
    Rng rng(0x7e9);
    const FieldPtr base = f.base();
    for (int attempt = 0; fq_rank(f, rep.g_vecs[0]) != n; ++attempt) {
        if (attempt == 256) throw DecodingError("no full-rank representative of the recovered tuple");
        rep = transform_tuple(key, random_gl(base, key.g_vecs.size(), rng));
    }
    const Vec& g0 = rep.g_vecs[0];
    const Matrix a0t = transpose(expand(f, g0));
    const Vec w = rep.omega();
    Matrix mp = Matrix::identity(fp, n);
    for (std::size_t i = 1; i < w.size(); ++i) {
        Matrix qi(base, n, n);
        for (std::size_t col = 0; col < n; ++col) {
            auto sol = solve(a0t, f.coords(rep.g_vecs[i][col]));
            if (!sol) throw DecodingError("tuple vectors are not F_q-related");
            for (std::size_t row = 0; row < n; ++row) qi.at(row, col) = (*sol)[row];
        }
        mp = add(mp, scale(qi.with_field(fp), w[i]));
    }
    const Matrix mpt = transpose(mp);
    auto mpt_inv = inverse(mpt);
    if (!mpt_inv) throw DecodingError("recovered transform is singular");

    auto support = moore_support(right_kernel(moore_matrix(fp, g0, n - k)), k);
    if (!support) throw DecodingError("no Moore support for the recovered code");
    GabidulinCode code(fp, *support, k);
    auto dec = code.decode(vec_mul(c, mpt), pk.t * key.lambda);
    if (!dec) throw DecodingError("decoding failed");
    const Vec e = vec_mul(dec->error, *mpt_inv);
    return finish(sub_vec(f, c, e));
}

AttackResult attack2(const Matrix& g_pub, const AttackConfig& cfg) {
    AttackResult res;
    res.report = base_report(g_pub, 2);
    AttackReport& rep = res.report;
    PhaseTimer timer(rep);
    const FieldPtr& fp = g_pub.field;
    const Subspace c = right_kernel(g_pub);
    const auto dist = distinguish(g_pub, 2);
    timer.mark("distinguish");
    if (!dist.is_distinguishable) {
        rep.reason = "distinguisher regime violated: " + dist.reason;
        return res;
    }
    ExtractionState st;
    Elem alpha = 0;
    try {
        st = extraction_chain_2(c);
        timer.mark("extraction");
        alpha = compute_alpha_2(st);
        timer.mark("alpha");
    } catch (const ExtractionError& e) {
        rep.reason = e.what();
        return res;
    }
    Vec candidates;
    try {
        candidates = roots_univariate(p_gamma_univariate(alpha, fp));
    } catch (const std::exception& e) {
        rep.reason = std::string("root polynomial: ") + e.what();
        return res;
    }
    timer.mark("roots");
    for (Elem g : candidates) {
        if (fp->in_base(g)) continue;
        if (cfg.max_roots && rep.roots_tried >= cfg.max_roots) break;
        ++rep.roots_tried;
        auto key = recover_tuple_2(st, g);
        if (key && verify_alternate(*key, c)) {
            key->verified = true;
            res.key = std::move(key);
            break;
        }
    }
    timer.mark("recover");
    rep.success = res.key.has_value();
    rep.reason = rep.success ? "verified" : "no root produced a verifying tuple";
    return res;
}

AttackResult attack3(const Matrix& g_pub, const AttackConfig& cfg) {
    AttackResult res;
    res.report = base_report(g_pub, 3);
    AttackReport& rep = res.report;
    PhaseTimer timer(rep);
    const FieldPtr& fp = g_pub.field;
    const Subspace c = right_kernel(g_pub);
    const auto dist = distinguish(g_pub, 3);
    timer.mark("distinguish");
    if (!dist.is_distinguishable) {
        rep.reason = "distinguisher regime violated: " + dist.reason;
        return res;
    }
    if (c.dim() < 5) {
        rep.reason = "codimension too small (need n-k-1 >= 4)";
        return res;
    }
    ExtractionState st;
    Elem alpha = 0;
    std::pair<Triple, Triple> idx;
    try {
        idx = cfg.indices ? *cfg.indices : default_indices(c.dim() - 1);
        rep.idx1 = idx.first;
        rep.idx2 = idx.second;
        st = extraction_chain_3(c);
        timer.mark("extraction");
        alpha = compute_alpha(st, idx.first, idx.second);
        timer.mark("alpha");
    } catch (const std::exception& e) {
        rep.reason = e.what();
        return res;
    }
    SparseBiPoly reduced;
    try {
        auto [a, b] = relation_triples(idx.first, idx.second);
        const Elem coef = fp->frobenius(alpha, static_cast<long long>(a[0]));
        reduced = reduced_polynomial(build_F(a, b, coef, fp), reduction_exponent(a, b, fp->q()));
    } catch (const std::exception& e) {
        rep.reason = std::string("bivariate relation: ") + e.what();
        return res;
    }
    timer.mark("polynomial");
    rep.x_examined = roots_bivariate_independent(
        reduced, fp,
        [&](Elem x, Elem y) {
            if (cfg.max_roots && rep.roots_tried >= cfg.max_roots) return false;
            ++rep.roots_tried;
            auto key = recover_tuple_3(st, idx.first, x, y);
            if (key && verify_alternate(*key, c)) {
                key->verified = true;
                res.key = std::move(key);
                return false;
            }
            return true;
        },
        cfg.threads);
    timer.mark("roots");
    rep.success = res.key.has_value();
    rep.reason = rep.success ? "verified" : "no root produced a verifying tuple";
    return res;
}

}  // namespace rankcrypt
