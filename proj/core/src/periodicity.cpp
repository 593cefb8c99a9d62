#include "ssk/periodicity.hpp"

#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ssk {

namespace {

// columns of U spanning the kernel of the integer matrix A (rows x k)
std::vector<std::vector<mpz_class>> integer_kernel(
    std::vector<std::vector<mpz_class>> A, int k) {
    std::vector<std::vector<mpz_class>> U(k, std::vector<mpz_class>(k, 0));
    for (int i = 0; i < k; ++i) U[i][i] = 1;
    auto col_axpy = [&](int dst, int src, const mpz_class& f) {
        for (auto& row : A) row[dst] -= f * row[src];
        for (auto& row : U) row[dst] -= f * row[src];
    };
    auto col_swap = [&](int c1, int c2) {
        for (auto& row : A) std::swap(row[c1], row[c2]);
        for (auto& row : U) std::swap(row[c1], row[c2]);
    };
    int col = 0;
    for (size_t r = 0; r < A.size() && col < k; ++r) {
        for (;;) {
            int piv = -1;
            for (int c = col; c < k; ++c)
                if (A[r][c] != 0 &&
                    (piv < 0 || abs(A[r][c]) < abs(A[r][piv])))
                    piv = c;
            if (piv < 0) break;
            bool others = false;
            for (int c = col; c < k; ++c) {
                if (c == piv || A[r][c] == 0) continue;
                mpz_class f = A[r][c] / A[r][piv];  // truncated
                col_axpy(c, piv, f);
                others = others || A[r][c] != 0;
            }
            if (!others) {
                col_swap(col, piv);
                ++col;
                break;
            }
        }
    }
    std::vector<std::vector<mpz_class>> basis;
    for (int c = col; c < k; ++c) {
        std::vector<mpz_class> v(k);
        for (int i = 0; i < k; ++i) v[i] = U[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// row Hermite form: positive pivots, entries above a pivot reduced into
// [0, pivot); zero rows dropped
std::vector<std::vector<mpz_class>> hermite_rows(
    std::vector<std::vector<mpz_class>> B, int k) {
    int r0 = 0;
    const int n = static_cast<int>(B.size());
    for (int c = 0; c < k && r0 < n; ++c) {
        for (;;) {
            int piv = -1;
            for (int r = r0; r < n; ++r)
                if (B[r][c] != 0 && (piv < 0 || abs(B[r][c]) < abs(B[piv][c])))
                    piv = r;
            if (piv < 0) break;
            bool others = false;
            for (int r = r0; r < n; ++r) {
                if (r == piv || B[r][c] == 0) continue;
                mpz_class f = B[r][c] / B[piv][c];
                for (int j = 0; j < k; ++j) B[r][j] -= f * B[piv][j];
                others = others || B[r][c] != 0;
            }
            if (!others) {
                std::swap(B[r0], B[piv]);
                if (B[r0][c] < 0)
                    for (int j = 0; j < k; ++j) B[r0][j] = -B[r0][j];
                for (int r = 0; r < r0; ++r) {
                    mpz_class f;
                    mpz_fdiv_q(f.get_mpz_t(), B[r][c].get_mpz_t(),
                               B[r0][c].get_mpz_t());
                    for (int j = 0; j < k; ++j) B[r][j] -= f * B[r0][j];
                }
                ++r0;
                break;
            }
        }
    }
    B.resize(r0);
    return B;
}

std::vector<std::pair<mpz_class, int>> factorize_abs(mpz_class v) {
    std::vector<std::pair<mpz_class, int>> out;
    v = abs(v);
    for (mpz_class d = 2; d * d <= v; ++d) {
        int e = 0;
        while (mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) {
            v /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (v > 1) out.emplace_back(v, 1);
    return out;
}

}  // namespace

RelationLattice relation_lattice(const std::vector<mpz_class>& p) {
    const int k = static_cast<int>(p.size());
    for (const mpz_class& v : p)
        if (v == 0) throw Error("ZeroInput", "p_i = 0 has no exponent lattice");

    std::map<mpz_class, int> prime_row;
    std::vector<std::vector<int>> exps(k);
    for (int i = 0; i < k; ++i) {
        for (const auto& [q, e] : factorize_abs(p[i])) {
            auto [it, _] = prime_row.emplace(q, static_cast<int>(prime_row.size()));
            exps[i].resize(std::max<size_t>(exps[i].size(), it->second + 1));
            exps[i][it->second] = e;
        }
    }
    std::vector<std::vector<mpz_class>> A(prime_row.size(),
                                          std::vector<mpz_class>(k, 0));
    for (int i = 0; i < k; ++i)
        for (size_t r = 0; r < exps[i].size(); ++r) A[r][i] = exps[i][r];

    auto kernel = integer_kernel(std::move(A), k);

    // intersect with prod sign(p_i)^{q_i} = 1
    auto parity = [&](const std::vector<mpz_class>& v) {
        mpz_class s = 0;
        for (int i = 0; i < k; ++i)
            if (p[i] < 0) s += v[i];
        return mpz_odd_p(s.get_mpz_t()) != 0;
    };
    int odd = -1;
    for (size_t j = 0; j < kernel.size(); ++j)
        if (parity(kernel[j])) {
            odd = static_cast<int>(j);
            break;
        }
    std::vector<std::vector<mpz_class>> sub;
    for (size_t j = 0; j < kernel.size(); ++j) {
        if (static_cast<int>(j) == odd) continue;
        std::vector<mpz_class> v = kernel[j];
        if (odd >= 0 && parity(v))
            for (int i = 0; i < k; ++i) v[i] += kernel[odd][i];
        sub.push_back(std::move(v));
    }
    if (odd >= 0) {
        std::vector<mpz_class> v = kernel[odd];
        for (int i = 0; i < k; ++i) v[i] *= 2;
        sub.push_back(std::move(v));
    }

    RelationLattice lat;
    lat.k = k;
    lat.basis = hermite_rows(std::move(sub), k);
    // exact defining identity for every basis vector
    for (const auto& v : lat.basis) {
        mpq_class prod = 1;
        for (int i = 0; i < k; ++i) {
            mpz_class pw;
            mpz_class e = abs(v[i]);
            if (!e.fits_ulong_p()) throw Error("SizeOverflow", "lattice entry");
            mpz_pow_ui(pw.get_mpz_t(), p[i].get_mpz_t(), e.get_ui());
            if (v[i] >= 0)
                prod *= mpq_class(pw);
            else
                prod /= mpq_class(pw);
        }
        if (prod != 1)
            throw Error("InternalError", "lattice basis fails product identity");
    }
    return lat;
}

Rank1Periodicity rank1_periodicity(const SelfSimilarKGraph& ss) {
    if (ss.rank() != 1)
        throw Error("UnsupportedFamily", "rank-1 criterion needs rank 1");
    Rank1Periodicity out;
    out.periodic = true;
    int idx = 0;
    for (const Orbit& o : ss.orbits()) {
        bool div = mpz_divisible_ui_p(o.sum.get_mpz_t(), o.length()) != 0;
        out.table.push_back({idx++, o.length(), o.sum, div});
        out.periodic = out.periodic && div;
    }
    return out;
}

bool CyclineDescription::contains(const SelfSimilarKGraph& ss,
                                  const CyclineTriple& t) const {
    switch (kind) {
        case DiagonalOnly:
            return t.trivial();
        case Rank1Periodic:
            return t.mu == t.nu &&
                   mpz_divisible_p(t.g.get_mpz_t(), bigN.get_mpz_t());
        case AllTriples:
            return true;
        case ProductFamily:
            return t.g == 0 &&
                   ss.size_power(t.mu.degree()) == ss.size_power(t.nu.degree()) &&
                   addr(ss, t.mu) == addr(ss, t.nu);
    }
    return false;
}

CyclineDescription cycline_structure(const SelfSimilarKGraph& ss) {
    CyclineDescription d;
    switch (ss.family()) {
        case Family::Rank1: {
            Rank1Periodicity per = rank1_periodicity(ss);
            if (per.periodic) {
                d.kind = CyclineDescription::Rank1Periodic;
                d.bigN = ss.orbit_length_product();
                d.text = "cycline triples: (mu, l*" + d.bigN.get_str() +
                         ", mu) for l in Z";
            } else {
                d.kind = CyclineDescription::DiagonalOnly;
                d.text = "only trivial cycline triples (mu, 0, mu)";
            }
            return d;
        }
        case Family::LambdaOne:
            d.kind = CyclineDescription::AllTriples;
            d.text = "every triple (mu, a^l, nu) is cycline";
            return d;
        case Family::ProductOdometers: {
            d.kind = CyclineDescription::ProductFamily;
            std::vector<mpz_class> n;
            for (int s : ss.sizes()) n.emplace_back(s);
            d.lattice = relation_lattice(n);
            d.text =
                "cycline triples: g = 0, n^{d(mu)} = n^{d(nu)}, "
                "addr(mu) = addr(nu)";
            return d;
        }
        default:
            throw Error("UnsupportedFamily",
                        "no closed-form cycline description; use the "
                        "depth-bounded check");
    }
}

CyclineCheck is_cycline_to_depth(const SelfSimilarKGraph& ss,
                                 const CyclineTriple& t, int depth,
                                 std::uint64_t cap, std::uint64_t seed) {
    const int k = ss.rank();
    Degree d1(std::vector<int>(k, depth));
    Degree m = (t.mu.degree() + d1).meet(t.nu.degree() + d1);
    const KGraph& g = ss.graph();
    auto holds = [&](const Path& w) {
        Path left = g.compose(t.mu, ss.act(t.g, w));
        Path right = g.compose(t.nu, w);
        return g.factorize(left, m).first == g.factorize(right, m).first;
    };
    mpz_class total = g.path_count(d1);
    CyclineCheck out{CyclineCheck::HoldsToDepth, depth, 0, std::nullopt};
    if (total <= cap) {
        for (const Path& w : g.enumerate_paths(d1, cap))
            if (!holds(w)) return {CyclineCheck::Falsified, depth, 0, w};
        return out;
    }
    std::mt19937_64 rng(seed);
    const std::uint64_t samples = 5000;
    out.samples = samples;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Path w = Path::empty(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < depth; ++j)
                w.words[i].push_back(
                    static_cast<int>(rng() % ss.sizes()[i]));
        if (!holds(w)) return {CyclineCheck::Falsified, depth, samples, w};
    }
    return out;
}

StructureReport simplicity_report(const SelfSimilarKGraph& ss) {
    StructureReport r;
    r.pseudo_free = ss.pseudo_free_structural();
    switch (ss.family()) {
        case Family::Rank1: {
            Rank1Periodicity per = rank1_periodicity(ss);
            r.family = "rank-1";
            r.periodic = per.periodic;
            r.simple = !per.periodic;
            r.kirchberg = r.simple;
            std::ostringstream j;
            for (const auto& row : per.table)
                j << "orbit " << row.orbit << ": n=" << row.n
                  << " m=" << row.m.get_str() << " -> "
                  << (row.divides ? "n | m" : "n does not divide m") << "; ";
            j << (per.periodic ? "periodic (all orbits divide)"
                               : "aperiodic, hence simple and Kirchberg");
            r.justification = j.str();
            break;
        }
        case Family::LambdaOne:
            r.family = "all-sizes-one";
            r.periodic = true;
            r.simple = false;
            r.kirchberg = false;
            r.justification =
                "single path per degree: every triple is cycline, so the "
                "algebra is periodic and non-simple";
            break;
        case Family::ProductOdometers: {
            r.family = "product-of-odometers";
            std::vector<mpz_class> n;
            for (int s : ss.sizes()) n.emplace_back(s);
            r.lattice = relation_lattice(n);
            r.simple = r.lattice.independent();
            r.periodic = !r.simple;
            r.kirchberg = r.simple;
            r.justification =
                r.simple ? "sizes are multiplicatively independent "
                           "(empty relation lattice)"
                         : "nontrivial relation lattice among the sizes";
            break;
        }
        default:
            throw Error("UnsupportedFamily",
                        "no structural verdict for this action");
    }
    try {
        r.cycline = cycline_structure(ss).text;
    } catch (const Error&) {
        r.cycline = "unsupported";
    }
    return r;
}

std::string StructureReport::to_json() const {
    nlohmann::json j;
    j["family"] = family;
    j["pseudo_free"] = pseudo_free;
    j["periodic"] = periodic;
    j["simple"] = simple;
    j["kirchberg"] = kirchberg;
    j["justification"] = justification;
    j["cycline"] = cycline;
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& v : lattice.basis) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : v) row.push_back(x.get_str());
        basis.push_back(row);
    }
    j["relation_lattice"] = basis;
    return j.dump(2);
}

std::string StructureReport::to_text() const {
    std::ostringstream out;
    out << "family       : " << family << "\n"
        << "pseudo-free  : " << (pseudo_free ? "yes" : "no") << "\n"
        << "periodic     : " << (periodic ? "yes" : "no") << "\n"
        << "simple       : " << (simple ? "yes" : "no") << "\n"
        << "kirchberg    : " << (kirchberg ? "yes" : "no") << "\n"
        << "justification: " << justification << "\n"
        << "cycline      : " << cycline << "\n";
    if (!lattice.basis.empty()) {
        out << "lattice      :";
        for (const auto& v : lattice.basis) {
            out << " (";
            for (size_t i = 0; i < v.size(); ++i)
                out << (i ? "," : "") << v[i].get_str();
            out << ")";
        }
        out << "\n";
    }
    return out.str();
}

mpz_class addr(const SelfSimilarKGraph& ss, const Path& mu) {
    if (ss.family() != Family::ProductOdometers)
        throw Error("UnsupportedFamily",
                    "addresses are defined for products of odometers");
    mpz_class r = 0, w = 1;
    for (int i = 0; i < ss.rank(); ++i) {
        for (int s : mu.words[i]) {
            r += s * w;
            w *= ss.sizes()[i];
        }
    }
    return r;
}

Path path_from_addr(const SelfSimilarKGraph& ss, const Degree& d,
                    const mpz_class& r) {
    if (ss.family() != Family::ProductOdometers)
        throw Error("UnsupportedFamily",
                    "addresses are defined for products of odometers");
    Path p = Path::empty(ss.rank());
    mpz_class v = r;
    for (int i = 0; i < ss.rank(); ++i) {
        for (int j = 0; j < d[i]; ++j) {
            mpz_class q, digit;
            mpz_fdiv_qr_ui(q.get_mpz_t(), digit.get_mpz_t(), v.get_mpz_t(),
                           ss.sizes()[i]);
            p.words[i].push_back(static_cast<int>(digit.get_si()));
            v = q;
        }
    }
    return p;
}

PhiBijection phi_pq(const SelfSimilarKGraph& ss, const Degree& p,
                    const Degree& q, std::uint64_t cap) {
    if (ss.size_power(p) != ss.size_power(q))
        throw Error("DegreesNotEquivalent", "n^p != n^q");
    PhiBijection phi;
    phi.p = p;
    phi.q = q;
    for (const Path& mu : ss.graph().enumerate_paths(p, cap)) {
        Path nu = path_from_addr(ss, q, addr(ss, mu));
        phi.forward.emplace(mu, nu);
        phi.backward.emplace(nu, mu);
    }
    // transport identities in both directions
    mpz_class pairs = ss.size_power(p) * ss.size_power(q);
    if (pairs <= cap) {
        const KGraph& g = ss.graph();
        for (const auto& [mu, fmu] : phi.forward) {
            for (const auto& [nu, bnu] : phi.backward) {
                if (g.compose(mu, nu) != g.compose(fmu, bnu))
                    throw Error("InternalError",
                                "transport identity failed at " + mu.str() +
                                    ", " + nu.str());
                if (g.compose(nu, mu) != g.compose(bnu, fmu))
                    throw Error("InternalError",
                                "reverse transport identity failed at " +
                                    nu.str() + ", " + mu.str());
            }
        }
    }
    return phi;
}

GroupExponent solve_commuting_exponent(const SelfSimilarKGraph& ss,
                                       const Path& mu, const Path& nu,
                                       const GroupExponent& m) {
    if (mu.degree() != nu.degree())
        throw Error("UnsupportedFamily", "paths must share a degree");
    GroupExponent l =
        m * ss.size_power(mu.degree()) + addr(ss, nu) - addr(ss, mu);
    SemigroupElement lhs = multiply(ss, {Path::empty(ss.rank()), l}, {mu, 0});
    SemigroupElement rhs = multiply(ss, {nu, 0}, {Path::empty(ss.rank()), m});
    if (lhs != rhs)
        throw Error("InternalError", "commuting exponent postcondition failed");
    return l;
}

AffineElement AffineElement::pow(int n) const {
    AffineElement r;
    for (int i = 0; i < n; ++i) r = r.compose(*this);
    return r;
}

AffineCheckReport affine_presentation_check(int p, int q) {
    if (p < 2 || q < 2)
        throw Error("InvalidShape", "need p, q >= 2");
    AffineElement z{1, 1}, s{p, 0}, t{q, 0};
    AffineCheckReport rep;
    rep.p = p;
    rep.q = q;
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) throw Error("RelationFailed", what);
        ++rep.relations_checked;
    };
    require(s.compose(t) == t.compose(s), "st = ts");
    require(s.compose(z) == z.pow(p).compose(s), "sz = z^p s");
    require(t.compose(z) == z.pow(q).compose(t), "tz = z^q t");

    ThetaFamily theta = make_theta(ThetaKind::Division, {p, q});
    rep.theta_consistent = true;
    for (int k = 0; k < p; ++k) {
        AffineElement ek = z.pow(k).compose(s);  // x -> p x + k
        for (int l = 0; l < q; ++l) {
            AffineElement fl = z.pow(l).compose(t);  // x -> q x + l
            // digit identity k + l p = l' + k' q
            int v = k + l * p;
            int kp = v / q, lp = v % q;
            AffineElement lhs = ek.compose(fl);
            AffineElement rhs = z.pow(lp).compose(t).compose(
                z.pow(kp).compose(s));
            require(lhs == rhs,
                    "e_" + std::to_string(k) + " f_" + std::to_string(l));
            auto [sp, tp] = theta.apply(0, 1, k, l);
            if (sp != kp || tp != lp) rep.theta_consistent = false;
        }
    }
    if (!rep.theta_consistent)
        throw Error("RelationFailed",
                    "division commutation table disagrees with the digit "
                    "identity");
    return rep;
}

}  // namespace ssk
