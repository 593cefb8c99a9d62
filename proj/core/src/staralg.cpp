#include "ssk/staralg.hpp"

#include <sstream>

namespace ssk {

namespace {

mpq_class mpq_pow(const mpq_class& x, long e) {
    mpq_class r = 1;
    mpq_class b = e >= 0 ? x : mpq_class(1) / x;
    for (long i = 0, n = e >= 0 ? e : -e; i < n; ++i) r *= b;
    return r;
}

// v = c^2 * d with d squarefree; returns (c, d)
std::pair<mpz_class, mpz_class> square_decompose(mpz_class v) {
    mpz_class c = 1, d = 1;
    for (mpz_class p = 2; p * p <= v; ++p) {
        int e = 0;
        while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
            v /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) c *= p;
        if (e % 2) d *= p;
    }
    d *= v;
    return {c, d};
}

mpq_class size_power_q(const SelfSimilarKGraph& ss, const IntVec& v) {
    mpq_class r = 1;
    for (size_t i = 0; i < v.size(); ++i)
        r *= mpq_pow(mpq_class(ss.sizes()[i]), v[i]);
    return r;
}

IntVec degree_diff(const Degree& a, const Degree& b) {
    IntVec v;
    for (int i = 0; i < a.rank(); ++i) v.push_back(a[i] - b[i]);
    return v;
}

void require_group_support(const SelfSimilarKGraph& ss, const Monomial& m) {
    if (ss.group_trivial() && m.g != 0)
        throw Error("InvalidShape",
                    "group exponents must vanish without an action");
    if (!ss.group_trivial() && !ss.pseudo_free_structural())
        throw Error("NotPseudoFree",
                    "symbolic calculus requires a pseudo-free action");
}

}  // namespace

void Coefficient::set(const mpz_class& rad, const mpq_class& re,
                      const mpq_class& im) {
    if (re == 0 && im == 0) return;
    terms_[rad] = {re, im};
}

Coefficient Coefficient::sqrt_rational(const mpq_class& x) {
    if (x <= 0) throw Error("InvalidShape", "square root of a nonpositive value");
    mpz_class num = x.get_num(), den = x.get_den();
    auto [c, d] = square_decompose(num * den);
    Coefficient r;
    r.set(d, mpq_class(c) / mpq_class(den), 0);
    return r;
}

Coefficient Coefficient::half_power(const mpq_class& x, long twice_h) {
    if (twice_h % 2 == 0) return Coefficient(mpq_pow(x, twice_h / 2));
    long q = twice_h >= 0 ? twice_h / 2 : (twice_h - 1) / 2;  // floor
    return Coefficient(mpq_pow(x, q)) * sqrt_rational(x);
}

Coefficient Coefficient::operator+(const Coefficient& o) const {
    Coefficient r = *this;
    for (const auto& [rad, z] : o.terms_) {
        auto it = r.terms_.find(rad);
        if (it == r.terms_.end()) {
            r.terms_[rad] = z;
        } else {
            it->second.first += z.first;
            it->second.second += z.second;
            if (it->second.first == 0 && it->second.second == 0)
                r.terms_.erase(it);
        }
    }
    return r;
}

Coefficient Coefficient::operator-() const {
    Coefficient r;
    for (const auto& [rad, z] : terms_)
        r.terms_[rad] = {-z.first, -z.second};
    return r;
}

Coefficient Coefficient::operator-(const Coefficient& o) const {
    return *this + (-o);
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
    Coefficient r;
    for (const auto& [r1, z1] : terms_) {
        for (const auto& [r2, z2] : o.terms_) {
            mpz_class g = gcd(r1, r2);
            mpz_class rad = (r1 / g) * (r2 / g);
            mpq_class re = (z1.first * z2.first - z1.second * z2.second) * g;
            mpq_class im = (z1.first * z2.second + z1.second * z2.first) * g;
            Coefficient t;
            t.set(rad, re, im);
            r = r + t;
        }
    }
    return r;
}

Coefficient Coefficient::conj() const {
    Coefficient r;
    for (const auto& [rad, z] : terms_) r.terms_[rad] = {z.first, -z.second};
    return r;
}

bool Coefficient::is_rational() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == 1 &&
           terms_.begin()->second.second == 0;
}

mpq_class Coefficient::rational() const {
    if (terms_.empty()) return 0;
    if (!is_rational()) throw Error("InvalidShape", "coefficient not rational");
    return terms_.begin()->second.first;
}

std::string Coefficient::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [rad, z] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(";
        if (z.second == 0) {
            out << z.first.get_str();
        } else if (z.first == 0) {
            out << z.second.get_str() << "*i";
        } else {
            out << z.first.get_str() << "+" << z.second.get_str() << "*i";
        }
        out << ")";
        if (rad != 1) out << "*sqrt(" << rad.get_str() << ")";
    }
    return out.str();
}

void FormalCombination::add_term(const Monomial& m, const Coefficient& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        Coefficient s = it->second + c;
        if (s.is_zero())
            terms.erase(it);
        else
            it->second = s;
    }
}

FormalCombination FormalCombination::operator+(
    const FormalCombination& o) const {
    FormalCombination r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, c);
    return r;
}

FormalCombination FormalCombination::operator-(
    const FormalCombination& o) const {
    FormalCombination r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, -c);
    return r;
}

FormalCombination operator*(const Coefficient& c, const FormalCombination& a) {
    FormalCombination r;
    for (const auto& [m, x] : a.terms) r.add_term(m, c * x);
    return r;
}

FormalCombination fc_zero() { return {}; }

FormalCombination fc_one(const SelfSimilarKGraph& ss) {
    FormalCombination r;
    r.add_term({Path::empty(ss.rank()), 0, Path::empty(ss.rank())},
               Coefficient(1));
    return r;
}

FormalCombination fc_mono(Monomial m, Coefficient c) {
    FormalCombination r;
    r.add_term(m, c);
    return r;
}

FormalCombination fc_edge(const SelfSimilarKGraph& ss, int color, int letter) {
    Path p = Path::empty(ss.rank());
    p.words.at(color).push_back(letter);
    return fc_mono({p, 0, Path::empty(ss.rank())});
}

FormalCombination fc_u(const SelfSimilarKGraph& ss, const GroupExponent& g) {
    return fc_mono({Path::empty(ss.rank()), g, Path::empty(ss.rank())});
}

FormalCombination mono_product(const SelfSimilarKGraph& ss, const Monomial& m1,
                               const Monomial& m2, std::uint64_t cap) {
    require_group_support(ss, m1);
    require_group_support(ss, m2);
    FormalCombination out;
    for (const auto& [gamma, delta] :
         ss.graph().minimal_common_extensions(m1.nu, m2.mu, cap)) {
        Path rev = ss.act(-m2.g, delta);
        Monomial m;
        m.mu = ss.graph().compose(m1.mu, ss.act(m1.g, gamma));
        m.g = ss.restrict(m1.g, gamma) + ss.restrict(m2.g, rev);
        m.nu = ss.graph().compose(m2.nu, rev);
        out.add_term(m, Coefficient(1));
    }
    return out;
}

FormalCombination product(const SelfSimilarKGraph& ss,
                          const FormalCombination& a,
                          const FormalCombination& b, std::uint64_t cap) {
    FormalCombination out;
    for (const auto& [m1, c1] : a.terms)
        for (const auto& [m2, c2] : b.terms) {
            Coefficient c = c1 * c2;
            for (const auto& [m, u] : mono_product(ss, m1, m2, cap).terms)
                out.add_term(m, c * u);
        }
    return out;
}

FormalCombination adjoint(const FormalCombination& a) {
    FormalCombination out;
    for (const auto& [m, c] : a.terms)
        out.add_term({m.nu, -m.g, m.mu}, c.conj());
    return out;
}

FormalCombination power(const SelfSimilarKGraph& ss,
                        const FormalCombination& a, long n) {
    if (n < 0) return power(ss, adjoint(a), -n);
    FormalCombination r = fc_one(ss);
    for (long i = 0; i < n; ++i) r = product(ss, r, a);
    return r;
}

FormalCombination refine(const SelfSimilarKGraph& ss, const Monomial& m,
                         const Degree& r, std::uint64_t cap) {
    require_group_support(ss, m);
    FormalCombination out;
    for (const Path& alpha : ss.graph().enumerate_paths(r, cap)) {
        out.add_term({ss.graph().compose(m.mu, ss.act(m.g, alpha)),
                      ss.restrict(m.g, alpha),
                      ss.graph().compose(m.nu, alpha)},
                     Coefficient(1));
    }
    return out;
}

bool canonical_eq(const SelfSimilarKGraph& ss, const FormalCombination& a,
                  const FormalCombination& b, std::uint64_t cap) {
    FormalCombination d = a - b;
    std::map<IntVec, std::vector<std::pair<Monomial, Coefficient>>> groups;
    for (const auto& [m, c] : d.terms) groups[m.gauge_degree()].push_back({m, c});
    for (const auto& [gdeg, ms] : groups) {
        Degree target = ms.front().first.nu.degree();
        for (const auto& [m, c] : ms) target = target.join(m.nu.degree());
        FormalCombination acc;
        for (const auto& [m, c] : ms) {
            Degree r = target - m.nu.degree();
            for (const auto& [rm, rc] : refine(ss, m, r, cap).terms)
                acc.add_term(rm, c * rc);
        }
        if (!acc.is_zero()) return false;
    }
    return true;
}

FormalCombination gauge_project(const FormalCombination& a, const IntVec& n) {
    FormalCombination out;
    for (const auto& [m, c] : a.terms)
        if (m.gauge_degree() == n) out.add_term(m, c);
    return out;
}

Coefficient omega(const SelfSimilarKGraph& ss, const FormalCombination& a) {
    Coefficient v;
    for (const auto& [m, c] : a.terms) {
        if (m.g != 0 || m.mu != m.nu) continue;
        mpq_class w = mpq_class(1) / mpq_class(ss.size_power(m.mu.degree()));
        v = v + c * Coefficient(w);
    }
    return v;
}

Coefficient tau(const SelfSimilarKGraph& ss, const FormalCombination& a) {
    for (const auto& [m, c] : a.terms) {
        for (long x : m.gauge_degree())
            if (x != 0)
                throw Error("NotGaugeInvariant",
                            "tau is defined on the gauge-degree-0 span");
    }
    return omega(ss, a);
}

FormalCombination kms_sigma(const SelfSimilarKGraph& ss,
                            const FormalCombination& a) {
    FormalCombination out;
    for (const auto& [m, c] : a.terms) {
        IntVec gdeg = m.gauge_degree();
        for (long& x : gdeg) x = -x;
        out.add_term(m, c * Coefficient(size_power_q(ss, gdeg)));
    }
    return out;
}

bool kms_check(const SelfSimilarKGraph& ss, const FormalCombination& a,
               const FormalCombination& b) {
    if (ss.family() != Family::ProductOdometers)
        throw Error("UnsupportedFamily",
                    "the KMS state is defined for products of odometers");
    return omega(ss, product(ss, a, b)) ==
           omega(ss, product(ss, b, kms_sigma(ss, a)));
}

namespace {
void require_product_family(const SelfSimilarKGraph& ss) {
    if (ss.family() != Family::ProductOdometers)
        throw Error("UnsupportedFamily",
                    "modular data is defined for products of odometers");
}
}  // namespace

FormalCombination modular_S(const FormalCombination& a) { return adjoint(a); }

FormalCombination modular_F(const SelfSimilarKGraph& ss,
                            const FormalCombination& a) {
    require_product_family(ss);
    FormalCombination out;
    for (const auto& [m, c] : a.terms) {
        mpq_class f = size_power_q(ss, m.gauge_degree());
        out.add_term({m.nu, -m.g, m.mu}, c.conj() * Coefficient(f));
    }
    return out;
}

FormalCombination modular_J(const SelfSimilarKGraph& ss,
                            const FormalCombination& a) {
    require_product_family(ss);
    FormalCombination out;
    for (const auto& [m, c] : a.terms) {
        Coefficient f =
            Coefficient::sqrt_rational(size_power_q(ss, m.gauge_degree()));
        out.add_term({m.nu, -m.g, m.mu}, c.conj() * f);
    }
    return out;
}

FormalCombination delta_pow(const SelfSimilarKGraph& ss,
                            const FormalCombination& a, long twice_h) {
    require_product_family(ss);
    FormalCombination out;
    for (const auto& [m, c] : a.terms) {
        IntVec rev = degree_diff(m.nu.degree(), m.mu.degree());
        out.add_term(m, c * Coefficient::half_power(size_power_q(ss, rev),
                                                    twice_h));
    }
    return out;
}

FormalCombination build_V(const SelfSimilarKGraph& ss, const Degree& p,
                          const Degree& q) {
    PhiBijection phi = phi_pq(ss, p, q);
    FormalCombination out;
    for (const auto& [mu, nu] : phi.forward)
        out.add_term({mu, 0, nu}, Coefficient(1));
    return out;
}

bool commutes_with_generators(const SelfSimilarKGraph& ss,
                              const FormalCombination& x) {
    if (!ss.group_trivial()) {
        FormalCombination u = fc_u(ss, 1);
        if (!canonical_eq(ss, product(ss, x, u), product(ss, u, x)))
            return false;
    }
    for (int i = 0; i < ss.rank(); ++i)
        for (int s = 0; s < ss.sizes()[i]; ++s) {
            FormalCombination e = fc_edge(ss, i, s);
            if (!canonical_eq(ss, product(ss, x, e), product(ss, e, x)))
                return false;
        }
    return true;
}

bool is_unitary(const SelfSimilarKGraph& ss, const FormalCombination& x) {
    FormalCombination one = fc_one(ss);
    return canonical_eq(ss, product(ss, x, adjoint(x)), one) &&
           canonical_eq(ss, product(ss, adjoint(x), x), one);
}

FormalCombination fprime_filter(const SelfSimilarKGraph& ss,
                                const FormalCombination& a) {
    if (ss.family() != Family::LambdaOne)
        throw Error("UnsupportedFamily",
                    "the filtered span lives in the all-sizes-one family");
    FormalCombination out;
    for (const auto& [m, c] : a.terms)
        if (ss.restriction_power(m.mu.degree()) ==
            ss.restriction_power(m.nu.degree()))
            out.add_term(m, c);
    return out;
}

bool fprime_commute_check(const SelfSimilarKGraph& ss,
                          const FormalCombination& a,
                          const FormalCombination& b) {
    return canonical_eq(ss, product(ss, a, b), product(ss, b, a));
}

bool normalizer_check(const SelfSimilarKGraph& ss, const FormalCombination& b,
                      const FormalCombination& a) {
    FormalCombination c = product(ss, product(ss, adjoint(b), a), b);
    return fprime_filter(ss, c) == c;
}

HomReport hom_check(const SelfSimilarKGraph& src, const SelfSimilarKGraph& dst,
                    const HomImages& images) {
    HomReport rep;
    const int k = src.rank();
    if (static_cast<int>(images.edge.size()) != k)
        throw Error("InvalidShape", "edge image table rank mismatch");
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) throw Error("RelationFailed", what);
        ++rep.relations_checked;
    };
    FormalCombination one = fc_one(dst);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(images.edge[i].size()) != src.sizes()[i])
            throw Error("InvalidShape", "edge image table shape mismatch");
        FormalCombination ck = fc_zero();
        for (int s = 0; s < src.sizes()[i]; ++s) {
            const FormalCombination& e = images.edge[i][s];
            require(canonical_eq(dst, product(dst, adjoint(e), e), one),
                    "isometry at color " + std::to_string(i + 1) + " edge " +
                        std::to_string(s));
            ck = ck + product(dst, e, adjoint(e));
        }
        require(canonical_eq(dst, ck, one),
                "range projection sum at color " + std::to_string(i + 1));
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int s = 0; s < src.sizes()[i]; ++s)
                for (int t = 0; t < src.sizes()[j]; ++t) {
                    auto [sp, tp] = src.graph().theta_apply(i, j, s, t);
                    require(
                        canonical_eq(
                            dst,
                            product(dst, images.edge[i][s], images.edge[j][t]),
                            product(dst, images.edge[j][tp],
                                    images.edge[i][sp])),
                        "commutation at colors (" + std::to_string(i + 1) +
                            "," + std::to_string(j + 1) + ") letters (" +
                            std::to_string(s) + "," + std::to_string(t) + ")");
                }
    if (!src.group_trivial()) {
        if (!images.u)
            throw Error("InvalidShape", "missing image of the group generator");
        const FormalCombination& u = *images.u;
        require(is_unitary(dst, u), "group generator image unitary");
        for (int i = 0; i < k; ++i)
            for (int s = 0; s < src.sizes()[i]; ++s) {
                auto [e2, r] = src.act_edge(1, i, s);
                require(canonical_eq(
                            dst, product(dst, u, images.edge[i][s]),
                            product(dst, images.edge[i][e2],
                                    power(dst, u, r.get_si()))),
                        "self-similarity at color " + std::to_string(i + 1) +
                            " edge " + std::to_string(s));
            }
    }
    return rep;
}

FormalCombination hom_apply(const SelfSimilarKGraph& src,
                            const SelfSimilarKGraph& dst,
                            const HomImages& images,
                            const FormalCombination& a) {
    FormalCombination out;
    auto path_image = [&](const Path& p) {
        FormalCombination r = fc_one(dst);
        for (int i = 0; i < src.rank(); ++i)
            for (int l : p.words[i]) r = product(dst, r, images.edge[i][l]);
        return r;
    };
    for (const auto& [m, c] : a.terms) {
        FormalCombination t = path_image(m.mu);
        if (m.g != 0) {
            if (!images.u)
                throw Error("InvalidShape",
                            "missing image of the group generator");
            t = product(dst, t, power(dst, *images.u, m.g.get_si()));
        }
        t = product(dst, t, adjoint(path_image(m.nu)));
        out = out + (c * t);
    }
    return out;
}

namespace {

struct ExprParser {
    const SelfSimilarKGraph& ss;
    const std::string& s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw Error("ParseError", msg + " at offset " + std::to_string(pos));
    }

    std::string bracketed() {  // after '[', returns content up to matching ']'
        int depth = 1;
        std::string out;
        while (pos < s.size()) {
            char c = s[pos++];
            if (c == '[') ++depth;
            if (c == ']' && --depth == 0) return out;
            out += c;
        }
        fail("unterminated bracket");
    }

    mpq_class rational() {
        skip();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                s[pos] == '/'))
            ++pos;
        if (pos == start) fail("expected a number");
        mpq_class q(s.substr(start, pos - start));
        q.canonicalize();
        return q;
    }

    FormalCombination factor() {
        skip();
        if (pos >= s.size()) fail("expected a factor");
        if (s[pos] == '(') {
            ++pos;
            mpq_class q = rational();
            if (!eat(')')) fail("expected ')'");
            return Coefficient(q) * fc_one(ss);
        }
        if (s[pos] == 's' && pos + 1 < s.size() && s[pos + 1] == '[') {
            pos += 2;
            Path p = ss.graph().parse_path(bracketed());
            FormalCombination r = fc_mono({p, 0, Path::empty(ss.rank())});
            if (eat('^')) {
                if (!eat('*')) fail("expected '*' after '^'");
                r = adjoint(r);
            }
            return r;
        }
        if (s[pos] == 'u' && pos + 1 < s.size() && s[pos + 1] == '[') {
            pos += 2;
            std::string body = bracketed();
            mpz_class g;
            if (body == "a")
                g = 1;
            else if (body.rfind("a^", 0) == 0)
                g = mpz_class(body.substr(2));
            else
                fail("bad group token '" + body + "'");
            FormalCombination r = fc_u(ss, g);
            if (eat('^')) {
                if (!eat('*')) fail("expected '*' after '^'");
                r = adjoint(r);
            }
            return r;
        }
        if (s[pos] == '1' &&
            (pos + 1 >= s.size() ||
             !std::isdigit(static_cast<unsigned char>(s[pos + 1])))) {
            ++pos;
            return fc_one(ss);
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '-')
            return Coefficient(rational()) * fc_one(ss);
        fail("unrecognized factor");
    }

    FormalCombination term() {
        FormalCombination r = factor();
        for (;;) {
            skip();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                r = product(ss, r, factor());
            } else {
                return r;
            }
        }
    }

    FormalCombination expression() {
        FormalCombination r = term();
        for (;;) {
            skip();
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                char op = s[pos++];
                FormalCombination t = term();
                r = op == '+' ? r + t : r - t;
            } else {
                return r;
            }
        }
    }
};

}  // namespace

FormalCombination parse_expression(const SelfSimilarKGraph& ss,
                                   const std::string& text) {
    ExprParser p{ss, text};
    FormalCombination r = p.expression();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

std::string print_combination(const SelfSimilarKGraph& ss,
                              const FormalCombination& a) {
    (void)ss;
    if (a.terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : a.terms) {
        if (!first) out << " + ";
        first = false;
        std::vector<std::string> parts;
        if (!(c == Coefficient(1))) parts.push_back(c.str());
        if (!m.mu.is_empty()) parts.push_back("s[" + m.mu.str() + "]");
        if (m.g != 0) parts.push_back("u[a^" + m.g.get_str() + "]");
        if (!m.nu.is_empty()) parts.push_back("s[" + m.nu.str() + "]^*");
        if (parts.empty()) parts.push_back("1");
        for (size_t i = 0; i < parts.size(); ++i)
            out << (i ? " * " : "") << parts[i];
    }
    return out.str();
}

}  // namespace ssk
