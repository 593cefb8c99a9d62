#ifndef SSK_STARALG_HPP
#define SSK_STARALG_HPP

#include <map>

#include "ssk/periodicity.hpp"

namespace ssk {

/// Exact element of Q(i, sqrt(p_1), ..., sqrt(p_r)): a map from squarefree
/// radicands to Gaussian rationals. Zero is the empty map.
class Coefficient {
public:
    Coefficient() = default;
    Coefficient(int v) { set(1, mpq_class(v), 0); }
    Coefficient(const mpq_class& re) { set(1, re, 0); }
    static Coefficient gaussian(const mpq_class& re, const mpq_class& im) {
        Coefficient c;
        c.set(1, re, im);
        return c;
    }
    /// exact square root of a positive rational, as c * sqrt(d) with d squarefree
    static Coefficient sqrt_rational(const mpq_class& x);
    /// x^(twice_h / 2) for positive rational x and integer twice_h
    static Coefficient half_power(const mpq_class& x, long twice_h);

    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator-(const Coefficient& o) const;
    Coefficient operator-() const;
    Coefficient operator*(const Coefficient& o) const;
    Coefficient conj() const;

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    mpq_class rational() const;  // requires is_rational
    bool operator==(const Coefficient& o) const { return terms_ == o.terms_; }

    std::string str() const;

private:
    void set(const mpz_class& rad, const mpq_class& re, const mpq_class& im);
    // radicand (squarefree, >= 1) -> (re, im)
    std::map<mpz_class, std::pair<mpq_class, mpq_class>> terms_;
};

/// s_mu u_{a^g} s_nu^*; paths in normal form.
struct Monomial {
    Path mu;
    GroupExponent g;
    Path nu;

    IntVec gauge_degree() const {
        IntVec d;
        for (int i = 0; i < mu.rank(); ++i)
            d.push_back(static_cast<long>(mu.words[i].size()) -
                        static_cast<long>(nu.words[i].size()));
        return d;
    }
    bool operator==(const Monomial& o) const {
        return mu == o.mu && g == o.g && nu == o.nu;
    }
    bool operator<(const Monomial& o) const {
        if (mu != o.mu) return mu < o.mu;
        if (int c = cmp(g, o.g)) return c < 0;
        return nu < o.nu;
    }
};

/// Finite linear combination of monomials; no explicit zero coefficients.
struct FormalCombination {
    std::map<Monomial, Coefficient> terms;

    void add_term(const Monomial& m, const Coefficient& c);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const FormalCombination& o) const = default;

    FormalCombination operator+(const FormalCombination& o) const;
    FormalCombination operator-(const FormalCombination& o) const;
};
FormalCombination operator*(const Coefficient& c, const FormalCombination& a);

FormalCombination fc_zero();
FormalCombination fc_one(const SelfSimilarKGraph& ss);
FormalCombination fc_mono(Monomial m, Coefficient c = Coefficient(1));
/// s_e for a single edge
FormalCombination fc_edge(const SelfSimilarKGraph& ss, int color, int letter);
/// u_{a^g}
FormalCombination fc_u(const SelfSimilarKGraph& ss, const GroupExponent& g);

FormalCombination mono_product(const SelfSimilarKGraph& ss, const Monomial& m1,
                               const Monomial& m2,
                               std::uint64_t cap = kDefaultEnumerationCap);
FormalCombination product(const SelfSimilarKGraph& ss,
                          const FormalCombination& a,
                          const FormalCombination& b,
                          std::uint64_t cap = kDefaultEnumerationCap);
FormalCombination adjoint(const FormalCombination& a);
FormalCombination power(const SelfSimilarKGraph& ss,
                        const FormalCombination& a, long n);

/// Cuntz-Krieger refinement of a monomial along all degree-r right tails.
FormalCombination refine(const SelfSimilarKGraph& ss, const Monomial& m,
                         const Degree& r,
                         std::uint64_t cap = kDefaultEnumerationCap);

/// Equality in the algebra: refine both sides per gauge class to a common
/// right degree and compare coefficients. Requires a pseudo-free action
/// (or the trivial-group wrapper).
bool canonical_eq(const SelfSimilarKGraph& ss, const FormalCombination& a,
                  const FormalCombination& b,
                  std::uint64_t cap = kDefaultEnumerationCap);

FormalCombination gauge_project(const FormalCombination& a, const IntVec& n);

Coefficient omega(const SelfSimilarKGraph& ss, const FormalCombination& a);
Coefficient tau(const SelfSimilarKGraph& ss, const FormalCombination& a);

/// modular scaling sigma: monomial -> n^{-gauge degree} * monomial
FormalCombination kms_sigma(const SelfSimilarKGraph& ss,
                            const FormalCombination& a);
/// omega(a b) == omega(b sigma(a)), exact
bool kms_check(const SelfSimilarKGraph& ss, const FormalCombination& a,
               const FormalCombination& b);

FormalCombination modular_S(const FormalCombination& a);
FormalCombination modular_F(const SelfSimilarKGraph& ss,
                            const FormalCombination& a);
FormalCombination modular_J(const SelfSimilarKGraph& ss,
                            const FormalCombination& a);
/// Delta^{twice_h/2}
FormalCombination delta_pow(const SelfSimilarKGraph& ss,
                            const FormalCombination& a, long twice_h);

/// V_{p,q} = sum over mu of degree p of s_mu s_{phi(mu)}^*
FormalCombination build_V(const SelfSimilarKGraph& ss, const Degree& p,
                          const Degree& q);
bool commutes_with_generators(const SelfSimilarKGraph& ss,
                              const FormalCombination& x);
bool is_unitary(const SelfSimilarKGraph& ss, const FormalCombination& x);

/// keeps the monomials with m^{d(mu)} = m^{d(nu)} (all-sizes-one family)
FormalCombination fprime_filter(const SelfSimilarKGraph& ss,
                                const FormalCombination& a);
bool fprime_commute_check(const SelfSimilarKGraph& ss,
                          const FormalCombination& a,
                          const FormalCombination& b);
/// b^* a b stays in the filtered span, for filtered a
bool normalizer_check(const SelfSimilarKGraph& ss, const FormalCombination& b,
                      const FormalCombination& a);

/// Generator images in a target algebra: one combination per edge, plus the
/// image of u_a for self-similar sources.
struct HomImages {
    std::vector<std::vector<FormalCombination>> edge;  // [color][letter]
    std::optional<FormalCombination> u;
};
struct HomReport {
    int relations_checked = 0;
};
/// Verifies theta-commutations, isometry and per-color CK sums, and (for
/// self-similar sources) u_a s_e = s_{a.e} u_{a|_e}. Throws RelationFailed.
HomReport hom_check(const SelfSimilarKGraph& src, const SelfSimilarKGraph& dst,
                    const HomImages& images);
FormalCombination hom_apply(const SelfSimilarKGraph& src,
                            const SelfSimilarKGraph& dst,
                            const HomImages& images,
                            const FormalCombination& a);

/// Grammar: sums of terms `c * s[<path>] * u[a^3] * s[<path>]^*`; `1` is the
/// identity, coefficients are integers or (a/b).
FormalCombination parse_expression(const SelfSimilarKGraph& ss,
                                   const std::string& text);
std::string print_combination(const SelfSimilarKGraph& ss,
                              const FormalCombination& a);

}  // namespace ssk

#endif
