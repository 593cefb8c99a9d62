#ifndef SSK_PERIODICITY_HPP
#define SSK_PERIODICITY_HPP

#include <cstdint>
#include <map>

#include "ssk/semigroup.hpp"

namespace ssk {

/// Basis of {q in Z^k : prod p_i^{q_i} = 1}, canonical Hermite-style rows.
/// Empty basis = multiplicatively independent input.
struct RelationLattice {
    int k = 0;
    std::vector<std::vector<mpz_class>> basis;

    bool independent() const { return basis.empty(); }
    bool operator==(const RelationLattice& o) const = default;
};

RelationLattice relation_lattice(const std::vector<mpz_class>& p);

struct CyclineTriple {
    Path mu;
    GroupExponent g;
    Path nu;
    bool trivial() const { return g == 0 && mu == nu; }
};

/// Per-orbit divisibility table for the rank-1 criterion: periodic iff
/// n_i | m_i for every orbit.
struct Rank1Periodicity {
    bool periodic = false;
    struct Row {
        int orbit;
        int n;
        mpz_class m;
        bool divides;
    };
    std::vector<Row> table;
};

Rank1Periodicity rank1_periodicity(const SelfSimilarKGraph& ss);

/// Closed-form description of the cycline triples in the solved families.
struct CyclineDescription {
    enum Kind {
        DiagonalOnly,     // only (mu, 0, mu)
        Rank1Periodic,    // mu == nu and bigN | g
        AllTriples,       // every triple (all-sizes-one family)
        ProductFamily     // g = 0, equal size-power, equal address
    } kind = DiagonalOnly;
    mpz_class bigN = 1;       // Rank1Periodic modulus
    RelationLattice lattice;  // ProductFamily periodicity lattice
    std::string text;

    bool contains(const SelfSimilarKGraph& ss, const CyclineTriple& t) const;
};

CyclineDescription cycline_structure(const SelfSimilarKGraph& ss);

/// Depth-bounded check of mu (g.w) == nu w on degree-D*1 words, exhaustive
/// under the cap, otherwise sampled. samples == 0 means exhaustive.
struct CyclineCheck {
    enum Kind { HoldsToDepth, Falsified } kind;
    int depth;
    std::uint64_t samples = 0;
    std::optional<Path> witness;
};

CyclineCheck is_cycline_to_depth(const SelfSimilarKGraph& ss,
                                 const CyclineTriple& t, int depth,
                                 std::uint64_t cap = kDefaultEnumerationCap,
                                 std::uint64_t seed = 0);

struct StructureReport {
    bool pseudo_free = false;
    bool periodic = false;
    bool simple = false;
    bool kirchberg = false;
    std::string family;
    std::string justification;
    RelationLattice lattice;  // product family only (k = 0 otherwise)
    std::string cycline;

    std::string to_json() const;
    std::string to_text() const;
};

StructureReport simplicity_report(const SelfSimilarKGraph& ss);

/// Mixed-radix address of a path in the product-of-odometers family:
/// the unique r in [n^{d(mu)}] with act(r, zero path) = mu. Color-1
/// digits are least significant; within a color the first letter is
/// least significant.
mpz_class addr(const SelfSimilarKGraph& ss, const Path& mu);
Path path_from_addr(const SelfSimilarKGraph& ss, const Degree& d,
                    const mpz_class& r);

/// Address-preserving bijection Lambda^p -> Lambda^q; requires
/// n^p = n^q. Both transport identities are verified at construction.
struct PhiBijection {
    Degree p, q;
    std::map<Path, Path> forward, backward;
    const Path& apply(const Path& mu) const { return forward.at(mu); }
    const Path& invert(const Path& nu) const { return backward.at(nu); }
};

PhiBijection phi_pq(const SelfSimilarKGraph& ss, const Degree& p,
                    const Degree& q,
                    std::uint64_t cap = kDefaultEnumerationCap);

/// The exponent l with a^l e_mu = e_nu a^m, namely
/// l = m n^p + addr(nu) - addr(mu); verified through multiply.
GroupExponent solve_commuting_exponent(const SelfSimilarKGraph& ss,
                                       const Path& mu, const Path& nu,
                                       const GroupExponent& m);

/// x -> scale*x + shift with exact rational coefficients.
struct AffineElement {
    mpq_class scale = 1;
    mpq_class shift = 0;
    AffineElement compose(const AffineElement& o) const {
        return {scale * o.scale, scale * o.shift + shift};
    }
    AffineElement pow(int n) const;
    bool operator==(const AffineElement& o) const {
        return scale == o.scale && shift == o.shift;
    }
};

struct AffineCheckReport {
    int p = 0, q = 0;
    int relations_checked = 0;
    bool theta_consistent = false;
};

/// Realizes z -> x+1, s -> px, t -> qx and verifies st = ts, sz = z^p s,
/// tz = z^q t, and every mixed relation e_k f_l = f_{l'} e_{k'} against
/// the division commutation table. Throws RelationFailed with a witness.
AffineCheckReport affine_presentation_check(int p, int q);

}  // namespace ssk

#endif
