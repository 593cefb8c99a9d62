#ifndef SSK_SELFSIM_HPP
#define SSK_SELFSIM_HPP

#include <memory>
#include <optional>
#include <variant>

#include "ssk/kgraph.hpp"

namespace ssk {

/// Exponent of a^g; arbitrary precision.
using GroupExponent = mpz_class;

/// Per-edge generator data: a.e = sigma_i(e), a|_e = a^{rho_i(e)}.
struct EdgeActionSpec {
    std::vector<std::vector<int>> sigma;        // per color, permutation of [n_i]
    std::vector<std::vector<mpz_class>> rho;    // per color, exponent of a|_e
};

/// One sigma-cycle within a color, with its restriction sum.
struct Orbit {
    int color = 0;
    std::vector<int> edges;  // in cycle order: sigma(edges[t]) = edges[t+1]
    mpz_class sum;           // sum of rho over the cycle
    int length() const { return static_cast<int>(edges.size()); }
};

enum class Family { Rank1, LambdaOne, ProductOdometers, General, GraphOnly };

struct PseudoFreeWitness {
    GroupExponent g;
    Path mu;
};
struct PseudoFreeVerdict {
    enum Kind { True, Falsified, UnknownToDepth } kind;
    std::optional<PseudoFreeWitness> witness;
};

/// Self-similar Z-action on a single-vertex k-graph.
/// Construct via validate_selfsim or the named factories below.
class SelfSimilarKGraph {
public:
    const KGraph& graph() const { return *graph_; }
    int rank() const { return graph_->rank(); }
    const std::vector<int>& sizes() const { return graph_->sizes(); }
    const EdgeActionSpec& spec() const { return spec_; }
    Family family() const { return family_; }
    bool group_trivial() const { return family_ == Family::GraphOnly; }

    // orbit decomposition of sigma, color by color
    const std::vector<Orbit>& orbits() const { return orbits_; }
    // product of orbit lengths (the rank-1 invariant N)
    const mpz_class& orbit_length_product() const { return bigN_; }
    // restriction vector for the Lambda(1,m) family (rho_i[0] when all sizes are 1)
    const std::vector<mpz_class>& restriction_vector() const { return mvec_; }
    // product of the restriction vector entries
    const mpz_class& restriction_product() const { return bigM_; }

    Path act(const GroupExponent& g, const Path& p) const;
    GroupExponent restrict(const GroupExponent& g, const Path& p) const;
    // single-edge action/restriction, reduced through the edge's sigma-cycle
    std::pair<int, mpz_class> act_edge(const GroupExponent& g, int color,
                                       int edge) const;

    bool pseudo_free_structural() const;  // all orbit sums nonzero
    PseudoFreeVerdict is_pseudo_free(int depth = 2, long exponent_bound = 8) const;

    // m^d for the restriction vector m (Lambda(1,m) family bookkeeping)
    mpz_class restriction_power(const Degree& d) const;
    // sizes^d as a big integer
    mpz_class size_power(const Degree& d) const;

    static SelfSimilarKGraph validate(const KGraph& graph,
                                      const EdgeActionSpec& spec,
                                      int axiom_depth = 2,
                                      long axiom_exponent_bound = 8);
    /// Plain k-graph wrapped for symbolic work without the Z-action;
    /// all group exponents must stay zero.
    static SelfSimilarKGraph graph_only(const KGraph& graph);

private:
    SelfSimilarKGraph() = default;

    std::shared_ptr<const KGraph> graph_;
    EdgeActionSpec spec_;
    Family family_ = Family::General;
    std::vector<Orbit> orbits_;
    std::vector<std::pair<int, int>> orbit_of_;  // per (color,edge): (orbit idx, pos)
    std::vector<int> orbit_index_base_;          // first edge index per color
    mpz_class bigN_ = 1;
    std::vector<mpz_class> mvec_;
    mpz_class bigM_ = 1;

    void build_orbits();
    void classify();
};

SelfSimilarKGraph make_odometer(int n, const mpz_class& m);
SelfSimilarKGraph make_gbs(
    const std::vector<std::pair<int, std::vector<mpz_class>>>& orbit_list);
SelfSimilarKGraph make_product_of_odometers(const std::vector<int>& sizes);
SelfSimilarKGraph make_lambda_one(const std::vector<mpz_class>& m);

/// Closed-form (n,m)-odometer action on a single edge; test oracle only.
std::pair<int, mpz_class> odometer_formula_oracle(int n, const mpz_class& m,
                                                  const mpz_class& g, int s);

}  // namespace ssk

#endif
