#ifndef SSK_EXAMPLES_HPP
#define SSK_EXAMPLES_HPP

#include "ssk/staralg.hpp"

namespace ssk::zoo {

/// 2-graph with e_i f_j = f_i e_j (n edges per color).
KGraph flip_graph(int n);
/// 2-graph with x_i y_j = y_{i+1} x_j (2 edges per color).
KGraph square_graph();

SelfSimilarKGraph flip_algebra(int n);
SelfSimilarKGraph square_algebra();

/// A pair of mutually inverse generator-level maps between two algebras.
struct IsoExample {
    SelfSimilarKGraph a, b;
    HomImages a_to_b, b_to_a;
    std::map<std::string, FormalCombination> extras;
};

/// flip(n) <-> (n,n)-odometer: edges to edges resp. u_{a^n} s_e; the
/// reverse sends u_a to the shift-by-one sum of rank-one products.
IsoExample odometer_flip_iso(int n);
/// square <-> flip(2) through the unitary W = s_e1 s_e0^* + s_f0 s_e1^*.
IsoExample square_flip_iso();

struct IsoReport {
    int relations = 0;
    int round_trips = 0;
};
/// Checks both maps and both round trips; throws RelationFailed.
IsoReport verify_iso(const IsoExample& ex);

}  // namespace ssk::zoo

#endif
