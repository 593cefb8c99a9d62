#include "ssk/examples.hpp"

namespace ssk::zoo {

KGraph flip_graph(int n) {
    return KGraph::validate(make_theta(ThetaKind::Flip, {n, n}));
}

KGraph square_graph() {
    ThetaFamily f;
    f.k = 2;
    f.sizes = {2, 2};
    f.tables.resize(1);
    auto& tab = f.tables[0];
    tab.resize(4);
    // x_s y_t = y_{s+1} x_t, i.e. (s,t) -> (s',t') = (t, s+1 mod 2)
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) tab[s * 2 + t] = {t, (s + 1) % 2};
    return KGraph::validate(f);
}

SelfSimilarKGraph flip_algebra(int n) {
    return SelfSimilarKGraph::graph_only(flip_graph(n));
}

SelfSimilarKGraph square_algebra() {
    return SelfSimilarKGraph::graph_only(square_graph());
}

namespace {

Monomial rank_one(const SelfSimilarKGraph& ss, int c1, int l1, int c2,
                  int l2) {
    Path mu = Path::empty(ss.rank());
    mu.words[c1].push_back(l1);
    Path nu = Path::empty(ss.rank());
    nu.words[c2].push_back(l2);
    return {mu, 0, nu};
}

}  // namespace

IsoExample odometer_flip_iso(int n) {
    IsoExample ex{flip_algebra(n), make_odometer(n, n), {}, {}, {}};

    ex.a_to_b.edge.resize(2);
    for (int i = 0; i < n; ++i) {
        ex.a_to_b.edge[0].push_back(fc_edge(ex.b, 0, i));
        // u_{a^n} s_{e_j} = s_{e_j} u_{a^n} (a^n fixes every edge)
        ex.a_to_b.edge[1].push_back(
            product(ex.b, fc_u(ex.b, n), fc_edge(ex.b, 0, i)));
    }

    ex.b_to_a.edge.resize(1);
    for (int i = 0; i < n; ++i)
        ex.b_to_a.edge[0].push_back(fc_edge(ex.a, 0, i));
    FormalCombination u_img;
    for (int i = 0; i + 1 < n; ++i)
        u_img.add_term(rank_one(ex.a, 0, i + 1, 0, i), Coefficient(1));
    u_img.add_term(rank_one(ex.a, 1, 0, 0, n - 1), Coefficient(1));
    ex.b_to_a.u = u_img;
    return ex;
}

IsoExample square_flip_iso() {
    IsoExample ex{square_algebra(), flip_algebra(2), {}, {}, {}};

    FormalCombination W;
    W.add_term(rank_one(ex.b, 0, 1, 0, 0), Coefficient(1));
    W.add_term(rank_one(ex.b, 1, 0, 0, 1), Coefficient(1));
    FormalCombination F;
    F.add_term(rank_one(ex.a, 1, 1, 0, 1), Coefficient(1));
    F.add_term(rank_one(ex.a, 1, 0, 0, 0), Coefficient(1));
    ex.extras["W"] = W;
    ex.extras["F"] = F;

    FormalCombination Ws = adjoint(W);
    ex.a_to_b.edge.resize(2);
    ex.a_to_b.edge[0] = {fc_edge(ex.b, 0, 0),
                         product(ex.b, fc_edge(ex.b, 0, 1), Ws)};
    ex.a_to_b.edge[1] = {
        product(ex.b, W, fc_edge(ex.b, 0, 0)),
        product(ex.b, product(ex.b, W, fc_edge(ex.b, 0, 1)), Ws)};

    FormalCombination F2 = product(ex.a, F, F);
    ex.b_to_a.edge.resize(2);
    ex.b_to_a.edge[0] = {fc_edge(ex.a, 0, 0),
                         product(ex.a, fc_edge(ex.a, 0, 1), F)};
    ex.b_to_a.edge[1] = {
        product(ex.a, F2, fc_edge(ex.a, 0, 0)),
        product(ex.a, product(ex.a, F2, fc_edge(ex.a, 0, 1)), F)};
    return ex;
}

IsoReport verify_iso(const IsoExample& ex) {
    IsoReport rep;
    rep.relations += hom_check(ex.a, ex.b, ex.a_to_b).relations_checked;
    rep.relations += hom_check(ex.b, ex.a, ex.b_to_a).relations_checked;

    auto round_trip = [&](const SelfSimilarKGraph& src,
                          const SelfSimilarKGraph& mid, const HomImages& fwd,
                          const HomImages& back) {
        for (int i = 0; i < src.rank(); ++i)
            for (int s = 0; s < src.sizes()[i]; ++s) {
                FormalCombination rt =
                    hom_apply(mid, src, back, fwd.edge[i][s]);
                if (!canonical_eq(src, rt, fc_edge(src, i, s)))
                    throw Error("RelationFailed",
                                "round trip at color " + std::to_string(i + 1) +
                                    " edge " + std::to_string(s));
                ++rep.round_trips;
            }
        if (!src.group_trivial()) {
            FormalCombination rt = hom_apply(mid, src, back, *fwd.u);
            if (!canonical_eq(src, rt, fc_u(src, 1)))
                throw Error("RelationFailed",
                            "round trip at the group generator");
            ++rep.round_trips;
        }
    };
    round_trip(ex.a, ex.b, ex.a_to_b, ex.b_to_a);
    round_trip(ex.b, ex.a, ex.b_to_a, ex.a_to_b);
    return rep;
}

}  // namespace ssk::zoo
