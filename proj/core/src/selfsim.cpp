#include "ssk/selfsim.hpp"

#include <numeric>

namespace ssk {

void SelfSimilarKGraph::build_orbits() {
    const int k = rank();
    orbit_index_base_.assign(k, 0);
    int base = 0;
    for (int i = 0; i < k; ++i) {
        orbit_index_base_[i] = base;
        base += sizes()[i];
    }
    orbit_of_.assign(base, {-1, -1});
    orbits_.clear();
    bigN_ = 1;
    for (int i = 0; i < k; ++i) {
        for (int s0 = 0; s0 < sizes()[i]; ++s0) {
            if (orbit_of_[orbit_index_base_[i] + s0].first >= 0) continue;
            Orbit o;
            o.color = i;
            int s = s0;
            do {
                orbit_of_[orbit_index_base_[i] + s] = {
                    static_cast<int>(orbits_.size()),
                    static_cast<int>(o.edges.size())};
                o.edges.push_back(s);
                o.sum += spec_.rho[i][s];
                s = spec_.sigma[i][s];
            } while (s != s0);
            bigN_ *= o.length();
            orbits_.push_back(std::move(o));
        }
    }
}

void SelfSimilarKGraph::classify() {
    const int k = rank();
    mvec_.clear();
    bigM_ = 1;
    bool all_one = true;
    for (int n : sizes()) all_one &= (n == 1);
    if (all_one) {
        family_ = Family::LambdaOne;
        for (int i = 0; i < k; ++i) {
            mvec_.push_back(spec_.rho[i][0]);
            bigM_ *= spec_.rho[i][0];
        }
        return;
    }
    // product of odometers: division theta and (n_i,1)-odometers per color
    bool po = true;
    ThetaFamily div = make_theta(ThetaKind::Division, sizes());
    for (size_t t = 0; t < div.tables.size() && po; ++t)
        po = (div.tables[t] == graph_->theta().tables[t]);
    for (int i = 0; i < k && po; ++i) {
        for (int s = 0; s < sizes()[i] && po; ++s) {
            po = (spec_.sigma[i][s] == (s + 1) % sizes()[i]) &&
                 (spec_.rho[i][s] == (s == sizes()[i] - 1 ? 1 : 0));
        }
    }
    if (po)
        family_ = Family::ProductOdometers;
    else
        family_ = k == 1 ? Family::Rank1 : Family::General;
}

std::pair<int, mpz_class> SelfSimilarKGraph::act_edge(const GroupExponent& g,
                                                      int color,
                                                      int edge) const {
    if (group_trivial()) return {edge, 0};
    const auto [oi, pos] = orbit_of_[orbit_index_base_[color] + edge];
    const Orbit& o = orbits_[oi];
    const int L = o.length();
    // g = q*L + r with 0 <= r < L; a^{qL}.e = e and a^{qL}|_e = q * (cycle sum)
    mpz_class q, r;
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t(), L);
    mpz_class rest = q * o.sum;
    int s = edge;
    for (long step = 0, rr = r.get_si(); step < rr; ++step) {
        rest += spec_.rho[color][s];
        s = spec_.sigma[color][s];
    }
    return {s, rest};
}

Path SelfSimilarKGraph::act(const GroupExponent& g, const Path& p) const {
    Path out = Path::empty(rank());
    mpz_class h = g;
    for (int i = 0; i < rank(); ++i) {
        for (int l : p.words[i]) {
            auto [e, r] = act_edge(h, i, l);
            out.words[i].push_back(e);
            h = r;
        }
    }
    return out;
}

GroupExponent SelfSimilarKGraph::restrict(const GroupExponent& g,
                                          const Path& p) const {
    mpz_class h = g;
    for (int i = 0; i < rank(); ++i)
        for (int l : p.words[i]) h = act_edge(h, i, l).second;
    return h;
}

mpz_class SelfSimilarKGraph::restriction_power(const Degree& d) const {
    mpz_class r = 1;
    for (int i = 0; i < rank(); ++i) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), mvec_[i].get_mpz_t(), d[i]);
        r *= p;
    }
    return r;
}

mpz_class SelfSimilarKGraph::size_power(const Degree& d) const {
    return graph_->path_count(d);
}

bool SelfSimilarKGraph::pseudo_free_structural() const {
    if (group_trivial()) return false;
    for (const Orbit& o : orbits_)
        if (o.sum == 0) return false;
    return true;
}

PseudoFreeVerdict SelfSimilarKGraph::is_pseudo_free(int depth,
                                                    long exponent_bound) const {
    // a zero cycle sum yields the witness g = L (cycle length), mu = any
    // edge of the cycle: a^L.e = e and a^L|_e = 0
    for (const Orbit& o : orbits_) {
        if (o.sum == 0) {
            Path mu = Path::empty(rank());
            mu.words[o.color].push_back(o.edges[0]);
            return {PseudoFreeVerdict::Falsified,
                    PseudoFreeWitness{o.length(), mu}};
        }
    }
    if (family_ == Family::Rank1 || family_ == Family::LambdaOne ||
        family_ == Family::ProductOdometers)
        return {PseudoFreeVerdict::True, std::nullopt};
    // bounded search elsewhere
    Degree dmax = Degree::ones(rank());
    for (int i = 0; i < rank(); ++i) dmax.e[i] *= depth;
    std::vector<Path> all;
    for (const Path& p : graph_->enumerate_paths(dmax)) {
        (void)p;
    }
    // iterate all degrees <= depth*1
    std::vector<int> cur(rank(), 0);
    for (;;) {
        for (const Path& mu : graph_->enumerate_paths(Degree(cur))) {
            for (long g = 1; g <= exponent_bound; ++g) {
                for (long sg : {g, -g}) {
                    if (act(sg, mu) == mu && restrict(sg, mu) == 0)
                        return {PseudoFreeVerdict::Falsified,
                                PseudoFreeWitness{sg, mu}};
                }
            }
        }
        int i = rank() - 1;
        while (i >= 0 && cur[i] == depth) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return {PseudoFreeVerdict::UnknownToDepth, std::nullopt};
}

SelfSimilarKGraph SelfSimilarKGraph::validate(const KGraph& graph,
                                              const EdgeActionSpec& spec,
                                              int axiom_depth,
                                              long axiom_exponent_bound) {
    const int k = graph.rank();
    if (static_cast<int>(spec.sigma.size()) != k ||
        static_cast<int>(spec.rho.size()) != k)
        throw Error("InvalidShape", "action spec rank mismatch");
    for (int i = 0; i < k; ++i) {
        const int n = graph.sizes()[i];
        if (static_cast<int>(spec.sigma[i].size()) != n ||
            static_cast<int>(spec.rho[i].size()) != n)
            throw Error("InvalidShape", "action tables have wrong shape");
        std::vector<char> seen(n, 0);
        for (int v : spec.sigma[i]) {
            if (v < 0 || v >= n || seen[v]++)
                throw Error("NonBijectiveSigma",
                            "sigma_" + std::to_string(i + 1) +
                                " is not a permutation");
        }
    }

    SelfSimilarKGraph ss;
    ss.graph_ = std::make_shared<KGraph>(graph);
    ss.spec_ = spec;
    ss.build_orbits();
    ss.classify();

    // compatibility with the commutation relations:
    // (a.x^i_s)(a|_{x^i_s}.x^j_t) = (a.x^j_{t'})(a|_{x^j_{t'}}.x^i_{s'})
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            for (int s = 0; s < graph.sizes()[i]; ++s) {
                for (int t = 0; t < graph.sizes()[j]; ++t) {
                    auto [e1, g1] = ss.act_edge(1, i, s);
                    auto [e2, g2] = ss.act_edge(g1, j, t);
                    Path lhs = graph.normalize_word({{i, e1}, {j, e2}});
                    auto [sp, tp] = graph.theta_apply(i, j, s, t);
                    auto [f1, h1] = ss.act_edge(1, j, tp);
                    auto [f2, h2] = ss.act_edge(h1, i, sp);
                    Path rhs = graph.normalize_word({{j, f1}, {i, f2}});
                    if (lhs != rhs)
                        throw Error("ActCompatibilityViolated",
                                    "colors (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ") letters (" +
                                        std::to_string(s) + "," +
                                        std::to_string(t) + "): " + lhs.str() +
                                        " vs " + rhs.str());
                }
            }
        }
    }

    // safety-net property checks of the self-similarity axioms at small depth
    Degree half = Degree::ones(k);
    std::vector<Path> small;
    std::vector<int> cur(k, 0);
    for (;;) {
        for (const Path& p : graph.enumerate_paths(Degree(cur)))
            small.push_back(p);
        int i = k - 1;
        while (i >= 0 && cur[i] == 1) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    (void)axiom_depth;
    for (const Path& mu : small) {
        for (const Path& nu : small) {
            Path munu = graph.compose(mu, nu);
            for (long g = -axiom_exponent_bound; g <= axiom_exponent_bound;
                 ++g) {
                Path via = graph.compose(ss.act(g, mu),
                                         ss.act(ss.restrict(g, mu), nu));
                if (via != ss.act(g, munu))
                    throw Error("AxiomViolated",
                                "g.(mu nu) != (g.mu)(g|_mu.nu) at g=" +
                                    std::to_string(g) + ", mu=" + mu.str() +
                                    ", nu=" + nu.str());
                if (ss.restrict(ss.restrict(g, mu), nu) !=
                    ss.restrict(g, munu))
                    throw Error("AxiomViolated",
                                "g|_{mu nu} != g|_mu|_nu at g=" +
                                    std::to_string(g) + ", mu=" + mu.str() +
                                    ", nu=" + nu.str());
            }
        }
    }
    (void)half;
    return ss;
}

SelfSimilarKGraph SelfSimilarKGraph::graph_only(const KGraph& graph) {
    SelfSimilarKGraph ss;
    ss.graph_ = std::make_shared<KGraph>(graph);
    const int k = graph.rank();
    ss.spec_.sigma.resize(k);
    ss.spec_.rho.resize(k);
    for (int i = 0; i < k; ++i) {
        ss.spec_.sigma[i].resize(graph.sizes()[i]);
        std::iota(ss.spec_.sigma[i].begin(), ss.spec_.sigma[i].end(), 0);
        ss.spec_.rho[i].assign(graph.sizes()[i], 0);
    }
    ss.build_orbits();
    ss.family_ = Family::GraphOnly;
    return ss;
}

SelfSimilarKGraph make_odometer(int n, const mpz_class& m) {
    if (m == 0)
        throw Error("ZeroRestrictionSum", "odometer requires m != 0");
    KGraph g = KGraph::validate(make_theta(ThetaKind::Trivial, {n}));
    EdgeActionSpec spec;
    spec.sigma.resize(1);
    spec.rho.resize(1);
    spec.sigma[0].resize(n);
    for (int s = 0; s < n; ++s) spec.sigma[0][s] = (s + 1) % n;
    spec.rho[0].assign(n, 0);
    spec.rho[0][n - 1] = m;
    return SelfSimilarKGraph::validate(g, spec);
}

SelfSimilarKGraph make_gbs(
    const std::vector<std::pair<int, std::vector<mpz_class>>>& orbit_list) {
    int n = 0;
    for (const auto& [ni, rho] : orbit_list) {
        if (static_cast<int>(rho.size()) != ni)
            throw Error("InvalidShape", "orbit restriction table shape");
        mpz_class sum = std::accumulate(rho.begin(), rho.end(), mpz_class(0));
        if (sum == 0)
            throw Error("ZeroRestrictionSum",
                        "orbit sum m_i = 0 is not pseudo-free");
        n += ni;
    }
    KGraph g = KGraph::validate(make_theta(ThetaKind::Trivial, {n}));
    EdgeActionSpec spec;
    spec.sigma.resize(1);
    spec.rho.resize(1);
    int base = 0;
    for (const auto& [ni, rho] : orbit_list) {
        for (int s = 0; s < ni; ++s) {
            spec.sigma[0].push_back(base + (s + 1) % ni);
            spec.rho[0].push_back(rho[s]);
        }
        base += ni;
    }
    return SelfSimilarKGraph::validate(g, spec);
}

SelfSimilarKGraph make_product_of_odometers(const std::vector<int>& sizes) {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Division, sizes));
    EdgeActionSpec spec;
    const int k = static_cast<int>(sizes.size());
    spec.sigma.resize(k);
    spec.rho.resize(k);
    for (int i = 0; i < k; ++i) {
        spec.sigma[i].resize(sizes[i]);
        for (int s = 0; s < sizes[i]; ++s) spec.sigma[i][s] = (s + 1) % sizes[i];
        spec.rho[i].assign(sizes[i], 0);
        spec.rho[i][sizes[i] - 1] = 1;
    }
    return SelfSimilarKGraph::validate(g, spec);
}

SelfSimilarKGraph make_lambda_one(const std::vector<mpz_class>& m) {
    for (const mpz_class& mi : m)
        if (mi == 0)
            throw Error("ZeroRestrictionSum", "all m_i must be nonzero");
    const int k = static_cast<int>(m.size());
    KGraph g =
        KGraph::validate(make_theta(ThetaKind::Trivial, std::vector<int>(k, 1)));
    EdgeActionSpec spec;
    spec.sigma.assign(k, {0});
    spec.rho.resize(k);
    for (int i = 0; i < k; ++i) spec.rho[i] = {m[i]};
    return SelfSimilarKGraph::validate(g, spec);
}

std::pair<int, mpz_class> odometer_formula_oracle(int n, const mpz_class& m,
                                                  const mpz_class& g, int s) {
    std::vector<mpz_class> rho(n, 0);
    rho[n - 1] = m;
    mpz_class l, p;
    mpz_fdiv_qr_ui(l.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t(), n);
    const long pp = p.get_si();
    const int edge = (s + pp) % n;
    mpz_class rest = l * m;
    for (long q = 0; q < pp; ++q) rest += rho[(s + q) % n];
    return {edge, rest};
}

}  // namespace ssk
