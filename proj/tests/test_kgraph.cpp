#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ssk/kgraph.hpp"

using namespace ssk;

namespace {

Path path2(const KGraph& g, const std::string& text) {
    return g.parse_path(text);
}

}  // namespace

TEST_CASE("division commutation table solves the digit identity") {
    ThetaFamily f = make_theta(ThetaKind::Division, {2, 3});
    // s + t*n_1 = t' + s'*n_2, frozen: (1,2) -> (1,2) since 1+2*2 = 5 = 2+1*3
    CHECK(f.apply(0, 1, 1, 2) == std::pair<int, int>{1, 2});
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 3; ++t) {
            auto [sp, tp] = f.apply(0, 1, s, t);
            CHECK(s + t * 2 == tp + sp * 3);
        }
}

TEST_CASE("division families validate for rank 3") {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Division, {2, 3, 5}));
    CHECK(g.rank() == 3);
    CHECK(g.path_count(Degree({1, 1, 1})) == 30);
    CHECK(g.path_count(Degree({2, 0, 1})) == 20);
}

TEST_CASE("tampered three-color table is rejected with a witness") {
    ThetaFamily bad = make_theta(ThetaKind::Division, {2, 2, 2});
    auto& tab = bad.tables[bad.pair_index(1, 2)];
    std::swap(tab[0], tab[1]);
    try {
        KGraph::validate(bad);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "CubicConditionViolated");
        CHECK(std::string(e.what()).find("colors") != std::string::npos);
    }
}

TEST_CASE("flip requires equal edge counts") {
    CHECK_THROWS_AS((void)make_theta(ThetaKind::Flip, {2, 3}), Error);
}

TEST_CASE("normalization sorts colors through theta") {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Division, {2, 3}));
    // x2[t'] x1[s'] rewrites back to x1[s] x2[t]
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 3; ++t) {
            auto [sp, tp] = g.theta_apply(0, 1, s, t);
            Path forward = g.normalize_word({{0, s}, {1, t}});
            Path reversed = g.normalize_word({{1, tp}, {0, sp}});
            CHECK(forward == reversed);
        }
}

TEST_CASE("factorize is a two-sided inverse of compose") {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Division, {2, 3}));
    for (const Path& p : g.enumerate_paths(Degree({2, 1}))) {
        for (const Degree& n :
             {Degree({1, 0}), Degree({0, 1}), Degree({2, 1}), Degree({1, 1})}) {
            auto [pre, suf] = g.factorize(p, n);
            CHECK(pre.degree() == n);
            CHECK(g.compose(pre, suf) == p);
        }
    }
}

TEST_CASE("unique factorization: distinct prefixes give distinct paths") {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Division, {2, 3, 5}));
    auto all = g.enumerate_paths(Degree({1, 1, 1}));
    CHECK(all.size() == 30);
    std::set<std::vector<std::vector<int>>> seen;
    for (const Path& p : all) seen.insert(p.words);
    CHECK(seen.size() == 30);
}

TEST_CASE("minimal common extensions in the division family") {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Division, {2, 3}));
    Path a = path2(g, "x1[0]");
    Path b = path2(g, "x2[1]");
    auto mce = g.minimal_common_extensions(a, b);
    REQUIRE(mce.size() == 1);
    auto [gamma, delta] = mce[0];
    CHECK(g.compose(a, gamma) == g.compose(b, delta));
    CHECK(g.compose(a, gamma).degree() == Degree({1, 1}));
}

TEST_CASE("disjoint rank-1 edges have no common extension") {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Trivial, {2}));
    CHECK(g.minimal_common_extensions(path2(g, "e[0]"), path2(g, "e[1]"))
              .empty());
    auto same = g.minimal_common_extensions(path2(g, "e[0]"), path2(g, "e[0]"));
    REQUIRE(same.size() == 1);
    CHECK(same[0].first.is_empty());
    CHECK(same[0].second.is_empty());
}

TEST_CASE("enumeration respects the cap") {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Trivial, {10}));
    CHECK_THROWS_AS((void)g.enumerate_paths(Degree({8}), 1000), Error);
}

TEST_CASE("path parsing round trip") {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Division, {2, 3}));
    Path p = path2(g, "x1[1] x2[2] x1[0]");
    CHECK(p == path2(g, p.str()));
    CHECK(p.degree() == Degree({2, 1}));
    CHECK_THROWS_AS((void)path2(g, "x1[7]"), Error);
}
