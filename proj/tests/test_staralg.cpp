#include <doctest.h>

#include "ssk/examples.hpp"

using namespace ssk;

namespace {

Path pth(const SelfSimilarKGraph& ss, const std::string& text) {
    return ss.graph().parse_path(text);
}

Monomial mono(const SelfSimilarKGraph& ss, const std::string& mu, long g,
              const std::string& nu) {
    return {pth(ss, mu), g, pth(ss, nu)};
}

}  // namespace

TEST_CASE("coefficient field arithmetic") {
    Coefficient r2 = Coefficient::sqrt_rational(2);
    CHECK(r2 * r2 == Coefficient(2));
    CHECK(Coefficient::sqrt_rational(8) == Coefficient(2) * r2);
    CHECK(Coefficient::sqrt_rational(mpq_class(1, 2)) * r2 == Coefficient(1));
    Coefficient z = Coefficient::gaussian(1, 1);
    CHECK(z * z.conj() == Coefficient(2));
    CHECK(z + (-z) == Coefficient(0));
    CHECK(Coefficient::half_power(4, 3) == Coefficient(8));
    CHECK(Coefficient::half_power(2, 1) == r2);
    CHECK(Coefficient::half_power(2, -2) == Coefficient(mpq_class(1, 2)));
    CHECK((r2 + Coefficient(1)).is_rational() == false);
    CHECK((r2 * r2).rational() == 2);
    CHECK(Coefficient(0).is_zero());
}

TEST_CASE("frozen monomial products in the (2,3)-odometer algebra") {
    SelfSimilarKGraph bs = make_odometer(2, 3);
    // isometry
    CHECK(mono_product(bs, mono(bs, "", 0, "e[0]"), mono(bs, "e[0]", 0, "")) ==
          fc_one(bs));
    // orthogonal ranges
    CHECK(mono_product(bs, mono(bs, "", 0, "e[0]"), mono(bs, "e[1]", 0, ""))
              .is_zero());
    // the defining relation u_a s_{e_1} = s_{e_0} u_{a^3}
    CHECK(product(bs, fc_u(bs, 1), fc_edge(bs, 0, 1)) ==
          fc_mono(mono(bs, "e[0]", 3, "")));
    // group multiplication
    CHECK(product(bs, fc_u(bs, 2), fc_u(bs, -2)) == fc_one(bs));
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
    SelfSimilarKGraph bs = make_odometer(2, 3);
    FormalCombination a =
        fc_mono(mono(bs, "e[0]", 1, "e[1]"), Coefficient::gaussian(1, 2)) +
        fc_edge(bs, 0, 1);
    FormalCombination b = fc_mono(mono(bs, "e[1] e[0]", -2, ""));
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(canonical_eq(bs, adjoint(product(bs, a, b)),
                       product(bs, adjoint(b), adjoint(a))));
}

TEST_CASE("canonical equality through refinement") {
    SelfSimilarKGraph bs = make_odometer(2, 3);
    FormalCombination ck = product(bs, fc_edge(bs, 0, 0),
                                   adjoint(fc_edge(bs, 0, 0))) +
                           product(bs, fc_edge(bs, 0, 1),
                                   adjoint(fc_edge(bs, 0, 1)));
    CHECK(canonical_eq(bs, fc_one(bs), ck));
    CHECK_FALSE(canonical_eq(bs, fc_one(bs), fc_edge(bs, 0, 0)));
    // refining a monomial does not change it
    Monomial m = mono(bs, "e[0]", 2, "e[1]");
    CHECK(canonical_eq(bs, fc_mono(m), refine(bs, m, Degree({2}))));
    // u_a is a sum of shift monomials
    FormalCombination shift = fc_mono(mono(bs, "e[1]", 0, "e[0]")) +
                              fc_mono(mono(bs, "e[0]", 3, "e[1]"));
    CHECK(canonical_eq(bs, fc_u(bs, 1), shift));
}

TEST_CASE("gauge projection splits by degree") {
    SelfSimilarKGraph bs = make_odometer(2, 3);
    FormalCombination x = fc_edge(bs, 0, 0) + fc_mono(mono(bs, "e[0]", 0, "e[0]"));
    CHECK(gauge_project(x, {1}) == fc_edge(bs, 0, 0));
    CHECK(gauge_project(x, {0}) == fc_mono(mono(bs, "e[0]", 0, "e[0]")));
    CHECK(gauge_project(x, {-2}).is_zero());
}

TEST_CASE("the vacuum state on monomials") {
    SelfSimilarKGraph bs = make_odometer(2, 3);
    CHECK(omega(bs, fc_one(bs)) == Coefficient(1));
    CHECK(omega(bs, fc_mono(mono(bs, "e[0]", 0, "e[0]"))) ==
          Coefficient(mpq_class(1, 2)));
    CHECK(omega(bs, fc_mono(mono(bs, "e[0]", 3, "e[0]"))) == Coefficient(0));
    CHECK(omega(bs, fc_u(bs, 1)) == Coefficient(0));
    SelfSimilarKGraph p23 = make_product_of_odometers({2, 3});
    CHECK(omega(p23, fc_mono(mono(p23, "x1[0] x2[1]", 0, "x1[0] x2[1]"))) ==
          Coefficient(mpq_class(1, 6)));
}

TEST_CASE("tau is tracial on gauge-invariant elements") {
    SelfSimilarKGraph bs = make_odometer(2, 3);
    FormalCombination a = fc_mono(mono(bs, "e[0]", 0, "e[0]")) -
                          fc_mono(mono(bs, "e[1]", 0, "e[1]"));
    FormalCombination b = fc_mono(mono(bs, "e[0]", 0, "e[1]")) +
                          fc_mono(mono(bs, "e[1]", 0, "e[0]"));
    CHECK(tau(bs, product(bs, a, b)) == tau(bs, product(bs, b, a)));
    CHECK(tau(bs, a) == Coefficient(0));
    CHECK_THROWS_AS((void)tau(bs, fc_edge(bs, 0, 0)), Error);
}

TEST_CASE("the scaled state satisfies the exchange identity") {
    SelfSimilarKGraph p23 = make_product_of_odometers({2, 3});
    FormalCombination s = fc_edge(p23, 0, 0);
    CHECK(kms_sigma(p23, s) == Coefficient(mpq_class(1, 2)) * s);
    CHECK(kms_check(p23, s, adjoint(s)));
    CHECK(kms_check(p23, fc_u(p23, 1), fc_edge(p23, 1, 2)));
    FormalCombination mixed =
        fc_mono(mono(p23, "x1[1]", 1, "x2[0]"), Coefficient::gaussian(0, 1));
    CHECK(kms_check(p23, mixed, adjoint(mixed)));
}

TEST_CASE("modular map identities on probe monomials") {
    SelfSimilarKGraph p23 = make_product_of_odometers({2, 3});
    std::vector<FormalCombination> probes;
    for (const std::string& mu : {"", "x1[0]", "x2[2]"})
        for (const std::string& nu : {"", "x1[1]", "x2[0]"})
            for (long g = -1; g <= 1; ++g)
                probes.push_back(fc_mono(mono(p23, mu, g, nu)));
    for (const FormalCombination& a : probes) {
        CHECK(modular_S(a) == adjoint(a));
        CHECK(modular_S(a) == modular_J(p23, delta_pow(p23, a, 1)));
        CHECK(modular_F(p23, a) == modular_J(p23, delta_pow(p23, a, -1)));
        // J is involutive, Delta^0 is the identity
        CHECK(modular_J(p23, modular_J(p23, a)) == a);
        CHECK(delta_pow(p23, a, 0) == a);
    }
    // frozen scaling: Delta(s_mu) = n^{-d(mu)} s_mu
    FormalCombination s = fc_edge(p23, 0, 0);
    CHECK(delta_pow(p23, s, 2) == Coefficient(mpq_class(1, 2)) * s);
}

TEST_CASE("central unitaries from address bijections") {
    SelfSimilarKGraph p24 = make_product_of_odometers({2, 4});
    FormalCombination v = build_V(p24, Degree({2, 0}), Degree({0, 1}));
    CHECK(is_unitary(p24, v));
    CHECK(commutes_with_generators(p24, v));
    SelfSimilarKGraph p23 = make_product_of_odometers({2, 3});
    CHECK_THROWS_AS((void)build_V(p23, Degree({1, 0}), Degree({0, 1})), Error);
}

TEST_CASE("restriction-power filter on the one-edge family") {
    SelfSimilarKGraph l = make_lambda_one({2, 4});
    Path d20 = Path::empty(2), d01 = Path::empty(2), d10 = Path::empty(2);
    d20.words[0] = {0, 0};
    d01.words[1] = {0};
    d10.words[0] = {0};
    FormalCombination kept = fc_mono({d20, 0, d01});   // 2^2 == 4^1
    FormalCombination dropped = fc_mono({d10, 0, d01});  // 2 != 4
    CHECK(fprime_filter(l, kept + dropped) == kept);
    FormalCombination kept2 = fc_mono({d01, 1, d20});
    CHECK(fprime_commute_check(l, kept, kept2));
    CHECK(normalizer_check(l, fc_mono({d10, 0, Path::empty(2)}), kept));
}

TEST_CASE("generator maps between the flip family and odometers") {
    for (int n : {2, 3}) {
        zoo::IsoReport rep = zoo::verify_iso(zoo::odometer_flip_iso(n));
        CHECK(rep.relations > 0);
        CHECK(rep.round_trips > 0);
    }
}

TEST_CASE("generator maps between the square and flip families") {
    zoo::IsoExample ex = zoo::square_flip_iso();
    zoo::IsoReport rep = zoo::verify_iso(ex);
    CHECK(rep.relations > 0);
    const FormalCombination& w = ex.extras.at("W");
    const FormalCombination& f = ex.extras.at("F");
    // W^2 swaps the colors: sum of s_{f_i} s_{e_i}^*
    FormalCombination w2;
    for (int i = 0; i < 2; ++i) {
        Path fi = Path::empty(2), ei = Path::empty(2);
        fi.words[1] = {i};
        ei.words[0] = {i};
        w2 = w2 + fc_mono({fi, 0, ei});
    }
    CHECK(canonical_eq(ex.b, product(ex.b, w, w), w2));
    CHECK(is_unitary(ex.b, w));
    // the unitaries correspond under the two maps
    CHECK(canonical_eq(ex.b, hom_apply(ex.a, ex.b, ex.a_to_b, f), w));
    CHECK(canonical_eq(ex.a, hom_apply(ex.b, ex.a, ex.b_to_a, w), f));
}

TEST_CASE("generator maps that break the summation relation are rejected") {
    SelfSimilarKGraph flip = zoo::flip_algebra(2);
    SelfSimilarKGraph bs = make_odometer(2, 2);
    HomImages bad;
    bad.edge = {{fc_edge(bs, 0, 0), fc_edge(bs, 0, 0)},
                {fc_edge(bs, 0, 0), fc_edge(bs, 0, 0)}};
    try {
        hom_check(flip, bs, bad);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "RelationFailed");
    }
}

TEST_CASE("expression grammar round trip") {
    SelfSimilarKGraph bs = make_odometer(2, 3);
    const std::vector<std::string> texts = {
        "s[e[1]] * s[e[0]]^* + s[e[0]] * u[a^3] * s[e[1]]^*",
        "(1/2) * s[e[0]] * s[e[0]]^*",
        "1",
        "u[a^-2]",
        "s[e[0] e[1]]",
    };
    for (const std::string& t : texts) {
        FormalCombination x = parse_expression(bs, t);
        CHECK(parse_expression(bs, print_combination(bs, x)) == x);
    }
    CHECK(parse_expression(bs, "s[e[0]]^* * s[e[0]]") == fc_one(bs));
    CHECK(parse_expression(bs, "1 + (-1)").is_zero());
    CHECK_THROWS_AS((void)parse_expression(bs, "s[e[0]"), Error);
}
