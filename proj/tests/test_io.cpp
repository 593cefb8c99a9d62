#include <doctest.h>

#include "ssk/io.hpp"

using namespace ssk;

TEST_CASE("graph spec round trip") {
    for (const std::string& text : {
             R"({"k":2,"sizes":[2,3],"theta":"division"})",
             R"({"k":1,"sizes":[4],"theta":"trivial"})",
             R"({"k":2,"sizes":[3,3],"theta":"flip"})",
         }) {
        KGraph g = parse_graph_spec(text);
        KGraph again = parse_graph_spec(emit_graph_spec(g));
        CHECK(again.rank() == g.rank());
        CHECK(again.sizes() == g.sizes());
        CHECK(again.theta().tables == g.theta().tables);
    }
    // explicit tables survive as tables
    KGraph div = parse_graph_spec(R"({"k":2,"sizes":[2,3],"theta":"division"})");
    std::string emitted = emit_graph_spec(div);
    KGraph expl = parse_graph_spec(emitted);
    CHECK(expl.theta().tables == div.theta().tables);
    CHECK_THROWS_AS((void)parse_graph_spec(R"({"k":2,"sizes":[2]})"), Error);
    CHECK_THROWS_AS((void)parse_graph_spec("not json"), Error);
}

TEST_CASE("action spec kinds") {
    CHECK(parse_action_spec(R"({"kind":"odometer","n":2,"m":3})").family() ==
          Family::Rank1);
    CHECK(parse_action_spec(R"({"kind":"product_odometers","sizes":[2,3]})")
              .family() == Family::ProductOdometers);
    CHECK(parse_action_spec(R"({"kind":"lambda_one","m":[2,4]})").family() ==
          Family::LambdaOne);
    SelfSimilarKGraph gbs = parse_action_spec(
        R"({"kind":"gbs","orbits":[{"n":2,"rho":[0,3]},{"n":3,"rho":[0,0,5]}]})");
    CHECK(gbs.orbits().size() == 2);
    KGraph g = KGraph::validate(make_theta(ThetaKind::Trivial, {2}));
    SelfSimilarKGraph ex = parse_action_spec(
        R"({"kind":"explicit","sigma":[[1,0]],"rho":[[0,3]]})", &g);
    CHECK(ex.family() == Family::Rank1);
    CHECK_THROWS_AS(
        (void)parse_action_spec(R"({"kind":"explicit","sigma":[[1,0]],"rho":[[0,3]]})"),
        Error);
    CHECK_THROWS_AS((void)parse_action_spec(R"({"kind":"mystery"})"), Error);
}

TEST_CASE("path documents") {
    KGraph small = parse_graph_spec(R"({"k":2,"sizes":[2,3],"theta":"division"})");
    Path p = small.parse_path("x1[1] x1[0] x2[2]");
    Path q = path_from_json(small, path_to_json(small, p));
    CHECK(q == p);
    CHECK(path_to_json(small, p).find("\"10\"") != std::string::npos);

    KGraph big = parse_graph_spec(R"({"k":1,"sizes":[12],"theta":"trivial"})");
    Path bp = Path::empty(1);
    bp.words[0] = {11, 0, 7};
    CHECK(path_from_json(big, path_to_json(big, bp)) == bp);
    CHECK_THROWS_AS((void)path_from_json(small, R"({"words":["7",""]})"), Error);
}

TEST_CASE("session config round trip and instance building") {
    std::string text = R"({
        "graph": {"k":1,"sizes":[2],"theta":"trivial"},
        "action": {"kind":"odometer","n":2,"m":3},
        "cap": 5000, "depth": 4, "bound": 3, "seed": 7, "format": "json"
    })";
    SessionConfig cfg = parse_session_config(text);
    CHECK(cfg.cap == 5000);
    CHECK(cfg.depth == 4);
    CHECK(cfg.seed == 7);
    CHECK(parse_session_config(emit_session_config(cfg)) == cfg);
    SelfSimilarKGraph inst = build_instance(cfg);
    CHECK(inst.family() == Family::Rank1);

    SessionConfig graph_only =
        parse_session_config(R"({"graph":{"k":2,"sizes":[2,3],"theta":"division"}})");
    SelfSimilarKGraph plain = build_instance(graph_only);
    CHECK(plain.family() == Family::GraphOnly);
    CHECK(plain.group_trivial());

    CHECK_THROWS_AS((void)build_instance(SessionConfig{}), Error);
    try {
        (void)parse_session_config("{]");
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == "ParseError");
    }
    CHECK_THROWS_AS(
        (void)parse_session_config(R"({"format":"yaml"})"), Error);
}
