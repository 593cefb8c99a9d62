#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ssk/examples.hpp"
#include "ssk/io.hpp"
#include "ssk/periodicity.hpp"
#include "ssk/semigroup.hpp"
#include "ssk/staralg.hpp"

using json = nlohmann::json;
using namespace ssk;

namespace {

// exit code 1 = mathematical verdict "invalid/falsified"; 2 = usage/config
int code_for(const Error& e) {
    static const std::set<std::string> verdict = {
        "NonBijectiveTheta",  "CubicConditionViolated", "FlipSizeMismatch",
        "NonBijectiveSigma",  "ActCompatibilityViolated", "AxiomViolated",
        "ZeroRestrictionSum", "RelationFailed",           "NotPseudoFree",
        "DegreesNotEquivalent"};
    return verdict.count(e.code()) ? 1 : 2;
}

struct Session {
    SessionConfig cfg;
    bool json_out = false;

    SelfSimilarKGraph instance() const { return build_instance(cfg); }

    void emit(const json& doc, const std::string& text) const {
        if (json_out || cfg.format == "json")
            std::cout << doc.dump(2) << "\n";
        else
            std::cout << text;
    }
};

std::string describe_family(Family f) {
    switch (f) {
        case Family::Rank1: return "rank-1";
        case Family::LambdaOne: return "all-sizes-one";
        case Family::ProductOdometers: return "product-of-odometers";
        case Family::General: return "general";
        case Family::GraphOnly: return "graph-only";
    }
    return "?";
}

Degree parse_degree(const SelfSimilarKGraph& ss, const std::string& text) {
    std::vector<int> v;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) v.push_back(std::stoi(part));
    if (static_cast<int>(v.size()) != ss.rank())
        throw Error("ParseError", "degree needs " + std::to_string(ss.rank()) +
                                      " components");
    return Degree(v);
}

// ---------------------------------------------------------------- selftest

struct Suite {
    std::string name;
    bool ok = true;
    std::string detail;
};

SemigroupElement random_element(const SelfSimilarKGraph& ss,
                                std::mt19937_64& rng, int maxdeg,
                                long maxexp) {
    Path p = Path::empty(ss.rank());
    for (int i = 0; i < ss.rank(); ++i) {
        int len = static_cast<int>(rng() % (maxdeg + 1));
        for (int j = 0; j < len; ++j)
            p.words[i].push_back(static_cast<int>(rng() % ss.sizes()[i]));
    }
    long e = static_cast<long>(rng() % (2 * maxexp + 1)) - maxexp;
    return {p, e};
}

Suite suite_kgraph() {
    Suite s{"kgraph"};
    try {
        KGraph::validate(make_theta(ThetaKind::Division, {2, 3, 5}));
        zoo::flip_graph(3);
        zoo::square_graph();
        ThetaFamily bad = make_theta(ThetaKind::Division, {2, 2, 2});
        std::swap(bad.tables[bad.pair_index(1, 2)][0],
                  bad.tables[bad.pair_index(1, 2)][1]);
        try {
            KGraph::validate(bad);
            s.ok = false;
            s.detail = "tampered commutation data was accepted";
        } catch (const Error& e) {
            s.detail = "tampered data rejected (" + e.code() + ")";
        }
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

Suite suite_selfsim() {
    Suite s{"selfsim"};
    try {
        for (int n = 2; n <= 4; ++n) {
            for (long m : {1L, 2L, 3L, -3L}) {
                SelfSimilarKGraph ss = make_odometer(n, m);
                for (long g = -20; g <= 20; ++g)
                    for (int e = 0; e < n; ++e)
                        if (ss.act_edge(g, 0, e) !=
                            odometer_formula_oracle(n, m, g, e))
                            throw Error("InternalError",
                                        "closed form mismatch at n=" +
                                            std::to_string(n));
            }
        }
        make_product_of_odometers({2, 3});
        // one orbit with restriction sum zero is not pseudo-free
        KGraph g = KGraph::validate(make_theta(ThetaKind::Trivial, {2}));
        EdgeActionSpec spec;
        spec.sigma = {{1, 0}};
        spec.rho = {{1, -1}};
        SelfSimilarKGraph bad = SelfSimilarKGraph::validate(g, spec);
        if (bad.is_pseudo_free().kind != PseudoFreeVerdict::Falsified) {
            s.ok = false;
            s.detail = "zero-sum cycle not flagged";
        }
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

Suite suite_semigroup(std::uint64_t seed) {
    Suite s{"semigroup"};
    try {
        std::mt19937_64 rng(seed ^ 0x5e51);
        SelfSimilarKGraph ss = make_odometer(2, 3);
        for (int t = 0; t < 300 && s.ok; ++t) {
            SemigroupElement x = random_element(ss, rng, 2, 6);
            SemigroupElement y = random_element(ss, rng, 2, 6);
            SemigroupElement z = random_element(ss, rng, 2, 6);
            if (multiply(ss, multiply(ss, x, y), z) !=
                multiply(ss, x, multiply(ss, y, z))) {
                s.ok = false;
                s.detail = "associativity failed";
            }
            if (!(x == y) &&
                multiply(ss, z, x) == multiply(ss, z, y)) {
                s.ok = false;
                s.detail = "left cancellation failed";
            }
        }
        // a^n e_0 = e_0 a^m
        for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 6}}) {
            SelfSimilarKGraph e = make_odometer(n, m);
            GeneratorWord w1, w2;
            w1.push_back(GeneratorToken::group(n));
            w1.push_back(GeneratorToken::edge(0, 0));
            w2.push_back(GeneratorToken::edge(0, 0));
            w2.push_back(GeneratorToken::group(m));
            if (normalize_generator_word(e, w1, SemigroupMode::Z) !=
                normalize_generator_word(e, w2, SemigroupMode::Z)) {
                s.ok = false;
                s.detail = "defining relation broke";
            }
        }
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

Suite suite_periodicity() {
    Suite s{"periodicity"};
    try {
        if (!simplicity_report(make_odometer(2, 6)).periodic)
            throw Error("InternalError", "(2,6) should be periodic");
        if (simplicity_report(make_odometer(2, 3)).periodic)
            throw Error("InternalError", "(2,3) should be aperiodic");
        RelationLattice l24 = relation_lattice({2, 4});
        if (l24.basis != std::vector<std::vector<mpz_class>>{{2, -1}})
            throw Error("InternalError", "(2,4) lattice basis");
        if (!relation_lattice({2, 3}).independent())
            throw Error("InternalError", "(2,3) should be independent");
        affine_presentation_check(2, 3);
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

Suite suite_cycline() {
    Suite s{"cycline"};
    try {
        SelfSimilarKGraph ss = make_odometer(2, 6);
        CyclineDescription d = cycline_structure(ss);
        for (const Path& mu : ss.graph().enumerate_paths(Degree({1})))
            for (const Path& nu : ss.graph().enumerate_paths(Degree({1})))
                for (long g = -4; g <= 4; ++g) {
                    CyclineTriple t{mu, g, nu};
                    bool structural = d.contains(ss, t);
                    bool bounded =
                        is_cycline_to_depth(ss, t, 4).kind ==
                        CyclineCheck::HoldsToDepth;
                    if (structural != bounded)
                        throw Error("InternalError",
                                    "cycline disagreement at g=" +
                                        std::to_string(g));
                }
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

Suite suite_staralg() {
    Suite s{"staralg"};
    try {
        SelfSimilarKGraph e23 = make_odometer(2, 3);
        FormalCombination ua = fc_u(e23, 1);
        FormalCombination rhs =
            parse_expression(e23, "s[e[1]] * s[e[0]]^* + "
                                  "s[e[0]] * u[a^3] * s[e[1]]^*");
        if (!canonical_eq(e23, ua, rhs))
            throw Error("InternalError", "one-step refinement identity");
        SelfSimilarKGraph p23 = make_product_of_odometers({2, 3});
        FormalCombination proj =
            parse_expression(p23, "s[x1[0] x2[1]] * s[x1[0] x2[1]]^*");
        if (!(omega(p23, proj) == Coefficient(mpq_class(1, 6))))
            throw Error("InternalError", "state value 1/6");
        // KMS and modular identities on a small monomial set
        std::vector<FormalCombination> probes;
        for (const Path& mu : p23.graph().enumerate_paths(Degree({1, 0})))
            for (const Path& nu : p23.graph().enumerate_paths(Degree({0, 1})))
                for (long g = -1; g <= 1; ++g)
                    probes.push_back(fc_mono({mu, g, nu}));
        for (const auto& m1 : probes)
            for (const auto& m2 : probes) {
                if (!kms_check(p23, m1, m2))
                    throw Error("InternalError", "KMS identity");
            }
        for (const auto& m : probes) {
            if (!(modular_S(m) == modular_J(p23, delta_pow(p23, m, 1))))
                throw Error("InternalError", "S = J Delta^{1/2}");
            if (!(modular_F(p23, m) == modular_J(p23, delta_pow(p23, m, -1))))
                throw Error("InternalError", "F = J Delta^{-1/2}");
        }
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

Suite suite_center() {
    Suite s{"center"};
    try {
        SelfSimilarKGraph p24 = make_product_of_odometers({2, 4});
        FormalCombination v = build_V(p24, Degree({2, 0}), Degree({0, 1}));
        if (!is_unitary(p24, v)) throw Error("InternalError", "V not unitary");
        if (!commutes_with_generators(p24, v))
            throw Error("InternalError", "V not central");
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

Suite suite_furstenberg() {
    Suite s{"furstenberg"};
    try {
        for (auto [p, q] : {std::pair{2, 3}, {3, 5}, {2, 5}})
            affine_presentation_check(p, q);
        SelfSimilarKGraph l24 = make_lambda_one({2, 4});
        Path mu = Path::empty(2);
        mu.words[0] = {0, 0};
        Path nu = Path::empty(2);
        nu.words[1] = {0};
        FormalCombination m = fc_mono({mu, 0, nu});
        if (!(fprime_filter(l24, m) == m))
            throw Error("InternalError", "2^2 = 4^1 monomial dropped");
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

Suite suite_hom() {
    Suite s{"hom"};
    try {
        zoo::verify_iso(zoo::odometer_flip_iso(2));
        zoo::IsoExample sf = zoo::square_flip_iso();
        zoo::verify_iso(sf);
        FormalCombination w2 =
            product(sf.b, sf.extras.at("W"), sf.extras.at("W"));
        FormalCombination expect;
        Path f0 = Path::empty(2), f1 = Path::empty(2);
        f0.words[1] = {0};
        f1.words[1] = {1};
        Path e0 = Path::empty(2), e1 = Path::empty(2);
        e0.words[0] = {0};
        e1.words[0] = {1};
        expect.add_term({f0, 0, e0}, Coefficient(1));
        expect.add_term({f1, 0, e1}, Coefficient(1));
        if (!canonical_eq(sf.b, w2, expect))
            throw Error("InternalError", "W^2 identity");
    } catch (const Error& e) {
        s.ok = false;
        s.detail = e.what();
    }
    return s;
}

int run_selftest(const Session& session) {
    std::vector<Suite> suites = {suite_kgraph(),
                                 suite_selfsim(),
                                 suite_semigroup(session.cfg.seed),
                                 suite_periodicity(),
                                 suite_cycline(),
                                 suite_staralg(),
                                 suite_center(),
                                 suite_furstenberg(),
                                 suite_hom()};
    json doc;
    doc["suites"] = json::array();
    std::ostringstream text;
    bool all = true;
    for (const Suite& s : suites) {
        all = all && s.ok;
        doc["suites"].push_back(
            {{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
        text << (s.ok ? "PASS" : "FAIL") << "  " << s.name
             << (s.detail.empty() ? "" : "  (" + s.detail + ")") << "\n";
    }
    doc["ok"] = all;
    text << (all ? "all suites passed" : "FAILURES present") << "\n";
    session.emit(doc, text.str());
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-similar k-graph and higher-rank semigroup toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    int depth = -1;
    long long cap = -1;
    bool json_out = false;
    app.add_option("--config", config_path, "session config JSON file");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--depth", depth, "depth bound override");
    app.add_option("--cap", cap, "enumeration cap override");
    app.add_flag("--json", json_out, "machine-readable output");

    auto* c_validate = app.add_subcommand("validate", "validate the instance");
    auto* c_nf = app.add_subcommand("nf", "normal form of a generator word");
    std::vector<std::string> nf_word;
    c_nf->add_option("word", nf_word, "tokens, e.g. a a e[0]")->required();
    auto* c_mul = app.add_subcommand("mul", "multiply two elements");
    std::string arg_x, arg_y;
    c_mul->add_option("x", arg_x)->required();
    c_mul->add_option("y", arg_y)->required();
    auto* c_lcm = app.add_subcommand("lcm", "right LCM of two elements");
    std::string lcm_x, lcm_y;
    c_lcm->add_option("x", lcm_x)->required();
    c_lcm->add_option("y", lcm_y)->required();
    auto* c_act = app.add_subcommand("act", "apply a^g to a path");
    std::string act_g, act_path;
    c_act->add_option("g", act_g)->required();
    c_act->add_option("path", act_path)->required();
    auto* c_report = app.add_subcommand("report", "structure report");
    auto* c_cycline = app.add_subcommand("cycline", "test a triple");
    std::string cy_mu, cy_g, cy_nu;
    c_cycline->add_option("mu", cy_mu)->required();
    c_cycline->add_option("g", cy_g)->required();
    c_cycline->add_option("nu", cy_nu)->required();
    auto* c_center = app.add_subcommand("center", "build and check V_{p,q}");
    std::string ce_p, ce_q;
    c_center->add_option("p", ce_p, "degree, e.g. 2,0")->required();
    c_center->add_option("q", ce_q, "degree, e.g. 0,1")->required();
    auto* c_star = app.add_subcommand("staralg", "symbolic algebra");
    std::string star_op;
    std::vector<std::string> star_args;
    c_star->add_option("op", star_op, "eval | mul | eq | kms | omega | hom")
        ->required();
    c_star->add_option("args", star_args, "expressions");
    auto* c_fur = app.add_subcommand("furstenberg", "affine model check");
    int fur_p = 0, fur_q = 0;
    c_fur->add_option("p", fur_p)->required();
    c_fur->add_option("q", fur_q)->required();
    auto* c_selftest = app.add_subcommand("selftest", "run all suites");

    // allow the global flags (--json, --config, ...) after a subcommand
    for (CLI::App* sc : app.get_subcommands({})) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Session session;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw Error("ConfigError", "cannot open " + config_path);
            std::stringstream buf;
            buf << in.rdbuf();
            session.cfg = parse_session_config(buf.str());
        } else {
            session.cfg.action_json = R"({"kind":"odometer","n":2,"m":3})";
        }
        if (seed) session.cfg.seed = seed;
        if (depth >= 0) session.cfg.depth = depth;
        if (cap >= 0) session.cfg.cap = static_cast<std::uint64_t>(cap);
        session.json_out = json_out;

        if (c_selftest->parsed()) return run_selftest(session);

        if (c_fur->parsed()) {
            AffineCheckReport rep = affine_presentation_check(fur_p, fur_q);
            json doc{{"p", rep.p},
                     {"q", rep.q},
                     {"relations_checked", rep.relations_checked},
                     {"theta_consistent", rep.theta_consistent}};
            session.emit(doc, "all " + std::to_string(rep.relations_checked) +
                                  " relations verified\n");
            return 0;
        }

        SelfSimilarKGraph ss = session.instance();

        if (c_validate->parsed()) {
            json doc{{"valid", true},
                     {"family", describe_family(ss.family())},
                     {"rank", ss.rank()},
                     {"sizes", ss.sizes()},
                     {"pseudo_free", ss.pseudo_free_structural()}};
            session.emit(doc, "valid (" + describe_family(ss.family()) + ")\n");
            return 0;
        }
        if (c_nf->parsed()) {
            std::string text;
            for (const auto& t : nf_word) text += t + " ";
            SemigroupElement e = parse_element(ss, text);
            json doc{{"element", print_element(ss, e)}};
            session.emit(doc, print_element(ss, e) + "\n");
            return 0;
        }
        if (c_mul->parsed()) {
            SemigroupElement z =
                multiply(ss, parse_element(ss, arg_x), parse_element(ss, arg_y));
            json doc{{"element", print_element(ss, z)}};
            session.emit(doc, print_element(ss, z) + "\n");
            return 0;
        }
        if (c_lcm->parsed()) {
            auto z = right_lcm(ss, parse_element(ss, lcm_x),
                               parse_element(ss, lcm_y));
            json doc;
            doc["lcm"] = z ? json(print_element(ss, *z)) : json(nullptr);
            session.emit(doc, z ? print_element(ss, *z) + "\n" : "none\n");
            return 0;
        }
        if (c_act->parsed()) {
            mpz_class g(act_g);
            Path p = ss.graph().parse_path(act_path);
            Path moved = ss.act(g, p);
            mpz_class rest = ss.restrict(g, p);
            json doc{{"path", moved.str()}, {"restriction", rest.get_str()}};
            session.emit(doc, moved.str() + "  restriction a^" +
                                  rest.get_str() + "\n");
            return 0;
        }
        if (c_report->parsed()) {
            StructureReport r = simplicity_report(ss);
            session.emit(json::parse(r.to_json()), r.to_text());
            return 0;
        }
        if (c_cycline->parsed()) {
            CyclineTriple t{ss.graph().parse_path(cy_mu), mpz_class(cy_g),
                            ss.graph().parse_path(cy_nu)};
            json doc;
            std::ostringstream text;
            bool verdict;
            try {
                CyclineDescription d = cycline_structure(ss);
                verdict = d.contains(ss, t);
                doc["structural"] = verdict;
                text << "structural: " << (verdict ? "cycline" : "not cycline")
                     << "\n";
            } catch (const Error&) {
                CyclineCheck c = is_cycline_to_depth(ss, t, session.cfg.depth,
                                                     session.cfg.cap,
                                                     session.cfg.seed);
                verdict = c.kind == CyclineCheck::HoldsToDepth;
                doc["holds_to_depth"] = c.depth;
                doc["falsified"] = !verdict;
                text << (verdict ? "holds to depth " +
                                       std::to_string(c.depth)
                                 : "falsified: " + c.witness->str())
                     << "\n";
            }
            session.emit(doc, text.str());
            return verdict ? 0 : 1;
        }
        if (c_center->parsed()) {
            Degree p = parse_degree(ss, ce_p), q = parse_degree(ss, ce_q);
            FormalCombination v = build_V(ss, p, q);
            bool unitary = is_unitary(ss, v);
            bool central = commutes_with_generators(ss, v);
            json doc{{"V", print_combination(ss, v)},
                     {"unitary", unitary},
                     {"commutes", central}};
            session.emit(doc, print_combination(ss, v) + "\nunitary: " +
                                  (unitary ? "yes" : "no") + ", commutes: " +
                                  (central ? "yes" : "no") + "\n");
            return unitary && central ? 0 : 1;
        }
        if (c_star->parsed()) {
            auto need = [&](size_t n) {
                if (star_args.size() != n)
                    throw Error("ParseError",
                                "staralg " + star_op + " needs " +
                                    std::to_string(n) + " expression(s)");
            };
            if (star_op == "eval") {
                need(1);
                FormalCombination a = parse_expression(ss, star_args[0]);
                json doc{{"value", print_combination(ss, a)}};
                session.emit(doc, print_combination(ss, a) + "\n");
                return 0;
            }
            if (star_op == "mul") {
                need(2);
                FormalCombination a = product(
                    ss, parse_expression(ss, star_args[0]),
                    parse_expression(ss, star_args[1]), session.cfg.cap);
                json doc{{"value", print_combination(ss, a)}};
                session.emit(doc, print_combination(ss, a) + "\n");
                return 0;
            }
            if (star_op == "eq") {
                need(2);
                bool eq = canonical_eq(ss, parse_expression(ss, star_args[0]),
                                       parse_expression(ss, star_args[1]),
                                       session.cfg.cap);
                session.emit(json{{"equal", eq}},
                             std::string(eq ? "equal" : "not equal") + "\n");
                return eq ? 0 : 1;
            }
            if (star_op == "kms") {
                need(2);
                bool ok = kms_check(ss, parse_expression(ss, star_args[0]),
                                    parse_expression(ss, star_args[1]));
                session.emit(json{{"kms", ok}},
                             std::string(ok ? "holds" : "fails") + "\n");
                return ok ? 0 : 1;
            }
            if (star_op == "omega") {
                need(1);
                Coefficient v = omega(ss, parse_expression(ss, star_args[0]));
                session.emit(json{{"omega", v.str()}}, v.str() + "\n");
                return 0;
            }
            if (star_op == "hom") {
                json doc;
                std::ostringstream text;
                for (int n : {2, 3}) {
                    zoo::IsoReport r = zoo::verify_iso(zoo::odometer_flip_iso(n));
                    doc["odometer_flip_" + std::to_string(n)] = {
                        {"relations", r.relations},
                        {"round_trips", r.round_trips}};
                    text << "odometer/flip n=" << n << ": " << r.relations
                         << " relations, " << r.round_trips
                         << " round trips\n";
                }
                zoo::IsoReport r = zoo::verify_iso(zoo::square_flip_iso());
                doc["square_flip"] = {{"relations", r.relations},
                                      {"round_trips", r.round_trips}};
                text << "square/flip: " << r.relations << " relations, "
                     << r.round_trips << " round trips\n";
                session.emit(doc, text.str());
                return 0;
            }
            throw Error("ParseError", "unknown staralg op '" + star_op + "'");
        }
        throw Error("ParseError", "no subcommand");
    } catch (const Error& e) {
        json doc{{"error", e.code()}, {"message", e.what()}};
        if (session.json_out || session.cfg.format == "json")
            std::cout << doc.dump(2) << "\n";
        else
            std::cout << e.what() << "\n";
        return code_for(e);
    } catch (const std::exception& e) {
        std::cout << e.what() << "\n";
        return 2;
    }
}
