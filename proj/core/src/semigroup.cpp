#include "ssk/semigroup.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace ssk {

SemigroupElement identity_element(const SelfSimilarKGraph& ss) {
    return {Path::empty(ss.rank()), 0};
}

SemigroupElement multiply(const SelfSimilarKGraph& ss, const SemigroupElement& x,
                          const SemigroupElement& y) {
    Path moved = ss.act(x.exp, y.path);
    return {ss.graph().compose(x.path, moved),
            ss.restrict(x.exp, y.path) + y.exp};
}

SemigroupElement normalize_generator_word(const SelfSimilarKGraph& ss,
                                          const GeneratorWord& w,
                                          SemigroupMode mode) {
    SemigroupElement acc = identity_element(ss);
    for (const GeneratorToken& t : w) {
        if (t.is_group) {
            if (mode == SemigroupMode::N && t.exp < 0)
                throw Error("InvalidLetter",
                            "a^" + t.exp.get_str() + " is not in the N mode");
            acc = multiply(ss, acc, {Path::empty(ss.rank()), t.exp});
        } else {
            if (t.color < 0 || t.color >= ss.rank() || t.letter < 0 ||
                t.letter >= ss.sizes()[t.color])
                throw Error("InvalidLetter", "edge out of range");
            Path p = Path::empty(ss.rank());
            p.words[t.color].push_back(t.letter);
            acc = multiply(ss, acc, {p, 0});
        }
    }
    return acc;
}

std::optional<SemigroupElement> right_lcm(const SelfSimilarKGraph& ss,
                                          const SemigroupElement& x,
                                          const SemigroupElement& y) {
    // mu prefix of nu, nu = mu nutilde:
    //   alpha = (-k).nutilde, r = k|_alpha, lcm = e_nu a^{max(l, r)}
    auto branch = [&](const SemigroupElement& a, const SemigroupElement& b)
        -> std::optional<SemigroupElement> {
        auto tail = ss.graph().is_prefix(a.path, b.path);
        if (!tail) return std::nullopt;
        Path alpha = ss.act(-a.exp, *tail);
        mpz_class r = ss.restrict(a.exp, alpha);
        return SemigroupElement{b.path, r > b.exp ? r : b.exp};
    };
    if (auto z = branch(x, y)) return z;
    return branch(y, x);
}

std::optional<SemigroupElement> ideal_intersection(const SelfSimilarKGraph& ss,
                                                   const SemigroupElement& x,
                                                   const SemigroupElement& y) {
    return right_lcm(ss, x, y);
}

Membership membership_oracle(const SelfSimilarKGraph& ss,
                             const SemigroupElement& candidate,
                             int length_bound) {
    std::vector<SemigroupElement> gens;
    gens.push_back({Path::empty(ss.rank()), 1});
    for (int i = 0; i < ss.rank(); ++i) {
        for (int s = 0; s < ss.sizes()[i]; ++s) {
            Path p = Path::empty(ss.rank());
            p.words[i].push_back(s);
            gens.push_back({p, 0});
        }
    }
    std::set<SemigroupElement> seen;
    std::deque<SemigroupElement> frontier;
    SemigroupElement id = identity_element(ss);
    if (candidate == id) return Membership::Yes;
    seen.insert(id);
    frontier.push_back(id);
    for (int depth = 0; depth < length_bound; ++depth) {
        std::deque<SemigroupElement> next;
        for (const SemigroupElement& x : frontier) {
            for (const SemigroupElement& g : gens) {
                SemigroupElement y = multiply(ss, x, g);
                if (y == candidate) return Membership::Yes;
                if (seen.insert(y).second) next.push_back(y);
            }
        }
        frontier.swap(next);
    }
    return Membership::Unknown;
}

GeneratorWord parse_generator_word(const SelfSimilarKGraph& ss,
                                   const std::string& text) {
    GeneratorWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1") continue;
        if (tok == "a") {
            w.push_back(GeneratorToken::group(1));
            continue;
        }
        if (tok.rfind("a^", 0) == 0) {
            try {
                w.push_back(GeneratorToken::group(mpz_class(tok.substr(2))));
            } catch (const std::invalid_argument&) {
                throw Error("ParseError", "bad exponent in token '" + tok + "'");
            }
            continue;
        }
        int color = 0;
        size_t br = tok.find('[');
        if (br == std::string::npos || tok.back() != ']')
            throw Error("ParseError", "unrecognized token '" + tok + "'");
        std::string head = tok.substr(0, br);
        if (head == "e") {
            color = 0;
        } else if (head.size() >= 2 && head[0] == 'x') {
            color = std::stoi(head.substr(1)) - 1;
        } else {
            throw Error("ParseError", "unrecognized token '" + tok + "'");
        }
        int letter = std::stoi(tok.substr(br + 1, tok.size() - br - 2));
        if (color < 0 || color >= ss.rank() || letter < 0 ||
            letter >= ss.sizes()[color])
            throw Error("InvalidLetter", "token '" + tok + "' out of range");
        w.push_back(GeneratorToken::edge(color, letter));
    }
    return w;
}

SemigroupElement parse_element(const SelfSimilarKGraph& ss,
                               const std::string& text, SemigroupMode mode) {
    return normalize_generator_word(ss, parse_generator_word(ss, text), mode);
}

std::string print_element(const SelfSimilarKGraph& ss,
                          const SemigroupElement& x) {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < ss.rank(); ++i) {
        for (int l : x.path.words[i]) {
            if (!first) out << ' ';
            first = false;
            if (ss.rank() == 1)
                out << "e[" << l << "]";
            else
                out << "x" << (i + 1) << "[" << l << "]";
        }
    }
    if (x.exp != 0) {
        if (!first) out << ' ';
        first = false;
        out << "a^" << x.exp.get_str();
    }
    if (first) out << "1";
    return out.str();
}

}  // namespace ssk
