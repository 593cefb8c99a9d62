#ifndef SSK_SEMIGROUP_HPP
#define SSK_SEMIGROUP_HPP

#include "ssk/selfsim.hpp"

namespace ssk {

/// Canonical form e_mu a^l. Equality is componentwise; the representation
/// (Path, exponent) is injective on the semigroup.
struct SemigroupElement {
    Path path;
    GroupExponent exp;

    bool operator==(const SemigroupElement& o) const {
        return path == o.path && exp == o.exp;
    }
    bool operator<(const SemigroupElement& o) const {
        if (path != o.path) return path < o.path;
        return cmp(exp, o.exp) < 0;
    }
};

/// One letter of a generator word: either a^exp or an edge.
struct GeneratorToken {
    bool is_group = false;
    GroupExponent exp;  // meaningful when is_group
    int color = 0;      // 0-based, meaningful when !is_group
    int letter = 0;
    static GeneratorToken group(GroupExponent e) {
        GeneratorToken t;
        t.is_group = true;
        t.exp = std::move(e);
        return t;
    }
    static GeneratorToken edge(int color, int letter) {
        GeneratorToken t;
        t.color = color;
        t.letter = letter;
        return t;
    }
};
using GeneratorWord = std::vector<GeneratorToken>;

enum class SemigroupMode { N, Z };

enum class Membership { Yes, Unknown };

SemigroupElement identity_element(const SelfSimilarKGraph& ss);

/// (e_mu a^k)(e_nu a^l) = e_{mu (a^k.nu)} a^{(a^k|_nu) + l}
SemigroupElement multiply(const SelfSimilarKGraph& ss, const SemigroupElement& x,
                          const SemigroupElement& y);

/// Left-to-right fold of the word through multiply. Mode N rejects a^g
/// with g < 0.
SemigroupElement normalize_generator_word(const SelfSimilarKGraph& ss,
                                          const GeneratorWord& w,
                                          SemigroupMode mode);

/// Least right common multiple, when the two paths are prefix-comparable;
/// nullopt otherwise (empty ideal intersection).
std::optional<SemigroupElement> right_lcm(const SelfSimilarKGraph& ss,
                                          const SemigroupElement& x,
                                          const SemigroupElement& y);

/// xP intersect yP = zP with z the right LCM; nullopt means empty.
std::optional<SemigroupElement> ideal_intersection(const SelfSimilarKGraph& ss,
                                                   const SemigroupElement& x,
                                                   const SemigroupElement& y);

/// BFS over products of at most B mode-N generators, deduplicated by
/// canonical form. Yes answers are certain; Unknown is never upgraded.
Membership membership_oracle(const SelfSimilarKGraph& ss,
                             const SemigroupElement& candidate,
                             int length_bound);

/// Element grammar: whitespace-separated tokens "e[3]", "x2[0]", "a^-1",
/// "a" (= a^1), and "1" for the identity word.
GeneratorWord parse_generator_word(const SelfSimilarKGraph& ss,
                                   const std::string& text);
SemigroupElement parse_element(const SelfSimilarKGraph& ss,
                               const std::string& text,
                               SemigroupMode mode = SemigroupMode::Z);
std::string print_element(const SelfSimilarKGraph& ss,
                          const SemigroupElement& x);

}  // namespace ssk

#endif
