#include "ssk/kgraph.hpp"

#include <algorithm>
#include <sstream>

namespace ssk {

Degree Degree::operator+(const Degree& o) const {
    Degree r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

Degree Degree::operator-(const Degree& o) const {
    Degree r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
    return r;
}

Degree Degree::join(const Degree& o) const {
    Degree r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = std::max(r.e[i], o.e[i]);
    return r;
}

Degree Degree::meet(const Degree& o) const {
    Degree r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = std::min(r.e[i], o.e[i]);
    return r;
}

bool Degree::leq(const Degree& o) const {
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

std::string Path::str() const {
    std::ostringstream os;
    for (int i = 0; i < rank(); ++i)
        for (int s : words[i]) os << 'x' << (i + 1) << '[' << s << ']';
    return os.str();
}

ThetaFamily make_theta(ThetaKind kind, const std::vector<int>& sizes) {
    const int k = static_cast<int>(sizes.size());
    if (kind == ThetaKind::Flip) {
        for (int n : sizes)
            if (n != sizes[0])
                throw Error("FlipSizeMismatch",
                            "flip commutation requires equal edge counts");
    }
    ThetaFamily f;
    f.k = k;
    f.sizes = sizes;
    f.tables.resize(k * (k - 1) / 2);
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const int ni = sizes[i], nj = sizes[j];
            auto& tab = f.tables[f.pair_index(i, j)];
            tab.resize(ni * nj);
            for (int s = 0; s < ni; ++s) {
                for (int t = 0; t < nj; ++t) {
                    std::pair<int, int> out;
                    switch (kind) {
                        case ThetaKind::Trivial:
                            out = {s, t};
                            break;
                        case ThetaKind::Flip:
                            out = {t, s};
                            break;
                        case ThetaKind::Division: {
                            // unique (s',t') with s + t*n_i = t' + s'*n_j
                            const int v = s + t * ni;
                            out = {v / nj, v % nj};
                            break;
                        }
                    }
                    tab[s * nj + t] = out;
                }
            }
        }
    }
    return f;
}

KGraph::KGraph(ThetaFamily theta) : theta_(std::move(theta)) {
    inverse_.resize(theta_.tables.size());
    for (int i = 0; i < theta_.k; ++i) {
        for (int j = i + 1; j < theta_.k; ++j) {
            const int nj = theta_.sizes[j];
            const int idx = theta_.pair_index(i, j);
            auto& inv = inverse_[idx];
            inv.assign(theta_.tables[idx].size(), {-1, -1});
            for (int s = 0; s < theta_.sizes[i]; ++s) {
                for (int t = 0; t < nj; ++t) {
                    auto [sp, tp] = theta_.tables[idx][s * nj + t];
                    inv[sp * nj + tp] = {s, t};
                }
            }
        }
    }
}

namespace {

std::string word_str(const ColoredWord& w) {
    std::ostringstream os;
    for (auto [c, l] : w) os << 'x' << (c + 1) << '[' << l << ']';
    return os.str();
}

// Swap the (ascending-color) adjacent pair at positions p, p+1 using the
// forward theta orientation: x^i_s x^j_t -> x^j_{t'} x^i_{s'}.
void swap_forward(const ThetaFamily& theta, ColoredWord& w, size_t p) {
    auto [i, s] = w[p];
    auto [j, t] = w[p + 1];
    auto [sp, tp] = theta.apply(i, j, s, t);
    w[p] = {j, tp};
    w[p + 1] = {i, sp};
}

}  // namespace

KGraph KGraph::validate(const ThetaFamily& theta) {
    const int k = theta.k;
    if (k < 1) throw Error("InvalidShape", "rank must be >= 1");
    if (static_cast<int>(theta.sizes.size()) != k)
        throw Error("InvalidShape", "sizes/rank mismatch");
    for (int n : theta.sizes)
        if (n < 1) throw Error("InvalidShape", "edge counts must be >= 1");
    if (theta.tables.size() != static_cast<size_t>(k * (k - 1) / 2))
        throw Error("InvalidShape", "wrong number of theta tables");

    // bijectivity of each theta_ij
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const int ni = theta.sizes[i], nj = theta.sizes[j];
            const auto& tab = theta.tables[theta.pair_index(i, j)];
            if (tab.size() != static_cast<size_t>(ni * nj))
                throw Error("InvalidShape", "theta table has wrong shape");
            std::vector<char> seen(ni * nj, 0);
            for (const auto& [sp, tp] : tab) {
                if (sp < 0 || sp >= ni || tp < 0 || tp >= nj ||
                    seen[sp * nj + tp]++)
                    throw Error("NonBijectiveTheta",
                                "theta_" + std::to_string(i + 1) +
                                    std::to_string(j + 1) +
                                    " is not a bijection");
            }
        }
    }

    // cubic condition: both maximal swap strategies on x^i_s x^j_t x^l_u
    // must yield the same color-(l,j,i) word.
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            for (int l = j + 1; l < k; ++l) {
                for (int s = 0; s < theta.sizes[i]; ++s) {
                    for (int t = 0; t < theta.sizes[j]; ++t) {
                        for (int u = 0; u < theta.sizes[l]; ++u) {
                            ColoredWord a = {{i, s}, {j, t}, {l, u}};
                            ColoredWord b = a;
                            // outermost-first: (0,1), (1,2), (0,1)
                            swap_forward(theta, a, 0);
                            swap_forward(theta, a, 1);
                            swap_forward(theta, a, 0);
                            // innermost-first: (1,2), (0,1), (1,2)
                            swap_forward(theta, b, 1);
                            swap_forward(theta, b, 0);
                            swap_forward(theta, b, 1);
                            if (!std::equal(a.begin(), a.end(), b.begin(),
                                            [](auto x, auto y) {
                                                return x.color == y.color &&
                                                       x.letter == y.letter;
                                            })) {
                                throw Error(
                                    "CubicConditionViolated",
                                    "colors (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + "," +
                                        std::to_string(l + 1) + ") letters (" +
                                        std::to_string(s) + "," +
                                        std::to_string(t) + "," +
                                        std::to_string(u) + "): " +
                                        word_str(a) + " vs " + word_str(b));
                            }
                        }
                    }
                }
            }
        }
    }
    return KGraph(theta);
}

mpz_class KGraph::path_count(const Degree& n) const {
    mpz_class c = 1;
    for (int i = 0; i < rank(); ++i) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), theta_.sizes[i], n[i]);
        c *= p;
    }
    return c;
}

Path KGraph::normalize_word(const ColoredWord& w) const {
    for (auto [c, l] : w) {
        if (c < 0 || c >= rank() || l < 0 || l >= theta_.sizes[c])
            throw Error("LetterOutOfRange",
                        "letter " + std::to_string(l) + " of color " +
                            std::to_string(c + 1));
    }
    ColoredWord v = w;
    // bubble toward ascending color order; each descending adjacent pair is
    // resolved by the inverse theta relation
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t p = 0; p + 1 < v.size(); ++p) {
            if (v[p].color > v[p + 1].color) {
                const int j = v[p].color, i = v[p + 1].color;
                auto [s, t] = theta_invert(i, j, v[p + 1].letter, v[p].letter);
                v[p] = {i, s};
                v[p + 1] = {j, t};
                changed = true;
            }
        }
    }
    Path out = Path::empty(rank());
    for (auto [c, l] : v) out.words[c].push_back(l);
    return out;
}

Path KGraph::compose(const Path& p, const Path& q) const {
    ColoredWord w;
    for (int i = 0; i < rank(); ++i)
        for (int l : p.words[i]) w.push_back({i, l});
    for (int i = 0; i < rank(); ++i)
        for (int l : q.words[i]) w.push_back({i, l});
    return normalize_word(w);
}

std::pair<Path, Path> KGraph::factorize(const Path& p, const Degree& n) const {
    if (!n.leq(p.degree()))
        throw Error("DegreeTooLarge", "requested prefix degree exceeds d(p)");
    ColoredWord rest;
    for (int i = 0; i < rank(); ++i)
        for (int l : p.words[i]) rest.push_back({i, l});

    Path prefix = Path::empty(rank());
    for (int i = 0; i < rank(); ++i) {
        for (int c = 0; c < n[i]; ++c) {
            // pull the leftmost color-i letter to the front
            size_t pos = 0;
            while (rest[pos].color != i) ++pos;
            while (pos > 0) {
                const auto left = rest[pos - 1];
                const auto cur = rest[pos];
                if (left.color < i) {
                    auto [sp, tp] =
                        theta_apply(left.color, i, left.letter, cur.letter);
                    rest[pos - 1] = {i, tp};
                    rest[pos] = {left.color, sp};
                } else {  // left.color > i
                    auto [s, t] =
                        theta_invert(i, left.color, cur.letter, left.letter);
                    rest[pos - 1] = {i, s};
                    rest[pos] = {left.color, t};
                }
                --pos;
            }
            prefix.words[i].push_back(rest.front().letter);
            rest.erase(rest.begin());
        }
    }
    return {prefix, normalize_word(rest)};
}

std::vector<Path> KGraph::enumerate_paths(const Degree& n,
                                          std::uint64_t cap) const {
    mpz_class count = path_count(n);
    if (count > cap)
        throw Error("SizeOverflow", "enumeration of " + count.get_str() +
                                        " paths exceeds cap " +
                                        std::to_string(cap));
    std::vector<Path> out;
    out.reserve(count.get_ui());
    Path cur = Path::empty(rank());
    for (int i = 0; i < rank(); ++i) cur.words[i].assign(n[i], 0);
    while (true) {
        out.push_back(cur);
        // increment like a mixed-radix counter, last letter fastest
        int i = rank() - 1;
        int pos = i >= 0 ? static_cast<int>(cur.words[i].size()) - 1 : -1;
        for (;;) {
            while (i >= 0 && pos < 0) {
                --i;
                pos = i >= 0 ? static_cast<int>(cur.words[i].size()) - 1 : -1;
            }
            if (i < 0) return out;
            if (++cur.words[i][pos] < theta_.sizes[i]) break;
            cur.words[i][pos] = 0;
            --pos;
        }
    }
}

std::optional<Path> KGraph::is_prefix(const Path& mu, const Path& tau) const {
    if (!mu.degree().leq(tau.degree())) return std::nullopt;
    auto [pre, suf] = factorize(tau, mu.degree());
    if (pre == mu) return suf;
    return std::nullopt;
}

std::vector<std::pair<Path, Path>> KGraph::minimal_common_extensions(
    const Path& nu, const Path& alpha, std::uint64_t cap) const {
    const Degree m = nu.degree().join(alpha.degree());
    std::vector<std::pair<Path, Path>> out;
    for (const Path& gamma : enumerate_paths(m - nu.degree(), cap)) {
        Path ext = compose(nu, gamma);
        if (auto delta = is_prefix(alpha, ext)) out.push_back({gamma, *delta});
    }
    return out;
}

Path KGraph::parse_path(const std::string& text) const {
    ColoredWord w;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        int color;
        if (text[i] == 'x') {
            ++i;
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i) throw Error("ParseError", "expected color after 'x'");
            color = std::stoi(text.substr(i, j - i)) - 1;
            i = j;
        } else if (text[i] == 'e') {
            ++i;
            color = 0;
        } else {
            throw Error("ParseError", "unexpected character in path: " + text.substr(i));
        }
        if (i >= text.size() || text[i] != '[')
            throw Error("ParseError", "expected '[' in path literal");
        size_t close = text.find(']', i);
        if (close == std::string::npos)
            throw Error("ParseError", "unterminated '[' in path literal");
        int letter = std::stoi(text.substr(i + 1, close - i - 1));
        i = close + 1;
        w.push_back({color, letter});
        skip_ws();
    }
    return normalize_word(w);
}

}  // namespace ssk
