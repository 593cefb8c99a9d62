#ifndef SSK_KGRAPH_HPP
#define SSK_KGRAPH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ssk {

/// Error with a stable machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Element of N^k under the componentwise partial order.
struct Degree {
    std::vector<int> e;

    Degree() = default;
    explicit Degree(std::vector<int> v) : e(std::move(v)) {}
    static Degree zero(int k) { return Degree(std::vector<int>(k, 0)); }
    static Degree ones(int k) { return Degree(std::vector<int>(k, 1)); }
    static Degree unit(int k, int i) {
        Degree d = zero(k);
        d.e[i] = 1;
        return d;
    }

    int rank() const { return static_cast<int>(e.size()); }
    int operator[](int i) const { return e[i]; }
    int total() const {
        int s = 0;
        for (int x : e) s += x;
        return s;
    }

    Degree operator+(const Degree& o) const;
    // componentwise difference; caller must ensure o <= *this
    Degree operator-(const Degree& o) const;
    Degree join(const Degree& o) const;
    Degree meet(const Degree& o) const;
    bool leq(const Degree& o) const;

    bool operator==(const Degree& o) const = default;
    auto operator<=>(const Degree& o) const = default;
};

/// Signed degree vector in Z^k (gauge degrees, lattice vectors).
using IntVec = std::vector<long>;

enum class ThetaKind { Trivial, Division, Flip };

/// The commutation data theta_ij for 1 <= i < j <= k, stored by the
/// orientation (s,t) -> (s',t') meaning x^i_s x^j_t = x^j_{t'} x^i_{s'}.
struct ThetaFamily {
    int k = 0;
    std::vector<int> sizes;
    // tables[pair_index(i,j)][s*n_j + t] = (s',t')
    std::vector<std::vector<std::pair<int, int>>> tables;

    int pair_index(int i, int j) const {  // 0-based colors, i < j
        return i * k - i * (i + 1) / 2 + (j - i - 1);
    }
    std::pair<int, int> apply(int i, int j, int s, int t) const {
        return tables[pair_index(i, j)][s * sizes[j] + t];
    }
};

ThetaFamily make_theta(ThetaKind kind, const std::vector<int>& sizes);

/// Path in color-ordered normal form x^1_{u_1} ... x^k_{u_k}.
struct Path {
    std::vector<std::vector<int>> words;  // word i over [n_i]

    Path() = default;
    explicit Path(std::vector<std::vector<int>> w) : words(std::move(w)) {}
    static Path empty(int k) { return Path(std::vector<std::vector<int>>(k)); }

    int rank() const { return static_cast<int>(words.size()); }
    Degree degree() const {
        std::vector<int> d;
        d.reserve(words.size());
        for (const auto& w : words) d.push_back(static_cast<int>(w.size()));
        return Degree(std::move(d));
    }
    bool is_empty() const {
        for (const auto& w : words)
            if (!w.empty()) return false;
        return true;
    }

    bool operator==(const Path& o) const = default;
    auto operator<=>(const Path& o) const = default;

    std::string str() const;  // e.g. "x1[0]x1[1]x2[2]", "" for the empty path
};

struct ColoredLetter {
    int color;   // 0-based
    int letter;  // in [n_color]
};
using ColoredWord = std::vector<ColoredLetter>;

constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Validated single-vertex rank-k graph. Construct via KGraph::validate.
class KGraph {
public:
    static KGraph validate(const ThetaFamily& theta);

    int rank() const { return theta_.k; }
    const std::vector<int>& sizes() const { return theta_.sizes; }
    const ThetaFamily& theta() const { return theta_; }

    // forward: x^i_s x^j_t = x^j_{t'} x^i_{s'}, returns (s',t')
    std::pair<int, int> theta_apply(int i, int j, int s, int t) const {
        return theta_.apply(i, j, s, t);
    }
    // inverse: given (s',t') find (s,t)
    std::pair<int, int> theta_invert(int i, int j, int sp, int tp) const {
        return inverse_[theta_.pair_index(i, j)][sp * theta_.sizes[j] + tp];
    }

    mpz_class path_count(const Degree& n) const;  // prod n_i^{(n)_i}

    Path normalize_word(const ColoredWord& w) const;
    Path compose(const Path& p, const Path& q) const;
    // unique (prefix, suffix) with d(prefix) = n
    std::pair<Path, Path> factorize(const Path& p, const Degree& n) const;
    std::vector<Path> enumerate_paths(
        const Degree& n, std::uint64_t cap = kDefaultEnumerationCap) const;
    std::optional<Path> is_prefix(const Path& mu, const Path& tau) const;
    // all (gamma, delta) with nu*gamma == alpha*delta of degree d(nu) v d(alpha)
    std::vector<std::pair<Path, Path>> minimal_common_extensions(
        const Path& nu, const Path& alpha,
        std::uint64_t cap = kDefaultEnumerationCap) const;

    Path parse_path(const std::string& text) const;

private:
    explicit KGraph(ThetaFamily theta);

    ThetaFamily theta_;
    std::vector<std::vector<std::pair<int, int>>> inverse_;
};

}  // namespace ssk

#endif
