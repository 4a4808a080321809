#pragma once

// Free associative conformal algebra CF(B, N) with locality N(a, b) = n(b).
//
// Basis: normal words D^s (a_1 o_{n_1} (a_2 o_{n_2} ... (a_k o_{n_k} a_{k+1}) ...)) with
// 0 <= n_i < n(a_{i+1}). Two engines compute products in this basis:
//   - cprod:    embed into H (x) k<B u {v}> via a -> 1 (x) v^(n(a)-1) a, take the P8 n-product,
//               and reduce back by lowest-monomial elimination;
//   - cprod_rw: rewrite with sesquilinearity and conformal associativity only.

#include "confalg/hopf.hpp"
#include "confalg/ncpoly.hpp"
#include "confalg/pseudo.hpp"
#include "confalg/scalar.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace confalg {

struct NormalWord {
    Degree s = 0;
    std::vector<Letter> gens;
    std::vector<Degree> indices;

    static NormalWord generator(Letter a, Degree s = 0) { return NormalWord{s, {a}, {}}; }

    std::size_t k() const { return indices.size(); }
    bool d_free() const { return s == 0; }

    bool is_valid(const AlgebraConfig& cfg) const {
        if (gens.empty() || gens.size() != indices.size() + 1) return false;
        for (Letter a : gens)
            if (a.is_v() || a.index() >= cfg.size()) return false;
        for (std::size_t i = 0; i < indices.size(); ++i)
            if (indices[i] >= cfg.locality(gens[i + 1])) return false;
        return true;
    }

    /// a o_n (this), no validity check
    NormalWord prepend(Letter a, Degree n) const {
        NormalWord r{s, {a}, {n}};
        r.gens.insert(r.gens.end(), gens.begin(), gens.end());
        r.indices.insert(r.indices.end(), indices.begin(), indices.end());
        return r;
    }
    /// the tail after a_1 o_{n_1}
    NormalWord tail() const {
        return NormalWord{s, std::vector<Letter>(gens.begin() + 1, gens.end()),
                          std::vector<Degree>(indices.begin() + 1, indices.end())};
    }
    NormalWord with_s(Degree new_s) const { return NormalWord{new_s, gens, indices}; }

    friend auto operator<=>(const NormalWord&, const NormalWord&) = default;
    friend bool operator==(const NormalWord&, const NormalWord&) = default;
};

inline void require_valid(const NormalWord& u, const AlgebraConfig& cfg) {
    if (!u.is_valid(cfg)) throw std::invalid_argument("invalid normal word for this configuration");
}

/// Linear combination of normal words.
class ConfElement {
public:
    using Terms = std::map<NormalWord, Scalar>;

    ConfElement() = default;
    static ConfElement word(const NormalWord& u, Scalar c = Scalar(1)) {
        ConfElement x;
        x.add(u, c);
        return x;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Scalar coeff(const NormalWord& u) const {
        auto it = terms_.find(u);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add(const NormalWord& u, const Scalar& c) {
        if (confalg::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(u, c);
        if (!inserted) {
            it->second += c;
            if (confalg::is_zero(it->second)) terms_.erase(it);
        }
    }
    ConfElement& operator+=(const ConfElement& o) {
        for (const auto& [u, c] : o.terms_) add(u, c);
        return *this;
    }
    ConfElement& operator-=(const ConfElement& o) {
        for (const auto& [u, c] : o.terms_) add(u, -c);
        return *this;
    }
    ConfElement& operator*=(const Scalar& s) {
        if (confalg::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [u, c] : terms_) c *= s;
        return *this;
    }
    friend ConfElement operator+(ConfElement a, const ConfElement& b) { return a += b; }
    friend ConfElement operator-(ConfElement a, const ConfElement& b) { return a -= b; }
    friend ConfElement operator-(ConfElement a) { return a *= Scalar(-1); }
    friend ConfElement operator*(ConfElement a, const Scalar& s) { return a *= s; }
    friend ConfElement operator*(const Scalar& s, ConfElement a) { return a *= s; }
    friend bool operator==(const ConfElement& a, const ConfElement& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

/// D^k . x
inline ConfElement apply_D(const ConfElement& x, Degree k = 1) {
    ConfElement r;
    for (const auto& [u, c] : x.terms()) r.add(u.with_s(u.s + k), c);
    return r;
}

/// (1 / (n(a)-1)!) v^{n(a)-1} a
inline NCPoly generator_image(Letter a, const AlgebraConfig& cfg) {
    const unsigned n = cfg.locality(a);
    Word w(n - 1, Letter::v());
    w.push_back(a);
    return NCPoly::monomial(std::move(w), Scalar(1) / factorial(n - 1));
}

/// Embedding of a normal word into H (x) k<B u {v}>, built right to left with
/// (1 (x) f) o_m (1 (x) g) = (-1)^m (1 (x) f d^m g / dv^m).
inline PElement iota(const NormalWord& u, const AlgebraConfig& cfg) {
    require_valid(u, cfg);
    NCPoly f = generator_image(u.gens.back(), cfg);
    for (std::size_t i = u.indices.size(); i-- > 0;) {
        const Degree m = u.indices[i];
        f = mul(generator_image(u.gens[i], cfg), vderiv(f, m)) * sign_pow(m);
    }
    return PElement::make(f, u.s);
}

inline PElement iota(const ConfElement& x, const AlgebraConfig& cfg) {
    PElement r;
    for (const auto& [u, c] : x.terms()) r += iota(u, cfg) * c;
    return r;
}

/// Lowest monomial of iota(u) by the closed formula
/// (-1)^{n_1+...+n_k} v^{n(a_1)-1} a_1 v^{n(a_2)-n_1-1} a_2 ... v^{n(a_{k+1})-n_k-1} a_{k+1}.
inline std::pair<int, Word> hat_word(const NormalWord& u, const AlgebraConfig& cfg) {
    require_valid(u, cfg);
    if (!u.d_free()) throw std::invalid_argument("hat_word needs a D-free normal word");
    Word w(cfg.locality(u.gens[0]) - 1, Letter::v());
    w.push_back(u.gens[0]);
    Degree total = 0;
    for (std::size_t i = 0; i < u.indices.size(); ++i) {
        total += u.indices[i];
        w.insert(w.end(), cfg.locality(u.gens[i + 1]) - u.indices[i] - 1, Letter::v());
        w.push_back(u.gens[i + 1]);
    }
    return {total % 2 == 0 ? 1 : -1, w};
}

/// Inverse of hat_word: reads w as v^{e_0} a_1 v^{e_1} a_2 ... v^{e_k} a_{k+1}.
inline std::optional<std::pair<int, NormalWord>> word_to_normal(const Word& w, const AlgebraConfig& cfg) {
    if (w.empty() || w.back().is_v()) return std::nullopt;
    NormalWord u;
    std::vector<Degree> runs;
    Degree run = 0;
    for (Letter l : w) {
        if (l.is_v()) {
            ++run;
        } else {
            if (l.index() >= cfg.size()) return std::nullopt;
            runs.push_back(run);
            u.gens.push_back(l);
            run = 0;
        }
    }
    if (runs[0] != cfg.locality(u.gens[0]) - 1) return std::nullopt;
    Degree total = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        const unsigned n = cfg.locality(u.gens[i]);
        if (runs[i] > n - 1) return std::nullopt;
        u.indices.push_back(n - 1 - runs[i]);
        total += u.indices.back();
    }
    return std::make_pair(total % 2 == 0 ? 1 : -1, u);
}

struct NotInSpan {
    Word witness;
    Degree d = 0;
};

using ReduceResult = std::variant<ConfElement, NotInSpan>;

/// Expresses p as a combination of iota images by repeatedly cancelling the lowest monomial of
/// each D-slice. Every cancellation only introduces deg-lex larger words of the same length.
inline ReduceResult reduce(const PElement& p, const AlgebraConfig& cfg) {
    ConfElement out;
    for (const auto& [d, slice] : p.parts()) {
        NCPoly rest = slice;
        while (!rest.is_zero()) {
            auto [w, c] = lowest_monomial(rest);
            auto inv = word_to_normal(w, cfg);
            if (!inv) return NotInSpan{w, d};
            const NCPoly image = iota(inv->second, cfg).part(0);
            const Scalar factor = c / image.coeff(w);
            rest -= image * factor;
            out.add(inv->second.with_s(d), factor);
        }
    }
    return out;
}

/// Realization engine: reduce(iota(x) o_n iota(y)) with the P8 pseudoproduct.
inline ConfElement cprod(const ConfElement& x, Degree n, const ConfElement& y, const AlgebraConfig& cfg) {
    static const ComoduleAlgebra alg = ComoduleAlgebra::standard();
    PElement acc;
    for (const auto& [u, cu] : x.terms()) {
        const PElement left = iota(u, cfg);
        for (const auto& [w, cw] : y.terms()) acc += nth(ProductKind::P8, alg, left, n, iota(w, cfg)) * (cu * cw);
    }
    auto r = reduce(acc, cfg);
    if (auto* e = std::get_if<ConfElement>(&r)) return std::move(*e);
    throw std::logic_error("conformal product left the span of normal words");
}

/// Axiom-rewriting engine. Uses only sesquilinearity, the two forms of conformal associativity
/// and locality on generator pairs.
class RewriteEngine {
public:
    using Locality = std::function<unsigned(Letter, Letter)>;

    explicit RewriteEngine(const AlgebraConfig& cfg)
        : locality_([&cfg](Letter, Letter b) { return cfg.locality(b); }) {}
    /// General N(a, b). The result is then only a normal form modulo these rewrite rules;
    /// no basis guarantee is made.
    explicit RewriteEngine(Locality general) : locality_(std::move(general)), general_(true) {}

    bool basis_guarantee() const { return !general_; }

    ConfElement product(const ConfElement& x, Degree n, const ConfElement& y) const {
        ConfElement r;
        for (const auto& [u, cu] : x.terms())
            for (const auto& [w, cw] : y.terms()) r += word_product(u, n, w) * (cu * cw);
        return r;
    }

    /// (D^s u) o_n (D^t w)
    ConfElement word_product(const NormalWord& u, Degree n, const NormalWord& w) const {
        // D^s u o_n y = (-1)^s n(n-1)...(n-s+1) u o_{n-s} y
        if (u.s > n) return {};
        const Scalar left_factor = sign_pow(u.s) * falling(n, u.s);
        const Degree m = n - u.s;
        const NormalWord u0 = u.with_s(0);
        const NormalWord w0 = w.with_s(0);
        // u o_m D^t w = sum_j C(t, j) m(m-1)...(m-j+1) D^{t-j} (u o_{m-j} w)
        ConfElement r;
        for (Degree j = 0; j <= std::min<Degree>(w.s, m); ++j) {
            const Scalar c = left_factor * binomial(w.s, j) * falling(m, j);
            r += apply_D(dfree_product(u0, m - j, w0), w.s - j) * c;
        }
        return r;
    }

    /// u o_m w for D-free normal words.
    ConfElement dfree_product(const NormalWord& u, Degree m, const NormalWord& w) const {
        if (u.k() == 0) return generator_product(u.gens[0], m, w);
        // (a o_{n1} u') o_m w = sum_s (-1)^s C(n1, s) a o_{n1-s} (u' o_{m+s} w)
        const Letter a = u.gens[0];
        const Degree n1 = u.indices[0];
        const NormalWord rest = u.tail();
        ConfElement r;
        for (Degree s = 0; s <= n1; ++s) {
            const ConfElement inner = dfree_product(rest, m + s, w);
            for (const auto& [x, c] : inner.terms())
                r += generator_product(a, n1 - s, x) * (c * sign_pow(s) * binomial(n1, s));
        }
        return r;
    }

    /// a0 o_n w for a generator a0 and a D-free normal word w.
    ConfElement generator_product(Letter a0, Degree n, const NormalWord& w) const {
        const Letter a1 = w.gens[0];
        const unsigned bound = locality_(a0, a1);
        if (n < bound) return ConfElement::word(w.prepend(a0, n));
        if (w.k() == 0) return {};
        // a0 o_n (a1 o_{n1} w1) = sum_{s > n - N} C(n, s) (a0 o_{n-s} a1) o_{n1+s} w1, then
        // (a0 o_p a1) o_q w1 = sum_t (-1)^t C(p, t) a0 o_{p-t} (a1 o_{q+t} w1).
        const Degree n1 = w.indices[0];
        const NormalWord w1 = w.tail();
        ConfElement r;
        for (Degree s = n - bound + 1; s <= n; ++s) {
            const Degree p = n - s;
            const Degree q = n1 + s;
            for (Degree t = 0; t <= p; ++t) {
                const Scalar c = binomial(n, s) * sign_pow(t) * binomial(p, t);
                const ConfElement inner = generator_product(a1, q + t, w1);
                for (const auto& [x, cx] : inner.terms()) r.add(x.prepend(a0, p - t), c * cx);
            }
        }
        return r;
    }

private:
    Locality locality_;
    bool general_ = false;
};

inline ConfElement cprod_rw(const ConfElement& x, Degree n, const ConfElement& y, const AlgebraConfig& cfg) {
    return RewriteEngine(cfg).product(x, n, y);
}

/// Number of D-free normal words with k+1 letters: |B| (sum_a n(a))^k.
inline mpz_class basis_count(const AlgebraConfig& cfg, unsigned k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), cfg.locality_sum(), k);
    return r * static_cast<unsigned long>(cfg.size());
}

/// All normal words with k <= max_k and s <= max_s, ordered by s, then k, then letters and indices.
inline std::vector<NormalWord> enumerate_basis(const AlgebraConfig& cfg, unsigned max_k, unsigned max_s) {
    std::vector<NormalWord> dfree;
    for (unsigned k = 0; k <= max_k; ++k) {
        NormalWord cur;
        std::function<void()> rec = [&]() {
            if (cur.gens.size() == k + 1) {
                dfree.push_back(cur);
                return;
            }
            for (std::size_t g = 0; g < cfg.size(); ++g) {
                const Letter a = cfg.gen(g);
                if (cur.gens.empty()) {
                    cur.gens.push_back(a);
                    rec();
                    cur.gens.pop_back();
                    continue;
                }
                for (Degree n = 0; n < cfg.locality(a); ++n) {
                    cur.indices.push_back(n);
                    cur.gens.push_back(a);
                    rec();
                    cur.gens.pop_back();
                    cur.indices.pop_back();
                }
            }
        };
        rec();
    }
    std::vector<NormalWord> out;
    out.reserve(dfree.size() * (max_s + 1));
    for (unsigned s = 0; s <= max_s; ++s)
        for (const auto& u : dfree) out.push_back(u.with_s(s));
    return out;
}

/// Minimal N with x o_n y = 0 for all n >= N. The realization bounds it by
/// 1 + max(s_x) + max over parts D^t (x) g of iota(y) of (t + deg_v g); the exact value is then
/// located by checking the finitely many n below that bound.
inline Degree locality_of(const ConfElement& x, const ConfElement& y, const AlgebraConfig& cfg) {
    if (x.is_zero() || y.is_zero()) throw std::invalid_argument("locality of a zero element");
    Degree left = 0;
    for (const auto& [u, c] : x.terms()) left = std::max(left, u.s);
    Degree right = 0;
    const PElement image = iota(y, cfg);
    for (const auto& [t, g] : image.parts())
        right = std::max<Degree>(right, t + static_cast<Degree>(v_degree(g)));
    const Degree bound = 1 + left + right;
    for (Degree n = bound; n-- > 0;)
        if (!cprod(x, n, y, cfg).is_zero()) return n + 1;
    return 0;
}

/// Canonical output order: s, then number of letters, then deg-lex of hat_word.
inline bool canonical_less(const NormalWord& a, const NormalWord& b, const AlgebraConfig& cfg) {
    if (a.s != b.s) return a.s < b.s;
    if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
    return deglex_cmp(hat_word(a.with_s(0), cfg).second, hat_word(b.with_s(0), cfg).second) < 0;
}

inline std::vector<std::pair<NormalWord, Scalar>> sorted_terms(const ConfElement& x, const AlgebraConfig& cfg) {
    std::vector<std::pair<NormalWord, Scalar>> v(x.terms().begin(), x.terms().end());
    std::sort(v.begin(), v.end(), [&](const auto& l, const auto& r) { return canonical_less(l.first, r.first, cfg); });
    return v;
}

/// "(a .0 (b .1 c))", wrapped in "D^s(...)" when s > 0.
inline std::string format_normal_word(const NormalWord& u, const AlgebraConfig& cfg) {
    std::string body = cfg.name(u.gens.back());
    for (std::size_t i = u.indices.size(); i-- > 0;)
        body = "(" + cfg.name(u.gens[i]) + " ." + std::to_string(u.indices[i]) + " " + body + ")";
    if (u.s == 0) return body;
    return "D^" + std::to_string(u.s) + "(" + body + ")";
}

inline std::string format_conf(const ConfElement& x, const AlgebraConfig& cfg) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [u, c] : sorted_terms(x, cfg)) {
        const Scalar a = abs(c);
        if (first)
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        first = false;
        if (a != 1) out += to_short_string(a) + " * ";
        out += format_normal_word(u, cfg);
    }
    return out;
}

}  // namespace confalg
