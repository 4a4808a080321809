#pragma once

// Free associative algebra k<B u {v}> (and its commutative quotient k[B u {v}]),
// the deg-lex order and the coaction v -> D (x) 1 + 1 (x) v, a -> 1 (x) a.

#include "confalg/hopf.hpp"
#include "confalg/scalar.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace confalg {

/// A letter of B u {v}. Generators are numbered in declared order; v compares greater than all of them.
struct Letter {
    std::uint16_t code = 0;

    static constexpr std::uint16_t v_code = 0xFFFF;
    static constexpr Letter v() { return Letter{v_code}; }
    static constexpr Letter gen(std::uint16_t index) { return Letter{index}; }
    constexpr bool is_v() const { return code == v_code; }
    constexpr std::size_t index() const { return code; }

    friend constexpr auto operator<=>(Letter, Letter) = default;
};

using Word = std::vector<Letter>;

/// Shorter words first, equal lengths compared left to right.
inline std::strong_ordering deglex_cmp(const Word& u, const Word& w) {
    if (u.size() != w.size()) return u.size() <=> w.size();
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != w[i]) return u[i] <=> w[i];
    return std::strong_ordering::equal;
}

struct DegLexLess {
    bool operator()(const Word& u, const Word& w) const { return deglex_cmp(u, w) < 0; }
};

inline std::size_t v_degree(const Word& w) {
    return static_cast<std::size_t>(std::count(w.begin(), w.end(), Letter::v()));
}

enum class AlgebraKind { noncommutative, commutative };

/// Generators B with the locality function n : B -> Z_{>0}.
class AlgebraConfig {
public:
    AlgebraConfig() = default;
    AlgebraConfig(std::vector<std::string> names, std::vector<unsigned> locality,
                  AlgebraKind kind = AlgebraKind::noncommutative)
        : names_(std::move(names)), locality_(std::move(locality)), kind_(kind) {
        if (names_.size() != locality_.size())
            throw std::invalid_argument("generator and locality lists differ in length");
        if (names_.size() >= Letter::v_code) throw std::invalid_argument("too many generators");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const auto& n = names_[i];
            if (!valid_name(n)) throw std::invalid_argument("invalid generator name '" + n + "'");
            if (n == "v" || n == "D") throw std::invalid_argument("generator name '" + n + "' is reserved");
            if (!index_.emplace(n, static_cast<std::uint16_t>(i)).second)
                throw std::invalid_argument("duplicate generator '" + n + "'");
            if (locality_[i] < 1) throw std::invalid_argument("locality of '" + n + "' must be >= 1");
        }
    }

    static bool valid_name(const std::string& n) {
        if (n.empty()) return false;
        auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
        if (!alpha(n[0])) return false;
        return std::all_of(n.begin(), n.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
    }

    std::size_t size() const { return names_.size(); }
    AlgebraKind kind() const { return kind_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<unsigned>& localities() const { return locality_; }

    Letter gen(std::size_t i) const { return Letter::gen(static_cast<std::uint16_t>(i)); }
    unsigned locality(Letter a) const { return locality_.at(a.index()); }
    unsigned max_locality() const {
        return locality_.empty() ? 0 : *std::max_element(locality_.begin(), locality_.end());
    }
    unsigned locality_sum() const {
        unsigned s = 0;
        for (unsigned n : locality_) s += n;
        return s;
    }
    std::optional<Letter> find(const std::string& name) const {
        if (name == "v") return Letter::v();
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return Letter::gen(it->second);
    }
    const std::string& name(Letter a) const {
        static const std::string v_name = "v";
        return a.is_v() ? v_name : names_.at(a.index());
    }

private:
    std::vector<std::string> names_;
    std::vector<unsigned> locality_;
    AlgebraKind kind_ = AlgebraKind::noncommutative;
    std::unordered_map<std::string, std::uint16_t> index_;
};

/// Noncommutative polynomial: finitely supported Word -> Scalar, iterated in deg-lex order.
class NCPoly {
public:
    using Terms = std::map<Word, Scalar, DegLexLess>;

    NCPoly() = default;
    static NCPoly monomial(Word w, Scalar c = Scalar(1)) {
        NCPoly p;
        p.add_term(w, c);
        return p;
    }
    static NCPoly one() { return monomial({}); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Scalar coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Word& w, const Scalar& c) {
        if (confalg::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (confalg::is_zero(it->second)) terms_.erase(it);
        }
    }

    NCPoly& operator+=(const NCPoly& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    NCPoly& operator*=(const Scalar& s) {
        if (confalg::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_) c *= s;
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator-(NCPoly a) { return a *= Scalar(-1); }
    friend NCPoly operator*(NCPoly a, const Scalar& s) { return a *= s; }
    friend NCPoly operator*(const Scalar& s, NCPoly a) { return a *= s; }
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

/// Concatenation product in the free algebra.
inline NCPoly mul(const NCPoly& f, const NCPoly& g) {
    NCPoly r;
    for (const auto& [u, x] : f.terms())
        for (const auto& [w, y] : g.terms()) {
            Word uw;
            uw.reserve(u.size() + w.size());
            uw.insert(uw.end(), u.begin(), u.end());
            uw.insert(uw.end(), w.begin(), w.end());
            r.add_term(uw, x * y);
        }
    return r;
}

/// Sorts every word; the image of f in the commutative quotient.
inline NCPoly commutative_image(const NCPoly& f) {
    NCPoly r;
    for (const auto& [w, c] : f.terms()) {
        Word sorted = w;
        std::sort(sorted.begin(), sorted.end());
        r.add_term(sorted, c);
    }
    return r;
}

inline std::pair<Word, Scalar> lowest_monomial(const NCPoly& f) {
    if (f.is_zero()) throw std::domain_error("lowest monomial of the zero polynomial");
    return *f.terms().begin();
}

inline std::pair<Word, Scalar> principal_monomial(const NCPoly& f) {
    if (f.is_zero()) throw std::domain_error("principal monomial of the zero polynomial");
    return *f.terms().rbegin();
}

/// m-th formal v-derivative; d/dv sends a word to the sum of its single-v deletions.
inline NCPoly vderiv(const NCPoly& f, Degree m) {
    NCPoly cur = f;
    for (Degree step = 0; step < m && !cur.is_zero(); ++step) {
        NCPoly next;
        for (const auto& [w, c] : cur.terms())
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (!w[i].is_v()) continue;
                Word d;
                d.reserve(w.size() - 1);
                d.insert(d.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                d.insert(d.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
                next.add_term(d, c);
            }
        cur = std::move(next);
    }
    return cur;
}

/// Maximal number of v letters over the support.
inline std::size_t v_degree(const NCPoly& f) {
    std::size_t d = 0;
    for (const auto& [w, c] : f.terms()) d = std::max(d, v_degree(w));
    return d;
}

/// Delta_A(f) = sum_s D^(s) (x) parts[s].
using Coaction = std::map<Degree, NCPoly>;

inline void add_to(Coaction& into, Degree s, const NCPoly& f) {
    if (f.is_zero()) return;
    auto [it, inserted] = into.try_emplace(s, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero()) into.erase(it);
    }
}

/// The coaction v -> D (x) 1 + 1 (x) v, a -> 1 (x) a, extended multiplicatively.
/// Its components are the v-derivatives: Delta_F(f) = sum_s D^(s) (x) d^s f / dv^s.
inline Coaction coact(const NCPoly& f) {
    Coaction r;
    const auto top = static_cast<Degree>(v_degree(f));
    for (Degree s = 0; s <= top; ++s) add_to(r, s, vderiv(f, s));
    return r;
}

/// An algebra A together with a coaction of k[D] on it. The coaction is given on words and
/// extended linearly; `kind` selects the free or the free commutative product.
class ComoduleAlgebra {
public:
    using WordCoaction = std::function<Coaction(const Word&)>;

    ComoduleAlgebra(AlgebraKind kind, WordCoaction on_word) : kind_(kind), on_word_(std::move(on_word)) {}

    /// v -> D (x) 1 + 1 (x) v, generators primitive-free.
    static ComoduleAlgebra standard(AlgebraKind kind = AlgebraKind::noncommutative) {
        return ComoduleAlgebra(kind, [](const Word& w) { return confalg::coact(NCPoly::monomial(w)); });
    }
    /// a -> 1 (x) a for every letter: the current pseudoalgebra.
    static ComoduleAlgebra trivial(AlgebraKind kind = AlgebraKind::noncommutative) {
        return ComoduleAlgebra(kind, [](const Word& w) { return Coaction{{0, NCPoly::monomial(w)}}; });
    }
    /// Negative control: D-degree one part deletes only the first v, so the map is not multiplicative.
    static ComoduleAlgebra non_morphism_control(AlgebraKind kind = AlgebraKind::noncommutative) {
        return ComoduleAlgebra(kind, [](const Word& w) {
            Coaction r{{0, NCPoly::monomial(w)}};
            auto it = std::find(w.begin(), w.end(), Letter::v());
            if (it != w.end()) {
                Word d(w.begin(), it);
                d.insert(d.end(), it + 1, w.end());
                r.emplace(1, NCPoly::monomial(d));
            }
            return r;
        });
    }
    /// Multiplicative extension of per-letter images; letters missing from the table are coinvariant.
    static ComoduleAlgebra from_letter_images(AlgebraKind kind, std::map<Letter, Coaction> images) {
        return ComoduleAlgebra(kind, [kind, images = std::move(images)](const Word& w) {
            Coaction acc{{0, NCPoly::one()}};
            for (Letter l : w) {
                auto it = images.find(l);
                Coaction img = it != images.end() ? it->second : Coaction{{0, NCPoly::monomial({l})}};
                Coaction next;
                for (const auto& [s1, f1] : acc)
                    for (const auto& [s2, f2] : img) {
                        NCPoly prod = confalg::mul(f1, f2) * binomial(s1 + s2, s1);
                        if (kind == AlgebraKind::commutative) prod = commutative_image(prod);
                        add_to(next, s1 + s2, prod);
                    }
                acc = std::move(next);
            }
            return acc;
        });
    }

    AlgebraKind kind() const { return kind_; }

    NCPoly mul(const NCPoly& f, const NCPoly& g) const {
        NCPoly r = confalg::mul(f, g);
        return kind_ == AlgebraKind::commutative ? commutative_image(r) : r;
    }
    NCPoly normalize(const NCPoly& f) const {
        return kind_ == AlgebraKind::commutative ? commutative_image(f) : f;
    }
    Coaction coact(const NCPoly& f) const {
        Coaction r;
        for (const auto& [w, c] : f.terms())
            for (auto& [s, g] : on_word_(w)) add_to(r, s, normalize(g) * c);
        return r;
    }

private:
    AlgebraKind kind_;
    WordCoaction on_word_;
};

inline std::string format_word(const Word& w, const AlgebraConfig& cfg) {
    if (w.empty()) return "1";
    bool single = std::all_of(cfg.names().begin(), cfg.names().end(), [](const auto& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) out += ' ';
        out += cfg.name(w[i]);
    }
    return out;
}

inline std::string format_poly(const NCPoly& f, const AlgebraConfig& cfg) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : f.terms()) {
        Scalar a = abs(c);
        out += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
        first = false;
        if (a != 1 || w.empty()) out += to_short_string(a) + (w.empty() ? "" : "*");
        if (!w.empty()) out += format_word(w, cfg);
    }
    return out;
}

/// Parses whitespace-free words such as "avb" (single-letter names) or space separated "x1 v y2".
inline Word parse_word(const std::string& text, const AlgebraConfig& cfg) {
    Word w;
    if (text == "1") return w;
    auto push = [&](const std::string& tok) {
        auto l = cfg.find(tok);
        if (!l) throw std::invalid_argument("unknown letter '" + tok + "'");
        w.push_back(*l);
    };
    if (text.find(' ') != std::string::npos) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && text[i] == ' ') ++i;
            std::size_t j = i;
            while (j < text.size() && text[j] != ' ') ++j;
            if (j > i) push(text.substr(i, j - i));
            i = j;
        }
    } else {
        for (char c : text) push(std::string(1, c));
    }
    return w;
}

}  // namespace confalg
