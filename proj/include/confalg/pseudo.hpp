#pragma once

// k[D]-pseudoalgebras on H (x) A.
//
// An element of H^{(x)N} (x)_H P is stored raw as sum (D^{k_1} (x) ... (x) D^{k_N}) (x)_H p and
// compared through its canonical form sum_a ((-D)^(a_1) (x) ... (x) (-D)^(a_{N-1}) (x) 1) (x)_H c_a.
// For N = 2 the coefficient c_n is the conformal n-product.

#include "confalg/hopf.hpp"
#include "confalg/ncpoly.hpp"
#include "confalg/scalar.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <variant>
#include <vector>

namespace confalg {

/// Element sum_d D^d (x) f_d of H (x) A.
class PElement {
public:
    using Parts = std::map<Degree, NCPoly>;

    PElement() = default;
    /// D^d (x) f
    static PElement make(const NCPoly& f, Degree d = 0) {
        PElement p;
        p.add(d, f);
        return p;
    }

    const Parts& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    NCPoly part(Degree d) const {
        auto it = parts_.find(d);
        return it == parts_.end() ? NCPoly() : it->second;
    }
    Degree max_d_degree() const { return parts_.empty() ? 0 : parts_.rbegin()->first; }

    void add(Degree d, const NCPoly& f) {
        if (f.is_zero()) return;
        auto [it, inserted] = parts_.try_emplace(d, f);
        if (!inserted) {
            it->second += f;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }

    PElement& operator+=(const PElement& o) {
        for (const auto& [d, f] : o.parts_) add(d, f);
        return *this;
    }
    PElement& operator-=(const PElement& o) {
        for (const auto& [d, f] : o.parts_) add(d, -f);
        return *this;
    }
    PElement& operator*=(const Scalar& s) {
        if (confalg::is_zero(s)) {
            parts_.clear();
            return *this;
        }
        for (auto& [d, f] : parts_) f *= s;
        return *this;
    }
    friend PElement operator+(PElement a, const PElement& b) { return a += b; }
    friend PElement operator-(PElement a, const PElement& b) { return a -= b; }
    friend PElement operator-(PElement a) { return a *= Scalar(-1); }
    friend PElement operator*(PElement a, const Scalar& s) { return a *= s; }
    friend PElement operator*(const Scalar& s, PElement a) { return a *= s; }
    friend bool operator==(const PElement& a, const PElement& b) { return a.parts_ == b.parts_; }

    /// H-module action.
    friend PElement operator*(const HPoly& h, const PElement& p) {
        PElement r;
        for (const auto& [k, c] : h.terms())
            for (const auto& [d, f] : p.parts_) r.add(d + k, f * c);
        return r;
    }

private:
    Parts parts_;
};

/// D^k . p
inline PElement apply_D(const PElement& p, Degree k = 1) { return HPoly::monomial(k) * p; }

template <std::size_t N>
using HKey = std::array<Degree, N>;

/// Raw element of H^{(x)N} (x)_H P.
template <std::size_t N>
class PseudoTensor {
public:
    using Entries = std::map<HKey<N>, PElement>;

    const Entries& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    void add(const HKey<N>& k, const PElement& p) {
        if (p.is_zero()) return;
        auto [it, inserted] = entries_.try_emplace(k, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }
    PseudoTensor& operator+=(const PseudoTensor& o) {
        for (const auto& [k, p] : o.entries_) add(k, p);
        return *this;
    }
    PseudoTensor& operator-=(const PseudoTensor& o) {
        for (const auto& [k, p] : o.entries_) add(k, -p);
        return *this;
    }
    PseudoTensor& operator*=(const Scalar& s) {
        if (confalg::is_zero(s)) {
            entries_.clear();
            return *this;
        }
        for (auto& [k, p] : entries_) p *= s;
        return *this;
    }
    friend PseudoTensor operator+(PseudoTensor a, const PseudoTensor& b) { return a += b; }
    friend PseudoTensor operator-(PseudoTensor a, const PseudoTensor& b) { return a -= b; }
    friend PseudoTensor operator*(PseudoTensor a, const Scalar& s) { return a *= s; }
    friend bool operator==(const PseudoTensor& a, const PseudoTensor& b) { return a.entries_ == b.entries_; }

private:
    Entries entries_;
};

/// p viewed in H (x)_H P.
inline PseudoTensor<1> as_tensor(const PElement& p) {
    PseudoTensor<1> t;
    t.add({0}, p);
    return t;
}

/// Canonical coefficients {c_a}: sum_a ((-D)^(a_1) (x) ... (x) 1) (x)_H c_a.
template <std::size_t N>
using CanonicalPseudo = std::map<HKey<N - 1>, PElement>;

template <std::size_t N>
CanonicalPseudo<N> canonicalize(const PseudoTensor<N>& t) {
    CanonicalPseudo<N> out;
    for (const auto& [key, p] : t.entries())
        for (const auto& [a, h] : decompose_monomial<N>(key)) {
            PElement hp = h * p;
            if (hp.is_zero()) continue;
            auto [it, inserted] = out.try_emplace(a, hp);
            if (!inserted) {
                it->second += hp;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    return out;
}

/// Writes a canonical form back as a raw tensor.
template <std::size_t N>
PseudoTensor<N> expand_canonical(const CanonicalPseudo<N>& c) {
    PseudoTensor<N> t;
    for (const auto& [a, p] : c) {
        HKey<N> key{};
        Scalar coeff(1);
        for (std::size_t i = 0; i + 1 < N; ++i) {
            key[i] = a[i];
            coeff *= sign_pow(a[i]) / factorial(a[i]);
        }
        t.add(key, p * coeff);
    }
    return t;
}

/// Image in H^{(x)N} (x) A, where the (x)_H relation is resolved by pushing the H-part of P
/// through Delta^[N]. Since P = H (x) A is free over H, this is a complete invariant.
template <std::size_t N>
std::map<std::pair<HKey<N>, Word>, Scalar> flatten(const PseudoTensor<N>& t) {
    std::map<std::pair<HKey<N>, Word>, Scalar> out;
    for (const auto& [key, p] : t.entries())
        for (const auto& [d, f] : p.parts()) {
            TensorH<N> moved = TensorH<N>::monomial(key) * comult_n<N>(HPoly::monomial(d));
            for (const auto& [k, c] : moved.terms())
                for (const auto& [w, x] : f.terms()) {
                    auto [it, inserted] = out.try_emplace({k, w}, c * x);
                    if (!inserted) {
                        it->second += c * x;
                        if (confalg::is_zero(it->second)) out.erase(it);
                    }
                }
        }
    return out;
}

enum class ProductKind { P8, P9, P10, P11, P20 };

inline const char* to_string(ProductKind k) {
    switch (k) {
        case ProductKind::P8: return "P8";
        case ProductKind::P9: return "P9";
        case ProductKind::P10: return "P10";
        case ProductKind::P11: return "P11";
        case ProductKind::P20: return "P20";
    }
    return "?";
}

/// Pseudoproducts on H (x) A, with Delta_A(a) = a_(1) (x) a_(2):
///   P8:  (h(x)a)*(g(x)b) = (h b_(1) (x) g) (x)_H (1 (x) a b_(2))
///   P9:  (h (x) g S(a_(1))) (x)_H (1 (x) a_(2) b)
///   P10: (h (x) g a_(1)) (x)_H (1 (x) a_(2) b)
///   P11: (h S(b_(1)) (x) g) (x)_H (1 (x) a b_(2))
///   P20: (h b_(1) (x) g a_(1)) (x)_H (1 (x) a_(2) b_(2)), commutative A only.
inline PseudoTensor<2> pprod(ProductKind kind, const ComoduleAlgebra& alg, const PElement& p, const PElement& q) {
    if (kind == ProductKind::P20 && alg.kind() != AlgebraKind::commutative)
        throw std::invalid_argument("pseudoproduct P20 requires a commutative algebra");
    PseudoTensor<2> out;
    for (const auto& [dp, f] : p.parts())
        for (const auto& [dq, g] : q.parts()) {
            switch (kind) {
                case ProductKind::P8:
                case ProductKind::P11:
                    for (const auto& [s, gs] : alg.coact(g)) {
                        Scalar c = Scalar(1) / factorial(s);
                        if (kind == ProductKind::P11) c *= sign_pow(s);
                        out.add({dp + s, dq}, PElement::make(alg.mul(f, gs) * c));
                    }
                    break;
                case ProductKind::P9:
                case ProductKind::P10:
                    for (const auto& [s, fs] : alg.coact(f)) {
                        Scalar c = Scalar(1) / factorial(s);
                        if (kind == ProductKind::P9) c *= sign_pow(s);
                        out.add({dp, dq + s}, PElement::make(alg.mul(fs, g) * c));
                    }
                    break;
                case ProductKind::P20: {
                    auto cf = alg.coact(f);
                    for (const auto& [s, gs] : alg.coact(g))
                        for (const auto& [r, fr] : cf) {
                            Scalar c = Scalar(1) / (factorial(s) * factorial(r));
                            out.add({dp + s, dq + r}, PElement::make(alg.mul(fr, gs) * c));
                        }
                    break;
                }
            }
        }
    return out;
}

/// The conformal n-product: coefficient of ((-D)^(n) (x) 1) in the canonical form of p*q.
inline PElement nth(ProductKind kind, const ComoduleAlgebra& alg, const PElement& p, Degree n, const PElement& q) {
    auto c = canonicalize(pprod(kind, alg, p, q));
    auto it = c.find({n});
    return it == c.end() ? PElement() : it->second;
}

/// (1(x)f) o_n (1(x)g) = (-1)^n (1 (x) f d^n g/dv^n) for P8 with the standard coaction.
inline PElement nth_closed(const ComoduleAlgebra& alg, const NCPoly& f, Degree n, const NCPoly& g) {
    return PElement::make(alg.mul(f, vderiv(g, n)) * sign_pow(n));
}

/// Expanded star: (F (x)_H p) * (G (x)_H q) = (F (x) G)(Delta^[N] (x) Delta^[M])(p * q).
template <std::size_t N, std::size_t M>
PseudoTensor<N + M> star(ProductKind kind, const ComoduleAlgebra& alg, const PseudoTensor<N>& x,
                         const PseudoTensor<M>& y) {
    PseudoTensor<N + M> out;
    for (const auto& [fk, p] : x.entries())
        for (const auto& [gk, q] : y.entries()) {
            const PseudoTensor<2> pq = pprod(kind, alg, p, q);
            for (const auto& [kl, r] : pq.entries()) {
                TensorH<N> left = TensorH<N>::monomial(fk) * comult_n<N>(HPoly::monomial(kl[0]));
                TensorH<M> right = TensorH<M>::monomial(gk) * comult_n<M>(HPoly::monomial(kl[1]));
                for (const auto& [lk, lc] : left.terms())
                    for (const auto& [rk, rc] : right.terms()) {
                        HKey<N + M> key{};
                        for (std::size_t i = 0; i < N; ++i) key[i] = lk[i];
                        for (std::size_t i = 0; i < M; ++i) key[N + i] = rk[i];
                        out.add(key, r * (lc * rc));
                    }
            }
        }
    return out;
}

/// X * y for X in H^{(x)2} (x)_H P.
inline PseudoTensor<3> star_expanded(ProductKind kind, const ComoduleAlgebra& alg, const PseudoTensor<2>& x,
                                     const PElement& y) {
    return star<2, 1>(kind, alg, x, as_tensor(y));
}

/// y * X for X in H^{(x)2} (x)_H P.
inline PseudoTensor<3> star_expanded(ProductKind kind, const ComoduleAlgebra& alg, const PElement& y,
                                     const PseudoTensor<2>& x) {
    return star<1, 2>(kind, alg, as_tensor(y), x);
}

/// (p*q)*r == p*(q*r) after canonicalization.
inline bool assoc_check(ProductKind kind, const ComoduleAlgebra& alg, const PElement& p, const PElement& q,
                        const PElement& r) {
    auto left = canonicalize(star_expanded(kind, alg, pprod(kind, alg, p, q), r));
    auto right = canonicalize(star_expanded(kind, alg, p, pprod(kind, alg, q, r)));
    return left == right;
}

template <std::size_t N>
PseudoTensor<N> permute_slots(const PseudoTensor<N>& t, const std::array<std::size_t, N>& perm) {
    PseudoTensor<N> out;
    for (const auto& [key, p] : t.entries()) {
        HKey<N> k{};
        for (std::size_t i = 0; i < N; ++i) k[perm[i]] = key[i];
        out.add(k, p);
    }
    return out;
}

/// [p*q] = p*q - (sigma_12 (x)_H id)(q*p), using P8.
inline PseudoTensor<2> pcommutator(const ComoduleAlgebra& alg, const PElement& p, const PElement& q) {
    return pprod(ProductKind::P8, alg, p, q) - permute_slots<2>(pprod(ProductKind::P8, alg, q, p), {1, 0});
}

inline PElement comm_nth(const ComoduleAlgebra& alg, const PElement& p, Degree n, const PElement& q) {
    auto c = canonicalize(pcommutator(alg, p, q));
    auto it = c.find({n});
    return it == c.end() ? PElement() : it->second;
}

/// Binary bracketing of variables; leaf labels are 0-based variable indices.
struct IdTree {
    std::size_t leaf = 0;
    std::vector<IdTree> children;

    static IdTree var(std::size_t i) { return IdTree{i, {}}; }
    static IdTree node(IdTree l, IdTree r) {
        IdTree t;
        t.children.push_back(std::move(l));
        t.children.push_back(std::move(r));
        return t;
    }
    bool is_leaf() const { return children.empty(); }

    void leaves(std::vector<std::size_t>& out) const {
        if (is_leaf()) {
            out.push_back(leaf);
            return;
        }
        for (const auto& c : children) c.leaves(out);
    }
};

/// coeff * (sigma (x)_H id) t*(a_{sigma(1)}, ..., a_{sigma(n)}).
struct IdentityTerm {
    std::vector<std::size_t> sigma;
    IdTree tree;
    Scalar coeff = Scalar(1);
};

namespace detail {

using AnyTensor = std::variant<PseudoTensor<1>, PseudoTensor<2>, PseudoTensor<3>>;

inline AnyTensor eval_tree(ProductKind kind, const ComoduleAlgebra& alg, const IdTree& t,
                           const std::vector<PElement>& leaf_values) {
    if (t.is_leaf()) return as_tensor(leaf_values.at(t.leaf));
    if (t.children.size() != 2) throw std::invalid_argument("identity tree nodes must be binary");
    AnyTensor l = eval_tree(kind, alg, t.children[0], leaf_values);
    AnyTensor r = eval_tree(kind, alg, t.children[1], leaf_values);
    return std::visit(
        [&](const auto& x, const auto& y) -> AnyTensor {
            constexpr std::size_t n = std::tuple_size_v<typename std::decay_t<decltype(x.entries())>::key_type>;
            constexpr std::size_t m = std::tuple_size_v<typename std::decay_t<decltype(y.entries())>::key_type>;
            if constexpr (n + m <= 3) {
                return star<n, m>(kind, alg, x, y);
            } else {
                throw std::invalid_argument("identity evaluator supports at most 3 variables");
            }
        },
        l, r);
}

}  // namespace detail

/// Evaluates sum_terms coeff * (sigma (x)_H id) t*_sigma(a_{sigma(1)}, ..., a_{sigma(n)}) canonically.
/// The leaf labelled i receives a_{sigma(i)} and its tensor slot is moved to position sigma(i).
template <std::size_t N>
CanonicalPseudo<N> eval_identity(const std::vector<IdentityTerm>& terms, ProductKind kind, const ComoduleAlgebra& alg,
                                 const std::vector<PElement>& args) {
    static_assert(N >= 1 && N <= 3, "identity evaluator supports 1 to 3 variables");
    if (args.size() != N) throw std::invalid_argument("identity arity does not match argument count");
    PseudoTensor<N> total;
    for (const auto& term : terms) {
        if (term.sigma.size() != N) throw std::invalid_argument("permutation has the wrong size");
        std::vector<std::size_t> check = term.sigma;
        std::sort(check.begin(), check.end());
        for (std::size_t i = 0; i < N; ++i)
            if (check[i] != i) throw std::invalid_argument("sigma is not a permutation");
        std::vector<std::size_t> leaves;
        term.tree.leaves(leaves);
        check = leaves;
        std::sort(check.begin(), check.end());
        if (check.size() != N) throw std::invalid_argument("identity tree has the wrong number of leaves");
        for (std::size_t i = 0; i < N; ++i)
            if (check[i] != i) throw std::invalid_argument("identity tree leaves must use each variable once");

        std::vector<PElement> values(N);
        for (std::size_t i = 0; i < N; ++i) values[i] = args[term.sigma[i]];
        auto value = std::get<PseudoTensor<N>>(detail::eval_tree(kind, alg, term.tree, values));
        std::array<std::size_t, N> slot_perm{};
        for (std::size_t pos = 0; pos < N; ++pos) slot_perm[pos] = term.sigma[leaves[pos]];
        total += permute_slots<N>(value, slot_perm) * term.coeff;
    }
    return canonicalize(total);
}

/// x1 x2 - x2 x1 with the slot swap; zero exactly on commutative pseudoalgebras.
inline std::vector<IdentityTerm> commutativity_identity() {
    auto t = IdTree::node(IdTree::var(0), IdTree::var(1));
    return {IdentityTerm{{0, 1}, t, Scalar(1)}, IdentityTerm{{1, 0}, t, Scalar(-1)}};
}

/// (x1 x2) x3 - x1 (x2 x3).
inline std::vector<IdentityTerm> associator_identity() {
    auto l = IdTree::node(IdTree::node(IdTree::var(0), IdTree::var(1)), IdTree::var(2));
    auto r = IdTree::node(IdTree::var(0), IdTree::node(IdTree::var(1), IdTree::var(2)));
    return {IdentityTerm{{0, 1, 2}, l, Scalar(1)}, IdentityTerm{{0, 1, 2}, r, Scalar(-1)}};
}

inline std::string format_pelement(const PElement& p, const AlgebraConfig& cfg) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, f] : p.parts()) {
        const std::string h = d == 0 ? "" : (d == 1 ? "D" : "D^" + std::to_string(d));
        std::string part;
        if (f.size() == 1) {
            const auto& [w, c] = *f.terms().begin();
            if (h.empty())
                part = to_short_string(c);
            else
                part = (c == 1 ? "" : c == -1 ? "-" : to_short_string(c) + " ") + h;
            part += " (x) " + format_word(w, cfg);
        } else {
            part = (h.empty() ? "1" : h) + " (x) (" + format_poly(f, cfg) + ")";
        }
        if (!first) out += " + ";
        first = false;
        out += part;
    }
    return out;
}

}  // namespace confalg
