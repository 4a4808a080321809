#pragma once

// The Hopf algebra H = k[D] and its tensor powers.
//
//   Delta(D) = D (x) 1 + 1 (x) D,   eps(D) = 0,   S(D) = -D,
//   Delta(f) = sum_s D^(s) (x) f^{(s)}   with D^(s) = D^s / s!.
//
// Every element of H^{(x)N} has a unique expansion
//   sum_a ((-D)^(a_1) (x) ... (x) (-D)^(a_{N-1}) (x) 1) Delta^[N](h_a),
// which is what turns pseudoproducts into conformal n-products.

#include "confalg/scalar.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace confalg {

using Degree = std::uint32_t;

/// Polynomial in D with rational coefficients. Zero coefficients are never stored.
class HPoly {
public:
    using Terms = std::map<Degree, Scalar>;

    HPoly() = default;
    explicit HPoly(Scalar c) { add_term(0, std::move(c)); }
    static HPoly monomial(Degree k, Scalar c = Scalar(1)) {
        HPoly p;
        p.add_term(k, std::move(c));
        return p;
    }
    /// (sign * D)^(k) = sign^k D^k / k!
    static HPoly divided_power(Degree k, int sign = 1) {
        Scalar c = Scalar(1) / factorial(k);
        if (sign < 0 && k % 2 == 1) c = -c;
        return monomial(k, c);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(Degree k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(0) : it->second;
    }
    Degree degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    void add_term(Degree k, const Scalar& c) {
        if (confalg::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (confalg::is_zero(it->second)) terms_.erase(it);
        }
    }

    HPoly& operator+=(const HPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    HPoly& operator-=(const HPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    HPoly& operator*=(const Scalar& s) {
        if (confalg::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
    friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
    friend HPoly operator*(HPoly a, const Scalar& s) { return a *= s; }
    friend HPoly operator*(const Scalar& s, HPoly a) { return a *= s; }
    friend HPoly operator-(HPoly a) { return a *= Scalar(-1); }
    friend HPoly operator*(const HPoly& a, const HPoly& b) {
        HPoly r;
        for (const auto& [i, x] : a.terms_)
            for (const auto& [j, y] : b.terms_) r.add_term(i + j, x * y);
        return r;
    }
    friend bool operator==(const HPoly& a, const HPoly& b) { return a.terms_ == b.terms_; }

    /// s-th derivative d^s/dD^s.
    HPoly derivative(Degree s) const {
        HPoly r;
        for (const auto& [k, c] : terms_)
            if (k >= s) r.add_term(k - s, c * falling(k, s));
        return r;
    }

private:
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const HPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.get_str() << ")";
        if (k > 0) os << "D^" << k;
    }
    return os;
}

/// Element of H^{(x)N}: sum of c * D^{k_1} (x) ... (x) D^{k_N}.
template <std::size_t N>
class TensorH {
public:
    using Key = std::array<Degree, N>;
    using Terms = std::map<Key, Scalar>;

    TensorH() = default;
    static TensorH monomial(const Key& k, Scalar c = Scalar(1)) {
        TensorH t;
        t.add_term(k, std::move(c));
        return t;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Key& k, const Scalar& c) {
        if (confalg::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (confalg::is_zero(it->second)) terms_.erase(it);
        }
    }

    TensorH& operator+=(const TensorH& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    TensorH& operator-=(const TensorH& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    TensorH& operator*=(const Scalar& s) {
        if (confalg::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    friend TensorH operator+(TensorH a, const TensorH& b) { return a += b; }
    friend TensorH operator-(TensorH a, const TensorH& b) { return a -= b; }
    friend TensorH operator*(TensorH a, const Scalar& s) { return a *= s; }
    /// Slotwise product in the algebra H^{(x)N}.
    friend TensorH operator*(const TensorH& a, const TensorH& b) {
        TensorH r;
        for (const auto& [ka, x] : a.terms_)
            for (const auto& [kb, y] : b.terms_) {
                Key k;
                for (std::size_t i = 0; i < N; ++i) k[i] = ka[i] + kb[i];
                r.add_term(k, x * y);
            }
        return r;
    }
    friend bool operator==(const TensorH& a, const TensorH& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

using TensorHH = TensorH<2>;

/// Pure tensor h_1 (x) ... (x) h_N.
template <std::size_t N>
TensorH<N> tensor_of(const std::array<HPoly, N>& factors) {
    TensorH<N> r;
    std::function<void(std::size_t, typename TensorH<N>::Key&, const Scalar&)> rec =
        [&](std::size_t slot, typename TensorH<N>::Key& key, const Scalar& c) {
            if (slot == N) {
                r.add_term(key, c);
                return;
            }
            for (const auto& [k, x] : factors[slot].terms()) {
                key[slot] = k;
                rec(slot + 1, key, c * x);
            }
        };
    typename TensorH<N>::Key key{};
    rec(0, key, Scalar(1));
    return r;
}

namespace detail {

/// Calls fn(parts) for every composition of total into parts.size() nonnegative parts.
template <std::size_t M, typename Fn>
void for_each_composition(Degree total, Fn&& fn) {
    std::array<Degree, M> parts{};
    std::function<void(std::size_t, Degree)> rec = [&](std::size_t i, Degree rest) {
        if (i + 1 == M) {
            parts[i] = rest;
            fn(parts);
            return;
        }
        for (Degree k = 0; k <= rest; ++k) {
            parts[i] = k;
            rec(i + 1, rest - k);
        }
    };
    if constexpr (M == 0) {
        if (total == 0) fn(parts);
    } else {
        rec(0, total);
    }
}

template <std::size_t M>
Scalar multinomial(Degree total, const std::array<Degree, M>& parts) {
    Scalar r = factorial(total);
    for (Degree p : parts) r /= factorial(p);
    return r;
}

}  // namespace detail

/// Iterated coproduct Delta^[N]: D^k -> sum over k_1+...+k_N = k of k!/(k_1!...k_N!) D^{k_1} (x) ... (x) D^{k_N}.
template <std::size_t N>
TensorH<N> comult_n(const HPoly& h) {
    static_assert(N >= 1);
    TensorH<N> r;
    for (const auto& [k, c] : h.terms())
        detail::for_each_composition<N>(k, [&](const std::array<Degree, N>& parts) {
            r.add_term(parts, c * detail::multinomial<N>(k, parts));
        });
    return r;
}

inline TensorHH comult(const HPoly& h) { return comult_n<2>(h); }

/// h(D) -> h(-D)
inline HPoly antipode(const HPoly& h) {
    HPoly r;
    for (const auto& [k, c] : h.terms()) r.add_term(k, k % 2 == 0 ? c : Scalar(-c));
    return r;
}

inline Scalar counit(const HPoly& h) { return h.coeff(0); }

/// Applies Delta to tensor slot `slot`, producing N+1 slots.
template <std::size_t N>
TensorH<N + 1> comult_at(const TensorH<N>& t, std::size_t slot) {
    TensorH<N + 1> r;
    for (const auto& [key, c] : t.terms())
        for (Degree left = 0; left <= key[slot]; ++left) {
            typename TensorH<N + 1>::Key k{};
            for (std::size_t i = 0, j = 0; i < N; ++i, ++j) {
                if (i == slot) {
                    k[j] = left;
                    k[++j] = key[i] - left;
                } else {
                    k[j] = key[i];
                }
            }
            r.add_term(k, c * binomial(key[slot], left));
        }
    return r;
}

/// Applies eps to tensor slot `slot`, producing N-1 slots.
template <std::size_t N>
TensorH<N - 1> counit_at(const TensorH<N>& t, std::size_t slot) {
    TensorH<N - 1> r;
    for (const auto& [key, c] : t.terms()) {
        if (key[slot] != 0) continue;
        typename TensorH<N - 1>::Key k{};
        for (std::size_t i = 0, j = 0; i < N; ++i)
            if (i != slot) k[j++] = key[i];
        r.add_term(k, c);
    }
    return r;
}

template <std::size_t N>
TensorH<N> antipode_at(const TensorH<N>& t, std::size_t slot) {
    TensorH<N> r;
    for (const auto& [key, c] : t.terms()) r.add_term(key, key[slot] % 2 == 0 ? c : Scalar(-c));
    return r;
}

/// Multiplication H (x) H -> H.
inline HPoly multiply(const TensorHH& t) {
    HPoly r;
    for (const auto& [key, c] : t.terms()) r.add_term(key[0] + key[1], c);
    return r;
}

/// Applies the slot permutation: input slot i lands in output slot perm[i].
template <std::size_t N>
TensorH<N> permute_slots(const TensorH<N>& t, const std::array<std::size_t, N>& perm) {
    TensorH<N> r;
    for (const auto& [key, c] : t.terms()) {
        typename TensorH<N>::Key k{};
        for (std::size_t i = 0; i < N; ++i) k[perm[i]] = key[i];
        r.add_term(k, c);
    }
    return r;
}

/// The family {h_a} indexed by a in N^{N-1} in the canonical expansion of an element of H^{(x)N}.
template <std::size_t N>
using Decomposition = std::map<std::array<Degree, N - 1>, HPoly>;

/// Canonical expansion of the monomial D^{k_1} (x) ... (x) D^{k_N}.
///
/// With x_i = D in slot i and z = Delta^[N](D) = x_1 + ... + x_N, the monomial equals
/// x_1^{k_1} ... x_{N-1}^{k_{N-1}} (z - x_1 - ... - x_{N-1})^{k_N}. Since x_1..x_{N-1}, z generate
/// H^{(x)N} freely, expanding and rewriting x_i^a = (-1)^a a! (-D)^(a) reads off h_a directly.
template <std::size_t N>
Decomposition<N> decompose_monomial(const std::array<Degree, N>& key) {
    static_assert(N >= 1);
    Decomposition<N> out;
    const Degree last = key[N - 1];
    detail::for_each_composition<N>(last, [&](const std::array<Degree, N>& parts) {
        // parts[0..N-2] are the powers c_i of (-x_i); parts[N-1] is the power m of z.
        const Degree m = parts[N - 1];
        Scalar c = detail::multinomial<N>(last, parts);
        std::array<Degree, N - 1> a{};
        for (std::size_t i = 0; i + 1 < N; ++i) {
            a[i] = key[i] + parts[i];
            if (parts[i] % 2 == 1) c = -c;
            c *= sign_pow(a[i]) * factorial(a[i]);
        }
        auto [it, inserted] = out.try_emplace(a);
        it->second.add_term(m, c);
        if (it->second.is_zero()) out.erase(it);
    });
    return out;
}

template <std::size_t N>
Decomposition<N> decompose(const TensorH<N>& t) {
    Decomposition<N> out;
    for (const auto& [key, c] : t.terms())
        for (auto& [a, h] : decompose_monomial<N>(key)) {
            auto [it, inserted] = out.try_emplace(a);
            it->second += h * c;
            if (it->second.is_zero()) out.erase(it);
        }
    return out;
}

/// Re-expands sum_a ((-D)^(a_1) (x) ... (x) 1) Delta^[N](h_a) through comult_n and tensor products.
template <std::size_t N>
TensorH<N> expand(const Decomposition<N>& d) {
    TensorH<N> r;
    for (const auto& [a, h] : d) {
        std::array<HPoly, N> factors;
        for (std::size_t i = 0; i + 1 < N; ++i) factors[i] = HPoly::divided_power(a[i], -1);
        factors[N - 1] = HPoly(Scalar(1));
        r += tensor_of<N>(factors) * comult_n<N>(h);
    }
    return r;
}

}  // namespace confalg
