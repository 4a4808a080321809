#pragma once

// Seeded generators for property checks. Default bounds: D-degree <= 3, word length <= 4.

#include "confalg/freeconf.hpp"
#include "confalg/hopf.hpp"
#include "confalg/ncpoly.hpp"
#include "confalg/pseudo.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace confalg {

struct RandomBounds {
    Degree max_d_degree = 3;
    std::size_t max_word_length = 4;
    std::size_t max_terms = 3;
    int max_coeff = 5;
};

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed, RandomBounds bounds = {}) : rng_(seed), bounds_(bounds) {}

    const RandomBounds& bounds() const { return bounds_; }
    std::mt19937_64& engine() { return rng_; }

    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
    }

    /// Nonzero rational with small numerator and denominator.
    Scalar coefficient() {
        const auto m = static_cast<long>(bounds_.max_coeff);
        long num = 0;
        while (num == 0) num = std::uniform_int_distribution<long>(-m, m)(rng_);
        const long den = std::uniform_int_distribution<long>(1, 3)(rng_);
        return make_scalar(num, den);
    }

    HPoly hpoly(Degree max_degree) {
        HPoly h;
        for (Degree k = 0; k <= max_degree; ++k)
            if (uniform(0, 2) != 0) h.add_term(k, coefficient());
        return h;
    }

    template <std::size_t N>
    TensorH<N> tensor(Degree max_degree, std::size_t terms = 4) {
        TensorH<N> t;
        for (std::size_t i = 0; i < terms; ++i) {
            std::array<Degree, N> k{};
            for (auto& d : k) d = static_cast<Degree>(uniform(0, max_degree));
            t.add_term(k, coefficient());
        }
        return t;
    }

    /// Word over `alphabet`, length in [min_length, max_word_length].
    Word word(const std::vector<Letter>& alphabet, std::size_t min_length = 0) {
        Word w(uniform(min_length, std::max(min_length, bounds_.max_word_length)));
        for (auto& l : w) l = alphabet[uniform(0, alphabet.size() - 1)];
        return w;
    }

    NCPoly ncpoly(const std::vector<Letter>& alphabet) {
        NCPoly f;
        const auto terms = uniform(1, bounds_.max_terms);
        for (std::size_t i = 0; i < terms; ++i) f.add_term(word(alphabet), coefficient());
        if (f.is_zero()) f.add_term(word(alphabet, 1), Scalar(1));
        return f;
    }

    PElement pelement(const std::vector<Letter>& alphabet) {
        PElement p;
        const auto terms = uniform(1, 2);
        for (std::size_t i = 0; i < terms; ++i)
            p.add(static_cast<Degree>(uniform(0, bounds_.max_d_degree)), ncpoly(alphabet));
        if (p.is_zero()) p.add(0, NCPoly::monomial(word(alphabet, 1)));
        return p;
    }

    /// Uniform normal word with at most max_letters letters and s <= max_s.
    NormalWord normal_word(const AlgebraConfig& cfg, std::size_t max_letters, Degree max_s) {
        NormalWord u;
        u.s = static_cast<Degree>(uniform(0, max_s));
        const auto letters = uniform(1, max_letters);
        for (std::size_t i = 0; i < letters; ++i) {
            const Letter a = cfg.gen(uniform(0, cfg.size() - 1));
            if (i > 0) u.indices.push_back(static_cast<Degree>(uniform(0, cfg.locality(a) - 1)));
            u.gens.push_back(a);
        }
        return u;
    }

    ConfElement conf_element(const AlgebraConfig& cfg, std::size_t max_letters, Degree max_s, std::size_t max_terms = 3) {
        ConfElement x;
        const auto terms = uniform(1, max_terms);
        for (std::size_t i = 0; i < terms; ++i) x.add(normal_word(cfg, max_letters, max_s), coefficient());
        if (x.is_zero()) x.add(normal_word(cfg, max_letters, max_s), Scalar(1));
        return x;
    }

private:
    std::mt19937_64 rng_;
    RandomBounds bounds_;
};

/// Generators of cfg followed by v.
inline std::vector<Letter> alphabet_of(const AlgebraConfig& cfg) {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < cfg.size(); ++i) out.push_back(cfg.gen(i));
    out.push_back(Letter::v());
    return out;
}

}  // namespace confalg
