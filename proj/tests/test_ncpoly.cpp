#include "confalg/ncpoly.hpp"
#include "confalg/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace confalg;

namespace {

const AlgebraConfig cfg({"a", "b", "c"}, {1, 2, 1});
const Letter a = cfg.gen(0), b = cfg.gen(1), c = cfg.gen(2), v = Letter::v();

NCPoly P(const std::string& text, Scalar coeff = Scalar(1)) { return NCPoly::monomial(parse_word(text, cfg), coeff); }

// d^m f / dv^m by brute force: m! times the sum over m-element subsets of v positions removed.
NCPoly vderiv_by_subsets(const NCPoly& f, unsigned m) {
    NCPoly out;
    for (const auto& [w, coeff] : f.terms()) {
        std::vector<std::size_t> vpos;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i].is_v()) vpos.push_back(i);
        const std::size_t k = vpos.size();
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            if (static_cast<unsigned>(__builtin_popcount(mask)) != m) continue;
            Word d;
            for (std::size_t i = 0, j = 0; i < w.size(); ++i) {
                if (j < k && vpos[j] == i) {
                    if (mask & (1u << j++)) continue;
                }
                d.push_back(w[i]);
            }
            out.add_term(d, coeff * factorial(m));
        }
    }
    return out;
}

}  // namespace

TEST(Mul, Examples) {
    EXPECT_EQ(mul(P("a"), P("b")), P("ab"));
    EXPECT_EQ(mul(P("a") + P("v"), P("a")), P("aa") + P("va"));
    EXPECT_TRUE(mul(NCPoly(), P("abv")).is_zero());
}

TEST(DegLex, Examples) {
    EXPECT_TRUE(deglex_cmp(parse_word("ab", cfg), parse_word("abc", cfg)) < 0);
    EXPECT_TRUE(deglex_cmp({a}, {v}) < 0);
    EXPECT_TRUE(deglex_cmp(parse_word("av", cfg), parse_word("va", cfg)) < 0);
    EXPECT_TRUE(deglex_cmp(parse_word("cab", cfg), parse_word("cab", cfg)) == 0);
}

TEST(DegLex, DeclaredOrderDecides) {
    AlgebraConfig reversed({"b", "a"}, {1, 1});
    EXPECT_TRUE(deglex_cmp(parse_word("ba", reversed), parse_word("ab", reversed)) < 0);
}

TEST(Monomials, LowestAndPrincipal) {
    EXPECT_EQ(lowest_monomial(P("ab") + P("av")), std::make_pair(parse_word("ab", cfg), Scalar(1)));
    EXPECT_EQ(lowest_monomial(P("a", 3)), std::make_pair(parse_word("a", cfg), Scalar(3)));
    EXPECT_EQ(lowest_monomial(P("ab") - P("abc")), std::make_pair(parse_word("ab", cfg), Scalar(1)));
    EXPECT_EQ(principal_monomial(P("ab") + P("av")), std::make_pair(parse_word("av", cfg), Scalar(1)));
    EXPECT_EQ(principal_monomial(P("a", 3)), std::make_pair(parse_word("a", cfg), Scalar(3)));
    EXPECT_EQ(principal_monomial(P("ab") - P("abc")), std::make_pair(parse_word("abc", cfg), Scalar(-1)));
    EXPECT_THROW(lowest_monomial(NCPoly()), std::domain_error);
    EXPECT_THROW(principal_monomial(NCPoly()), std::domain_error);
}

TEST(VDeriv, Examples) {
    EXPECT_EQ(vderiv(P("vb"), 1), P("b"));
    EXPECT_EQ(vderiv(P("vav"), 1), P("av") + P("va"));
    EXPECT_TRUE(vderiv(P("a"), 1).is_zero());
    EXPECT_EQ(vderiv(P("vva"), 2), P("a", 2));
    EXPECT_EQ(vderiv(P("vb"), 0), P("vb"));
}

TEST(VDeriv, MatchesSubsetDeletion) {
    RandomSource rs(3, RandomBounds{3, 6, 3, 5});
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 100; ++i) {
        NCPoly f = rs.ncpoly(alphabet);
        for (unsigned m = 0; m <= 4; ++m) EXPECT_EQ(vderiv(f, m), vderiv_by_subsets(f, m));
        EXPECT_EQ(vderiv(vderiv(f, 1), 1), vderiv(f, 2));
    }
}

TEST(VDeriv, Homogeneity) {
    RandomSource rs(4);
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 50; ++i) {
        const Word w = rs.word(alphabet, 1);
        NCPoly f;
        for (int j = 0; j < 3; ++j) {
            Word u = rs.word(alphabet, w.size());
            u.resize(w.size(), v);
            f.add_term(u, rs.coefficient());
        }
        for (Degree m = 0; m <= 3; ++m) {
            const NCPoly d = vderiv(f, m);
            for (const auto& [u, x] : d.terms()) EXPECT_EQ(u.size() + m, w.size());
        }
    }
}

TEST(Coact, Examples) {
    EXPECT_EQ(coact(P("a")), (Coaction{{0, P("a")}}));
    EXPECT_EQ(coact(P("v")), (Coaction{{0, P("v")}, {1, NCPoly::one()}}));
    EXPECT_EQ(coact(P("va")), (Coaction{{0, P("va")}, {1, P("a")}}));
}

TEST(Coact, MultiplicativeAndCounital) {
    // The coaction determined by the generator images, extended multiplicatively with
    // D^(s1) D^(s2) = C(s1+s2, s1) D^(s1+s2), agrees with the v-derivative formula.
    std::map<Letter, Coaction> images{{v, Coaction{{0, P("v")}, {1, NCPoly::one()}}}};
    const auto by_images = ComoduleAlgebra::from_letter_images(AlgebraKind::noncommutative, images);
    const auto standard = ComoduleAlgebra::standard();
    RandomSource rs(99);
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 100; ++i) {
        NCPoly f = rs.ncpoly(alphabet), g = rs.ncpoly(alphabet);
        NCPoly fg = mul(f, g);
        EXPECT_EQ(by_images.coact(fg), coact(fg));
        EXPECT_EQ(standard.coact(fg), coact(fg));
        EXPECT_EQ(coact(fg).at(0), fg);
        Coaction conv;
        for (const auto& [s1, f1] : coact(f))
            for (const auto& [s2, g2] : coact(g)) add_to(conv, s1 + s2, mul(f1, g2) * binomial(s1 + s2, s1));
        EXPECT_EQ(conv, coact(fg));
    }
}

TEST(DegLex, TotalOrder) {
    RandomSource rs(1000);
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 1000; ++i) {
        Word x = rs.word(alphabet), y = rs.word(alphabet), z = rs.word(alphabet);
        auto xy = deglex_cmp(x, y), yx = deglex_cmp(y, x);
        EXPECT_EQ(xy < 0, yx > 0);
        EXPECT_EQ(xy == 0, x == y);
        if (deglex_cmp(x, y) <= 0 && deglex_cmp(y, z) <= 0) {
            EXPECT_TRUE(deglex_cmp(x, z) <= 0);
        }
    }
}

TEST(DegLex, MonotoneUnderMultiplication) {
    RandomSource rs(6, RandomBounds{3, 6, 3, 5});
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 500; ++i) {
        Word u1 = rs.word(alphabet), u2 = rs.word(alphabet), u3 = rs.word(alphabet);
        if (deglex_cmp(u1, u2) == 0) continue;
        if (deglex_cmp(u1, u2) > 0) std::swap(u1, u2);
        Word l1 = u3, l2 = u3, r1 = u1, r2 = u2;
        l1.insert(l1.end(), u1.begin(), u1.end());
        l2.insert(l2.end(), u2.begin(), u2.end());
        r1.insert(r1.end(), u3.begin(), u3.end());
        r2.insert(r2.end(), u3.begin(), u3.end());
        EXPECT_TRUE(deglex_cmp(l1, l2) < 0);
        EXPECT_TRUE(deglex_cmp(r1, r2) < 0);
    }
}

// Deleting a v from the first run of v's followed by a generator gives the lowest word;
// with no such run, the trailing run is used.
Word lowest_derivative_word(const Word& w) {
    std::size_t trailing = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].is_v()) continue;
        std::size_t j = i;
        while (j < w.size() && w[j].is_v()) ++j;
        if (j < w.size()) {
            Word out = w;
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
            return out;
        }
        trailing = i;
        break;
    }
    Word out = w;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(trailing));
    return out;
}

TEST(VDeriv, LowestMonomialClosedForm) {
    RandomSource rs(12, RandomBounds{3, 6, 3, 5});
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 1000; ++i) {
        const Word u = rs.word(alphabet, 1);
        if (v_degree(u) == 0) {
            EXPECT_TRUE(vderiv(NCPoly::monomial(u), 1).is_zero());
            continue;
        }
        const auto [hat, coeff] = lowest_monomial(vderiv(NCPoly::monomial(u), 1));
        EXPECT_EQ(hat, lowest_derivative_word(u));
        EXPECT_GE(coeff, 1);
    }
}

// Word order is not preserved by taking the lowest monomial of the v-derivative.
TEST(VDeriv, LowestMonomialOrderCounterexample) {
    const Word u1 = parse_word("avvb", cfg), u2 = parse_word("vabv", cfg);
    ASSERT_TRUE(deglex_cmp(u1, u2) < 0);
    const Word h1 = lowest_monomial(vderiv(NCPoly::monomial(u1), 1)).first;
    const Word h2 = lowest_monomial(vderiv(NCPoly::monomial(u2), 1)).first;
    EXPECT_EQ(h1, parse_word("avb", cfg));
    EXPECT_EQ(h2, parse_word("abv", cfg));
    EXPECT_TRUE(deglex_cmp(h1, h2) > 0);
}

// Within one v-run pattern the order does survive: words differing only in the
// generator letters compare like their derivatives' lowest monomials.
TEST(VDeriv, LowestMonomialOrderForFixedVPattern) {
    RandomSource rs(21, RandomBounds{3, 6, 3, 5});
    const auto alphabet = alphabet_of(cfg);
    const std::vector<Letter> gens{a, b, c};
    for (int i = 0; i < 1000; ++i) {
        Word u1 = rs.word(alphabet, 1);
        if (v_degree(u1) == 0) continue;
        Word u2 = u1;
        for (auto& l : u2)
            if (!l.is_v()) l = gens[rs.uniform(0, 2)];
        if (deglex_cmp(u1, u2) > 0) std::swap(u1, u2);
        const Word h1 = lowest_monomial(vderiv(NCPoly::monomial(u1), 1)).first;
        const Word h2 = lowest_monomial(vderiv(NCPoly::monomial(u2), 1)).first;
        EXPECT_TRUE(deglex_cmp(h1, h2) <= 0);
    }
}

TEST(AlgebraConfig, Validation) {
    EXPECT_THROW(AlgebraConfig({"a", "a"}, {1, 1}), std::invalid_argument);
    EXPECT_THROW(AlgebraConfig({"v"}, {1}), std::invalid_argument);
    EXPECT_THROW(AlgebraConfig({"D"}, {1}), std::invalid_argument);
    EXPECT_THROW(AlgebraConfig({"a"}, {0}), std::invalid_argument);
    EXPECT_THROW(AlgebraConfig({"a"}, {1, 2}), std::invalid_argument);
    EXPECT_THROW(AlgebraConfig({"1x"}, {1}), std::invalid_argument);
    EXPECT_EQ(cfg.locality_sum(), 4u);
    EXPECT_EQ(cfg.find("v"), Letter::v());
    EXPECT_FALSE(cfg.find("z").has_value());
}

TEST(CommutativeKind, SortsWords) {
    const auto alg = ComoduleAlgebra::standard(AlgebraKind::commutative);
    EXPECT_EQ(alg.mul(P("vb"), P("a")), P("abv"));
    EXPECT_EQ(alg.mul(P("b"), P("a")), alg.mul(P("a"), P("b")));
}

TEST(Words, ParseAndFormat) {
    AlgebraConfig long_names({"x1", "y"}, {1, 1});
    EXPECT_EQ(parse_word("x1 v y", long_names), (Word{long_names.gen(0), v, long_names.gen(1)}));
    EXPECT_EQ(format_word(parse_word("x1 v y", long_names), long_names), "x1 v y");
    EXPECT_EQ(format_word({}, cfg), "1");
    EXPECT_EQ(format_poly(P("ab", make_scalar(-2, 3)) + P("v"), cfg), "v - 2/3*ab");
    EXPECT_THROW(parse_word("az", cfg), std::invalid_argument);
}
