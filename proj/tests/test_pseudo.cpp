#include "confalg/pseudo.hpp"
#include "confalg/random.hpp"

#include <gtest/gtest.h>

using namespace confalg;

namespace {

const AlgebraConfig cfg({"a", "b", "c"}, {1, 2, 1});
const auto standard = ComoduleAlgebra::standard();
const auto trivial = ComoduleAlgebra::trivial();
const auto commutative = ComoduleAlgebra::standard(AlgebraKind::commutative);

PElement E(const std::string& w, Degree d = 0, Scalar c = Scalar(1)) {
    return PElement::make(NCPoly::monomial(parse_word(w, cfg), c), d);
}

template <std::size_t N>
PseudoTensor<N> single(const HKey<N>& key, const PElement& p) {
    PseudoTensor<N> t;
    t.add(key, p);
    return t;
}

template <std::size_t N>
PseudoTensor<N> random_tensor(RandomSource& rs) {
    const auto alphabet = alphabet_of(cfg);
    PseudoTensor<N> t;
    const auto terms = rs.uniform(1, 3);
    for (std::size_t i = 0; i < terms; ++i) {
        HKey<N> key{};
        for (auto& k : key) k = static_cast<Degree>(rs.uniform(0, 3));
        t.add(key, rs.pelement(alphabet));
    }
    return t;
}

constexpr ProductKind noncommutative_kinds[] = {ProductKind::P8, ProductKind::P9, ProductKind::P10, ProductKind::P11};
constexpr ProductKind all_kinds[] = {ProductKind::P8, ProductKind::P9, ProductKind::P10, ProductKind::P11,
                                     ProductKind::P20};

}  // namespace

TEST(PProd, Examples) {
    EXPECT_EQ(pprod(ProductKind::P8, trivial, E("a"), E("b")), single<2>({0, 0}, E("ab")));
    EXPECT_EQ(pprod(ProductKind::P8, standard, E("a"), E("v")), single<2>({0, 0}, E("av")) + single<2>({1, 0}, E("a")));
    EXPECT_EQ(pprod(ProductKind::P8, trivial, E("a", 1), E("b")), single<2>({1, 0}, E("ab")));
    EXPECT_TRUE(pprod(ProductKind::P8, standard, PElement(), E("v")).is_zero());
}

TEST(PProd, P20NeedsCommutativeAlgebra) {
    EXPECT_THROW(pprod(ProductKind::P20, standard, E("a"), E("b")), std::invalid_argument);
    EXPECT_NO_THROW(pprod(ProductKind::P20, commutative, E("a"), E("b")));
}

TEST(PProd, HBilinear) {
    RandomSource rs(5);
    const auto alphabet = alphabet_of(cfg);
    for (ProductKind kind : noncommutative_kinds)
        for (int i = 0; i < 20; ++i) {
            PElement p = rs.pelement(alphabet), q = rs.pelement(alphabet);
            PseudoTensor<2> shifted_left, shifted_right;
            const PseudoTensor<2> base = pprod(kind, standard, p, q);
            for (const auto& [k, r] : base.entries()) {
                shifted_left.add({k[0] + 1, k[1]}, r);
                shifted_right.add({k[0], k[1] + 1}, r);
            }
            EXPECT_EQ(pprod(kind, standard, apply_D(p), q), shifted_left);
            EXPECT_EQ(pprod(kind, standard, p, apply_D(q)), shifted_right);
        }
}

TEST(Canonicalize, Examples) {
    const PElement p = E("av") + E("b", 2);
    EXPECT_EQ(canonicalize(single<2>({0, 0}, p)), (CanonicalPseudo<2>{{{0}, p}}));
    EXPECT_EQ(canonicalize(single<2>({0, 1}, p)), (CanonicalPseudo<2>{{{0}, apply_D(p)}, {{1}, p}}));
    EXPECT_EQ(canonicalize(single<2>({1, 0}, p)), (CanonicalPseudo<2>{{{1}, -p}}));
}

TEST(Canonicalize, RoundTrip) {
    RandomSource rs(200);
    for (int i = 0; i < 200; ++i) {
        const auto t2 = random_tensor<2>(rs);
        const auto c2 = canonicalize(t2);
        EXPECT_EQ(flatten(expand_canonical<2>(c2)), flatten(t2));
        EXPECT_EQ(canonicalize(expand_canonical<2>(c2)), c2);
        const auto t3 = random_tensor<3>(rs);
        const auto c3 = canonicalize(t3);
        EXPECT_EQ(flatten(expand_canonical<3>(c3)), flatten(t3));
        EXPECT_EQ(canonicalize(expand_canonical<3>(c3)), c3);
    }
}

TEST(Canonicalize, SeparatesInequivalentTensors) {
    // Equal canonical forms exactly when the flattened images agree.
    RandomSource rs(201);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_tensor<2>(rs), y = random_tensor<2>(rs);
        EXPECT_EQ(canonicalize(x) == canonicalize(y), flatten(x) == flatten(y));
        EXPECT_TRUE(canonicalize(x - x).empty());
    }
}

TEST(Nth, Examples) {
    EXPECT_EQ(nth(ProductKind::P8, standard, E("a"), 0, E("vb")), E("avb"));
    EXPECT_EQ(nth(ProductKind::P8, standard, E("a"), 1, E("vb")), -E("ab"));
    EXPECT_TRUE(nth(ProductKind::P8, trivial, E("a"), 1, E("b")).is_zero());
}

TEST(Nth, ClosedFormMatchesPipeline) {
    RandomSource rs(16);
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 200; ++i) {
        const NCPoly f = rs.ncpoly(alphabet), g = rs.ncpoly(alphabet);
        for (Degree n = 0; n <= 4; ++n)
            EXPECT_EQ(nth(ProductKind::P8, standard, PElement::make(f), n, PElement::make(g)),
                      nth_closed(standard, f, n, g));
    }
}

TEST(Nth, ProductIsRebuiltFromCoefficients) {
    // a*b = sum_n ((-D)^(n) (x) 1) (x)_H (a o_n b), the right side built from nth alone.
    RandomSource rs(17);
    const auto alphabet = alphabet_of(cfg);
    for (ProductKind kind : noncommutative_kinds)
        for (int i = 0; i < 30; ++i) {
            const PElement p = rs.pelement(alphabet), q = rs.pelement(alphabet);
            const PseudoTensor<2> direct = pprod(kind, standard, p, q);
            CanonicalPseudo<2> coeffs;
            for (Degree n = 0; n <= 12; ++n) {
                PElement c = nth(kind, standard, p, n, q);
                if (!c.is_zero()) coeffs[{n}] = c;
            }
            EXPECT_EQ(flatten(expand_canonical<2>(coeffs)), flatten(direct));
        }
}

TEST(Nth, Locality) {
    RandomSource rs(18);
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 100; ++i) {
        const NCPoly f = rs.ncpoly(alphabet), g = rs.ncpoly(alphabet);
        // D-free arguments: bounded by 1 + v-degree of the right factor.
        const Degree bound = static_cast<Degree>(1 + v_degree(g));
        for (Degree n = bound; n <= bound + 10; ++n)
            EXPECT_TRUE(nth(ProductKind::P8, standard, PElement::make(f), n, PElement::make(g)).is_zero());
        // With D-parts, the D-degrees of both sides add to the bound.
        const PElement p = rs.pelement(alphabet), q = rs.pelement(alphabet);
        Degree vq = 0;
        for (const auto& [d, h] : q.parts()) vq = std::max<Degree>(vq, static_cast<Degree>(v_degree(h)));
        const Degree general = 1 + vq + p.max_d_degree() + q.max_d_degree();
        for (Degree n = general; n <= general + 10; ++n)
            EXPECT_TRUE(nth(ProductKind::P8, standard, p, n, q).is_zero());
    }
}

TEST(Nth, Sesquilinearity) {
    RandomSource rs(19);
    const auto alphabet = alphabet_of(cfg);
    for (ProductKind kind : noncommutative_kinds)
        for (int i = 0; i < 25; ++i) {
            const PElement p = rs.pelement(alphabet), q = rs.pelement(alphabet);
            for (Degree n = 0; n <= 6; ++n) {
                const PElement prev = n == 0 ? PElement() : nth(kind, standard, p, n - 1, q);
                EXPECT_EQ(nth(kind, standard, apply_D(p), n, q), prev * Scalar(-static_cast<long>(n)));
                EXPECT_EQ(nth(kind, standard, p, n, apply_D(q)),
                          apply_D(nth(kind, standard, p, n, q)) + prev * Scalar(static_cast<long>(n)));
            }
        }
}

TEST(Star, CurrentExample) {
    const auto left = star_expanded(ProductKind::P8, trivial, pprod(ProductKind::P8, trivial, E("a"), E("b")), E("c"));
    EXPECT_EQ(canonicalize(left), (CanonicalPseudo<3>{{{0, 0}, E("abc")}}));
    const auto right = star_expanded(ProductKind::P8, trivial, E("a"), pprod(ProductKind::P8, trivial, E("b"), E("c")));
    EXPECT_EQ(canonicalize(right), canonicalize(left));
    EXPECT_TRUE(star_expanded(ProductKind::P8, standard, PElement(), pprod(ProductKind::P8, standard, E("b"), E("c")))
                    .is_zero());
}

TEST(Star, AssociativeFormOfThreeFactors) {
    // Both association orders of (1(x)a)(1(x)b)(1(x)c) under P9 equal
    // (1 (x) S(a_(1)) (x) S(b_(1))S(a_(2))) (x)_H (1 (x) a_(3) b_(2) c), summed directly from the coactions.
    RandomSource rs(20);
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 40; ++i) {
        const NCPoly a = rs.ncpoly(alphabet), b = rs.ncpoly(alphabet), c = rs.ncpoly(alphabet);
        PseudoTensor<3> expected;
        for (Degree s = 0; s <= v_degree(a); ++s)
            for (Degree r = 0; s + r <= v_degree(a); ++r)
                for (Degree t = 0; t <= v_degree(b); ++t) {
                    const Scalar coeff = sign_pow(s + t + r) / (factorial(s) * factorial(t) * factorial(r));
                    const NCPoly elem = mul(mul(vderiv(a, s + r), vderiv(b, t)), c) * coeff;
                    if (!elem.is_zero()) expected.add({0, s, t + r}, PElement::make(elem));
                }
        const PElement pa = PElement::make(a), pb = PElement::make(b), pc = PElement::make(c);
        const auto left = star_expanded(ProductKind::P9, standard, pprod(ProductKind::P9, standard, pa, pb), pc);
        const auto right = star_expanded(ProductKind::P9, standard, pa, pprod(ProductKind::P9, standard, pb, pc));
        EXPECT_EQ(canonicalize(left), canonicalize(expected));
        EXPECT_EQ(canonicalize(right), canonicalize(expected));
    }
}

TEST(Assoc, AllKinds) {
    RandomSource rs(21);
    const auto alphabet = alphabet_of(cfg);
    for (ProductKind kind : noncommutative_kinds)
        for (int i = 0; i < 25; ++i)
            EXPECT_TRUE(assoc_check(kind, standard, rs.pelement(alphabet), rs.pelement(alphabet), rs.pelement(alphabet)))
                << to_string(kind);
    for (ProductKind kind : all_kinds)
        for (int i = 0; i < 25; ++i)
            EXPECT_TRUE(
                assoc_check(kind, commutative, rs.pelement(alphabet), rs.pelement(alphabet), rs.pelement(alphabet)))
                << to_string(kind);
}

TEST(Assoc, NonMorphismCoactionFails) {
    const auto broken = ComoduleAlgebra::non_morphism_control();
    RandomSource rs(22);
    const auto alphabet = alphabet_of(cfg);
    int failures = 0;
    for (int i = 0; i < 40; ++i)
        if (!assoc_check(ProductKind::P8, broken, rs.pelement(alphabet), rs.pelement(alphabet), rs.pelement(alphabet)))
            ++failures;
    EXPECT_GT(failures, 0);
}

TEST(Commutator, WeylAndCurrent) {
    const auto weyl = ComoduleAlgebra::standard(AlgebraKind::commutative);
    EXPECT_EQ(comm_nth(weyl, E("v"), 1, E("v")), E("v", 0, Scalar(-2)));
    EXPECT_EQ(comm_nth(weyl, E("v"), 0, E("v")), -E("v", 1));
    EXPECT_TRUE(comm_nth(weyl, E("v"), 2, E("v")).is_zero());
    const auto current = ComoduleAlgebra::trivial(AlgebraKind::commutative);
    EXPECT_TRUE(comm_nth(current, E("a"), 0, E("b")).is_zero());
    EXPECT_FALSE(comm_nth(ComoduleAlgebra::trivial(), E("a"), 0, E("b")).is_zero());
}

TEST(Commutator, MatchesSkewSymmetryFormula) {
    // [a o_n b] = a o_n b - sum_j (-1)^(n+j) D^(j) (b o_(n+j) a), all built from nth.
    RandomSource rs(23);
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 30; ++i) {
        const PElement p = rs.pelement(alphabet), q = rs.pelement(alphabet);
        for (Degree n = 0; n <= 4; ++n) {
            PElement expected = nth(ProductKind::P8, standard, p, n, q);
            for (Degree j = 0; j <= 14; ++j)
                expected -= apply_D(nth(ProductKind::P8, standard, q, n + j, p), j) * (sign_pow(n + j) / factorial(j));
            EXPECT_EQ(comm_nth(standard, p, n, q), expected);
        }
    }
}

TEST(Identity, Transfer) {
    RandomSource rs(24);
    const auto alphabet = alphabet_of(cfg);
    for (int i = 0; i < 30; ++i) {
        const PElement x = rs.pelement(alphabet), y = rs.pelement(alphabet), z = rs.pelement(alphabet);
        EXPECT_TRUE(eval_identity<2>(commutativity_identity(), ProductKind::P20, commutative, {x, y}).empty());
        EXPECT_TRUE(eval_identity<3>(associator_identity(), ProductKind::P20, commutative, {x, y, z}).empty());
        EXPECT_TRUE(eval_identity<3>(associator_identity(), ProductKind::P8, standard, {x, y, z}).empty());
    }
}

TEST(Identity, CommutativityFailsWithoutIt) {
    EXPECT_FALSE(eval_identity<2>(commutativity_identity(), ProductKind::P8, standard, {E("a"), E("b")}).empty());
    EXPECT_FALSE(eval_identity<2>(commutativity_identity(), ProductKind::P8, commutative, {E("v"), E("av")}).empty());
}

TEST(Identity, SlotConvention) {
    // A single swapped term is the commutator with the slots exchanged.
    const std::vector<IdentityTerm> swapped{
        IdentityTerm{{1, 0}, IdTree::node(IdTree::var(0), IdTree::var(1)), Scalar(1)}};
    const PElement x = E("av"), y = E("vb", 1);
    EXPECT_EQ(eval_identity<2>(swapped, ProductKind::P8, standard, {x, y}),
              canonicalize(permute_slots<2>(pprod(ProductKind::P8, standard, y, x), {1, 0})));
}

TEST(Identity, EmptyAndMalformed) {
    const std::vector<PElement> args{E("a"), E("b")};
    EXPECT_TRUE(eval_identity<2>({}, ProductKind::P8, standard, args).empty());
    const auto t = IdTree::node(IdTree::var(0), IdTree::var(1));
    EXPECT_THROW(eval_identity<2>({IdentityTerm{{0, 0}, t, Scalar(1)}}, ProductKind::P8, standard, args),
                 std::invalid_argument);
    EXPECT_THROW(eval_identity<2>({IdentityTerm{{0}, t, Scalar(1)}}, ProductKind::P8, standard, args),
                 std::invalid_argument);
    const auto repeated = IdTree::node(IdTree::var(0), IdTree::var(0));
    EXPECT_THROW(eval_identity<2>({IdentityTerm{{0, 1}, repeated, Scalar(1)}}, ProductKind::P8, standard, args),
                 std::invalid_argument);
    EXPECT_THROW(eval_identity<2>(commutativity_identity(), ProductKind::P8, standard, {E("a")}),
                 std::invalid_argument);
}

TEST(Format, PElement) {
    EXPECT_EQ(format_pelement(-E("v"), cfg), "-1 (x) v");
    EXPECT_EQ(format_pelement(-E("v", 1), cfg), "-D (x) v");
    EXPECT_EQ(format_pelement(E("avb", 2, make_scalar(2, 3)), cfg), "2/3 D^2 (x) avb");
    EXPECT_EQ(format_pelement(PElement(), cfg), "0");
}
