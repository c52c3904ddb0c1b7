#include "doctest.h"

#include "leo/number_field.hpp"

using namespace leo;

namespace {

FieldPtr field(std::initializer_list<long> coeffs, const char* label = "")
{
    return NumberField::create(RatPolynomial(coeffs), label);
}

NfElement elt(const FieldPtr& f, std::vector<long> coords)
{
    std::vector<Rational> c;
    for (long x : coords) c.emplace_back(x);
    return f->element(c);
}

}  // namespace

TEST_CASE("field construction checks")
{
    CHECK_THROWS_WITH(NumberField::create(RatPolynomial{-2, 0, 2}), doctest::Contains("monic"));
    CHECK_THROWS_WITH(NumberField::create(RatPolynomial{1, 2, 1}), doctest::Contains("squarefree"));
    CHECK_THROWS(NumberField::create(RatPolynomial{std::vector<Rational>{Rational(1, 2), 0, 1}}));
    auto q2 = field({-2, 0, 1}, "Q(sqrt2)");
    CHECK(q2->degree() == 2);
    CHECK(q2->label() == "Q(sqrt2)");
    CHECK(q2->is_totally_real());
    CHECK_FALSE(field({1, 0, 1})->is_totally_real());
}

TEST_CASE("nf_arith examples")
{
    auto q2 = field({-2, 0, 1});
    auto t = q2->theta();
    CHECK(nf_arith(t, t, NfOp::Mul) == q2->from_rational(2));
    auto a = elt(q2, {1, 1});
    auto inv = nf_arith(a, a, NfOp::Inv);
    CHECK(inv == elt(q2, {-1, 1}));
    CHECK(a * inv == q2->one());
    CHECK_THROWS_WITH(q2->zero().inverse(), doctest::Contains("zero divisor"));
    CHECK(nf_arith(a, a, NfOp::Div) == q2->one());
    CHECK(a.pow(-3) * a.pow(3) == q2->one());
}

TEST_CASE("nf_norm examples")
{
    auto q2 = field({-2, 0, 1});
    auto a = elt(q2, {1, 1});
    // (1 + sqrt2)(1 - sqrt2) computed as a product of conjugates.
    auto conj = elt(q2, {1, -1});
    auto prod = a * conj;
    REQUIRE(prod.is_rational());
    CHECK(nf_norm(a) == prod.coords()[0]);
    CHECK(nf_norm(a) == -1);
    CHECK(nf_norm(q2->from_rational(3)) == 9);
    CHECK(nf_norm(q2->zero()) == 0);
}

TEST_CASE("trace equals sum of conjugates")
{
    auto f = field({-1, -2, 1, 1});  // Q(zeta7)^+
    auto search = find_automorphisms(f);
    REQUIRE(search.galois_verified);
    auto a = elt(f, {3, -1, 2});
    NfElement sum = f->zero();
    for (const auto& s : search.automorphisms) sum += s.apply(a);
    REQUIRE(sum.is_rational());
    CHECK(a.trace() == sum.coords()[0]);
    NfElement prod = f->one();
    for (const auto& s : search.automorphisms) prod *= s.apply(a);
    CHECK(a.norm() == prod.coords()[0]);
}

TEST_CASE("find_automorphisms on quadratic fields")
{
    auto q2 = field({-2, 0, 1});
    auto s = find_automorphisms(q2);
    REQUIRE(s.automorphisms.size() == 2);
    CHECK(s.galois_verified);
    CHECK(s.automorphisms[0].is_identity());
    CHECK(s.automorphisms[1].theta_image() == elt(q2, {0, -1}));

    auto q5 = field({-1, -1, 1});
    auto s5 = find_automorphisms(q5);
    REQUIRE(s5.automorphisms.size() == 2);
    // The conjugate root is 1 - theta since the roots sum to 1.
    CHECK(s5.automorphisms[1].theta_image() == elt(q5, {1, -1}));
}

TEST_CASE("find_automorphisms on a non-Galois cubic")
{
    AutomorphismSearchOptions opts;
    opts.max_digits = 128;
    auto s = find_automorphisms(field({-2, 0, 0, 1}), opts);
    CHECK(s.automorphisms.size() == 1);
    CHECK(s.automorphisms[0].is_identity());
    CHECK_FALSE(s.galois_verified);
    CHECK(s.warning == "not Galois or precision insufficient");
}

TEST_CASE("automorphisms of Q(zeta7)^+")
{
    auto f = field({-1, -2, 1, 1});
    auto s = find_automorphisms(f);
    REQUIRE(s.automorphisms.size() == 3);
    // 2cos(4pi/7) = theta^2 - 2 and 2cos(6pi/7) = 1 - theta - theta^2.
    std::vector<NfElement> expect{f->theta(), elt(f, {-2, 0, 1}), elt(f, {1, -1, -1})};
    for (const auto& e : expect) {
        bool present = false;
        for (const auto& a : s.automorphisms) present = present || a.theta_image() == e;
        CHECK(present);
    }
}

TEST_CASE("automorphisms of the sextic Galois closure form a group")
{
    auto f = field({-148, 0, 100, 0, -20, 0, 1});
    auto s = find_automorphisms(f);
    REQUIRE(s.galois_verified);
    REQUIRE(s.automorphisms.size() == 6);
    CHECK(s.automorphisms[0].is_identity());
    for (std::size_t i = 1; i + 1 < s.automorphisms.size(); ++i) {
        CHECK(lexicographic_less(s.automorphisms[i].theta_image(), s.automorphisms[i + 1].theta_image()));
    }
    for (const auto& a : s.automorphisms) {
        for (const auto& b : s.automorphisms) {
            auto c = a.compose(b);
            bool member = false;
            for (const auto& d : s.automorphisms) member = member || d == c;
            CHECK(member);
        }
        CHECK(a.apply(f->from_rational(Rational(5, 3))) == f->from_rational(Rational(5, 3)));
        auto x = elt(f, {1, 2, 0, -1, 3, 1});
        auto y = elt(f, {-2, 0, 1, 1, 0, 4});
        CHECK(a.apply(x * y) == a.apply(x) * a.apply(y));
    }
    // Not abelian: S3.
    bool noncommuting = false;
    for (const auto& a : s.automorphisms) {
        for (const auto& b : s.automorphisms) noncommuting = noncommuting || !(a.compose(b) == b.compose(a));
    }
    CHECK(noncommuting);
}

TEST_CASE("degree one field")
{
    auto q = field({-3, 1});
    auto s = find_automorphisms(q);
    CHECK(s.galois_verified);
    CHECK(s.automorphisms.size() == 1);
    CHECK(q->theta() == q->from_rational(3));
}

TEST_CASE("irreducibility of totally real polynomials")
{
    CHECK(is_irreducible_totally_real(RatPolynomial{-2, 0, 1}));
    CHECK(is_irreducible_totally_real(RatPolynomial{-1, -2, 1, 1}));
    CHECK(is_irreducible_totally_real(RatPolynomial{-148, 0, 100, 0, -20, 0, 1}));
    CHECK(is_irreducible_totally_real(RatPolynomial{1, 0, -4, 0, 1}));  // Q(sqrt2, sqrt3)
    CHECK_FALSE(is_irreducible_totally_real(RatPolynomial{-2, 0, 1} * RatPolynomial{-3, 0, 1}));
    CHECK_FALSE(is_irreducible_totally_real(RatPolynomial{-1, 1} * RatPolynomial{-2, 1} * RatPolynomial{-3, 1}));
    CHECK_FALSE(is_irreducible_totally_real(RatPolynomial{-1, -2, 1, 1} * RatPolynomial{-5, 0, 1}));
    CHECK_FALSE(is_irreducible_totally_real(RatPolynomial{-1, -2, 1, 1} * RatPolynomial{-1, -1, 1}));
    CHECK_THROWS(is_irreducible_totally_real(RatPolynomial{1, 0, 1}));
}
