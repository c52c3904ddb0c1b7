#include "doctest.h"

#include "leo/bigreal.hpp"
#include "leo/continued_fraction.hpp"
#include "leo/exact.hpp"
#include "leo/hensel.hpp"
#include "leo/polynomial.hpp"

#include <cmath>

using namespace leo;

namespace {

// Determinant of a small rational matrix by cofactor expansion.
Rational cofactor_det(const std::vector<std::vector<Rational>>& m)
{
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Rational>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) row.push_back(m[i][k]);
            }
            minor.push_back(row);
        }
        Rational term = m[0][j] * cofactor_det(minor);
        total += (j % 2 == 0) ? term : Rational(-term);
    }
    return total;
}

// Sylvester matrix resultant, highest coefficients first.
Rational sylvester_resultant(const RatPolynomial& f, const RatPolynomial& g)
{
    const int m = f.degree(), n = g.degree();
    const int size = m + n;
    std::vector<std::vector<Rational>> s(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size), Rational(0)));
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k <= m; ++k) s[r][r + k] = f.coeff(static_cast<std::size_t>(m - k));
    }
    for (int r = 0; r < m; ++r) {
        for (int k = 0; k <= n; ++k) s[n + r][r + k] = g.coeff(static_cast<std::size_t>(n - k));
    }
    return cofactor_det(s);
}

// Plain floating continued fraction of sqrt(d), enough terms for small d.
std::vector<long> float_cf(double d, int count)
{
    std::vector<long> out;
    double x = std::sqrt(d);
    for (int k = 0; k < count; ++k) {
        long a = static_cast<long>(std::floor(x));
        out.push_back(a);
        x = 1.0 / (x - static_cast<double>(a));
    }
    return out;
}

}  // namespace

TEST_CASE("valuations and modular helpers")
{
    CHECK(valuation(Integer(48), 2) == 4);
    CHECK(valuation(Rational(9, 16), 3) == 2);
    CHECK(valuation(Rational(9, 16), 2) == -4);
    CHECK(prime_power(7, 3) == 343);
    CHECK(*inverse_mod(Integer(2), Integer(7)) == 4);
    CHECK_FALSE(inverse_mod(Integer(3), Integer(9)).has_value());
    CHECK(mod(Integer(-3), Integer(5)) == 2);
    CHECK(euler_phi(12) == 4);
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(25) == 2);
    auto pp = prime_power_decomposition(64);
    REQUIRE(pp);
    CHECK(pp->first == 2);
    CHECK(pp->second == 6);
    CHECK_FALSE(prime_power_decomposition(12));
    CHECK(factor(360) == std::vector<std::pair<unsigned long, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
}

TEST_CASE("rational reconstruction recovers small fractions")
{
    const Integer m = prime_power(7, 20);
    const Rational target(-13, 29);
    Integer a = mod(Integer(target.get_num()) * *inverse_mod(Integer(target.get_den()), m), m);
    auto r = rational_reconstruct(a, m, reconstruction_bound(m));
    REQUIRE(r);
    CHECK(*r == target);
}

TEST_CASE("product_has_unit_abs on factored products")
{
    CHECK(product_has_unit_abs({Rational(6), Rational(2), Rational(3)}, {Integer(5), Integer(-5), Integer(-5)}));
    CHECK_FALSE(product_has_unit_abs({Rational(6), Rational(2)}, {Integer(1), Integer(-1)}));
    CHECK(product_has_unit_abs({Rational(-1, 4), Rational(2)}, {Integer(1000001), Integer(2000002)}));
}

TEST_CASE("poly_discriminant examples")
{
    const RatPolynomial f{-2, 0, 1};
    const Rational res = sylvester_resultant(f, f.derivative());
    // (-1)^{n(n-1)/2} Res(f, f') / lc for n = 2.
    CHECK(poly_discriminant(f) == -res);
    CHECK(poly_discriminant(f) == 8);

    const RatPolynomial g{-1, -1, 1};
    CHECK(poly_discriminant(g) == Rational(1 * 1 - 4 * 1 * (-1)));
    CHECK(poly_discriminant(RatPolynomial{0, 1}) == 1);
    CHECK_THROWS_WITH(poly_discriminant(RatPolynomial{5}), doctest::Contains("degree too small"));
}

TEST_CASE("resultant agrees with the Sylvester determinant")
{
    const RatPolynomial f{1, -3, -1, 1};
    const RatPolynomial g{2, 0, 5};
    CHECK(resultant(f, g) == sylvester_resultant(f, g));
    const RatPolynomial h{-7, 1, 0, 0, 1};
    CHECK(resultant(h, f) == sylvester_resultant(h, f));
}

TEST_CASE("sturm_real_root_count examples")
{
    CHECK(sturm_real_root_count(RatPolynomial{-2, 0, 1}) == 2);
    CHECK(sturm_real_root_count(RatPolynomial{1, 0, 1}) == 0);
    const RatPolynomial f{1, -3, -1, 1};
    CHECK(sturm_real_root_count(f) == 3);
    // Sign changes of f on -2, -1, 0, 1, 3 isolate three roots.
    int changes = 0;
    const long pts[] = {-2, -1, 0, 1, 3};
    for (int k = 0; k + 1 < 5; ++k) {
        if (f(Rational(pts[k])) * f(Rational(pts[k + 1])) < 0) ++changes;
    }
    CHECK(changes == 3);
    CHECK_THROWS_WITH(sturm_real_root_count(RatPolynomial{1, 2, 1}), doctest::Contains("squarefree required"));
}

TEST_CASE("polynomial gcd and division")
{
    const RatPolynomial a = RatPolynomial{-1, 1} * RatPolynomial{2, 1};
    const RatPolynomial b = RatPolynomial{-1, 1} * RatPolynomial{3, 0, 1};
    CHECK(gcd(a, b) == RatPolynomial{-1, 1});
    auto eg = extended_gcd(a, b);
    CHECK(eg.s * a + eg.t * b == eg.g);
    auto [q, r] = divmod(b, a);
    CHECK(q * a + r == b);
    CHECK(r.degree() < a.degree());
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic_polynomial(1) == RatPolynomial{-1, 1});
    CHECK(cyclotomic_polynomial(5) == RatPolynomial{1, 1, 1, 1, 1});
    CHECK(cyclotomic_polynomial(8) == RatPolynomial{1, 0, 0, 0, 1});
    CHECK(cyclotomic_polynomial(12) == RatPolynomial{1, 0, -1, 0, 1});
    CHECK(cyclotomic_polynomial(15).degree() == 8);
}

TEST_CASE("sqrt_continued_fraction examples")
{
    auto e2 = sqrt_continued_fraction(2);
    CHECK(e2.preperiod == std::vector<Integer>{1});
    CHECK(e2.period == std::vector<Integer>{2});
    auto e5 = sqrt_continued_fraction(5);
    CHECK(e5.preperiod == std::vector<Integer>{2});
    CHECK(e5.period == std::vector<Integer>{4});
    CHECK_THROWS(sqrt_continued_fraction(4));

    for (long d : {3L, 6L, 7L, 13L, 19L, 31L}) {
        auto e = sqrt_continued_fraction(d);
        auto terms = e.terms(8);
        auto oracle = float_cf(static_cast<double>(d), 8);
        for (int k = 0; k < 8; ++k) CHECK(terms[static_cast<std::size_t>(k)] == oracle[static_cast<std::size_t>(k)]);
        CHECK(e.period.back() == 2 * e.preperiod[0]);
    }
}

TEST_CASE("convergents of sqrt 2 solve Pell")
{
    auto c = convergents(sqrt_continued_fraction(2).terms(6));
    for (const auto& cv : c) {
        Integer pell = cv.p * cv.p - 2 * cv.q * cv.q;
        CHECK((pell == 1 || pell == -1));
    }
}

TEST_CASE("BigReal elementary values")
{
    const long bits = 200;
    BigReal two(2, bits);
    BigReal s = sqrt(two);
    CHECK(abs(s * s - two) < ldexp(BigReal(1, bits), -190));
    BigReal third(Rational(1, 3), bits);
    CHECK(abs(third * BigReal(3, bits) - BigReal(1, bits)) < ldexp(BigReal(1, bits), -195));
    CHECK(std::abs(BigReal::pi(bits).to_double() - M_PI) < 1e-15);
    // digamma(1) = -Euler gamma.
    CHECK(std::abs(digamma(BigReal(1, bits)).to_double() + 0.5772156649015329) < 1e-15);
}

TEST_CASE("real roots of a totally real cubic")
{
    const RatPolynomial f{1, -3, -1, 1};
    auto roots = real_roots(f, 160);
    REQUIRE(roots.size() == 3);
    for (const auto& r : roots) CHECK(abs(evaluate(f, r)) < ldexp(BigReal(1, 160), -140));
    CHECK(roots[0] < roots[1]);
    CHECK(roots[1] < roots[2]);
}

TEST_CASE("Hensel lifting")
{
    const std::vector<Integer> f{Integer(-2), Integer(0), Integer(1)};
    auto roots = padic_roots(f, 7, 12);
    REQUIRE(roots.size() == 2);
    const Integer& m = prime_power(7, 12);
    for (const auto& r : roots) CHECK(eval_mod(f, r, m) == 0);
    CHECK(splits_completely_mod_p({Integer(1), Integer(-3), Integer(-1), Integer(1)}, 3) == false);
}
