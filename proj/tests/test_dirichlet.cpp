#include "doctest.h"

#include "leo/dirichlet.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <set>

using namespace leo;

namespace {

std::complex<double> cd(const BigComplex& z) { return {z.re.to_double(), z.im.to_double()}; }

// Smallest d | n with chi constant on residue classes mod d (among units mod n).
unsigned long brute_conductor(const DirichletCharacter& chi)
{
    const unsigned long n = chi.modulus();
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (unsigned long a = 0; a < n && ok; ++a) {
            for (unsigned long b = 0; b < n && ok; ++b) {
                if (gcd_ul(a, n) != 1 || gcd_ul(b, n) != 1 || (a + n - b) % d) continue;
                ok = chi.value(static_cast<long>(a)) == chi.value(static_cast<long>(b));
            }
        }
        if (ok) return d;
    }
    return n;
}

// x -> x^c on the power-basis coordinates of an element of Q_p[x]/Phi_N.
EtaleElement galois_twist(const EtaleElement& e, unsigned long N, unsigned long c, long M)
{
    const AlgebraPtr& A = e.algebra();
    EtaleElement out = A->zero(M);
    for (std::size_t k = 0; k < e.coeffs().size(); ++k) {
        out += A->from_polynomial(RatPolynomial::monomial(1, (k * c) % N), M) * e.coeff(k);
    }
    return out;
}

}  // namespace

TEST_CASE("character enumeration")
{
    auto c5 = enumerate_characters(5);
    REQUIRE(c5.size() == 4);
    std::multiset<unsigned long> conductors;
    for (const auto& c : c5) conductors.insert(c.conductor());
    CHECK(conductors == std::multiset<unsigned long>{1, 5, 5, 5});
    CHECK(c5[0].is_trivial());

    auto c1 = enumerate_characters(1);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].is_trivial());
    CHECK(c1[0].is_primitive());

    auto c8 = enumerate_characters(8);
    REQUIRE(c8.size() == 4);
    std::multiset<unsigned long> orders;
    for (const auto& c : c8) orders.insert(c.order());
    CHECK(orders == std::multiset<unsigned long>{1, 2, 2, 2});

    for (unsigned long n = 1; n <= 40; ++n) {
        CAPTURE(n);
        auto chars = enumerate_characters(n);
        CHECK(chars.size() == euler_phi(n));
        for (std::size_t i = 0; i < chars.size(); ++i) {
            CHECK(chars[i].index() == i);
            CHECK(chars[i].conductor() == brute_conductor(chars[i]));
            for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(chars[i] == chars[j]);
            // The character is the lift of its primitive core.
            auto core = chars[i].primitive_core();
            CHECK(core.is_primitive());
            for (unsigned long a = 0; a < n; ++a) {
                if (gcd_ul(a, n) == 1) CHECK(chars[i].value(static_cast<long>(a)) == core.value(static_cast<long>(a)));
            }
        }
    }
}

TEST_CASE("characters are multiplicative")
{
    for (unsigned long n : {7UL, 12UL, 15UL, 16UL, 21UL}) {
        for (const auto& chi : enumerate_characters(n)) {
            for (long a = 0; a < static_cast<long>(n); ++a) {
                for (long b = 0; b < static_cast<long>(n); ++b) {
                    CHECK(chi.value(a * b) == chi.value(a) * chi.value(b));
                }
            }
        }
    }
}

TEST_CASE("orthogonality is exact")
{
    for (unsigned long n = 1; n <= 12; ++n) {
        auto chars = enumerate_characters(n);
        for (const auto& x : chars) {
            for (const auto& y : chars) {
                CycloValue s;
                for (long a = 0; a < static_cast<long>(n); ++a) s += x.value(a) * y.value(a).conj();
                CHECK(s == CycloValue::from_rational(1, x == y ? static_cast<long>(euler_phi(n)) : 0));
            }
        }
    }
}

TEST_CASE("gauss sums")
{
    auto c5 = enumerate_characters(5);
    const DirichletCharacter* quad = nullptr;
    for (const auto& c : c5) {
        if (c.order() == 2) quad = &c;
    }
    REQUIRE(quad);
    auto tau = gauss_sum(*quad).to_complex(128);
    CHECK(std::abs(tau.re.to_double() - std::sqrt(5.0)) < 1e-14);
    CHECK(std::abs(tau.im.to_double()) < 1e-14);
    CHECK_THROWS_WITH(gauss_sum(enumerate_characters(10)[0]), doctest::Contains("primitive required"));

    for (unsigned long n = 3; n <= 30; ++n) {
        for (const auto& chi : enumerate_characters(n)) {
            if (!chi.is_primitive()) continue;
            auto t = gauss_sum(chi);
            CHECK(std::abs(std::norm(cd(t.to_complex(96))) - double(n)) < 1e-9);
            auto prod = t * gauss_sum(chi.conj());
            const long sign = chi.is_even() ? 1 : -1;
            CHECK(prod == CycloValue::from_rational(1, sign * static_cast<long>(n)));
        }
    }
}

TEST_CASE("gauss sum of a power matches the permuted sum")
{
    // tau(chi^c) = sum_a chi(a)^c zeta_n^a, evaluated independently from values.
    for (unsigned long n : {7UL, 9UL, 13UL, 16UL}) {
        for (const auto& chi : enumerate_characters(n)) {
            if (!chi.is_primitive()) continue;
            for (long c : {2L, 3L, 5L}) {
                if (std::gcd(static_cast<unsigned long>(c), chi.order()) != 1) continue;
                CycloValue direct;
                for (long a = 1; a < static_cast<long>(n); ++a) direct += chi.value(a).pow(c) * CycloValue::root(n, a);
                CHECK(gauss_sum(chi.pow(c)) == direct);
            }
        }
    }
}

TEST_CASE("L(1, chi) archimedean")
{
    auto c5 = enumerate_characters(5);
    for (const auto& chi : c5) {
        if (chi.order() != 2) continue;
        auto L = L1_archimedean(chi, 128);
        const double expect = 2 * std::log((1 + std::sqrt(5.0)) / 2) / std::sqrt(5.0);
        CHECK(std::abs(L.re.to_double() - expect) < 1e-14);
        CHECK(L.im.is_zero());
    }
    CHECK_THROWS(L1_archimedean(c5[0], 64));
    // An odd character mod 5 (order 4).
    for (const auto& chi : c5) {
        if (!chi.is_even()) CHECK_THROWS_WITH(L1_archimedean(chi, 64), doctest::Contains("odd"));
    }
    for (unsigned long n = 3; n <= 40; ++n) {
        for (const auto& chi : enumerate_characters(n)) {
            if (chi.is_trivial() || !chi.is_even() || !chi.is_primitive()) continue;
            CAPTURE(n);
            auto a = L1_archimedean(chi, 128), b = L1_digamma(chi, 128);
            CHECK(abs(a.re - b.re).to_double() < 1e-12);
            CHECK(abs(a.im - b.im).to_double() < 1e-12);
            if (chi.is_real()) {
                // Imaginary residue before it is cleared.
                auto t = gauss_sum(chi).to_complex(160);
                CHECK(std::abs(t.im.to_double()) < 1e-20);
            }
        }
    }
}

TEST_CASE("Euler factor consistency of the truncated helpers")
{
    for (unsigned long n : {5UL, 7UL, 8UL, 13UL}) {
        for (const auto& chi : enumerate_characters(n)) {
            if (chi.is_trivial() || !chi.is_even() || !chi.is_primitive()) continue;
            auto L = L1_archimedean(chi, 128);
            for (unsigned long q : {3UL, 11UL, 17UL}) {
                if (n % q == 0) continue;
                auto Lq = L1_truncated(chi, 128, {q});
                auto f = cd(chi.value(static_cast<long>(q)).to_complex(64));
                auto expect = cd(L) * (1.0 - f / double(q));
                CHECK(std::abs(cd(Lq) - expect) < 1e-13);
            }
        }
    }
}

TEST_CASE("L_p(1, chi)")
{
    auto c5 = enumerate_characters(5);
    const DirichletCharacter* quad = nullptr;
    for (const auto& c : c5) {
        if (c.order() == 2) quad = &c;
    }
    REQUIRE(quad);
    PrecisionBudget b(8);
    auto L = L1_padic(*quad, 3, 8, b);
    CHECK(L.certified_nonzero());
    CHECK(euler_factor(*quad, 11) == CycloValue::from_rational(2, Rational(10, 11)));
    CHECK_THROWS(L1_padic(c5[0], 3, 8, b));
    for (const auto& chi : enumerate_characters(9)) {
        if (chi.is_primitive() && chi.is_even() && !chi.is_trivial()) {
            CHECK_THROWS_WITH(L1_padic(chi, 3, 8, b), doctest::Contains("use stark identity route"));
        }
    }
    // Truncation at q multiplies by 1 - chi(q)/q.
    PrecisionBudget b2(12);
    auto L12 = L1_padic(*quad, 7, 12, b2);
    auto Lt = L1_padic_truncated(*quad, 7, 12, {3}, b2);
    CHECK(Lt.agrees_with(L12 * PadicScalar::from_rational(Rational(4, 3), 7, 12)));  // chi_5(3) = -1
}

TEST_CASE("L_p values do not depend on the pinned root")
{
    // sigma_c(L_p(chi)) = L_p(chi^c) in Q_p[x]/Phi_N.
    for (unsigned long n : {5UL, 7UL, 8UL}) {
        for (const auto& chi : enumerate_characters(n)) {
            if (chi.is_trivial() || !chi.is_even() || !chi.is_primitive()) continue;
            const unsigned long N = value_field_order(chi);
            for (unsigned long p : {3UL, 11UL}) {
                if (n % p == 0) continue;
                for (unsigned long c = 2; c < N; ++c) {
                    if (gcd_ul(c, N) != 1) continue;
                    CAPTURE(n);
                    CAPTURE(c);
                    PrecisionBudget b(10);
                    auto L = L1_padic(chi, p, 10, b);
                    auto Lc = L1_padic(chi.pow(static_cast<long>(c)), p, 10, b);
                    REQUIRE(value_field_order(chi.pow(static_cast<long>(c))) == N);
                    CHECK(galois_twist(L, N, c, 10).agrees_with(Lc));
                }
            }
        }
    }
}
