#pragma once

#include "leo/exact.hpp"

#include <string>
#include <utility>
#include <vector>

namespace leo {

/// Dense univariate polynomial over Q, lowest degree first. The zero
/// polynomial has an empty coefficient list and degree -1.
class RatPolynomial {
public:
    RatPolynomial() = default;
    explicit RatPolynomial(std::vector<Rational> coefficients);
    RatPolynomial(std::initializer_list<long> coefficients);

    static RatPolynomial constant(const Rational& c);
    static RatPolynomial monomial(const Rational& c, std::size_t degree);
    static RatPolynomial from_integers(const std::vector<Integer>& coefficients);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    /// Coefficient of x^k (zero beyond the degree).
    Rational coeff(std::size_t k) const;
    const Rational& leading() const;

    bool is_monic() const { return !is_zero() && leading() == 1; }
    bool has_integer_coefficients() const;
    std::vector<Integer> integer_coefficients() const;

    RatPolynomial derivative() const;
    RatPolynomial monic() const;
    /// f(x + c).
    RatPolynomial shift(const Rational& c) const;
    /// f(g(x)).
    RatPolynomial compose(const RatPolynomial& g) const;

    Rational operator()(const Rational& x) const;

    RatPolynomial operator-() const;
    RatPolynomial& operator+=(const RatPolynomial& o);
    RatPolynomial& operator-=(const RatPolynomial& o);
    RatPolynomial& operator*=(const RatPolynomial& o);
    RatPolynomial& operator*=(const Rational& c);

    friend RatPolynomial operator+(RatPolynomial a, const RatPolynomial& b) { return a += b; }
    friend RatPolynomial operator-(RatPolynomial a, const RatPolynomial& b) { return a -= b; }
    friend RatPolynomial operator*(RatPolynomial a, const RatPolynomial& b) { return a *= b; }
    friend RatPolynomial operator*(RatPolynomial a, const Rational& c) { return a *= c; }
    friend RatPolynomial operator/(const RatPolynomial& a, const RatPolynomial& b);
    friend RatPolynomial operator%(const RatPolynomial& a, const RatPolynomial& b);
    friend bool operator==(const RatPolynomial& a, const RatPolynomial& b) = default;

    std::string to_string(char var = 'x') const;

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; b nonzero.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b);

/// Monic gcd (zero if both inputs are zero).
RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);

struct ExtendedGcd {
    RatPolynomial g;  ///< monic gcd
    RatPolynomial s;  ///< s * a + t * b = g
    RatPolynomial t;
};
ExtendedGcd extended_gcd(const RatPolynomial& a, const RatPolynomial& b);

/// Res(f, g) via the Euclidean remainder sequence.
Rational resultant(const RatPolynomial& f, const RatPolynomial& g);

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f). Throws for constant f.
Rational poly_discriminant(const RatPolynomial& f);

bool is_squarefree(const RatPolynomial& f);

/// Sturm sequence f, f', -rem(...), ...
std::vector<RatPolynomial> sturm_chain(const RatPolynomial& f);

/// Number of distinct real roots of a squarefree f.
int sturm_real_root_count(const RatPolynomial& f);

/// Number of distinct real roots in the half-open interval (a, b].
int sturm_count_between(const std::vector<RatPolynomial>& chain, const Rational& a,
                        const Rational& b);

/// Cauchy bound: every complex root has absolute value below the result.
Rational root_bound(const RatPolynomial& f);

/// The n-th cyclotomic polynomial (cached).
const RatPolynomial& cyclotomic_polynomial(unsigned long n);

}  // namespace leo
