#include "leo/cyclotomic.hpp"

#include <numeric>

namespace leo {

namespace {

long mod_long(long a, unsigned long m)
{
    const long r = a % static_cast<long>(m);
    return r < 0 ? r + static_cast<long>(m) : r;
}

// sum_k c_k x^{k * step} with exponents reduced mod M (x^M = 1).
RatPolynomial spread(const RatPolynomial& p, unsigned long M, long step)
{
    std::vector<Rational> c(M, Rational(0));
    for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
        c[static_cast<std::size_t>(mod_long(static_cast<long>(k) * step, M))] += p.coefficients()[k];
    }
    return RatPolynomial(std::move(c));
}

}  // namespace

CycloValue::CycloValue(unsigned long m, const RatPolynomial& poly) : m_(m)
{
    if (m == 0) throw Error("cyclotomic order must be positive");
    const RatPolynomial& phi = cyclotomic_polynomial(m);
    poly_ = poly.degree() >= phi.degree() ? poly % phi : poly;
}

CycloValue CycloValue::root(unsigned long m, long k)
{
    return CycloValue(m, RatPolynomial::monomial(1, static_cast<std::size_t>(mod_long(k, m))));
}

Rational CycloValue::rational_value() const
{
    if (!is_rational()) throw Error("cyclotomic value is not rational");
    return poly_.coeff(0);
}

CycloValue operator+(const CycloValue& a, const CycloValue& b)
{
    if (a.m_ == b.m_) return CycloValue(a.m_, a.poly_ + b.poly_);
    const unsigned long M = lcm_ul(a.m_, b.m_);
    return a.lift(M) + b.lift(M);
}

CycloValue operator*(const CycloValue& a, const CycloValue& b)
{
    if (a.m_ == b.m_) return CycloValue(a.m_, a.poly_ * b.poly_);
    const unsigned long M = lcm_ul(a.m_, b.m_);
    return a.lift(M) * b.lift(M);
}

bool operator==(const CycloValue& a, const CycloValue& b)
{
    if (a.m_ == b.m_) return a.poly_ == b.poly_;
    const unsigned long M = lcm_ul(a.m_, b.m_);
    return a.lift(M).poly_ == b.lift(M).poly_;
}

CycloValue CycloValue::inverse() const
{
    if (is_zero()) throw Error("division by zero in Q(zeta)");
    const ExtendedGcd e = extended_gcd(poly_, cyclotomic_polynomial(m_));
    if (e.g.degree() != 0) throw Error("zero divisor in Q(zeta)");
    return CycloValue(m_, e.s * (Rational(1) / e.g.coeff(0)));
}

CycloValue CycloValue::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    CycloValue result = from_rational(m_, 1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

CycloValue CycloValue::lift(unsigned long M) const
{
    if (M % m_ != 0) throw Error("lift target must be a multiple of the order");
    if (M == m_) return *this;
    return CycloValue(M, spread(poly_, M, static_cast<long>(M / m_)));
}

CycloValue CycloValue::galois(long c) const
{
    if (gcd_ul(static_cast<unsigned long>(mod_long(c, m_)), m_) != 1 && m_ > 1) throw Error("galois: c must be prime to the order");
    return CycloValue(m_, spread(poly_, m_, c));
}

BigComplex CycloValue::to_complex(long bits) const
{
    BigComplex acc(bits);
    for (std::size_t k = 0; k < poly_.coefficients().size(); ++k) {
        const Rational& c = poly_.coefficients()[k];
        if (c == 0) continue;
        acc += BigComplex::root_of_unity(static_cast<long>(k), static_cast<long>(m_), bits) * BigReal(c, bits);
    }
    return acc;
}

EtaleElement CycloValue::to_etale(const AlgebraPtr& algebra, unsigned long N, long M) const
{
    if (algebra->poly() != cyclotomic_polynomial(N).integer_coefficients()) throw Error("to_etale: algebra is not Q_p[x]/Phi_N");
    return algebra->from_polynomial(lift(N).poly_, M);
}

std::string CycloValue::to_string() const { return poly_.to_string('z') + " in Q(zeta" + std::to_string(m_) + ")"; }

AlgebraPtr cyclotomic_algebra(unsigned long N, unsigned long p)
{
    unsigned long prime_to_p = N;
    while (prime_to_p % p == 0) prime_to_p /= p;
    unsigned long f = 1;
    if (prime_to_p > 1) {
        unsigned long x = p % prime_to_p;
        while (x != 1) {
            x = static_cast<unsigned long>((static_cast<unsigned __int128>(x) * p) % prime_to_p);
            ++f;
        }
    }
    const Integer t0 = ipow(Integer(p), f) - 1;
    return EtaleAlgebra::create(p, cyclotomic_polynomial(N).integer_coefficients(), t0);
}

}  // namespace leo
