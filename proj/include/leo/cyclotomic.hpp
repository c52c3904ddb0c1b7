#pragma once

// Exact elements of Q(zeta_m), stored as polynomials in x = zeta_m reduced
// mod Phi_m, and their renderings into C and into Q_p[x]/(Phi_N).

#include "leo/bigreal.hpp"
#include "leo/etale.hpp"
#include "leo/polynomial.hpp"

#include <string>

namespace leo {

class CycloValue {
public:
    CycloValue() : CycloValue(1, RatPolynomial()) {}
    CycloValue(unsigned long m, const RatPolynomial& poly);

    static CycloValue zero(unsigned long m) { return CycloValue(m, RatPolynomial()); }
    static CycloValue from_rational(unsigned long m, const Rational& r) { return CycloValue(m, RatPolynomial::constant(r)); }
    /// zeta_m^k.
    static CycloValue root(unsigned long m, long k);

    unsigned long order() const { return m_; }
    const RatPolynomial& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    bool is_rational() const { return poly_.degree() <= 0; }
    Rational rational_value() const;

    CycloValue operator-() const { return CycloValue(m_, -poly_); }
    friend CycloValue operator+(const CycloValue& a, const CycloValue& b);
    friend CycloValue operator-(const CycloValue& a, const CycloValue& b) { return a + (-b); }
    friend CycloValue operator*(const CycloValue& a, const CycloValue& b);
    friend CycloValue operator*(const CycloValue& a, const Rational& c) { return CycloValue(a.m_, a.poly_ * c); }
    CycloValue& operator+=(const CycloValue& o) { return *this = *this + o; }
    CycloValue& operator*=(const CycloValue& o) { return *this = *this * o; }
    /// Exact equality; values of different orders are compared in Q(zeta_lcm).
    friend bool operator==(const CycloValue& a, const CycloValue& b);
    friend bool operator!=(const CycloValue& a, const CycloValue& b) { return !(a == b); }

    CycloValue inverse() const;
    CycloValue pow(long e) const;
    /// The same number in Q(zeta_M) for a multiple M of the order.
    CycloValue lift(unsigned long M) const;
    /// zeta -> zeta^c for c prime to the order.
    CycloValue galois(long c) const;
    CycloValue conj() const { return galois(-1); }

    /// x -> e^{2 pi i / m}.
    BigComplex to_complex(long bits) const;
    /// x -> the residue class of x in algebra = Q_p[x]/(Phi_N), N a multiple of m.
    EtaleElement to_etale(const AlgebraPtr& algebra, unsigned long N, long M) const;

    std::string to_string() const;

private:
    unsigned long m_;
    RatPolynomial poly_;
};

/// Q_p[x]/(Phi_N) with unit exponent p^f - 1, f the order of p modulo the
/// prime-to-p part of N.
AlgebraPtr cyclotomic_algebra(unsigned long N, unsigned long p);

}  // namespace leo
