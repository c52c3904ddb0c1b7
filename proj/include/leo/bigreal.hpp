#pragma once

#include "leo/exact.hpp"
#include "leo/polynomial.hpp"

#include <mpfr.h>

#include <string>
#include <vector>

namespace leo {

/// Guard bits added on top of every requested working precision.
inline constexpr long kGuardBits = 32;

/// Binary floating-point real with a fixed working precision (MPFR-backed,
/// round-to-nearest). Binary operations run at the larger operand precision.
class BigReal {
public:
    /// Zero at `bits` of working precision (guard bits not added).
    explicit BigReal(long bits = 128);
    BigReal(long value, long bits);
    BigReal(const Integer& value, long bits);
    BigReal(const Rational& value, long bits);

    /// Requested precision plus the guard bits.
    static long working_bits(long requested) { return requested + kGuardBits; }
    static BigReal pi(long bits);
    static BigReal parse(const std::string& text, long bits);

    BigReal(const BigReal& o);
    BigReal(BigReal&& o) noexcept;
    BigReal& operator=(const BigReal& o);
    BigReal& operator=(BigReal&& o) noexcept;
    ~BigReal();

    long bits() const { return static_cast<long>(mpfr_get_prec(value_)); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;
    int sign() const { return mpfr_sgn(value_); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }

    BigReal operator-() const;
    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
    BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
    BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
    BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return b < a; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return !(b < a); }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return !(a < b); }

    friend BigReal abs(const BigReal& x);
    friend BigReal sqrt(const BigReal& x);
    friend BigReal log(const BigReal& x);
    friend BigReal exp(const BigReal& x);
    friend BigReal cos(const BigReal& x);
    friend BigReal sin(const BigReal& x);
    friend BigReal digamma(const BigReal& x);
    friend BigReal ldexp(const BigReal& x, long e);

    mpfr_srcptr raw() const { return value_; }
    mpfr_ptr raw() { return value_; }

private:
    mpfr_t value_;
};

/// Complex number over BigReal.
struct BigComplex {
    BigReal re;
    BigReal im;

    explicit BigComplex(long bits = 128) : re(bits), im(bits) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

    /// e^{2 pi i k / n}.
    static BigComplex root_of_unity(long k, long n, long bits);

    long bits() const { return re.bits(); }
    BigComplex conj() const { return {re, -im}; }
    BigReal abs() const;
    BigReal norm() const { return re * re + im * im; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigComplex& a, const BigReal& s) { return {a.re * s, a.im * s}; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
};

/// Real roots of a squarefree polynomial, increasing, refined to `bits`.
/// Isolation is exact (Sturm on rationals); refinement is bisection.
std::vector<BigReal> real_roots(const RatPolynomial& f, long bits);

/// Evaluates a rational polynomial at a real point.
BigReal evaluate(const RatPolynomial& f, const BigReal& x);

}  // namespace leo
