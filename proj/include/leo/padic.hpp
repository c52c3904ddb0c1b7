#pragma once

// Capped-precision p-adic numbers. A nonzero value is u * p^v with u a unit
// known modulo p^{N-v}, where N is the absolute precision. A value whose
// digits below p^N are all zero is "indistinguishable from zero"; it keeps
// unit 0 and valuation N. Precision is propagated by every operation, so
// the digits a result reports are digits it actually knows.

#include "leo/exact.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leo {

/// Absolute precision used for exactly known integers. Such values are never
/// reduced modulo p^precision; any finite-precision operand brings the
/// result back to an ordinary precision.
inline constexpr long kExactPrecision = 1L << 40;
/// Relative precision granted to quotients of two exact values.
inline constexpr long kExactQuotientDigits = 2048;

class PadicScalar {
public:
    PadicScalar() = default;

    static PadicScalar zero(unsigned long p, long precision);
    static PadicScalar from_rational(const Rational& r, unsigned long p, long precision);
    static PadicScalar from_integer(const Integer& n, unsigned long p, long precision)
    {
        return from_rational(Rational(n), p, precision);
    }
    static PadicScalar exact(const Integer& n, unsigned long p) { return from_integer(n, p, kExactPrecision); }
    bool is_exact() const { return n_ - v_ > kExactPrecision / 2; }

    unsigned long prime() const { return p_; }
    /// Valuation; equals precision() when indistinguishable from zero.
    long valuation() const { return v_; }
    long precision() const { return n_; }
    long relative_precision() const { return n_ - v_; }
    const Integer& unit() const { return unit_; }
    bool is_zero() const { return unit_ == 0; }

    /// The represented value as a rational with denominator a power of p.
    Rational to_rational() const;
    /// The value mod p^k as an integer in [0, p^k) (requires v >= 0, k <= N).
    Integer residue(long k) const;

    PadicScalar operator-() const;
    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    /// Division; throws PrecisionError when b is indistinguishable from zero.
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }

    /// Multiplication / division by an exact nonzero integer.
    PadicScalar mul_exact(const Integer& c) const;
    PadicScalar div_exact(const Integer& c) const;
    PadicScalar pow(const Integer& e) const;

    /// Lowers the absolute precision to at most k.
    PadicScalar capped(long k) const;

    /// True when a - b is indistinguishable from zero at the common precision.
    bool agrees_with(const PadicScalar& o) const { return (*this - o).is_zero(); }

    std::string to_string() const;

private:
    PadicScalar(unsigned long p, long v, Integer unit, long n);
    static PadicScalar normalized(unsigned long p, long v, Integer s, long n);

    unsigned long p_ = 0;
    long v_ = 0;
    Integer unit_ = 0;
    long n_ = 0;
};

/// Requested precision plus a ledger of observed losses.
class PrecisionBudget {
public:
    explicit PrecisionBudget(long requested = 0) : requested_(requested) {}

    long requested() const { return requested_; }
    long effective() const;
    /// Records that `op` left `floor` digits; debits the drop below the
    /// current effective precision (no entry when nothing was lost).
    void record(const std::string& op, long floor);
    /// Explicit debit of a known number of digits.
    void debit(const std::string& op, long digits);
    const std::vector<std::pair<std::string, long>>& losses() const { return losses_; }
    std::string summary() const;

private:
    long requested_;
    std::vector<std::pair<std::string, long>> losses_;
};

/// The (p-1)-st root of unity congruent to a mod p, to precision p^M.
PadicScalar teichmuller(const Integer& a, unsigned long p, long M);

/// Determinant and solution of a square linear system over Q_p by Gaussian
/// elimination with minimal-valuation pivots. When the matrix is not
/// certifiably invertible, det is returned indistinguishable from zero and
/// no solution is produced.
struct PadicSolve {
    PadicScalar det;
    std::optional<std::vector<PadicScalar>> solution;
};
PadicSolve padic_solve(std::vector<std::vector<PadicScalar>> m, std::vector<PadicScalar> rhs);

}  // namespace leo
