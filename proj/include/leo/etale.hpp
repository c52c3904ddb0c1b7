#pragma once

// The etale algebra A = Q_p[x]/(f) for a monic integer polynomial f, worked
// with coefficient-wise in the power basis. f is never factored over Q_p.

#include "leo/number_field.hpp"
#include "leo/padic.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace leo {

class EtaleAlgebra;
class EtaleElement;
using AlgebraPtr = std::shared_ptr<const EtaleAlgebra>;

class EtaleAlgebra : public std::enable_shared_from_this<EtaleAlgebra> {
public:
    /// `unit_exponent`, when given, must kill the residue-field unit group of
    /// every component (for example p^f - 1 for Q_p[x]/(Phi_N) with f the
    /// order of p modulo the prime-to-p part of N). Defaults to
    /// lcm{p^d - 1 : 1 <= d <= deg f}.
    static AlgebraPtr create(unsigned long p, std::vector<Integer> f,
                             std::optional<Integer> unit_exponent = std::nullopt);

    unsigned long prime() const { return p_; }
    const std::vector<Integer>& poly() const { return f_; }
    int degree() const { return static_cast<int>(f_.size()) - 1; }
    const Integer& unit_exponent() const { return t0_; }

    EtaleElement zero(long precision) const;
    EtaleElement one(long precision) const;
    EtaleElement scalar(const PadicScalar& c) const;
    /// Image of a rational polynomial in x, reduced mod f, at precision M.
    EtaleElement from_polynomial(const RatPolynomial& g, long M) const;
    EtaleElement from_coefficients(std::vector<PadicScalar> c) const;

private:
    EtaleAlgebra(unsigned long p, std::vector<Integer> f, Integer t0);

    unsigned long p_;
    std::vector<Integer> f_;
    Integer t0_;
};

class EtaleElement {
public:
    EtaleElement(AlgebraPtr algebra, std::vector<PadicScalar> coeffs);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<PadicScalar>& coeffs() const { return coeffs_; }
    const PadicScalar& coeff(std::size_t k) const { return coeffs_[k]; }
    unsigned long prime() const { return algebra_->prime(); }

    /// Minimal absolute precision over the coefficients.
    long floor_precision() const;
    /// Minimal valuation over the coefficients not indistinguishable from
    /// zero; floor_precision() when every coefficient is.
    long min_valuation() const;
    /// Some coefficient has valuation below its precision.
    bool certified_nonzero() const;
    EtaleElement capped(long k) const;

    EtaleElement operator-() const;
    EtaleElement& operator+=(const EtaleElement& o);
    EtaleElement& operator-=(const EtaleElement& o);
    friend EtaleElement operator+(EtaleElement a, const EtaleElement& b) { return a += b; }
    friend EtaleElement operator-(EtaleElement a, const EtaleElement& b) { return a -= b; }
    friend EtaleElement operator*(const EtaleElement& a, const EtaleElement& b);
    friend EtaleElement operator*(const EtaleElement& a, const PadicScalar& c);
    EtaleElement& operator*=(const EtaleElement& o) { return *this = *this * o; }

    EtaleElement mul_exact(const Integer& c) const;
    EtaleElement div_exact(const Integer& c) const;
    /// Nonnegative integer power by repeated squaring.
    EtaleElement pow(const Integer& e) const;

    /// Q_p-linear map "multiply by this" in the power basis (column j = this * x^j).
    std::vector<std::vector<PadicScalar>> multiplication_matrix() const;
    /// Norm from A to Q_p (determinant of the multiplication matrix).
    PadicScalar norm() const;

    /// Coefficient-wise agreement at the common precision.
    bool agrees_with(const EtaleElement& o) const { return !(*this - o).certified_nonzero(); }

    std::string to_string() const;

private:
    void check_same_algebra(const EtaleElement& o) const;

    AlgebraPtr algebra_;
    std::vector<PadicScalar> coeffs_;
};

/// Coordinates of a as a polynomial in x, each at absolute precision M.
EtaleElement etale_embed(const NfElement& a, const AlgebraPtr& algebra, long M);
/// Convenience: A built from the field's defining polynomial.
EtaleElement etale_embed(const NfElement& a, unsigned long p, long M);

/// Inverse by solving (multiplication matrix) * y = 1; PrecisionError when
/// the element is not certifiably invertible.
EtaleElement etale_inverse(const EtaleElement& a);

struct Unitization {
    Integer t0;   ///< kills the residue-field units
    long a = 0;   ///< extra p-power
    Integer t;    ///< t0 * p^a
    EtaleElement power;  ///< u^t, congruent to 1 mod p^2 (mod 8 when p = 2)
};

/// Finds the least a with u^{t0 p^a} = 1 mod p^2 (mod 8 for p = 2) in
/// every coefficient; throws "unitization failed" beyond the cap.
Unitization unitize_exponent(const EtaleElement& u, long max_a = 64);

/// log_p(u) = log(u^t) / t with the series summed to the precision of u^t.
/// Throws "not a p-adic unit" when Norm(u) is not certified to be a p-adic unit.
EtaleElement padic_log(const EtaleElement& u, PrecisionBudget& budget);

/// Determinant by fraction-free (Bareiss) elimination. Pivots are
/// certifiably invertible entries of least norm valuation; each division by
/// the previous pivot is recorded in the budget.
EtaleElement etale_det(std::vector<std::vector<EtaleElement>> m, PrecisionBudget& budget);

/// Component values at the roots of f in Z_p (f must split into distinct
/// linear factors mod p); the roots are known mod p^root_precision.
std::vector<PadicScalar> split_components(const EtaleElement& a, const std::vector<Integer>& roots,
                                          long root_precision);
/// The roots used by split_components, in increasing order of residue mod p.
std::vector<Integer> split_roots(const AlgebraPtr& algebra, long M);
/// Inverse of split_components: Lagrange interpolation through the roots.
EtaleElement from_components(const AlgebraPtr& algebra, const std::vector<Integer>& roots,
                             const std::vector<PadicScalar>& values, long M);

}  // namespace leo
