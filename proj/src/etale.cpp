#include "leo/etale.hpp"

#include "leo/hensel.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace leo {

namespace {

constexpr long kExact = kExactPrecision;

long floor_log(unsigned long p, long k)
{
    long e = 0;
    for (long q = static_cast<long>(p); q <= k; q *= static_cast<long>(p)) ++e;
    return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// EtaleAlgebra

EtaleAlgebra::EtaleAlgebra(unsigned long p, std::vector<Integer> f, Integer t0)
    : p_(p), f_(std::move(f)), t0_(std::move(t0))
{
}

AlgebraPtr EtaleAlgebra::create(unsigned long p, std::vector<Integer> f, std::optional<Integer> unit_exponent)
{
    if (!is_prime(p)) throw Error("etale algebra: p must be prime");
    if (f.size() < 2 || f.back() != 1) throw Error("etale algebra: f must be monic of positive degree");
    Integer t0;
    if (unit_exponent) {
        t0 = *unit_exponent;
    } else {
        t0 = 1;
        for (std::size_t d = 1; d < f.size(); ++d) {
            Integer q = prime_power(p, static_cast<long>(d)) - 1;
            mpz_lcm(t0.get_mpz_t(), t0.get_mpz_t(), q.get_mpz_t());
        }
    }
    if (t0 <= 0 || t0 % p == 0) throw Error("etale algebra: unit exponent must be positive and prime to p");
    return AlgebraPtr(new EtaleAlgebra(p, std::move(f), std::move(t0)));
}

EtaleElement EtaleAlgebra::zero(long precision) const
{
    return EtaleElement(shared_from_this(),
                        std::vector<PadicScalar>(static_cast<std::size_t>(degree()), PadicScalar::zero(p_, precision)));
}

EtaleElement EtaleAlgebra::one(long precision) const
{
    auto c = std::vector<PadicScalar>(static_cast<std::size_t>(degree()), PadicScalar::zero(p_, precision));
    c[0] = PadicScalar::from_integer(1, p_, precision);
    return EtaleElement(shared_from_this(), std::move(c));
}

EtaleElement EtaleAlgebra::scalar(const PadicScalar& s) const
{
    auto c = std::vector<PadicScalar>(static_cast<std::size_t>(degree()), PadicScalar::zero(p_, kExact));
    c[0] = s;
    return EtaleElement(shared_from_this(), std::move(c));
}

EtaleElement EtaleAlgebra::from_polynomial(const RatPolynomial& g, long M) const
{
    const RatPolynomial r = g % RatPolynomial::from_integers(f_);
    std::vector<PadicScalar> c;
    for (int k = 0; k < degree(); ++k) c.push_back(PadicScalar::from_rational(r.coeff(static_cast<std::size_t>(k)), p_, M));
    return EtaleElement(shared_from_this(), std::move(c));
}

EtaleElement EtaleAlgebra::from_coefficients(std::vector<PadicScalar> c) const
{
    return EtaleElement(shared_from_this(), std::move(c));
}

// ---------------------------------------------------------------------------
// EtaleElement

EtaleElement::EtaleElement(AlgebraPtr algebra, std::vector<PadicScalar> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs))
{
    if (static_cast<int>(coeffs_.size()) != algebra_->degree()) throw Error("coefficient count must equal deg f");
    for (const auto& c : coeffs_) {
        if (c.prime() != algebra_->prime()) throw Error("coefficient for the wrong prime");
    }
}

void EtaleElement::check_same_algebra(const EtaleElement& o) const
{
    if (algebra_ != o.algebra_ && (algebra_->prime() != o.algebra_->prime() || algebra_->poly() != o.algebra_->poly())) {
        throw Error("elements of different etale algebras");
    }
}

long EtaleElement::floor_precision() const
{
    long m = std::numeric_limits<long>::max();
    for (const auto& c : coeffs_) m = std::min(m, c.precision());
    return m;
}

long EtaleElement::min_valuation() const
{
    long m = std::numeric_limits<long>::max();
    bool any = false;
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) {
            m = std::min(m, c.valuation());
            any = true;
        }
    }
    return any ? m : floor_precision();
}

bool EtaleElement::certified_nonzero() const
{
    return std::any_of(coeffs_.begin(), coeffs_.end(), [](const PadicScalar& c) { return !c.is_zero(); });
}

EtaleElement EtaleElement::capped(long k) const
{
    EtaleElement r = *this;
    for (auto& c : r.coeffs_) c = c.capped(k);
    return r;
}

EtaleElement EtaleElement::operator-() const
{
    EtaleElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

EtaleElement& EtaleElement::operator+=(const EtaleElement& o)
{
    check_same_algebra(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

EtaleElement& EtaleElement::operator-=(const EtaleElement& o)
{
    check_same_algebra(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

EtaleElement operator*(const EtaleElement& a, const EtaleElement& b)
{
    a.check_same_algebra(b);
    const std::size_t n = a.coeffs_.size();
    const unsigned long p = a.prime();
    std::vector<PadicScalar> prod(2 * n - 1, PadicScalar::zero(p, kExact));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    const auto& f = a.algebra_->poly();
    for (std::size_t k = 2 * n - 1; k-- > n;) {
        const PadicScalar c = prod[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (f[j] != 0) prod[k - n + j] -= c.mul_exact(f[j]);
        }
    }
    prod.resize(n);
    return EtaleElement(a.algebra_, std::move(prod));
}

EtaleElement operator*(const EtaleElement& a, const PadicScalar& c)
{
    EtaleElement r = a;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
}

EtaleElement EtaleElement::mul_exact(const Integer& c) const
{
    EtaleElement r = *this;
    for (auto& x : r.coeffs_) x = x.mul_exact(c);
    return r;
}

EtaleElement EtaleElement::div_exact(const Integer& c) const
{
    EtaleElement r = *this;
    for (auto& x : r.coeffs_) x = x.div_exact(c);
    return r;
}

EtaleElement EtaleElement::pow(const Integer& e) const
{
    if (e < 0) throw Error("negative power in the etale algebra");
    if (e == 0) return algebra_->one(floor_precision());
    EtaleElement result = *this;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits - 1; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
    }
    return result;
}

std::vector<std::vector<PadicScalar>> EtaleElement::multiplication_matrix() const
{
    const std::size_t n = coeffs_.size();
    std::vector<std::vector<PadicScalar>> m(n, std::vector<PadicScalar>(n));
    std::vector<PadicScalar> xc(n, PadicScalar::zero(prime(), kExact));
    if (n > 1) xc[1] = PadicScalar::from_integer(1, prime(), kExact);
    const EtaleElement x(algebra_, xc);
    EtaleElement col = *this;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) m[i][j] = col.coeffs_[i];
        if (j + 1 < n) col = col * x;
    }
    return m;
}

PadicScalar EtaleElement::norm() const
{
    std::vector<PadicScalar> rhs(coeffs_.size(), PadicScalar::zero(prime(), kExact));
    return padic_solve(multiplication_matrix(), rhs).det;
}

std::string EtaleElement::to_string() const
{
    std::ostringstream out;
    out << "[";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out << (k ? ", " : "") << coeffs_[k].to_string();
    out << "]";
    return out.str();
}

// ---------------------------------------------------------------------------

EtaleElement etale_embed(const NfElement& a, const AlgebraPtr& algebra, long M)
{
    if (a.field()->integer_poly() != algebra->poly()) throw Error("etale_embed: algebra is not built on the field polynomial");
    return algebra->from_polynomial(a.as_polynomial(), M);
}

EtaleElement etale_embed(const NfElement& a, unsigned long p, long M)
{
    return etale_embed(a, EtaleAlgebra::create(p, a.field()->integer_poly()), M);
}

EtaleElement etale_inverse(const EtaleElement& a)
{
    const std::size_t n = a.coeffs().size();
    std::vector<PadicScalar> rhs(n, PadicScalar::zero(a.prime(), kExact));
    rhs[0] = PadicScalar::from_integer(1, a.prime(), kExact);
    auto solved = padic_solve(a.multiplication_matrix(), rhs);
    if (!solved.solution) throw PrecisionError("element is not certifiably invertible");
    return a.algebra()->from_coefficients(std::move(*solved.solution));
}

Unitization unitize_exponent(const EtaleElement& u, long max_a)
{
    const unsigned long p = u.prime();
    const long need = (p == 2) ? 3 : 2;
    const EtaleElement one = u.algebra()->one(kExact);
    auto close_to_one = [&](const EtaleElement& w) {
        const EtaleElement x = w - one;
        for (const auto& c : x.coeffs()) {
            if (c.valuation() < need) return false;  // also fails when precision < need
        }
        return true;
    };
    Unitization out{u.algebra()->unit_exponent(), 0, u.algebra()->unit_exponent(), u.pow(u.algebra()->unit_exponent())};
    while (!close_to_one(out.power)) {
        if (out.power.floor_precision() < need) throw PrecisionError("unitization failed: precision below p^2");
        if (out.a >= max_a) throw Error("unitization failed");
        out.power = out.power.pow(Integer(p));
        ++out.a;
        out.t *= p;
    }
    return out;
}

EtaleElement padic_log(const EtaleElement& u, PrecisionBudget& budget)
{
    const PadicScalar nm = u.norm();
    if (nm.is_zero() || nm.valuation() != 0) throw Error("not a p-adic unit");
    const unsigned long p = u.prime();
    const Unitization unit = unitize_exponent(u);
    const EtaleElement x = unit.power - u.algebra()->one(kExact);
    const long target = x.floor_precision();
    const long v = x.min_valuation();

    EtaleElement sum = x;
    EtaleElement xk = x;
    for (long k = 2; k * v - floor_log(p, k) < target; ++k) {
        xk = xk * x;
        EtaleElement term = xk.div_exact(Integer(k));
        if (k % 2 == 0) sum -= term;
        else sum += term;
    }
    sum = sum.capped(target);
    budget.record("log series", sum.floor_precision());
    EtaleElement result = sum.div_exact(unit.t);
    budget.record("log unitization p^" + std::to_string(unit.a), result.floor_precision());
    return result;
}

EtaleElement etale_det(std::vector<std::vector<EtaleElement>> m, PrecisionBudget& budget)
{
    const std::size_t n = m.size();
    if (n == 0) throw Error("etale_det: empty matrix");
    for (const auto& row : m) {
        if (row.size() != n) throw Error("etale_det: matrix must be square");
    }
    bool negate = false;
    std::optional<EtaleElement> prev_inverse;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // Pivot: certifiably invertible entry of least norm valuation.
        std::size_t bi = n, bj = n;
        long best = std::numeric_limits<long>::max();
        for (std::size_t i = k; i < n; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                const PadicScalar nm = m[i][j].norm();
                if (nm.is_zero()) continue;
                if (nm.valuation() < best) {
                    best = nm.valuation();
                    bi = i;
                    bj = j;
                }
            }
        }
        if (bi == n) throw PrecisionError("precision exhausted");
        if (bi != k) {
            std::swap(m[bi], m[k]);
            negate = !negate;
        }
        if (bj != k) {
            for (auto& row : m) std::swap(row[bj], row[k]);
            negate = !negate;
        }
        long floor = std::numeric_limits<long>::max();
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                EtaleElement e = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                if (prev_inverse) e = e * *prev_inverse;
                floor = std::min(floor, e.floor_precision());
                m[i][j] = std::move(e);
            }
        }
        budget.record("det pivot " + std::to_string(k), floor);
        prev_inverse = etale_inverse(m[k][k]);
    }
    EtaleElement det = m[n - 1][n - 1];
    if (negate) det = -det;
    budget.record("det", det.floor_precision());
    return det;
}

std::vector<Integer> split_roots(const AlgebraPtr& algebra, long M)
{
    auto roots = padic_roots(algebra->poly(), algebra->prime(), M);
    if (static_cast<int>(roots.size()) != algebra->degree()) {
        throw Error("f does not split into distinct linear factors mod p");
    }
    return roots;
}

std::vector<PadicScalar> split_components(const EtaleElement& a, const std::vector<Integer>& roots, long root_precision)
{
    const unsigned long p = a.prime();
    std::vector<PadicScalar> out;
    for (const auto& r : roots) {
        const PadicScalar x = PadicScalar::from_integer(r, p, root_precision);
        PadicScalar acc = a.coeffs().back();
        for (std::size_t k = a.coeffs().size() - 1; k-- > 0;) acc = acc * x + a.coeff(k);
        out.push_back(acc);
    }
    return out;
}

EtaleElement from_components(const AlgebraPtr& algebra, const std::vector<Integer>& roots,
                             const std::vector<PadicScalar>& values, long M)
{
    const unsigned long p = algebra->prime();
    const std::size_t n = roots.size();
    if (values.size() != n || static_cast<int>(n) != algebra->degree()) throw Error("from_components: size mismatch");
    std::vector<PadicScalar> acc(n, PadicScalar::zero(p, kExact));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Integer> poly{Integer(1)};
        Integer denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Integer> next(poly.size() + 1, Integer(0));
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= poly[k] * roots[j];
            }
            poly = std::move(next);
            denom *= roots[i] - roots[j];
        }
        const PadicScalar d = PadicScalar::from_integer(denom, p, M);
        for (std::size_t k = 0; k < n; ++k) acc[k] += values[i] * (PadicScalar::from_integer(poly[k], p, M) / d);
    }
    return algebra->from_coefficients(std::move(acc));
}

}  // namespace leo
