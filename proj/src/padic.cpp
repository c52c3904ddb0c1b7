#include "leo/padic.hpp"

#include <algorithm>
#include <sstream>

namespace leo {

PadicScalar::PadicScalar(unsigned long p, long v, Integer unit, long n)
    : p_(p), v_(v), unit_(std::move(unit)), n_(n)
{
}

PadicScalar PadicScalar::zero(unsigned long p, long precision) { return PadicScalar(p, precision, 0, precision); }

namespace {

bool exact_range(long relative) { return relative > kExactPrecision / 2; }

}  // namespace

PadicScalar PadicScalar::normalized(unsigned long p, long v, Integer s, long n)
{
    if (v >= n) return zero(p, n);
    if (!exact_range(n - v)) s = mod(s, prime_power(p, n - v));
    if (s == 0) return zero(p, n);
    long k = leo::valuation(s, p);
    if (k > 0) {
        v += k;
        s /= prime_power(p, k);
    }
    if (v >= n) return zero(p, n);
    if (!exact_range(n - v)) s = mod(s, prime_power(p, n - v));
    return PadicScalar(p, v, std::move(s), n);
}

PadicScalar PadicScalar::from_rational(const Rational& r, unsigned long p, long precision)
{
    if (r == 0) return zero(p, precision);
    const long v = leo::valuation(r, p);
    if (v >= precision) return zero(p, precision);
    Integer num = r.get_num(), den = r.get_den();
    if (v > 0) num /= prime_power(p, v);
    if (v < 0) den /= prime_power(p, -v);
    if (exact_range(precision - v)) {
        if (den == 1) return PadicScalar(p, v, num, precision);
        precision = v + kExactQuotientDigits;
    }
    const Integer& m = prime_power(p, precision - v);
    return PadicScalar(p, v, mod(num * *inverse_mod(den, m), m), precision);
}

Rational PadicScalar::to_rational() const
{
    if (is_zero()) return 0;
    if (v_ >= 0) return Rational(unit_ * prime_power(p_, v_));
    Rational r(unit_, prime_power(p_, -v_));
    r.canonicalize();
    return r;
}

Integer PadicScalar::residue(long k) const
{
    if (k > n_) throw PrecisionError("residue requested beyond the known precision");
    if (is_zero()) return 0;
    if (v_ < 0) throw Error("residue of a non-integral p-adic number");
    return mod(unit_ * prime_power(p_, v_), prime_power(p_, k));
}

PadicScalar PadicScalar::operator-() const
{
    if (is_zero()) return *this;
    return normalized(p_, v_, -unit_, n_);
}

namespace {

void check_prime(const PadicScalar& a, const PadicScalar& b)
{
    if (a.prime() != b.prime()) throw Error("p-adic numbers for different primes");
}

}  // namespace

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b)
{
    check_prime(a, b);
    const long n = std::min(a.n_, b.n_);
    if (a.is_zero()) return b.capped(n);
    if (b.is_zero()) return a.capped(n);
    const long v = std::min(a.v_, b.v_);
    if (v >= n) return PadicScalar::zero(a.p_, n);
    Integer s = a.unit_ * prime_power(a.p_, a.v_ - v) + b.unit_ * prime_power(a.p_, b.v_ - v);
    return PadicScalar::normalized(a.p_, v, std::move(s), n);
}

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b)
{
    check_prime(a, b);
    const long n = std::min(a.n_ + b.v_, b.n_ + a.v_);
    if (a.is_zero() || b.is_zero()) return PadicScalar::zero(a.p_, n);
    return PadicScalar::normalized(a.p_, a.v_ + b.v_, a.unit_ * b.unit_, n);
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b)
{
    check_prime(a, b);
    if (b.is_zero()) throw PrecisionError("division by a p-adic number indistinguishable from zero");
    if (a.is_zero()) return PadicScalar::zero(a.p_, a.n_ - b.v_);
    long r = std::min(a.n_ - a.v_, b.n_ - b.v_);
    if (exact_range(r)) r = kExactQuotientDigits;
    const Integer& m = prime_power(a.p_, r);
    Integer s = a.unit_ * *inverse_mod(b.unit_, m);
    return PadicScalar::normalized(a.p_, a.v_ - b.v_, std::move(s), a.v_ - b.v_ + r);
}

PadicScalar PadicScalar::mul_exact(const Integer& c) const
{
    if (c == 0) return zero(p_, n_);
    const long k = leo::valuation(c, p_);
    Integer cu = c / prime_power(p_, k);
    if (is_zero()) return zero(p_, n_ + k);
    return normalized(p_, v_ + k, unit_ * cu, n_ + k);
}

PadicScalar PadicScalar::div_exact(const Integer& c) const
{
    if (c == 0) throw Error("division by zero");
    const long k = leo::valuation(c, p_);
    Integer cu = c / prime_power(p_, k);
    if (is_zero()) return zero(p_, n_ - k);
    long r = n_ - v_;
    if (exact_range(r)) {
        if (cu == 1 || cu == -1) return normalized(p_, v_ - k, unit_ * cu, n_ - k);
        r = kExactQuotientDigits;
    }
    const Integer& m = prime_power(p_, r);
    return normalized(p_, v_ - k, unit_ * *inverse_mod(cu, m), v_ - k + r);
}

PadicScalar PadicScalar::pow(const Integer& e) const
{
    if (e < 0) return from_integer(1, p_, relative_precision()) / pow(-e);
    if (e == 0) return from_integer(1, p_, std::max(relative_precision(), 1L));
    PadicScalar result = *this;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits - 1; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
    }
    return result;
}

PadicScalar PadicScalar::capped(long k) const
{
    if (k >= n_) return *this;
    return normalized(p_, v_, unit_, k);
}

std::string PadicScalar::to_string() const
{
    std::ostringstream out;
    out << leo::to_string(to_rational()) << " + O(" << p_ << "^" << n_ << ")";
    return out.str();
}

// ---------------------------------------------------------------------------

long PrecisionBudget::effective() const
{
    long e = requested_;
    for (const auto& [op, d] : losses_) e -= d;
    return e;
}

void PrecisionBudget::record(const std::string& op, long floor)
{
    const long e = effective();
    if (floor < e) losses_.emplace_back(op, e - floor);
}

void PrecisionBudget::debit(const std::string& op, long digits)
{
    if (digits > 0) losses_.emplace_back(op, digits);
}

std::string PrecisionBudget::summary() const
{
    std::ostringstream out;
    out << "requested " << requested_ << ", effective " << effective();
    for (const auto& [op, d] : losses_) out << "; " << op << " -" << d;
    return out.str();
}

PadicScalar teichmuller(const Integer& a, unsigned long p, long M)
{
    if (a % p == 0) throw Error("teichmuller: p divides a");
    const Integer& m = prime_power(p, M);
    Integer x = mod(a, m);
    for (long k = 0; k <= M + 1; ++k) {
        Integer y = powmod(x, Integer(p), m);
        if (y == x) break;
        x = std::move(y);
    }
    return PadicScalar::from_integer(x, p, M);
}

PadicSolve padic_solve(std::vector<std::vector<PadicScalar>> m, std::vector<PadicScalar> rhs)
{
    const std::size_t n = m.size();
    if (n == 0) throw Error("padic_solve: empty system");
    const unsigned long p = m[0][0].prime();
    bool negate = false;
    std::optional<PadicScalar> det;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = n;
        for (std::size_t i = k; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            if (best == n || m[i][k].valuation() < m[best][k].valuation()) best = i;
        }
        if (best == n) {
            long prec = m[k][k].precision();
            for (std::size_t i = k; i < n; ++i) prec = std::min(prec, m[i][k].precision());
            if (det) prec = (*det * PadicScalar::zero(p, prec)).precision();
            return {PadicScalar::zero(p, prec), std::nullopt};
        }
        if (best != k) {
            std::swap(m[best], m[k]);
            std::swap(rhs[best], rhs[k]);
            negate = !negate;
        }
        det = det ? *det * m[k][k] : m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            PadicScalar factor = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
            rhs[i] -= factor * rhs[k];
        }
    }
    if (negate) det = -*det;
    std::vector<PadicScalar> x(n);
    for (std::size_t k = n; k-- > 0;) {
        PadicScalar s = rhs[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * x[j];
        x[k] = s / m[k][k];
    }
    return {*det, std::move(x)};
}

}  // namespace leo
