#include "leo/bigreal.hpp"

#include <algorithm>
#include <vector>

namespace leo {

BigReal::BigReal(long bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, long bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, value, MPFR_RNDN);
}

BigReal::BigReal(const Integer& value, long bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(const Rational& value, long bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::pi(long bits)
{
    BigReal r(bits);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
}

BigReal BigReal::parse(const std::string& text, long bits)
{
    BigReal r(bits);
    if (mpfr_set_str(r.value_, text.c_str(), 10, MPFR_RNDN) != 0) throw Error("cannot parse real: " + text);
    return r;
}

BigReal::BigReal(const BigReal& o)
{
    mpfr_init2(value_, mpfr_get_prec(o.value_));
    mpfr_set(value_, o.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept
{
    mpfr_init2(value_, mpfr_get_prec(o.value_));
    mpfr_swap(value_, o.value_);
}

BigReal& BigReal::operator=(const BigReal& o)
{
    if (this != &o) {
        mpfr_set_prec(value_, mpfr_get_prec(o.value_));
        mpfr_set(value_, o.value_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept
{
    mpfr_swap(value_, o.value_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

std::string BigReal::to_string(int digits) const
{
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    return std::string(buf.data());
}

namespace {

long max_bits(const BigReal& a, const BigReal& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

BigReal BigReal::operator-() const
{
    BigReal r(bits());
    mpfr_neg(r.value_, value_, MPFR_RNDN);
    return r;
}

BigReal operator+(const BigReal& a, const BigReal& b)
{
    BigReal r(max_bits(a, b));
    mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, const BigReal& b)
{
    BigReal r(max_bits(a, b));
    mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, const BigReal& b)
{
    BigReal r(max_bits(a, b));
    mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b)
{
    BigReal r(max_bits(a, b));
    mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
    return r;
}

BigReal abs(const BigReal& x)
{
    BigReal r(x.bits());
    mpfr_abs(r.value_, x.value_, MPFR_RNDN);
    return r;
}

BigReal sqrt(const BigReal& x)
{
    BigReal r(x.bits());
    mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
    return r;
}

BigReal log(const BigReal& x)
{
    BigReal r(x.bits());
    mpfr_log(r.value_, x.value_, MPFR_RNDN);
    return r;
}

BigReal exp(const BigReal& x)
{
    BigReal r(x.bits());
    mpfr_exp(r.value_, x.value_, MPFR_RNDN);
    return r;
}

BigReal cos(const BigReal& x)
{
    BigReal r(x.bits());
    mpfr_cos(r.value_, x.value_, MPFR_RNDN);
    return r;
}

BigReal sin(const BigReal& x)
{
    BigReal r(x.bits());
    mpfr_sin(r.value_, x.value_, MPFR_RNDN);
    return r;
}

BigReal digamma(const BigReal& x)
{
    BigReal r(x.bits());
    mpfr_digamma(r.value_, x.value_, MPFR_RNDN);
    return r;
}

BigReal ldexp(const BigReal& x, long e)
{
    BigReal r(x.bits());
    mpfr_mul_2si(r.value_, x.value_, e, MPFR_RNDN);
    return r;
}

BigComplex BigComplex::root_of_unity(long k, long n, long bits)
{
    BigReal angle = BigReal::pi(bits) * BigReal(2 * k, bits) / BigReal(n, bits);
    return {cos(angle), sin(angle)};
}

BigReal BigComplex::abs() const { return sqrt(norm()); }

BigComplex operator/(const BigComplex& a, const BigComplex& b)
{
    BigReal d = b.norm();
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

BigReal evaluate(const RatPolynomial& f, const BigReal& x)
{
    BigReal acc(x.bits());
    const auto& c = f.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + BigReal(*it, x.bits());
    return acc;
}

std::vector<BigReal> real_roots(const RatPolynomial& f, long bits)
{
    if (!is_squarefree(f)) throw Error("squarefree required");
    std::vector<BigReal> out;
    if (f.degree() < 1) return out;
    const auto chain = sturm_chain(f);

    // Isolate: intervals (a, b] holding exactly one root.
    std::vector<std::pair<Rational, Rational>> isolated;
    std::vector<std::pair<Rational, Rational>> work;
    const Rational bound = root_bound(f);
    work.emplace_back(-bound, bound);
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        const int count = sturm_count_between(chain, a, b);
        if (count == 0) continue;
        if (count == 1) {
            isolated.emplace_back(a, b);
            continue;
        }
        Rational mid = (a + b) / 2;
        work.emplace_back(mid, b);
        work.emplace_back(a, mid);
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    // Refine by bisection on exact dyadic rationals.
    for (auto [a, b] : isolated) {
        if (f(b) == 0) {
            out.emplace_back(b, bits);
            continue;
        }
        Rational scale = 1;
        if (abs(a) > 1) scale = abs(a);
        if (abs(b) > scale) scale = abs(b);
        Rational width_goal = scale;
        mpq_div_2exp(width_goal.get_mpq_t(), width_goal.get_mpq_t(), static_cast<unsigned long>(bits + 8));
        const int sign_b = sgn(f(b));
        bool exact = false;
        while (b - a > width_goal) {
            Rational mid = (a + b) / 2;
            const int s = sgn(f(mid));
            if (s == 0) {
                a = b = mid;
                exact = true;
                break;
            }
            if (s == sign_b) b = mid;
            else a = mid;
        }
        out.emplace_back(exact ? a : Rational((a + b) / 2), bits);
    }
    return out;
}

}  // namespace leo
