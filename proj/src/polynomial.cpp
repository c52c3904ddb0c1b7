#include "leo/polynomial.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace leo {

RatPolynomial::RatPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients))
{
    normalize();
}

RatPolynomial::RatPolynomial(std::initializer_list<long> coefficients)
{
    for (long c : coefficients) coeffs_.emplace_back(c);
    normalize();
}

RatPolynomial RatPolynomial::constant(const Rational& c) { return RatPolynomial(std::vector<Rational>{c}); }

RatPolynomial RatPolynomial::monomial(const Rational& c, std::size_t degree)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return RatPolynomial(std::move(v));
}

RatPolynomial RatPolynomial::from_integers(const std::vector<Integer>& coefficients)
{
    std::vector<Rational> v;
    v.reserve(coefficients.size());
    for (const auto& c : coefficients) v.emplace_back(c);
    return RatPolynomial(std::move(v));
}

void RatPolynomial::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RatPolynomial::coeff(std::size_t k) const
{
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

const Rational& RatPolynomial::leading() const
{
    if (coeffs_.empty()) throw Error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

bool RatPolynomial::has_integer_coefficients() const
{
    for (const auto& c : coeffs_) {
        if (c.get_den() != 1) return false;
    }
    return true;
}

std::vector<Integer> RatPolynomial::integer_coefficients() const
{
    if (!has_integer_coefficients()) throw Error("polynomial has non-integer coefficients");
    std::vector<Integer> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.get_num());
    return out;
}

RatPolynomial RatPolynomial::derivative() const
{
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return RatPolynomial(std::move(d));
}

RatPolynomial RatPolynomial::monic() const
{
    if (is_zero()) return {};
    return *this * Rational(1 / leading());
}

RatPolynomial RatPolynomial::shift(const Rational& c) const
{
    return compose(RatPolynomial(std::vector<Rational>{c, Rational(1)}));
}

RatPolynomial RatPolynomial::compose(const RatPolynomial& g) const
{
    RatPolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= g;
        acc += constant(*it);
    }
    return acc;
}

Rational RatPolynomial::operator()(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPolynomial RatPolynomial::operator-() const
{
    RatPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

RatPolynomial& RatPolynomial::operator+=(const RatPolynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    normalize();
    return *this;
}

RatPolynomial& RatPolynomial::operator-=(const RatPolynomial& o)
{
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    normalize();
    return *this;
}

RatPolynomial& RatPolynomial::operator*=(const RatPolynomial& o)
{
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> r(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    coeffs_ = std::move(r);
    normalize();
    return *this;
}

RatPolynomial& RatPolynomial::operator*=(const Rational& c)
{
    for (auto& x : coeffs_) x *= c;
    normalize();
    return *this;
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b)
{
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    const int db = b.degree();
    if (a.degree() < db) return {RatPolynomial{}, a};
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    const Rational inv_lead = 1 / b.leading();
    for (int k = a.degree(); k >= db; --k) {
        const Rational c = rem[static_cast<std::size_t>(k)] * inv_lead;
        quo[static_cast<std::size_t>(k - db)] = c;
        if (c == 0) continue;
        for (int i = 0; i <= db; ++i) {
            rem[static_cast<std::size_t>(k - db + i)] -= c * b.coefficients()[static_cast<std::size_t>(i)];
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

RatPolynomial operator/(const RatPolynomial& a, const RatPolynomial& b) { return divmod(a, b).first; }

RatPolynomial operator%(const RatPolynomial& a, const RatPolynomial& b) { return divmod(a, b).second; }

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b)
{
    RatPolynomial x = a, y = b;
    while (!y.is_zero()) {
        RatPolynomial r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

ExtendedGcd extended_gcd(const RatPolynomial& a, const RatPolynomial& b)
{
    RatPolynomial r0 = a, r1 = b;
    RatPolynomial s0 = RatPolynomial::constant(1), s1;
    RatPolynomial t0, t1 = RatPolynomial::constant(1);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        RatPolynomial s2 = s0 - q * s1;
        RatPolynomial t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {};
    const Rational inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Rational resultant(const RatPolynomial& f, const RatPolynomial& g)
{
    if (f.is_zero() || g.is_zero()) return 0;
    const int m = f.degree();
    const int n = g.degree();
    if (n == 0) {
        Rational r = 1;
        for (int i = 0; i < m; ++i) r *= g.leading();
        return r;
    }
    if (m == 0) {
        Rational r = 1;
        for (int i = 0; i < n; ++i) r *= f.leading();
        return r;
    }
    // Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r), r = f mod g.
    RatPolynomial r = f % g;
    if (r.is_zero()) return 0;
    Rational scale = ((m * n) % 2 == 0) ? Rational(1) : Rational(-1);
    for (int i = 0; i < m - r.degree(); ++i) scale *= g.leading();
    return scale * resultant(g, r);
}

Rational poly_discriminant(const RatPolynomial& f)
{
    const int n = f.degree();
    if (n < 1) throw Error("degree too small");
    if (n == 1) return 1;
    Rational res = resultant(f, f.derivative());
    const long sign_exp = static_cast<long>(n) * (n - 1) / 2;
    if (sign_exp % 2 != 0) res = -res;
    return res / f.leading();
}

bool is_squarefree(const RatPolynomial& f)
{
    if (f.is_zero()) return false;
    return gcd(f, f.derivative()).degree() == 0;
}

std::vector<RatPolynomial> sturm_chain(const RatPolynomial& f)
{
    std::vector<RatPolynomial> chain{f, f.derivative()};
    while (!chain.back().is_zero()) {
        RatPolynomial r = -(chain[chain.size() - 2] % chain.back());
        if (r.is_zero()) break;
        chain.push_back(std::move(r));
    }
    if (chain.back().is_zero()) chain.pop_back();
    return chain;
}

namespace {

int sign_of(const Rational& x) { return sgn(x); }

int variations(const std::vector<int>& signs)
{
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int variations_at(const std::vector<RatPolynomial>& chain, const Rational& x)
{
    std::vector<int> s;
    s.reserve(chain.size());
    for (const auto& p : chain) s.push_back(sign_of(p(x)));
    return variations(s);
}

int variations_at_infinity(const std::vector<RatPolynomial>& chain, bool positive)
{
    std::vector<int> s;
    for (const auto& p : chain) {
        int sg = sign_of(p.leading());
        if (!positive && p.degree() % 2 != 0) sg = -sg;
        s.push_back(sg);
    }
    return variations(s);
}

}  // namespace

int sturm_real_root_count(const RatPolynomial& f)
{
    if (f.is_zero()) throw Error("squarefree required");
    if (!is_squarefree(f)) throw Error("squarefree required");
    if (f.degree() == 0) return 0;
    auto chain = sturm_chain(f);
    return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

int sturm_count_between(const std::vector<RatPolynomial>& chain, const Rational& a, const Rational& b)
{
    return variations_at(chain, a) - variations_at(chain, b);
}

Rational root_bound(const RatPolynomial& f)
{
    if (f.degree() < 1) return 1;
    Rational m = 0;
    for (int k = 0; k < f.degree(); ++k) {
        Rational r = abs(f.coeff(static_cast<std::size_t>(k)) / f.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

const RatPolynomial& cyclotomic_polynomial(unsigned long n)
{
    static std::mutex mu;
    static std::map<unsigned long, RatPolynomial> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    if (n == 0) throw Error("cyclotomic polynomial of index 0");
    RatPolynomial p = RatPolynomial::monomial(1, n) - RatPolynomial::constant(1);
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d == 0) p = p / cyclotomic_polynomial(d);
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(p)).first->second;
}

std::string RatPolynomial::to_string(char var) const
{
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Rational a = abs(c);
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        if (k == 0 || a != 1) out << a.get_str();
        if (k > 0) out << var;
        if (k > 1) out << '^' << k;
        first = false;
    }
    return out.str();
}

}  // namespace leo
