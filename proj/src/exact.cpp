#include "leo/exact.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace leo {

long valuation(const Integer& n, unsigned long p)
{
    if (n == 0) throw Error("valuation of zero");
    Integer rest;
    Integer prime(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

long valuation(const Rational& q, unsigned long p)
{
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

const Integer& prime_power(unsigned long p, long k)
{
    if (k < 0) throw Error("negative exponent in prime_power");
    thread_local std::unordered_map<unsigned long, std::vector<Integer>> cache;
    auto& powers = cache[p];
    if (powers.empty()) powers.emplace_back(1);
    while (static_cast<long>(powers.size()) <= k) {
        powers.push_back(powers.back() * p);
    }
    return powers[static_cast<std::size_t>(k)];
}

Integer ipow(const Integer& base, unsigned long exponent)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Integer mod(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::optional<Integer> inverse_mod(const Integer& a, const Integer& m)
{
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

Integer powmod(const Integer& base, const Integer& exponent, const Integer& m)
{
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool is_prime(unsigned long n)
{
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<unsigned long> primes_up_to(unsigned long bound)
{
    std::vector<unsigned long> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (unsigned long i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::pair<unsigned long, unsigned>> factor(unsigned long n)
{
    std::vector<std::pair<unsigned long, unsigned>> out;
    for (unsigned long d = 2; d * d <= n; ++d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(unsigned long n)
{
    if (n == 0) return false;
    for (auto [q, e] : factor(n)) {
        if (e > 1) return false;
    }
    return true;
}

bool is_perfect_square(const Integer& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<std::pair<unsigned long, unsigned>> prime_power_decomposition(unsigned long q)
{
    if (q < 2) return std::nullopt;
    auto f = factor(q);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

unsigned long euler_phi(unsigned long n)
{
    unsigned long phi = n;
    for (auto [q, e] : factor(n)) phi = phi / q * (q - 1);
    return phi;
}

unsigned long gcd_ul(unsigned long a, unsigned long b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

unsigned long lcm_ul(unsigned long a, unsigned long b)
{
    return a / gcd_ul(a, b) * b;
}

unsigned long primitive_root(unsigned long prime_pow)
{
    auto pp = prime_power_decomposition(prime_pow);
    if (!pp || pp->first == 2) throw Error("primitive root requires an odd prime power");
    const unsigned long phi = euler_phi(prime_pow);
    const auto phi_factors = factor(phi);
    for (unsigned long g = 2; g < prime_pow; ++g) {
        if (g % pp->first == 0) continue;
        bool ok = true;
        for (auto [q, e] : phi_factors) {
            if (powmod(Integer(g), Integer(phi / q), Integer(prime_pow)) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error("no primitive root found");
}

std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m,
                                             const Integer& bound)
{
    // Extended Euclid on (m, a), stopped at the first remainder <= bound.
    Integer r0 = m, r1 = mod(a, m);
    Integer t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rational out(r1, t1);
    out.canonicalize();
    return out;
}

Integer reconstruction_bound(const Integer& m)
{
    Integer half = m / 2;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), half.get_mpz_t());
    return r;
}

namespace {

// Refines a list of positive integers into a pairwise coprime base.
std::vector<Integer> coprime_base(std::vector<Integer> values)
{
    std::vector<Integer> base;
    for (auto& v : values) {
        if (v > 1) base.push_back(v);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < base.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
                if (g == 1) continue;
                Integer a = base[i] / g, b = base[j] / g;
                base.erase(base.begin() + static_cast<long>(j));
                base.erase(base.begin() + static_cast<long>(i));
                for (Integer* c : {&g, &a, &b}) {
                    if (*c > 1) base.push_back(*c);
                }
                changed = true;
            }
        }
    }
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    return base;
}

// Exponent of each coprime base element in n (n is a product of base elements).
std::vector<Integer> exponents_over(const std::vector<Integer>& base, Integer n)
{
    std::vector<Integer> e(base.size(), 0);
    for (std::size_t k = 0; k < base.size(); ++k) {
        while (n % base[k] == 0) {
            n /= base[k];
            e[k] += 1;
        }
    }
    if (n != 1) throw Error("coprime base does not cover value");
    return e;
}

}  // namespace

bool product_has_unit_abs(const std::vector<Rational>& bases,
                          const std::vector<Integer>& exponents)
{
    if (bases.size() != exponents.size()) throw Error("size mismatch");
    std::vector<Integer> parts;
    for (const auto& b : bases) {
        if (b == 0) return false;
        parts.push_back(abs(b.get_num()));
        parts.push_back(b.get_den());
    }
    const auto base = coprime_base(parts);
    std::vector<Integer> total(base.size(), 0);
    for (std::size_t i = 0; i < bases.size(); ++i) {
        auto num = exponents_over(base, abs(bases[i].get_num()));
        auto den = exponents_over(base, bases[i].get_den());
        for (std::size_t k = 0; k < base.size(); ++k) {
            total[k] += exponents[i] * (num[k] - den[k]);
        }
    }
    return std::all_of(total.begin(), total.end(), [](const Integer& t) { return t == 0; });
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0) throw Error("cannot parse rational: " + text);
    if (q.get_den() == 0) throw Error("zero denominator: " + text);
    q.canonicalize();
    return q;
}

}  // namespace leo
