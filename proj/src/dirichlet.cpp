#include "leo/dirichlet.hpp"

#include <map>
#include <numeric>

namespace leo {

namespace {

long mod_long(long a, unsigned long m)
{
    const long r = a % static_cast<long>(m);
    return r < 0 ? r + static_cast<long>(m) : r;
}

struct Component {
    unsigned long prime_power;
    unsigned long order;
    // Discrete logs: residue mod prime_power -> exponent (-1 when absent).
    std::vector<long> log;
};

// Cyclic factors of (Z/n)^x with their discrete-log tables.
std::vector<Component> unit_group_components(unsigned long n)
{
    std::vector<Component> comps;
    for (const auto& [q, e] : factor(n)) {
        const unsigned long pp = static_cast<unsigned long>(ipow(Integer(q), e).get_ui());
        if (q == 2) {
            if (e == 1) continue;
            const unsigned long order5 = e >= 3 ? pp / 4 : 1;
            Component minus{pp, 2, std::vector<long>(pp, -1)};
            Component five{pp, order5, std::vector<long>(pp, -1)};
            for (unsigned long s = 0; s < 2; ++s) {
                unsigned long x = s ? pp - 1 : 1;
                for (unsigned long t = 0; t < order5; ++t) {
                    minus.log[x] = static_cast<long>(s);
                    five.log[x] = static_cast<long>(t);
                    x = (x * 5) % pp;
                }
            }
            comps.push_back(std::move(minus));
            if (e >= 3) comps.push_back(std::move(five));
        } else {
            const unsigned long g = primitive_root(pp);
            const unsigned long order = pp / q * (q - 1);
            Component c{pp, order, std::vector<long>(pp, -1)};
            unsigned long x = 1;
            for (unsigned long t = 0; t < order; ++t) {
                c.log[x] = static_cast<long>(t);
                x = static_cast<unsigned long>((static_cast<unsigned __int128>(x) * g) % pp);
            }
            comps.push_back(std::move(c));
        }
    }
    return comps;
}

std::vector<unsigned long> divisors(unsigned long n)
{
    std::vector<unsigned long> d;
    for (unsigned long k = 1; k <= n; ++k) {
        if (n % k == 0) d.push_back(k);
    }
    return d;
}

void require_even_primitive_nontrivial(const DirichletCharacter& chi)
{
    if (chi.is_trivial()) throw Error("trivial character not allowed");
    if (!chi.is_even()) throw Error("odd character not allowed");
    if (!chi.is_primitive()) throw Error("primitive required");
}

}  // namespace

DirichletCharacter::DirichletCharacter(unsigned long modulus, unsigned long order, std::vector<long> exponents,
                                       std::size_t index)
    : n_(modulus), m_(order), k_(std::move(exponents)), index_(index)
{
    if (n_ == 0 || m_ == 0 || k_.size() != n_) throw Error("malformed Dirichlet character");
    for (unsigned long a = 0; a < n_; ++a) {
        const bool coprime = gcd_ul(a, n_) == 1;
        if (coprime != (k_[a] >= 0)) throw Error("exponent table does not match (Z/n)^x");
        if (coprime) k_[a] = mod_long(k_[a], m_);
    }
    if (k_[1 % n_] != 0) throw Error("chi(1) must be 1");
    for (unsigned long a = 0; a < n_; ++a) {
        for (unsigned long b = a; b < n_ && k_[a] >= 0; ++b) {
            if (k_[b] < 0) continue;
            if (k_[(a * b) % n_] != mod_long(k_[a] + k_[b], m_)) throw Error("exponent table is not multiplicative");
        }
    }
    for (unsigned long d : divisors(n_)) {
        bool trivial_on_kernel = true;
        for (unsigned long a = 1 % d; a < n_ && trivial_on_kernel; a += d) {
            if (k_[a] > 0) trivial_on_kernel = false;
        }
        if (trivial_on_kernel) {
            conductor_ = d;
            break;
        }
    }
}

std::optional<long> DirichletCharacter::exponent(long a) const
{
    const long k = k_[static_cast<std::size_t>(mod_long(a, n_))];
    if (k < 0) return std::nullopt;
    return k;
}

CycloValue DirichletCharacter::value(long a) const
{
    auto k = exponent(a);
    return k ? CycloValue::root(m_, *k) : CycloValue::zero(m_);
}

bool DirichletCharacter::is_even() const { return *exponent(-1) == 0; }

DirichletCharacter DirichletCharacter::conj() const { return pow(-1); }

DirichletCharacter DirichletCharacter::pow(long c) const
{
    std::vector<long> k(n_);
    long g = static_cast<long>(m_);
    for (unsigned long a = 0; a < n_; ++a) {
        k[a] = k_[a] < 0 ? -1 : mod_long(k_[a] * c, m_);
        if (k[a] > 0) g = std::gcd(g, k[a]);
    }
    // Reduce to the exact order of chi^c.
    const unsigned long order = m_ / static_cast<unsigned long>(g);
    for (auto& x : k) {
        if (x >= 0) x /= g;
    }
    return DirichletCharacter(n_, order, std::move(k));
}

DirichletCharacter DirichletCharacter::primitive_core() const
{
    const unsigned long d = conductor_;
    std::vector<long> k(d, -1);
    for (unsigned long b = 0; b < d; ++b) {
        if (gcd_ul(b, d) != 1) continue;
        for (unsigned long a = b; a < n_ + d; a += d) {
            if (gcd_ul(a % n_, n_) == 1) {
                k[b] = k_[a % n_];
                break;
            }
        }
    }
    return DirichletCharacter(d, m_, std::move(k));
}

std::vector<DirichletCharacter> enumerate_characters(unsigned long n)
{
    if (n == 0) throw Error("modulus must be positive");
    const auto comps = unit_group_components(n);
    unsigned long L = 1;
    for (const auto& c : comps) L = lcm_ul(L, c.order);
    // logs[a][i]: exponent of a on component i.
    std::vector<std::vector<long>> logs(n);
    for (unsigned long a = 0; a < n; ++a) {
        if (gcd_ul(a, n) != 1) continue;
        for (const auto& c : comps) logs[a].push_back(c.log[a % c.prime_power]);
    }
    std::vector<DirichletCharacter> out;
    std::vector<unsigned long> j(comps.size(), 0);
    while (true) {
        std::vector<long> k(n, -1);
        long g = static_cast<long>(L);
        for (unsigned long a = 0; a < n; ++a) {
            if (gcd_ul(a, n) != 1) continue;
            long s = 0;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                s = mod_long(s + static_cast<long>(j[i]) * logs[a][i] * static_cast<long>(L / comps[i].order), L);
            }
            k[a] = s;
            if (s > 0) g = std::gcd(g, s);
        }
        for (auto& x : k) {
            if (x >= 0) x /= g;
        }
        out.emplace_back(n, L / static_cast<unsigned long>(g), std::move(k), out.size());
        // Next tuple, last component fastest.
        std::size_t i = comps.size();
        while (i > 0) {
            --i;
            if (++j[i] < comps[i].order) break;
            j[i] = 0;
            if (i == 0) return out;
        }
        if (comps.empty()) return out;
    }
}

unsigned long value_field_order(const DirichletCharacter& chi) { return lcm_ul(chi.modulus(), chi.order()); }

CycloValue gauss_sum(const DirichletCharacter& chi)
{
    if (!chi.is_primitive()) throw Error("primitive required");
    const unsigned long n = chi.modulus(), m = chi.order(), N = value_field_order(chi);
    std::vector<Rational> c(N, Rational(0));
    for (unsigned long a = 0; a < n; ++a) {
        auto k = chi.exponent(static_cast<long>(a));
        if (!k) continue;
        c[(static_cast<unsigned long>(*k) * (N / m) + a * (N / n)) % N] += 1;
    }
    return CycloValue(N, RatPolynomial(std::move(c)));
}

CycloValue euler_factor(const DirichletCharacter& chi, unsigned long q)
{
    return CycloValue::from_rational(chi.order(), 1) - chi.value(static_cast<long>(q)) * Rational(1, static_cast<long>(q));
}

BigComplex L1_archimedean(const DirichletCharacter& chi, long bits)
{
    require_even_primitive_nontrivial(chi);
    const long wb = BigReal::working_bits(bits);
    const unsigned long n = chi.modulus();
    const BigReal pi = BigReal::pi(wb);
    BigComplex sum(wb);
    for (unsigned long a = 1; a < n; ++a) {
        auto k = chi.exponent(static_cast<long>(a));
        if (!k) continue;
        // log|1 - e^{2 pi i a/n}| = log(2 sin(pi a/n)).
        const BigReal l = log(BigReal(2, wb) * sin(pi * BigReal(Rational(static_cast<long>(a), static_cast<long>(n)), wb)));
        sum += BigComplex::root_of_unity(-*k, static_cast<long>(chi.order()), wb) * l;
    }
    const BigComplex tau = gauss_sum(chi).to_complex(wb);
    BigComplex L = tau * sum * BigReal(Rational(-1, static_cast<long>(n)), wb);
    if (chi.is_real()) {
        if (abs(L.im) > ldexp(BigReal(1, wb), -bits / 2)) throw Error("imaginary residue of a real L-value exceeds tolerance");
        L.im = BigReal(wb);
    }
    return L;
}

BigComplex L1_digamma(const DirichletCharacter& chi, long bits)
{
    if (chi.is_trivial()) throw Error("trivial character not allowed");
    const long wb = BigReal::working_bits(bits);
    const unsigned long n = chi.modulus();
    BigComplex sum(wb);
    for (unsigned long a = 1; a < n; ++a) {
        auto k = chi.exponent(static_cast<long>(a));
        if (!k) continue;
        const BigReal psi = digamma(BigReal(Rational(static_cast<long>(a), static_cast<long>(n)), wb));
        sum += BigComplex::root_of_unity(*k, static_cast<long>(chi.order()), wb) * psi;
    }
    return sum * BigReal(Rational(-1, static_cast<long>(n)), wb);
}

BigComplex L1_truncated(const DirichletCharacter& chi, long bits, const std::vector<unsigned long>& primes)
{
    BigComplex L = L1_archimedean(chi, bits);
    for (unsigned long q : primes) L = L * euler_factor(chi, q).to_complex(BigReal::working_bits(bits));
    return L;
}

EtaleElement L1_padic(const DirichletCharacter& chi, unsigned long p, long M, PrecisionBudget& budget)
{
    require_even_primitive_nontrivial(chi);
    if (!is_prime(p)) throw Error("p must be prime");
    const unsigned long n = chi.modulus(), N = value_field_order(chi);
    {
        auto pp = prime_power_decomposition(n);
        if (pp && pp->first == p) throw Error("use stark identity route");
    }
    const AlgebraPtr A = cyclotomic_algebra(N, p);
    std::optional<EtaleElement> sum;
    for (unsigned long a = 1; a < n; ++a) {
        if (!chi.exponent(static_cast<long>(a))) continue;
        const RatPolynomial one_minus = RatPolynomial{1} - RatPolynomial::monomial(1, a * (N / n));
        const EtaleElement l = padic_log(A->from_polynomial(one_minus, M), budget);
        const EtaleElement term = chi.value(static_cast<long>(a)).conj().to_etale(A, N, M) * l;
        sum = sum ? *sum + term : term;
    }
    const EtaleElement tau = gauss_sum(chi).to_etale(A, N, M);
    const EtaleElement euler = euler_factor(chi, p).to_etale(A, N, M);
    EtaleElement L = -(euler * tau * *sum).div_exact(n);
    budget.record("L_p(1, chi) assembly", L.floor_precision());
    if (!L.certified_nonzero()) throw PrecisionError("L_p(1, chi) not certified nonzero");
    return L;
}

EtaleElement L1_padic_truncated(const DirichletCharacter& chi, unsigned long p, long M,
                                const std::vector<unsigned long>& primes, PrecisionBudget& budget)
{
    EtaleElement L = L1_padic(chi, p, M, budget);
    const unsigned long N = value_field_order(chi);
    for (unsigned long q : primes) L = L * euler_factor(chi, q).to_etale(L.algebra(), N, M);
    return L;
}

}  // namespace leo
