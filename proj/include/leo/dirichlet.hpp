#pragma once

// Dirichlet characters as exponent tables, Gauss sums, and the finite-sum
// values L(1, chi) and L_p(1, chi) of even characters.

#include "leo/cyclotomic.hpp"

#include <optional>
#include <vector>

namespace leo {

/// chi(a) = zeta_m^{k(a)} for gcd(a, n) = 1, and 0 otherwise.
class DirichletCharacter {
public:
    DirichletCharacter(unsigned long modulus, unsigned long order, std::vector<long> exponents, std::size_t index = 0);

    unsigned long modulus() const { return n_; }
    unsigned long order() const { return m_; }
    unsigned long conductor() const { return conductor_; }
    std::size_t index() const { return index_; }
    /// k(a mod n), or nullopt when gcd(a, n) > 1.
    std::optional<long> exponent(long a) const;
    const std::vector<long>& exponents() const { return k_; }

    /// chi(a) in Q(zeta_m).
    CycloValue value(long a) const;

    bool is_trivial() const { return m_ == 1; }
    bool is_even() const;
    bool is_primitive() const { return conductor_ == n_; }
    bool is_real() const { return m_ <= 2; }

    DirichletCharacter conj() const;
    /// chi^c.
    DirichletCharacter pow(long c) const;
    /// The primitive character mod the conductor inducing this one.
    DirichletCharacter primitive_core() const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b)
    {
        return a.n_ == b.n_ && a.m_ == b.m_ && a.k_ == b.k_;
    }

private:
    unsigned long n_;
    unsigned long m_;
    std::vector<long> k_;  // indexed by a mod n; -1 when not coprime
    unsigned long conductor_ = 1;
    std::size_t index_;
};

/// All phi(n) characters mod n. Index i runs lexicographically over the
/// exponent tuples on the generators of (Z/n)^x: for 2^k first -1 then 5,
/// then a primitive root for each odd prime power in increasing order.
/// Index 0 is the trivial character.
std::vector<DirichletCharacter> enumerate_characters(unsigned long n);

/// tau(chi) = sum_a chi(a) zeta_n^a in Q(zeta_lcm(n, m)); chi primitive.
CycloValue gauss_sum(const DirichletCharacter& chi);

/// 1 - chi(q)/q in Q(zeta_m).
CycloValue euler_factor(const DirichletCharacter& chi, unsigned long q);

/// L(1, chi) = -(tau/n) sum_a conj chi(a) log|1 - zeta_n^a| for chi even,
/// nontrivial and primitive. For real chi the imaginary part must vanish.
BigComplex L1_archimedean(const DirichletCharacter& chi, long bits);

/// L(1, chi) = -(1/n) sum_a chi(a) psi(a/n), any nontrivial chi.
BigComplex L1_digamma(const DirichletCharacter& chi, long bits);

/// L(1, chi) times prod_{q in primes} (1 - chi(q)/q).
BigComplex L1_truncated(const DirichletCharacter& chi, long bits, const std::vector<unsigned long>& primes);

/// L_p(1, chi) = -(1 - chi(p)/p)(tau/n) sum_a conj chi(a) log_p(1 - zeta_n^a)
/// in cyclotomic_algebra(lcm(n, m), p). Refuses with "use stark identity
/// route" when some 1 - zeta_n^a is not a p-adic unit (n a power of p).
/// Throws PrecisionError when the value is not certified nonzero.
EtaleElement L1_padic(const DirichletCharacter& chi, unsigned long p, long M, PrecisionBudget& budget);

/// L1_padic times prod_{q in primes} (1 - chi(q)/q) read p-adically.
EtaleElement L1_padic_truncated(const DirichletCharacter& chi, unsigned long p, long M,
                                const std::vector<unsigned long>& primes, PrecisionBudget& budget);

/// lcm(n, m): the cyclotomic field holding zeta_n and the character values.
unsigned long value_field_order(const DirichletCharacter& chi);

}  // namespace leo
