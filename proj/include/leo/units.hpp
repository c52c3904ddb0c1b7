#pragma once

// Units of totally real fields, kept as formal products of field elements.

#include "leo/bigreal.hpp"
#include "leo/etale.hpp"
#include "leo/number_field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace leo {

struct UnitFactor {
    NfElement base;
    Integer exponent;
};

/// u = prod base_i^{e_i}. Never expanded unless the exponents are small.
class FactoredUnit {
public:
    FactoredUnit(FieldPtr field, std::vector<UnitFactor> factors);
    static FactoredUnit from_element(const NfElement& a);

    const FieldPtr& field() const { return field_; }
    const std::vector<UnitFactor>& factors() const { return factors_; }

    /// prod Norm(base)^e == +-1, decided without expanding the product.
    bool has_unit_norm() const;
    /// The norm (+1 or -1); throws when has_unit_norm() is false.
    int norm() const;

    FactoredUnit operator*(const FactoredUnit& o) const;
    FactoredUnit pow(const Integer& e) const;
    FactoredUnit apply(const Automorphism& s) const;

    /// The product as a field element; throws when sum |e_i| > max_total.
    NfElement expand(long max_total = 64) const;

    /// sum e_i log|base_i(root)| at a real root of the defining polynomial.
    BigReal log_abs(const BigReal& root) const;
    /// Bits of working precision needed so that log_abs keeps `bits` bits
    /// after cancellation between large exponents.
    long log_bits(long bits) const;

    /// sum e_i log_p(base_i) in the etale algebra. Bases that are not p-adic
    /// units are multiplied out first (their exponent mass must be small);
    /// otherwise throws "not a p-adic unit".
    EtaleElement padic_log(const AlgebraPtr& algebra, long M, PrecisionBudget& budget) const;

    std::string to_string() const;

private:
    FieldPtr field_;
    std::vector<UnitFactor> factors_;
};

// ---------------------------------------------------------------------------
// Real quadratic fields

/// Q(sqrt d) with basis (1, sqrt d), or (1, (1 + sqrt d)/2) when d = 1 mod 4.
FieldPtr quadratic_field(long d);

/// Fundamental unit > 1 of Q(sqrt d) from the continued fraction of sqrt d
/// (or of (1 + sqrt d)/2 when d = 1 mod 4), in quadratic_field(d).
FactoredUnit quadratic_fundamental_unit(long d);

// ---------------------------------------------------------------------------
// Real cyclotomic fields Q(zeta_n)^+

/// P_k with zeta^k + zeta^-k = P_k(zeta + zeta^-1); P_0 = 2, P_1 = w.
RatPolynomial chebyshev_sum(unsigned long k);
/// Minimal polynomial of zeta_n + zeta_n^-1 (n >= 3).
RatPolynomial real_cyclotomic_polynomial(unsigned long n);
FieldPtr real_cyclotomic_field(unsigned long n);
/// Representatives c in [1, n/2) of (Z/n)^x / {+-1}, increasing.
std::vector<unsigned long> real_galois_reps(unsigned long n);
/// sigma_c(theta) = zeta^c + zeta^-c as an element of the field.
NfElement real_cyclotomic_conjugate(const FieldPtr& field, unsigned long n, unsigned long c);
/// xi_n = prod over proper subsets I of the primes of n of (2 - P_{n_I}(theta)).
NfElement cyclotomic_xi(const FieldPtr& field, unsigned long n);
/// sigma_c applied to an element of Q(zeta_n)^+.
NfElement real_cyclotomic_galois(const NfElement& a, unsigned long n, unsigned long c);

/// xi_n^{sigma_c - 1} for every representative c != 1, as factors
/// (sigma_c(xi_n), +1), (xi_n, -1). Throws "unit rank zero" for n < 5.
std::vector<FactoredUnit> cyclotomic_xi_units(unsigned long n);

// ---------------------------------------------------------------------------
// Relation search

struct RelationSearchOptions {
    unsigned long bound = 0;        ///< factor base bound; 0 means 200 * degree^2
    std::size_t target = 0;         ///< number of independent units wanted
    long box = 10;                  ///< coefficient range for random elements
    long budget = 100000;           ///< maximum number of trial elements
    std::uint64_t seed = 1;
    unsigned long avoid_prime = 0;  ///< kept out of the factor base (so units are p-units)
    /// Automorphisms used to conjugate relations and units (may be empty).
    std::vector<Automorphism> automorphisms;
};

struct RelationSearchResult {
    std::vector<FactoredUnit> units;
    std::uint64_t seed = 0;
    long trials = 0;
    std::size_t relations = 0;
};

/// Finds `target` independent units from smooth elements over a factor base
/// of degree-one primes. Throws "unit search failed; supply units file" when
/// the trial budget is exhausted first.
RelationSearchResult relation_search_units(const FieldPtr& field, const RelationSearchOptions& opts);

/// Archimedean log vectors (log|sigma_j(u)|, first n-1 real embeddings) and
/// their rank with pivot threshold 2^-64.
std::size_t archimedean_log_rank(const std::vector<FactoredUnit>& units, long bits = 192);

}  // namespace leo
