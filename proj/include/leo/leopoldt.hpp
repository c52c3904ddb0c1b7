#pragma once

// Certifying non-vanishing of the p-adic regulator by escalating precision.

#include "leo/etale.hpp"
#include "leo/units.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace leo {

enum class LeopoldtStatus { verified, undetermined, error };
std::string to_string(LeopoldtStatus s);

struct LeopoldtCertificate {
    std::string label;
    unsigned long p = 0;
    LeopoldtStatus status = LeopoldtStatus::error;
    long precision = 0;                 ///< M used for the final attempt
    std::optional<long> valuation;      ///< least coefficient valuation of the determinant
    std::string unit_method;
    std::uint64_t seed = 0;
    std::string ledger;                 ///< precision ledger of the final attempt
    std::string message;                ///< diagnostic for status error
};

/// (log_p sigma_i(u_j)) for the first n-1 automorphisms in the given order,
/// entries in the etale algebra at starting precision M.
std::vector<std::vector<EtaleElement>> padic_regulator_matrix(const AlgebraPtr& algebra,
                                                              const std::vector<Automorphism>& autos,
                                                              const std::vector<FactoredUnit>& units, long M,
                                                              PrecisionBudget& budget);

/// Least valuation over the column sums of the full n x (n-1) log matrix
/// (all n automorphisms). Every sum must vanish to its precision; a column sum
/// certified nonzero throws "unit norm violation or embedding bug".
long row_sum_check(const std::vector<Automorphism>& autos, const std::vector<FactoredUnit>& units,
                   unsigned long p, long M);

struct LeopoldtOptions {
    long start_precision = 10;
    long max_precision = 0;  ///< 0 means 10 * degree * ceil(log_p 1000)
    std::string unit_method = "supplied";
    std::uint64_t seed = 0;
    /// Field automorphisms (identity first); found by search when empty.
    std::vector<Automorphism> automorphisms;
};

long default_max_precision(int degree, unsigned long p);

/// Doubles M from start to the cap until the regulator determinant has a
/// coefficient of valuation below its precision (with one guard digit).
/// Input problems (non-Galois field, wrong unit count, non-units) give
/// status error with a message; exhausting the cap gives undetermined.
LeopoldtCertificate verify_leopoldt(const FieldPtr& field, unsigned long p, const std::vector<FactoredUnit>& units,
                                    const LeopoldtOptions& opts = {});

/// Determinant of the same matrix computed component by component at the
/// roots of f in Z_p, with scalar logarithms and scalar elimination. Requires
/// f to split into distinct linear factors mod p; entries are in the order
/// of split_roots.
std::vector<PadicScalar> split_prime_determinants(const std::vector<Automorphism>& autos,
                                                  const std::vector<FactoredUnit>& units, unsigned long p, long M);

/// log_p on Q_p via log(x^{p-1}) / (p-1) (x^2 for p = 2); x must be a unit.
PadicScalar padic_log_scalar(const PadicScalar& x);

}  // namespace leo
