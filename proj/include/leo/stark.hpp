#pragma once

// Finite-sum checks of the abelian p-adic Stark identities at s = 1, and of
// the p-adic class number formula for real quadratic fields.

#include "leo/dirichlet.hpp"
#include "leo/leopoldt.hpp"
#include "leo/units.hpp"

#include <optional>
#include <string>

namespace leo {

enum class Verdict { pass, fail, skipped };
std::string to_string(Verdict v);

struct StarkReport {
    std::string descriptor;
    unsigned long p = 0;
    long precision = 0;            ///< requested p-adic precision M
    long effective_precision = 0;  ///< M minus recorded losses
    long real_bits = 0;
    std::optional<BigReal> archimedean_residual;
    std::optional<long> padic_residual_valuation;
    /// Digits of agreement relative to the size of the compared values.
    std::optional<long> certified_digits;
    Verdict archimedean = Verdict::skipped;
    Verdict padic = Verdict::skipped;
    std::string notes;

    bool passed() const { return archimedean == Verdict::pass && padic == Verdict::pass; }
};

/// Perturbations used as negative controls. Each one is applied to the
/// xi side only, so a working check must report fail.
struct StarkCorruption {
    /// Added to the exponent of sigma_c(xi) for the representative c.
    long xi_exponent_shift = 0;
    unsigned long xi_representative = 0;
    /// Replaces chi(c) by zeta_m^{k} on the xi side for this residue c.
    std::optional<std::pair<unsigned long, long>> character_value;
};

/// sum over c in real_galois_reps(n) of conj chi(c) log sigma_c(xi_n), with
/// sigma_c(xi_n) evaluated at theta = 2 cos(2 pi / n). chi even, primitive,
/// nontrivial.
BigComplex xi_log_sum_archimedean(const DirichletCharacter& chi, long bits, const StarkCorruption& bad = {});

/// The same sum with log_p, using the units sigma_c(xi_n) / xi_n, in
/// cyclotomic_algebra(lcm(n, m), p) with theta -> x^{N/n} + x^{-N/n}.
EtaleElement xi_log_sum_padic(const DirichletCharacter& chi, unsigned long p, long M, PrecisionBudget& budget,
                              const StarkCorruption& bad = {});

/// The representative c with sigma_c = Frobenius at p on Q(zeta_n)^+,
/// identified by theta^p = P_c(theta) mod (p, psi_n). Requires p prime to n.
unsigned long frobenius_representative(unsigned long n, unsigned long p);

struct StarkOptions {
    long precision = 10;
    long real_bits = 128;
    StarkCorruption corruption;
};

/// Archimedean: |S_inf + (n/tau) L_{p}(1, chi) (1 - chi(Frob_p)/p)^{-1}| below
/// 2^{-bits/2}, where L_{p} is L(1, chi) with the Euler factor at p removed
/// through the character table. p-adic: S_p + (n/tau) L_p(1, chi)
/// (1 - chi(Frob_p)/p)^{-1} vanishing mod p^{M - loss - 1}.
StarkReport check_stark_abelian(const DirichletCharacter& chi, unsigned long p, const StarkOptions& opts = {});

// ---------------------------------------------------------------------------
// Real quadratic fields

struct QuadraticDiscriminant {
    long radicand;       ///< squarefree m with F = Q(sqrt m)
    long discriminant;   ///< d_F
};
/// Accepts a squarefree m > 1 or a fundamental discriminant; 2 -> 8.
QuadraticDiscriminant normalize_discriminant(long d);

/// Number of cycles of reduced indefinite forms of discriminant D (the
/// narrow class number).
unsigned long narrow_class_number(long D);
/// h_F from the narrow class number and the sign of the fundamental unit's norm.
unsigned long class_number(long D);

/// The even primitive quadratic character of conductor d_F.
DirichletCharacter kronecker_character(long D);

struct ColmezOptions {
    long precision = 20;
    long real_bits = 128;
    std::optional<long> class_number_override;  ///< negative control
};

/// (1 - 1/p) L_p(1, chi_d) against 2^2 h R_p / (w sqrt d_F) prod_{v|p}(1 - Nv^-1),
/// w = 2, compared as scalars in Q_p; the archimedean side compares L(1, chi_d)
/// with 2 h R_inf / sqrt d_F. p odd and prime to d_F.
StarkReport check_colmez_quadratic(long d, unsigned long p, const ColmezOptions& opts = {});

/// The trivial-character statement for F/F: the Colmez comparison plus a
/// Leopoldt certificate; p-adic verdict skipped when the certificate is not
/// verified.
StarkReport check_trivial_character(long d, unsigned long p, const ColmezOptions& opts = {});

}  // namespace leo
