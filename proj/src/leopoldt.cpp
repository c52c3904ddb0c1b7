#include "leo/leopoldt.hpp"

#include <algorithm>
#include <cmath>

namespace leo {

std::string to_string(LeopoldtStatus s)
{
    switch (s) {
    case LeopoldtStatus::verified: return "verified";
    case LeopoldtStatus::undetermined: return "undetermined";
    case LeopoldtStatus::error: return "error";
    }
    return "error";
}

namespace {

// Rows sigma_i for the first `rows` automorphisms, columns units.
std::vector<std::vector<EtaleElement>> log_matrix(const AlgebraPtr& algebra, const std::vector<Automorphism>& autos,
                                                  const std::vector<FactoredUnit>& units, std::size_t rows, long M,
                                                  PrecisionBudget& budget)
{
    std::vector<std::vector<EtaleElement>> m;
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<EtaleElement> row;
        for (const auto& u : units) row.push_back(u.apply(autos[i]).padic_log(algebra, M, budget));
        m.push_back(std::move(row));
    }
    return m;
}

// Smallest valuation among coefficients certified nonzero, provided it lies
// below every coefficient's precision and the budget (one guard digit).
std::optional<long> certified_valuation(const EtaleElement& det, long effective)
{
    if (!det.certified_nonzero()) return std::nullopt;
    const long v = det.min_valuation();
    if (v < std::min(det.floor_precision(), effective) - 1) return v;
    return std::nullopt;
}

}  // namespace

std::vector<std::vector<EtaleElement>> padic_regulator_matrix(const AlgebraPtr& algebra,
                                                              const std::vector<Automorphism>& autos,
                                                              const std::vector<FactoredUnit>& units, long M,
                                                              PrecisionBudget& budget)
{
    if (units.empty()) return {};
    if (autos.size() < units.size() + 1) throw Error("need n automorphisms for n-1 units");
    return log_matrix(algebra, autos, units, units.size(), M, budget);
}

long row_sum_check(const std::vector<Automorphism>& autos, const std::vector<FactoredUnit>& units, unsigned long p,
                   long M)
{
    if (units.empty()) return M;
    const AlgebraPtr algebra = EtaleAlgebra::create(p, units[0].field()->integer_poly());
    PrecisionBudget budget(M);
    auto full = log_matrix(algebra, autos, units, autos.size(), M, budget);
    long least = M;
    for (std::size_t j = 0; j < units.size(); ++j) {
        EtaleElement sum = full[0][j];
        for (std::size_t i = 1; i < full.size(); ++i) sum += full[i][j];
        if (sum.certified_nonzero()) throw Error("unit norm violation or embedding bug");
        least = std::min(least, sum.floor_precision());
    }
    return least;
}

long default_max_precision(int degree, unsigned long p)
{
    long k = 0;
    for (Integer q = 1; q < 1000; q *= p) ++k;  // ceil(log_p 1000)
    return 10L * degree * k;
}

LeopoldtCertificate verify_leopoldt(const FieldPtr& field, unsigned long p, const std::vector<FactoredUnit>& units,
                                    const LeopoldtOptions& opts)
{
    LeopoldtCertificate cert;
    cert.label = field->label();
    cert.p = p;
    cert.unit_method = opts.unit_method;
    cert.seed = opts.seed;
    cert.precision = opts.start_precision;
    try {
        if (!is_prime(p)) throw Error("p must be prime");
        const int n = field->degree();
        if (!field->is_totally_real()) throw Error("field is not totally real");
        if (!is_irreducible_totally_real(field->poly())) throw Error("polynomial is reducible");
        std::vector<Automorphism> autos = opts.automorphisms;
        if (autos.empty()) autos = find_automorphisms(field).automorphisms;
        if (static_cast<int>(autos.size()) != n) {
            throw Error("field is not Galois: found " + std::to_string(autos.size()) + " automorphisms");
        }
        if (static_cast<int>(units.size()) != n - 1) {
            throw Error("expected " + std::to_string(n - 1) + " units, got " + std::to_string(units.size()));
        }
        for (const auto& u : units) {
            if (u.field()->poly() != field->poly()) throw Error("unit from a different field");
            if (!u.has_unit_norm()) throw Error("not a unit: " + u.to_string());
        }
        if (n == 1) {
            cert.status = LeopoldtStatus::verified;
            cert.valuation = 0;
            return cert;
        }
        const long cap = opts.max_precision > 0 ? opts.max_precision : default_max_precision(n, p);
        const AlgebraPtr algebra = EtaleAlgebra::create(p, field->integer_poly());
        long M = std::min(opts.start_precision, cap);
        while (true) {
            cert.precision = M;
            PrecisionBudget budget(M);
            try {
                auto full = log_matrix(algebra, autos, units, autos.size(), M, budget);
                for (std::size_t j = 0; j < units.size(); ++j) {
                    EtaleElement sum = full[0][j];
                    for (std::size_t i = 1; i < full.size(); ++i) sum += full[i][j];
                    if (sum.certified_nonzero()) throw Error("unit norm violation or embedding bug");
                }
                full.pop_back();
                const EtaleElement det = etale_det(std::move(full), budget);
                cert.ledger = budget.summary();
                if (auto v = certified_valuation(det, budget.effective())) {
                    cert.status = LeopoldtStatus::verified;
                    cert.valuation = *v;
                    return cert;
                }
            } catch (const PrecisionError&) {
                cert.ledger = budget.summary();
            }
            if (M >= cap) break;
            M = std::min(2 * M, cap);
        }
        cert.status = LeopoldtStatus::undetermined;
        cert.precision = cap;
        return cert;
    } catch (const Error& e) {
        cert.status = LeopoldtStatus::error;
        cert.valuation.reset();
        cert.message = e.what();
        return cert;
    }
}

// ---------------------------------------------------------------------------
// Component oracle

PadicScalar padic_log_scalar(const PadicScalar& x)
{
    const unsigned long p = x.prime();
    if (x.is_zero() || x.valuation() != 0) throw Error("not a p-adic unit");
    const long N = x.precision();
    const unsigned long e = p == 2 ? 2 : p - 1;
    const PadicScalar one = PadicScalar::from_integer(1, p, N);
    const PadicScalar z = x.pow(e) - one;
    if (z.is_zero()) return PadicScalar::zero(p, z.precision());
    const long v = z.valuation();
    PadicScalar sum = PadicScalar::zero(p, N);
    PadicScalar power = z;
    for (long k = 1;; ++k) {
        // Later terms have valuation >= k v - floor(log_p k).
        long logk = 0;
        for (Integer t = p; t <= k; t *= p) ++logk;
        if (k * v - logk >= N) break;
        PadicScalar term = power.div_exact(k);
        sum = (k % 2) ? sum + term : sum - term;
        power = power * z;
    }
    return sum.div_exact(e);
}

namespace {

PadicScalar evaluate_at_root(const NfElement& a, const Integer& root, unsigned long p, long M)
{
    const PadicScalar r = PadicScalar::from_integer(root, p, M);
    PadicScalar acc = PadicScalar::zero(p, M);
    const auto& c = a.coords();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + PadicScalar::from_rational(*it, p, M);
    return acc;
}

PadicScalar component_log(const FactoredUnit& u, const Integer& root, unsigned long p, long M)
{
    PadicScalar acc = PadicScalar::zero(p, M);
    std::vector<UnitFactor> rest;
    for (const auto& f : u.factors()) {
        const Rational nm = f.base.norm();
        if (nm == 0 || valuation(nm, p) != 0) {
            rest.push_back(f);
            continue;
        }
        acc += padic_log_scalar(evaluate_at_root(f.base, root, p, M)).mul_exact(f.exponent);
    }
    if (!rest.empty()) acc += padic_log_scalar(evaluate_at_root(FactoredUnit(u.field(), rest).expand(), root, p, M));
    return acc;
}

}  // namespace

std::vector<PadicScalar> split_prime_determinants(const std::vector<Automorphism>& autos,
                                                  const std::vector<FactoredUnit>& units, unsigned long p, long M)
{
    if (units.empty()) return {};
    const FieldPtr field = units[0].field();
    const AlgebraPtr algebra = EtaleAlgebra::create(p, field->integer_poly());
    std::vector<PadicScalar> dets;
    for (const Integer& root : split_roots(algebra, M)) {
        std::vector<std::vector<PadicScalar>> m;
        for (std::size_t i = 0; i < units.size(); ++i) {
            std::vector<PadicScalar> row;
            for (const auto& u : units) row.push_back(component_log(u.apply(autos[i]), root, p, M));
            m.push_back(std::move(row));
        }
        dets.push_back(padic_solve(m, std::vector<PadicScalar>(units.size(), PadicScalar::zero(p, M))).det);
    }
    return dets;
}

}  // namespace leo
