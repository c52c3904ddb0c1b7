#include "leo/stark.hpp"

#include <set>
#include <sstream>

namespace leo {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
    }
    return "skipped";
}

namespace {

void require_even_primitive_nontrivial(const DirichletCharacter& chi)
{
    if (chi.is_trivial()) throw Error("trivial character not allowed");
    if (!chi.is_even()) throw Error("odd character not allowed");
    if (!chi.is_primitive()) throw Error("primitive required");
}

// Exponent of conj chi(c) on the xi side, honouring a corrupted value.
long xi_side_exponent(const DirichletCharacter& chi, unsigned long c, const StarkCorruption& bad)
{
    if (bad.character_value && bad.character_value->first == c) return -bad.character_value->second;
    return -*chi.exponent(static_cast<long>(c));
}

long xi_exponent(unsigned long c, const StarkCorruption& bad)
{
    return 1 + (c == bad.xi_representative ? bad.xi_exponent_shift : 0);
}

// Agreement verdict: pass when the residual vanishes to p^{eff - 1}.
Verdict padic_verdict(long residual_valuation, long effective)
{
    if (effective - 1 < 1) return Verdict::skipped;
    return residual_valuation >= effective - 1 ? Verdict::pass : Verdict::fail;
}

}  // namespace

BigComplex xi_log_sum_archimedean(const DirichletCharacter& chi, long bits, const StarkCorruption& bad)
{
    require_even_primitive_nontrivial(chi);
    const unsigned long n = chi.modulus();
    const long wb = BigReal::working_bits(bits);
    const FieldPtr E = real_cyclotomic_field(n);
    const NfElement xi = cyclotomic_xi(E, n);
    const BigReal theta = BigReal(2, wb) * cos(BigReal::pi(wb) * BigReal(Rational(2, static_cast<long>(n)), wb));
    BigComplex sum(wb);
    for (unsigned long c : real_galois_reps(n)) {
        const BigReal v = real_cyclotomic_galois(xi, n, c).evaluate_at(theta);
        if (v.sign() <= 0) throw Error("conjugate of xi is not positive");
        const BigReal l = log(v) * BigReal(xi_exponent(c, bad), wb);
        sum += BigComplex::root_of_unity(xi_side_exponent(chi, c, bad), static_cast<long>(chi.order()), wb) * l;
    }
    return sum;
}

EtaleElement xi_log_sum_padic(const DirichletCharacter& chi, unsigned long p, long M, PrecisionBudget& budget,
                              const StarkCorruption& bad)
{
    require_even_primitive_nontrivial(chi);
    const unsigned long n = chi.modulus(), N = value_field_order(chi);
    const AlgebraPtr A = cyclotomic_algebra(N, p);
    const FieldPtr E = real_cyclotomic_field(n);
    const NfElement xi = cyclotomic_xi(E, n);
    const RatPolynomial theta_image = RatPolynomial::monomial(1, N / n) + RatPolynomial::monomial(1, N - N / n);
    auto embed = [&](const NfElement& a) { return A->from_polynomial(a.as_polynomial().compose(theta_image), M); };

    EtaleElement sum = A->zero(M);
    for (unsigned long c : real_galois_reps(n)) {
        const long e = xi_exponent(c, bad);
        if (c == 1 && e == 1) continue;  // sigma_1(xi)/xi = 1
        const FactoredUnit u(E, {{real_cyclotomic_galois(xi, n, c), Integer(e)}, {xi, Integer(-1)}});
        EtaleElement l = A->zero(M);
        std::vector<UnitFactor> rest;
        for (const auto& f : u.factors()) {
            if (valuation(f.base.norm(), p) != 0) {
                rest.push_back(f);
                continue;
            }
            l += padic_log(embed(f.base), budget).mul_exact(f.exponent);
        }
        if (!rest.empty()) l += padic_log(embed(FactoredUnit(E, rest).expand()), budget);
        const EtaleElement weight = CycloValue::root(chi.order(), xi_side_exponent(chi, c, bad)).to_etale(A, N, M);
        sum += weight * l;
    }
    budget.record("xi log sum", sum.floor_precision());
    return sum;
}

unsigned long frobenius_representative(unsigned long n, unsigned long p)
{
    if (n % p == 0) throw Error("Frobenius requires p prime to n");
    const FieldPtr E = real_cyclotomic_field(n);
    const NfElement tp = E->theta().pow(static_cast<long>(p));
    const Integer P(p);
    for (unsigned long c : real_galois_reps(n)) {
        const NfElement diff = tp - real_cyclotomic_conjugate(E, n, c);
        bool zero = true;
        for (const auto& x : diff.coords()) zero = zero && x.get_den() == 1 && x.get_num() % P == 0;
        if (zero) return c;
    }
    throw Error("Frobenius not found");
}

StarkReport check_stark_abelian(const DirichletCharacter& chi, unsigned long p, const StarkOptions& opts)
{
    require_even_primitive_nontrivial(chi);
    if (!is_prime(p)) throw Error("p must be prime");
    const unsigned long n = chi.modulus(), N = value_field_order(chi);
    StarkReport r;
    {
        std::ostringstream d;
        d << "chi mod " << n << " #" << chi.index() << " (order " << chi.order() << ")";
        r.descriptor = d.str();
    }
    r.p = p;
    r.precision = opts.precision;
    r.real_bits = opts.real_bits;
    const bool p_divides = n % p == 0;
    // Frobenius path for the Euler factor; the character-table path lives
    // inside the L-value helpers.
    CycloValue frob_factor = CycloValue::from_rational(1, 1);
    if (!p_divides) {
        const long c = static_cast<long>(frobenius_representative(n, p));
        frob_factor = CycloValue::from_rational(chi.order(), 1) - chi.value(c) * Rational(1, static_cast<long>(p));
    }
    const CycloValue tau = gauss_sum(chi);

    // Archimedean half.
    {
        const long wb = BigReal::working_bits(opts.real_bits);
        const BigComplex S = xi_log_sum_archimedean(chi, opts.real_bits, opts.corruption);
        const BigComplex L = L1_truncated(chi, opts.real_bits, {p});
        const BigComplex rhs = BigComplex(BigReal(static_cast<long>(n), wb), BigReal(wb)) / tau.to_complex(wb) * L /
                               frob_factor.to_complex(wb);
        const BigComplex res = S + rhs;
        r.archimedean_residual = res.abs();
        r.archimedean = *r.archimedean_residual < ldexp(BigReal(1, wb), -opts.real_bits / 2) ? Verdict::pass : Verdict::fail;
    }

    // p-adic half.
    if (auto pp = prime_power_decomposition(n); pp && pp->first == p) {
        r.padic = Verdict::skipped;
        r.notes = "p-adic side: n is a power of p; use stark identity route";
        return r;
    }
    PrecisionBudget budget(opts.precision);
    const long M = opts.precision;
    const EtaleElement S = xi_log_sum_padic(chi, p, M, budget, opts.corruption);
    const EtaleElement L = L1_padic(chi, p, M, budget);
    const AlgebraPtr& A = L.algebra();
    const EtaleElement frob = etale_inverse(frob_factor.to_etale(A, N, M));
    const EtaleElement res = S + (L * tau.inverse().to_etale(A, N, M) * frob).mul_exact(static_cast<long>(n));
    budget.record("residual", res.floor_precision());
    r.effective_precision = budget.effective();
    r.padic_residual_valuation = res.min_valuation();
    r.padic = padic_verdict(res.min_valuation(), r.effective_precision);
    r.certified_digits = std::min(res.min_valuation(), r.effective_precision) - S.min_valuation();
    r.notes = "xi identity pair; " + budget.summary();
    return r;
}

// ---------------------------------------------------------------------------
// Real quadratic fields

QuadraticDiscriminant normalize_discriminant(long d)
{
    if (d <= 1) throw Error("discriminant must be > 1");
    if (d % 4 == 0) {
        const long m = d / 4;
        if (is_squarefree(static_cast<unsigned long>(m)) && (m % 4 == 2 || m % 4 == 3)) return {m, d};
    }
    if (is_squarefree(static_cast<unsigned long>(d))) return {d, d % 4 == 1 ? d : 4 * d};
    throw Error("not a fundamental discriminant or squarefree integer");
}

namespace {

struct Form {
    Integer a, b, c;
    bool operator<(const Form& o) const
    {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

}  // namespace

unsigned long narrow_class_number(long D)
{
    const Integer d(D);
    if (D <= 0 || is_perfect_square(d) || (D % 4 != 0 && D % 4 != 1)) throw Error("need a positive nonsquare discriminant");
    Integer s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
    // Reduced: 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b.
    auto reduced = [&](const Integer& a, const Integer& b) {
        if (b <= 0 || b * b >= d) return false;
        const Integer a2 = 2 * abs(a);
        const Integer lo = a2 + b;  // sqrt D < 2|a| + b
        if (lo * lo <= d) return false;
        const Integer hi = a2 - b;  // 2|a| - b < sqrt D
        return hi <= 0 || hi * hi < d;
    };
    std::set<Form> forms;
    for (Integer b = (D % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        const Integer t = (d - b * b) / 4;
        for (Integer a = 1; a <= t; ++a) {
            if (t % a != 0) continue;
            for (int sign : {1, -1}) {
                const Integer A = sign * a, C = -sign * (t / a);
                Integer g = gcd(gcd(A, b), C);
                if (g != 1 || !reduced(A, b)) continue;
                forms.insert({A, b, C});
            }
        }
    }
    unsigned long cycles = 0;
    std::set<Form> seen;
    for (const auto& f : forms) {
        if (seen.count(f)) continue;
        ++cycles;
        Form g = f;
        while (!seen.count(g)) {
            seen.insert(g);
            // rho: (a, b, c) -> (c, b', (b'^2 - D)/(4c)), b' = -b mod 2|c| in (sqrt D - 2|c|, sqrt D).
            const Integer m = 2 * abs(g.c);
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), Integer(s + g.b).get_mpz_t(), m.get_mpz_t());
            const Integer b2 = s - r;
            const Integer c2 = (b2 * b2 - d) / (4 * g.c);
            g = {g.c, b2, c2};
            if (!forms.count(g)) throw Error("reduction cycle left the reduced forms");
        }
    }
    return cycles;
}

unsigned long class_number(long D)
{
    const QuadraticDiscriminant q = normalize_discriminant(D);
    if (q.discriminant != D) throw Error("class_number expects a fundamental discriminant");
    const unsigned long hplus = narrow_class_number(D);
    return quadratic_fundamental_unit(q.radicand).norm() == -1 ? hplus : hplus / 2;
}

DirichletCharacter kronecker_character(long D)
{
    std::optional<DirichletCharacter> found;
    for (const auto& chi : enumerate_characters(static_cast<unsigned long>(D))) {
        if (chi.order() == 2 && chi.is_primitive() && chi.is_even()) {
            if (found) throw Error("quadratic character not unique");
            found = chi;
        }
    }
    if (!found) throw Error("no even primitive quadratic character of this conductor");
    return *found;
}

StarkReport check_colmez_quadratic(long d, unsigned long p, const ColmezOptions& opts)
{
    const QuadraticDiscriminant q = normalize_discriminant(d);
    const long D = q.discriminant;
    if (!is_prime(p)) throw Error("p must be prime");
    if (p == 2) throw Error("p must be odd");
    if (D % static_cast<long>(p) == 0) throw Error("ramified case not supported");
    StarkReport r;
    r.descriptor = "Q(sqrt" + std::to_string(q.radicand) + "), d_F = " + std::to_string(D);
    r.p = p;
    r.precision = opts.precision;
    r.real_bits = opts.real_bits;

    const DirichletCharacter chi = kronecker_character(D);
    const long h = opts.class_number_override ? *opts.class_number_override : static_cast<long>(class_number(D));
    const FieldPtr F = quadratic_field(q.radicand);
    FactoredUnit eps = quadratic_fundamental_unit(q.radicand);
    const NfElement sqrtD = q.radicand % 4 == 1 ? F->element({-1, 2}) : F->element({0, 2});

    // Orient the unit so that log|eps| / sqrt d_F is positive at a real place;
    // the p-adic side reuses the same unit.
    const long wb = BigReal::working_bits(opts.real_bits);
    const BigReal root = F->real_roots(wb).back();
    BigReal quotient = eps.log_abs(root) / sqrtD.evaluate_at(root);
    if (quotient.sign() < 0) {
        eps = eps.pow(-1);
        quotient = -quotient;
    }

    const BigReal L = L1_archimedean(chi, opts.real_bits).re;
    const BigReal rhs_inf = quotient * BigReal(2 * h, wb);
    r.archimedean_residual = abs(L - rhs_inf);
    r.archimedean = *r.archimedean_residual < ldexp(BigReal(1, wb), -opts.real_bits / 2) ? Verdict::pass : Verdict::fail;

    const long M = opts.precision;
    PrecisionBudget budget(M);
    const AlgebraPtr A = EtaleAlgebra::create(p, F->integer_poly());
    const EtaleElement Q = eps.padic_log(A, M, budget) * etale_inverse(etale_embed(sqrtD, A, M));
    if (Q.coeff(1).valuation() < Q.coeff(1).precision()) throw Error("regulator quotient is not a scalar");
    const bool split = *chi.exponent(static_cast<long>(p)) == 0;
    const Rational pr(static_cast<long>(p));
    const Rational euler = split ? Rational((1 - 1 / pr) * (1 - 1 / pr)) : Rational(1 - 1 / (pr * pr));
    const PadicScalar rhs = Q.coeff(0) * PadicScalar::from_rational(euler * 2 * h, p, kExactPrecision);

    const EtaleElement Lp = L1_padic(chi, p, M, budget);
    for (std::size_t k = 1; k < Lp.coeffs().size(); ++k) {
        if (Lp.coeff(k).valuation() < Lp.coeff(k).precision()) throw Error("L_p(1, chi_d) is not a scalar");
    }
    const PadicScalar lhs = Lp.coeff(0) * PadicScalar::from_rational(1 - 1 / pr, p, kExactPrecision);
    const PadicScalar res = lhs - rhs;
    budget.record("residual", res.precision());
    r.effective_precision = budget.effective();
    r.padic_residual_valuation = res.valuation();
    r.padic = padic_verdict(res.valuation(), r.effective_precision);
    r.certified_digits = std::min(res.valuation(), r.effective_precision) - lhs.valuation();
    r.notes = std::string(split ? "split" : "inert") + "; h = " + std::to_string(h) + "; " + budget.summary();
    return r;
}

StarkReport check_trivial_character(long d, unsigned long p, const ColmezOptions& opts)
{
    StarkReport r = check_colmez_quadratic(d, p, opts);
    const QuadraticDiscriminant q = normalize_discriminant(d);
    LeopoldtOptions lo;
    lo.unit_method = "quadratic";
    const LeopoldtCertificate cert = verify_leopoldt(quadratic_field(q.radicand), p, {quadratic_fundamental_unit(q.radicand)}, lo);
    r.notes += "; leopoldt " + to_string(cert.status);
    if (cert.status != LeopoldtStatus::verified) r.padic = Verdict::skipped;
    return r;
}

}  // namespace leo
