#include "leo/units.hpp"

#include "leo/continued_fraction.hpp"
#include "leo/hensel.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace leo {

// ---------------------------------------------------------------------------
// FactoredUnit

FactoredUnit::FactoredUnit(FieldPtr field, std::vector<UnitFactor> factors)
    : field_(std::move(field)), factors_()
{
    for (auto& f : factors) {
        if (f.base.field()->poly() != field_->poly()) throw Error("unit factor from a different field");
        if (f.exponent != 0) factors_.push_back(std::move(f));
    }
}

FactoredUnit FactoredUnit::from_element(const NfElement& a) { return FactoredUnit(a.field(), {{a, Integer(1)}}); }

bool FactoredUnit::has_unit_norm() const
{
    std::vector<Rational> norms;
    std::vector<Integer> exps;
    for (const auto& f : factors_) {
        norms.push_back(f.base.norm());
        exps.push_back(f.exponent);
    }
    return product_has_unit_abs(norms, exps);
}

int FactoredUnit::norm() const
{
    if (!has_unit_norm()) throw Error("not a unit: norm is not +-1");
    int sign = 1;
    for (const auto& f : factors_) {
        if (f.base.norm() < 0 && mpz_odd_p(f.exponent.get_mpz_t())) sign = -sign;
    }
    return sign;
}

FactoredUnit FactoredUnit::operator*(const FactoredUnit& o) const
{
    auto factors = factors_;
    for (const auto& f : o.factors_) {
        auto it = std::find_if(factors.begin(), factors.end(), [&](const UnitFactor& g) { return g.base == f.base; });
        if (it != factors.end()) it->exponent += f.exponent;
        else factors.push_back(f);
    }
    return FactoredUnit(field_, std::move(factors));
}

FactoredUnit FactoredUnit::pow(const Integer& e) const
{
    auto factors = factors_;
    for (auto& f : factors) f.exponent *= e;
    return FactoredUnit(field_, std::move(factors));
}

FactoredUnit FactoredUnit::apply(const Automorphism& s) const
{
    std::vector<UnitFactor> factors;
    for (const auto& f : factors_) factors.push_back({s.apply(f.base), f.exponent});
    return FactoredUnit(field_, std::move(factors));
}

NfElement FactoredUnit::expand(long max_total) const
{
    Integer total = 0;
    for (const auto& f : factors_) total += abs(f.exponent);
    if (total > max_total) throw Error("factored unit too large to expand");
    NfElement r = field_->one();
    for (const auto& f : factors_) r *= f.base.pow(f.exponent.get_si());
    return r;
}

BigReal FactoredUnit::log_abs(const BigReal& root) const
{
    BigReal acc(root.bits());
    for (const auto& f : factors_) {
        BigReal v = abs(f.base.evaluate_at(root));
        if (v.is_zero()) throw Error("factor vanishes at a real embedding");
        acc += log(v) * BigReal(f.exponent, root.bits());
    }
    return acc;
}

long FactoredUnit::log_bits(long bits) const
{
    long extra = 0;
    for (const auto& f : factors_) extra = std::max(extra, static_cast<long>(mpz_sizeinbase(f.exponent.get_mpz_t(), 2)));
    return bits + extra + 16;
}

EtaleElement FactoredUnit::padic_log(const AlgebraPtr& algebra, long M, PrecisionBudget& budget) const
{
    const unsigned long p = algebra->prime();
    std::optional<EtaleElement> acc;
    std::vector<UnitFactor> rest;
    for (const auto& f : factors_) {
        const Rational nm = f.base.norm();
        if (nm == 0 || valuation(nm, p) != 0) {
            rest.push_back(f);
            continue;
        }
        EtaleElement l = leo::padic_log(etale_embed(f.base, algebra, M), budget).mul_exact(f.exponent);
        acc = acc ? *acc + l : l;
    }
    if (!rest.empty()) {
        NfElement product = field_->one();
        try {
            product = FactoredUnit(field_, rest).expand();
        } catch (const Error&) {
            throw Error("not a p-adic unit");
        }
        EtaleElement l = leo::padic_log(etale_embed(product, algebra, M), budget);
        acc = acc ? *acc + l : l;
    }
    if (!acc) return algebra->zero(M);
    budget.record("factored log", acc->floor_precision());
    return *acc;
}

std::string FactoredUnit::to_string() const
{
    std::ostringstream out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        out << (i ? " * " : "") << "(" << factors_[i].base.to_string() << ")^" << leo::to_string(factors_[i].exponent);
    }
    if (factors_.empty()) out << "1";
    return out.str();
}

// ---------------------------------------------------------------------------
// Real quadratic fields

namespace {

void check_quadratic_d(long d)
{
    if (d <= 1 || !is_squarefree(static_cast<unsigned long>(d))) throw Error("d must be a squarefree integer > 1");
}

}  // namespace

FieldPtr quadratic_field(long d)
{
    check_quadratic_d(d);
    const std::string label = "Q(sqrt" + std::to_string(d) + ")";
    if (d % 4 == 1) return NumberField::create(RatPolynomial{-(d - 1) / 4, -1, 1}, label);
    return NumberField::create(RatPolynomial{-d, 0, 1}, label);
}

FactoredUnit quadratic_fundamental_unit(long d)
{
    const FieldPtr field = quadratic_field(d);
    const bool omega = d % 4 == 1;
    // Continued fraction of sqrt d, or of (1 + sqrt d)/2.
    const PeriodicExpansion cf = omega ? quadratic_continued_fraction(1, d, 2) : sqrt_continued_fraction(d);
    const std::size_t count = cf.preperiod.size() + 2 * cf.period.size() + 2;
    for (const auto& c : convergents(cf.terms(count))) {
        // p - q * conj(x) with x the expanded irrational.
        NfElement e = omega ? field->element({Rational(c.p - c.q), Rational(c.q)})
                            : field->element({Rational(c.p), Rational(c.q)});
        const Rational nm = e.norm();
        if (nm == 1 || nm == -1) return FactoredUnit::from_element(e);
    }
    throw Error("fundamental unit not found within two periods");
}

// ---------------------------------------------------------------------------
// Real cyclotomic fields

RatPolynomial chebyshev_sum(unsigned long k)
{
    RatPolynomial prev{2}, cur{0, 1};
    if (k == 0) return prev;
    const RatPolynomial w{0, 1};
    for (unsigned long i = 1; i < k; ++i) {
        RatPolynomial next = w * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

RatPolynomial real_cyclotomic_polynomial(unsigned long n)
{
    if (n < 3) throw Error("real cyclotomic polynomial needs n >= 3");
    const RatPolynomial& phi = cyclotomic_polynomial(n);
    const std::size_t d = static_cast<std::size_t>(phi.degree()) / 2;
    RatPolynomial psi = RatPolynomial::constant(phi.coeff(d));
    for (std::size_t k = 1; k <= d; ++k) psi += chebyshev_sum(k) * phi.coeff(d + k);
    return psi;
}

FieldPtr real_cyclotomic_field(unsigned long n)
{
    return NumberField::create(real_cyclotomic_polynomial(n), "Q(zeta" + std::to_string(n) + ")^+");
}

std::vector<unsigned long> real_galois_reps(unsigned long n)
{
    std::vector<unsigned long> reps;
    for (unsigned long c = 1; 2 * c < n || (n <= 2 && c == 1); ++c) {
        if (gcd_ul(c, n) == 1) reps.push_back(c);
    }
    return reps;
}

NfElement real_cyclotomic_conjugate(const FieldPtr& field, unsigned long n, unsigned long c)
{
    return field->from_polynomial(chebyshev_sum(c % n));
}

NfElement real_cyclotomic_galois(const NfElement& a, unsigned long n, unsigned long c)
{
    return a.substitute(real_cyclotomic_conjugate(a.field(), n, c));
}

NfElement cyclotomic_xi(const FieldPtr& field, unsigned long n)
{
    const auto fac = factor(n);
    const std::size_t s = fac.size();
    NfElement xi = field->one();
    for (unsigned long mask = 0; mask + 1 < (1UL << s); ++mask) {
        unsigned long nI = 1;
        for (std::size_t i = 0; i < s; ++i) {
            if (mask & (1UL << i)) nI *= static_cast<unsigned long>(ipow(Integer(fac[i].first), fac[i].second).get_ui());
        }
        xi *= field->from_rational(2) - real_cyclotomic_conjugate(field, n, nI);
    }
    return xi;
}

std::vector<FactoredUnit> cyclotomic_xi_units(unsigned long n)
{
    if (n < 5) throw Error("unit rank zero");
    if (n % 4 == 2) throw Error("n = 2 mod 4 is not a conductor");
    const FieldPtr field = real_cyclotomic_field(n);
    const NfElement xi = cyclotomic_xi(field, n);
    std::vector<FactoredUnit> units;
    for (unsigned long c : real_galois_reps(n)) {
        if (c == 1) continue;
        units.emplace_back(field, std::vector<UnitFactor>{{real_cyclotomic_galois(xi, n, c), Integer(1)}, {xi, Integer(-1)}});
    }
    if (units.empty()) throw Error("unit rank zero");
    return units;
}

// ---------------------------------------------------------------------------
// Archimedean independence

namespace {

class LogIndependence {
public:
    LogIndependence(const FieldPtr& field, long bits)
        : bits_(bits), root_bits_(bits + 64), roots_(field->real_roots(root_bits_))
    {
        if (static_cast<int>(roots_.size()) != field->degree()) throw Error("field is not totally real");
    }

    std::vector<BigReal> vector(const FactoredUnit& u) const
    {
        std::vector<BigReal> v;
        const long need = u.log_bits(bits_);
        if (need > root_bits_) {
            root_bits_ = std::max(need, 2 * root_bits_);
            roots_ = u.field()->real_roots(root_bits_);
        }
        for (std::size_t j = 0; j + 1 < roots_.size(); ++j) v.push_back(u.log_abs(roots_[j]));
        return v;
    }

    /// Adds u when its log vector is independent of those already accepted.
    bool try_add(const FactoredUnit& u)
    {
        std::vector<BigReal> v = vector(u);
        BigReal scale(1, bits_);
        for (const auto& x : v) scale = std::max(scale, abs(x));
        // Reduce against the accepted echelon rows.
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const std::size_t c = pivots_[r];
            if (v[c].is_zero()) continue;
            BigReal factor = v[c] / rows_[r][c];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= factor * rows_[r][j];
        }
        const BigReal threshold = ldexp(scale, -64);
        std::size_t best = v.size();
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (abs(v[j]) > threshold && (best == v.size() || abs(v[j]) > abs(v[best]))) best = j;
        }
        if (best == v.size()) return false;
        rows_.push_back(std::move(v));
        pivots_.push_back(best);
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    long bits_;
    mutable long root_bits_;
    mutable std::vector<BigReal> roots_;
    std::vector<std::vector<BigReal>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace

std::size_t archimedean_log_rank(const std::vector<FactoredUnit>& units, long bits)
{
    if (units.empty()) return 0;
    LogIndependence ind(units[0].field(), bits);
    for (const auto& u : units) ind.try_add(u);
    return ind.rank();
}

// ---------------------------------------------------------------------------
// Relation search

namespace {

struct FbPrime {
    unsigned long q;
    Integer root;  // root of f mod q
};

struct Relation {
    NfElement alpha;
    std::map<std::size_t, long> exps;  // factor-base index -> valuation
};

// Integral vectors x with x^T R = 0, via unimodular row reduction of [R | I].
std::vector<std::vector<Integer>> left_kernel(const std::vector<std::vector<Integer>>& R, std::size_t cols)
{
    const std::size_t r = R.size();
    std::vector<std::vector<Integer>> rows(r);
    for (std::size_t i = 0; i < r; ++i) {
        rows[i] = R[i];
        rows[i].resize(cols + r, Integer(0));
        rows[i][cols + i] = 1;
    }
    std::size_t top = 0;
    for (std::size_t c = 0; c < cols && top < r; ++c) {
        while (true) {
            std::size_t best = r;
            for (std::size_t i = top; i < r; ++i) {
                if (rows[i][c] == 0) continue;
                if (best == r || abs(rows[i][c]) < abs(rows[best][c])) best = i;
            }
            if (best == r) break;
            std::swap(rows[top], rows[best]);
            bool others = false;
            for (std::size_t i = top + 1; i < r; ++i) {
                if (rows[i][c] == 0) continue;
                Integer qt;
                mpz_fdiv_q(qt.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
                for (std::size_t j = c; j < cols + r; ++j) rows[i][j] -= qt * rows[top][j];
                if (rows[i][c] != 0) others = true;
            }
            if (!others) {
                ++top;
                break;
            }
        }
    }
    std::vector<std::vector<Integer>> kernel;
    for (std::size_t i = top; i < r; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < cols && zero; ++j) zero = rows[i][j] == 0;
        if (zero) kernel.emplace_back(rows[i].begin() + static_cast<long>(cols), rows[i].end());
    }
    return kernel;
}

// v_q(alpha(root)) with root lifted to q^k; alpha's denominators must be prime to q.
std::optional<long> valuation_at_root(const NfElement& alpha, unsigned long q, const Integer& root, long k)
{
    const Integer& m = prime_power(q, k);
    Integer acc = 0;
    for (auto it = alpha.coords().rbegin(); it != alpha.coords().rend(); ++it) {
        auto inv = inverse_mod(it->get_den(), m);
        if (!inv) return std::nullopt;
        acc = mod(acc * root + it->get_num() * *inv, m);
    }
    if (acc == 0) return k;
    return valuation(acc, q);
}

Integer linear_norm(const std::vector<Integer>& f, long a, long b)
{
    // Norm(a + b theta) = sum f_i (-a)^i (-b)^{n-i}.
    const std::size_t n = f.size() - 1;
    Integer total = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        total += f[i] * ipow(Integer(-a), static_cast<unsigned long>(i)) * ipow(Integer(-b), static_cast<unsigned long>(n - i));
    }
    return total;
}

}  // namespace

RelationSearchResult relation_search_units(const FieldPtr& field, const RelationSearchOptions& opts)
{
    RelationSearchResult out;
    out.seed = opts.seed;
    if (opts.target == 0) return out;
    const int n = field->degree();
    if (static_cast<std::size_t>(n - 1) < opts.target) throw Error("more units requested than the unit rank");
    const auto& f = field->integer_poly();
    const Integer disc = field->discriminant().get_num();
    const unsigned long bound = opts.bound ? opts.bound : 200UL * static_cast<unsigned long>(n * n);

    std::vector<FbPrime> fb;
    std::map<unsigned long, std::vector<std::size_t>> fb_by_prime;
    for (unsigned long q : primes_up_to(bound)) {
        if (disc % q == 0 || q == opts.avoid_prime) continue;
        for (unsigned long r : roots_mod_p(f, q)) {
            fb_by_prime[q].push_back(fb.size());
            fb.push_back({q, Integer(r)});
        }
    }
    if (fb.empty()) throw Error("unit search failed; supply units file");

    // Lifted roots, cached per (index, precision).
    std::map<std::pair<std::size_t, long>, Integer> lifted;
    auto lifted_root = [&](std::size_t idx, long k) -> const Integer& {
        auto key = std::make_pair(idx, k);
        auto it = lifted.find(key);
        if (it == lifted.end()) it = lifted.emplace(key, hensel_lift_root(f, fb[idx].root, fb[idx].q, k)).first;
        return it->second;
    };

    // Exponent vector of alpha over the factor base, or nullopt when alpha is
    // not supported on it.
    auto factor_element = [&](const NfElement& alpha, const Rational& nm) -> std::optional<std::map<std::size_t, long>> {
        if (nm == 0 || nm.get_den() != 1) return std::nullopt;
        Integer N = abs(nm.get_num());
        std::map<std::size_t, long> exps;
        for (const auto& [q, idxs] : fb_by_prime) {
            if (N == 1) break;
            if (N % q != 0) continue;
            long vq = 0;
            while (N % q == 0) {
                N /= q;
                ++vq;
            }
            long total = 0;
            for (std::size_t idx : idxs) {
                auto v = valuation_at_root(alpha, q, lifted_root(idx, vq + 1), vq + 1);
                if (!v) return std::nullopt;
                if (*v > 0) exps[idx] = *v;
                total += *v;
            }
            if (total != vq) return std::nullopt;  // support includes primes of higher degree
        }
        if (N != 1) return std::nullopt;
        return exps;
    };

    std::vector<Relation> relations;
    std::set<std::vector<Rational>> seen;
    auto add_relation = [&](const NfElement& alpha, const Rational& nm) {
        if (!seen.insert(alpha.coords()).second) return;
        if (!seen.insert((-alpha).coords()).second) return;
        auto exps = factor_element(alpha, nm);
        if (exps) relations.push_back({alpha, std::move(*exps)});
    };

    std::mt19937_64 rng(opts.seed);
    auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

    LogIndependence independence(field, 192);
    std::vector<FactoredUnit> units;
    std::size_t last_attempt = 0;

    auto try_units = [&]() {
        std::set<std::size_t> cols_used;
        for (const auto& r : relations) {
            for (const auto& [idx, e] : r.exps) cols_used.insert(idx);
        }
        std::map<std::size_t, std::size_t> col_index;
        for (std::size_t idx : cols_used) col_index.emplace(idx, col_index.size());
        std::vector<std::vector<Integer>> R;
        for (const auto& r : relations) {
            std::vector<Integer> row(col_index.size(), Integer(0));
            for (const auto& [idx, e] : r.exps) row[col_index[idx]] = e;
            R.push_back(std::move(row));
        }
        for (const auto& x : left_kernel(R, col_index.size())) {
            std::vector<UnitFactor> factors;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i] != 0) factors.push_back({relations[i].alpha, x[i]});
            }
            if (factors.empty()) continue;
            FactoredUnit u(field, std::move(factors));
            if (!u.has_unit_norm()) continue;
            std::vector<FactoredUnit> candidates{u};
            for (const auto& s : opts.automorphisms) {
                if (!s.is_identity()) candidates.push_back(u.apply(s));
            }
            for (const auto& c : candidates) {
                if (independence.try_add(c)) units.push_back(c);
                if (units.size() == opts.target) return true;
            }
        }
        return false;
    };

    for (long trial = 0; trial < opts.budget; ++trial) {
        out.trials = trial + 1;
        std::vector<Rational> coords(static_cast<std::size_t>(n), Rational(0));
        Rational nm;
        const bool linear = n < 3 || draw(0, 3) != 0;
        if (linear) {
            long a = draw(-opts.box, opts.box), b = draw(1, opts.box);
            if (gcd_ul(static_cast<unsigned long>(std::labs(a)), static_cast<unsigned long>(b)) != 1) continue;
            coords[0] = a;
            if (n >= 2) coords[1] = b;
            nm = n >= 2 ? Rational(linear_norm(f, a, b)) : Rational(a);
        } else {
            coords[0] = draw(-opts.box, opts.box);
            coords[1] = draw(-opts.box, opts.box);
            coords[2] = draw(1, opts.box);
        }
        NfElement alpha = field->element(coords);
        if (!linear) nm = alpha.norm();
        const std::size_t before = relations.size();
        add_relation(alpha, nm);
        if (relations.size() > before) {
            for (const auto& s : opts.automorphisms) {
                if (!s.is_identity()) add_relation(s.apply(alpha), nm);
            }
        }
        if (relations.size() >= last_attempt + 8) {
            last_attempt = relations.size();
            if (try_units()) {
                out.units = units;
                out.relations = relations.size();
                return out;
            }
        }
    }
    if (relations.size() > last_attempt && try_units()) {
        out.units = units;
        out.relations = relations.size();
        return out;
    }
    throw Error("unit search failed; supply units file");
}

}  // namespace leo
