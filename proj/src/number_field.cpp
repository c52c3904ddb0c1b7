#include "leo/number_field.hpp"

#include "leo/hensel.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace leo {

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(RatPolynomial poly, std::string label)
    : poly_(std::move(poly)), label_(std::move(label))
{
    if (poly_.degree() < 1) throw Error("number field: degree must be at least 1");
    if (!poly_.is_monic()) throw Error("number field: defining polynomial must be monic");
    if (!poly_.has_integer_coefficients()) throw Error("number field: coefficients must be integers");
    if (!is_squarefree(poly_)) throw Error("number field: defining polynomial must be squarefree");
    int_poly_ = poly_.integer_coefficients();
    if (label_.empty()) label_ = poly_.to_string();
}

FieldPtr NumberField::create(const RatPolynomial& poly, std::string label)
{
    return FieldPtr(new NumberField(poly, std::move(label)));
}

NfElement NumberField::zero() const
{
    return NfElement(shared_from_this(), std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0)));
}

NfElement NumberField::one() const { return from_rational(1); }

NfElement NumberField::theta() const
{
    if (degree() == 1) return from_rational(-poly_.coeff(0));
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
    c[1] = 1;
    return NfElement(shared_from_this(), std::move(c));
}

NfElement NumberField::from_rational(const Rational& r) const
{
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
    c[0] = r;
    return NfElement(shared_from_this(), std::move(c));
}

NfElement NumberField::element(std::vector<Rational> coords) const
{
    return NfElement(shared_from_this(), std::move(coords));
}

NfElement NumberField::from_polynomial(const RatPolynomial& g) const
{
    RatPolynomial r = g % poly_;
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
    for (std::size_t k = 0; k < r.coefficients().size(); ++k) c[k] = r.coefficients()[k];
    return NfElement(shared_from_this(), std::move(c));
}

// ---------------------------------------------------------------------------
// NfElement

NfElement::NfElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords))
{
    if (!field_) throw Error("element without a field");
    if (static_cast<int>(coords_.size()) != field_->degree()) throw Error("coordinate count must equal the field degree");
}

void NfElement::check_same_field(const NfElement& o) const
{
    if (field_ != o.field_ && field_->poly() != o.field_->poly()) throw Error("elements of different fields");
}

bool NfElement::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool NfElement::is_rational() const
{
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

bool NfElement::is_integral_in_power_basis() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

NfElement NfElement::operator-() const
{
    NfElement r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

NfElement& NfElement::operator+=(const NfElement& o)
{
    check_same_field(o);
    for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
    return *this;
}

NfElement& NfElement::operator-=(const NfElement& o)
{
    check_same_field(o);
    for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
    return *this;
}

NfElement& NfElement::operator*=(const NfElement& o)
{
    check_same_field(o);
    *this = field_->from_polynomial(as_polynomial() * o.as_polynomial());
    return *this;
}

NfElement& NfElement::operator*=(const Rational& c)
{
    for (auto& x : coords_) x *= c;
    return *this;
}

bool operator==(const NfElement& a, const NfElement& b)
{
    return a.field_->poly() == b.field_->poly() && a.coords_ == b.coords_;
}

NfElement NfElement::inverse() const
{
    if (is_zero()) throw Error("zero divisor");
    auto eg = extended_gcd(as_polynomial(), field_->poly());
    if (eg.g.degree() != 0) throw Error("zero divisor");
    return field_->from_polynomial(eg.s);
}

NfElement NfElement::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    NfElement result = field_->one();
    NfElement base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1UL) result *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return result;
}

Rational NfElement::norm() const { return resultant(field_->poly(), as_polynomial()); }

Rational NfElement::trace() const
{
    // Newton sums of the roots of f give Tr(theta^k).
    const int n = field_->degree();
    const auto& f = field_->poly();
    std::vector<Rational> power_sums(static_cast<std::size_t>(n), Rational(0));
    power_sums[0] = n;
    for (int k = 1; k < n; ++k) {
        // p_k + a_{n-1} p_{k-1} + ... + a_{n-k+1} p_1 + k a_{n-k} = 0 (monic f).
        Rational s = f.coeff(static_cast<std::size_t>(n - k)) * k;
        for (int i = 1; i < k; ++i) s += f.coeff(static_cast<std::size_t>(n - i)) * power_sums[static_cast<std::size_t>(k - i)];
        power_sums[static_cast<std::size_t>(k)] = -s;
    }
    Rational t = 0;
    for (int k = 0; k < n; ++k) t += coords_[static_cast<std::size_t>(k)] * power_sums[static_cast<std::size_t>(k)];
    return t;
}

NfElement NfElement::substitute(const NfElement& image) const
{
    check_same_field(image);
    NfElement acc = field_->zero();
    for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) {
        acc *= image;
        acc.coords_[0] += *it;
    }
    return acc;
}

std::string NfElement::to_string() const { return as_polynomial().to_string('t'); }

Rational nf_norm(const NfElement& a) { return a.norm(); }

NfElement nf_arith(const NfElement& a, const NfElement& b, NfOp op)
{
    switch (op) {
    case NfOp::Add: return a + b;
    case NfOp::Sub: return a - b;
    case NfOp::Mul: return a * b;
    case NfOp::Div: return a * b.inverse();
    case NfOp::Inv: return a.inverse();
    }
    throw Error("unknown operation");
}

// ---------------------------------------------------------------------------
// Automorphisms

Automorphism::Automorphism(FieldPtr field, NfElement theta_image)
    : field_(std::move(field)), image_(std::move(theta_image))
{
    // f(image) = 0 exactly; this also makes theta -> image a ring map.
    if (!(field_->poly().compose(image_.as_polynomial()) % field_->poly()).is_zero()) {
        throw Error("automorphism image is not a root of the defining polynomial");
    }
}

bool Automorphism::is_identity() const { return image_ == field_->theta(); }

Automorphism Automorphism::compose(const Automorphism& other) const
{
    return Automorphism(field_, other.image_.substitute(image_));
}

bool lexicographic_less(const NfElement& a, const NfElement& b)
{
    return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end());
}

namespace {

// Lagrange basis polynomials through the lifted roots, coefficients mod m.
std::vector<std::vector<Integer>> lagrange_basis(const std::vector<Integer>& roots, const Integer& m)
{
    const std::size_t n = roots.size();
    std::vector<std::vector<Integer>> basis;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Integer> poly{Integer(1)};
        Integer denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Integer> next(poly.size() + 1, Integer(0));
            for (std::size_t k = 0; k < poly.size(); ++k) {
                next[k + 1] += poly[k];
                next[k] -= poly[k] * roots[j];
            }
            for (auto& c : next) c = mod(c, m);
            poly = std::move(next);
            denom = mod(denom * (roots[i] - roots[j]), m);
        }
        auto inv = inverse_mod(denom, m);
        if (!inv) throw Error("lifted roots are not distinct modulo p");
        for (auto& c : poly) c = mod(c * *inv, m);
        basis.push_back(std::move(poly));
    }
    return basis;
}

// Value of an element at a p-adic root, modulo m (denominators must be units).
std::optional<Integer> eval_at_root(const NfElement& a, const Integer& root, const Integer& m)
{
    Integer acc = 0;
    for (auto it = a.coords().rbegin(); it != a.coords().rend(); ++it) {
        auto inv = inverse_mod(it->get_den(), m);
        if (!inv) return std::nullopt;
        acc = mod(acc * root + it->get_num() * *inv, m);
    }
    return acc;
}

unsigned long choose_aux_prime(const NumberField& field, unsigned long max_prime)
{
    const Rational disc = field.discriminant();
    for (unsigned long p : primes_up_to(max_prime)) {
        if (p < 3) continue;
        if (disc.get_num() % p == 0) continue;
        if (splits_completely_mod_p(field.integer_poly(), p)) return p;
    }
    return 0;
}

}  // namespace

AutomorphismSearch find_automorphisms(const FieldPtr& field, const AutomorphismSearchOptions& opts)
{
    AutomorphismSearch out;
    const int n = field->degree();
    if (n == 1) {
        out.automorphisms.emplace_back(field, field->theta());
        out.galois_verified = true;
        return out;
    }
    const unsigned long p = choose_aux_prime(*field, opts.max_aux_prime);
    if (p == 0) throw Error("increase precision: no completely split auxiliary prime below the search bound");
    out.aux_prime = p;

    // found[j]: automorphism sending the embedding root R_0 to R_j.
    std::map<std::size_t, Automorphism> found;
    const auto& f = field->integer_poly();

    long digits = opts.start_digits;
    for (;; digits = std::min(2 * digits, opts.max_digits)) {
        const Integer& m = prime_power(p, digits);
        const auto roots = padic_roots(f, p, digits);
        if (static_cast<int>(roots.size()) != n) throw Error("auxiliary prime does not split completely");
        const auto basis = lagrange_basis(roots, m);
        const Integer bound = reconstruction_bound(m);

        auto index_of_image = [&](const NfElement& image) -> std::optional<std::size_t> {
            auto v = eval_at_root(image, roots[0], m);
            if (!v) return std::nullopt;
            for (std::size_t j = 0; j < roots.size(); ++j) {
                if (roots[j] == *v) return j;
            }
            return std::nullopt;
        };
        auto record = [&](const Automorphism& a) {
            auto j = index_of_image(a.theta_image());
            if (j && !found.count(*j)) found.emplace(*j, a);
        };
        // Close the found set under composition.
        auto close = [&]() {
            bool grew = true;
            while (grew) {
                grew = false;
                std::vector<Automorphism> current;
                for (auto& [j, a] : found) current.push_back(a);
                for (const auto& a : current) {
                    for (const auto& b : current) {
                        auto c = a.compose(b);
                        auto j = index_of_image(c.theta_image());
                        if (j && !found.count(*j)) {
                            found.emplace(*j, c);
                            grew = true;
                        }
                    }
                }
            }
        };

        record(Automorphism(field, field->theta()));

        std::vector<std::size_t> perm(static_cast<std::size_t>(n));
        for (std::size_t target = 1; target < static_cast<std::size_t>(n); ++target) {
            if (found.count(target)) continue;
            // Enumerate permutations with perm[0] = target.
            std::vector<std::size_t> rest;
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
                if (i != target) rest.push_back(i);
            }
            std::sort(rest.begin(), rest.end());
            bool hit = false;
            do {
                perm[0] = target;
                std::copy(rest.begin(), rest.end(), perm.begin() + 1);
                std::vector<Rational> coeffs;
                bool ok = true;
                for (std::size_t k = 0; k < static_cast<std::size_t>(n) && ok; ++k) {
                    Integer c = 0;
                    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) c += roots[perm[i]] * basis[i][k];
                    auto r = rational_reconstruct(mod(c, m), m, bound);
                    if (!r) ok = false;
                    else coeffs.push_back(*r);
                }
                if (!ok) continue;
                NfElement image = field->element(coeffs);
                if (!(field->poly().compose(image.as_polynomial()) % field->poly()).is_zero()) continue;
                record(Automorphism(field, image));
                hit = true;
            } while (!hit && std::next_permutation(rest.begin(), rest.end()));
            if (hit) close();
        }

        out.digits_used = digits;
        if (static_cast<int>(found.size()) == n || digits >= opts.max_digits) break;
    }

    for (auto& [j, a] : found) out.automorphisms.push_back(a);
    std::sort(out.automorphisms.begin(), out.automorphisms.end(), [](const Automorphism& a, const Automorphism& b) {
        if (a.is_identity() != b.is_identity()) return a.is_identity();
        return lexicographic_less(a.theta_image(), b.theta_image());
    });
    out.galois_verified = static_cast<int>(out.automorphisms.size()) == n;
    if (!out.galois_verified) out.warning = "not Galois or precision insufficient";
    return out;
}

}  // namespace leo

namespace leo {

bool is_irreducible_totally_real(const RatPolynomial& f)
{
    const int n = f.degree();
    if (!f.is_monic() || !f.has_integer_coefficients() || !is_squarefree(f)) throw Error("need a monic integral squarefree polynomial");
    if (sturm_real_root_count(f) != n) throw Error("polynomial has non-real roots");
    if (n <= 1) return n == 1;
    // Factor coefficients are bounded by 2^n B^{n/2}, B the root bound.
    const Rational B = root_bound(f);
    const long bound_bits = static_cast<long>(mpz_sizeinbase(Integer(B.get_num() / B.get_den() + 1).get_mpz_t(), 2));
    const long bits = 64 + n + (n / 2 + 1) * bound_bits;
    const auto roots = real_roots(f, bits);
    std::vector<int> pick;
    // Subsets of size k in lexicographic order.
    for (int k = 1; 2 * k <= n; ++k) {
        pick.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<BigReal> c{BigReal(1, roots[0].bits())};
            for (int i : pick) {
                std::vector<BigReal> next(c.size() + 1, BigReal(roots[0].bits()));
                for (std::size_t j = 0; j < c.size(); ++j) {
                    next[j + 1] += c[j];
                    next[j] -= c[j] * roots[static_cast<std::size_t>(i)];
                }
                c = std::move(next);
            }
            std::vector<Rational> g;
            for (const auto& x : c) {
                Integer z;
                mpfr_get_z(z.get_mpz_t(), x.raw(), MPFR_RNDN);
                g.emplace_back(z);
            }
            if (divmod(f, RatPolynomial(std::move(g))).second.is_zero()) return false;
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return true;
}

}  // namespace leo
