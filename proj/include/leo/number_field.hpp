#pragma once

#include "leo/bigreal.hpp"
#include "leo/exact.hpp"
#include "leo/polynomial.hpp"

#include <memory>
#include <string>
#include <vector>

namespace leo {

class NumberField;
class NfElement;
using FieldPtr = std::shared_ptr<const NumberField>;

/// E = Q[x]/(f) for a monic squarefree integer polynomial f.
///
/// Irreducibility over Q is the caller's claim; construction only checks
/// monic, integral and squarefree.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static FieldPtr create(const RatPolynomial& poly, std::string label = {});

    const RatPolynomial& poly() const { return poly_; }
    const std::vector<Integer>& integer_poly() const { return int_poly_; }
    int degree() const { return poly_.degree(); }
    const std::string& label() const { return label_; }

    NfElement zero() const;
    NfElement one() const;
    NfElement theta() const;
    NfElement from_rational(const Rational& r) const;
    NfElement element(std::vector<Rational> coords) const;
    NfElement from_polynomial(const RatPolynomial& g) const;

    Rational discriminant() const { return poly_discriminant(poly_); }
    bool is_totally_real() const { return sturm_real_root_count(poly_) == degree(); }

    /// Real roots of f, increasing, to `bits` bits.
    std::vector<BigReal> real_roots(long bits) const { return leo::real_roots(poly_, bits); }

private:
    NumberField(RatPolynomial poly, std::string label);

    RatPolynomial poly_;
    std::vector<Integer> int_poly_;
    std::string label_;
};

/// Irreducibility over Q of a monic integral squarefree f with only real
/// roots: no product over at most n/2 of its roots is an integer polynomial
/// dividing f.
bool is_irreducible_totally_real(const RatPolynomial& f);

/// Element of E in the power basis 1, theta, ..., theta^{n-1}.
class NfElement {
public:
    NfElement(FieldPtr field, std::vector<Rational> coords);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }
    RatPolynomial as_polynomial() const { return RatPolynomial(coords_); }

    bool is_zero() const;
    bool is_rational() const;
    bool is_integral_in_power_basis() const;

    NfElement operator-() const;
    NfElement& operator+=(const NfElement& o);
    NfElement& operator-=(const NfElement& o);
    NfElement& operator*=(const NfElement& o);
    NfElement& operator*=(const Rational& c);
    friend NfElement operator+(NfElement a, const NfElement& b) { return a += b; }
    friend NfElement operator-(NfElement a, const NfElement& b) { return a -= b; }
    friend NfElement operator*(NfElement a, const NfElement& b) { return a *= b; }
    friend NfElement operator*(NfElement a, const Rational& c) { return a *= c; }
    friend bool operator==(const NfElement& a, const NfElement& b);

    /// Inverse via the extended gcd with f; throws "zero divisor" on 0.
    NfElement inverse() const;
    /// Integer power, negative exponents through inverse().
    NfElement pow(long e) const;

    Rational norm() const;
    Rational trace() const;

    /// this(image): substitute theta -> image (image in the same field).
    NfElement substitute(const NfElement& image) const;

    /// Value at a real root of the defining polynomial.
    BigReal evaluate_at(const BigReal& root) const { return evaluate(as_polynomial(), root); }

    std::string to_string() const;

private:
    void check_same_field(const NfElement& o) const;

    FieldPtr field_;
    std::vector<Rational> coords_;
};

/// Norm_{E/Q}(a) = Res(f, a(x)).
Rational nf_norm(const NfElement& a);

enum class NfOp { Add, Sub, Mul, Div, Inv };

/// Ring operation dispatch (Inv ignores b).
NfElement nf_arith(const NfElement& a, const NfElement& b, NfOp op);

/// theta -> theta_image, extended Q-linearly.
class Automorphism {
public:
    Automorphism(FieldPtr field, NfElement theta_image);

    const NfElement& theta_image() const { return image_; }
    const FieldPtr& field() const { return field_; }
    bool is_identity() const;

    NfElement apply(const NfElement& a) const { return a.substitute(image_); }
    /// (this o other)(theta) = this(other(theta)).
    Automorphism compose(const Automorphism& other) const;

    friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.image_ == b.image_; }

private:
    FieldPtr field_;
    NfElement image_;
};

struct AutomorphismSearchOptions {
    long start_digits = 16;     ///< initial p-adic precision of the lifted roots
    long max_digits = 1024;     ///< precision cap
    unsigned long max_aux_prime = 200000;
};

struct AutomorphismSearch {
    std::vector<Automorphism> automorphisms;  ///< identity first, then lexicographic images
    bool galois_verified = false;             ///< |automorphisms| == degree
    unsigned long aux_prime = 0;
    long digits_used = 0;
    std::string warning;
};

/// All roots of f lying in E, found by Hensel-lifting the roots of f at an
/// auxiliary prime where f splits completely, interpolating candidate images
/// and rationally reconstructing them. Every returned image satisfies
/// f(image) = 0 exactly.
AutomorphismSearch find_automorphisms(const FieldPtr& field, const AutomorphismSearchOptions& opts = {});

/// Lexicographic order on coordinate vectors (identity sorts by its own coordinates).
bool lexicographic_less(const NfElement& a, const NfElement& b);

}  // namespace leo
