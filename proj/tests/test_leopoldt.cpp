#include "doctest.h"

#include "leo/leopoldt.hpp"

using namespace leo;

namespace {

std::vector<FactoredUnit> quad_units(long d) { return {quadratic_fundamental_unit(d)}; }

// Units recombined by an integer matrix: v_j = prod_k u_k^{a_{kj}}.
std::vector<FactoredUnit> recombine(const std::vector<FactoredUnit>& u, const std::vector<std::vector<long>>& a)
{
    std::vector<FactoredUnit> out;
    for (std::size_t j = 0; j < u.size(); ++j) {
        FactoredUnit v(u[0].field(), {});
        for (std::size_t k = 0; k < u.size(); ++k) v = v * u[k].pow(a[k][j]);
        out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("verify_leopoldt on small fields")
{
    for (unsigned long p : {3UL, 7UL}) {
        auto c = verify_leopoldt(quadratic_field(2), p, quad_units(2));
        CHECK(c.status == LeopoldtStatus::verified);
        CHECK(c.valuation.has_value());
    }
    for (unsigned long p : {3UL, 7UL, 11UL}) {
        auto c = verify_leopoldt(quadratic_field(5), p, quad_units(5));
        CHECK(c.status == LeopoldtStatus::verified);
    }
    auto c7 = verify_leopoldt(real_cyclotomic_field(7), 3, cyclotomic_xi_units(7));
    CHECK(c7.status == LeopoldtStatus::verified);
    CHECK(c7.precision == 10);
    CHECK(to_string(c7.status) == "verified");
}

TEST_CASE("verify_leopoldt trivial and cap semantics")
{
    auto q = NumberField::create(RatPolynomial{0, 1}, "Q");
    auto c = verify_leopoldt(q, 5, {});
    CHECK(c.status == LeopoldtStatus::verified);
    CHECK(c.valuation == 0);

    LeopoldtOptions o;
    o.max_precision = 1;
    auto u = verify_leopoldt(quadratic_field(2), 7, quad_units(2), o);
    CHECK(u.status == LeopoldtStatus::undetermined);
    CHECK(u.precision == 1);
    CHECK_FALSE(u.valuation.has_value());

    CHECK(default_max_precision(2, 3) == 10 * 2 * 7);
    CHECK(default_max_precision(3, 11) == 10 * 3 * 3);
}

TEST_CASE("verify_leopoldt input errors")
{
    auto c = verify_leopoldt(quadratic_field(2), 7, {});
    CHECK(c.status == LeopoldtStatus::error);
    CHECK(c.message.find("expected 1 units") != std::string::npos);

    auto f = quadratic_field(2);
    FactoredUnit three(f, {{f->from_rational(3), Integer(1)}});
    auto e = verify_leopoldt(f, 7, {three});
    CHECK(e.status == LeopoldtStatus::error);
    CHECK(e.message.find("not a unit") != std::string::npos);

    auto cubic = NumberField::create(RatPolynomial{-2, 0, 0, 1});
    CHECK(verify_leopoldt(cubic, 5, {}).message.find("totally real") != std::string::npos);
    auto noncyclic = NumberField::create(RatPolynomial{1, -4, 0, 1});  // disc 229, not a square
    auto g = verify_leopoldt(noncyclic, 5, {});
    CHECK(g.status == LeopoldtStatus::error);
    CHECK(g.message.find("not Galois") != std::string::npos);
    CHECK(verify_leopoldt(f, 9, quad_units(2)).status == LeopoldtStatus::error);
    auto split = NumberField::create(RatPolynomial{-2, 0, 1} * RatPolynomial{-3, 0, 1});
    CHECK(verify_leopoldt(split, 5, {}).message.find("reducible") != std::string::npos);
}

TEST_CASE("row_sum_check")
{
    auto f = quadratic_field(2);
    auto autos = find_automorphisms(f).automorphisms;
    CHECK(row_sum_check(autos, quad_units(2), 7, 12) >= 10);
    FactoredUnit three(f, {{f->from_rational(3), Integer(1)}});
    CHECK_THROWS_WITH(row_sum_check(autos, {three}, 7, 12), doctest::Contains("unit norm violation"));
    CHECK(row_sum_check(autos, {}, 7, 12) == 12);

    auto c7 = real_cyclotomic_field(7);
    CHECK(row_sum_check(find_automorphisms(c7).automorphisms, cyclotomic_xi_units(7), 3, 15) >= 12);
}

TEST_CASE("regulator matrix at a split prime matches the component computation")
{
    struct Case {
        FieldPtr field;
        std::vector<FactoredUnit> units;
        unsigned long p;
    };
    std::vector<Case> cases{{quadratic_field(2), quad_units(2), 7},
                            {quadratic_field(5), quad_units(5), 11},
                            {real_cyclotomic_field(7), cyclotomic_xi_units(7), 13}};
    for (const auto& c : cases) {
        CAPTURE(c.field->label());
        const long M = 15;
        auto autos = find_automorphisms(c.field).automorphisms;
        auto A = EtaleAlgebra::create(c.p, c.field->integer_poly());
        PrecisionBudget b(M);
        auto m = padic_regulator_matrix(A, autos, c.units, M, b);
        REQUIRE(m.size() == c.units.size());
        auto det = etale_det(m, b);
        auto roots = split_roots(A, M);
        auto comps = split_components(det, roots, M);
        auto oracle = split_prime_determinants(autos, c.units, c.p, M);
        REQUIRE(comps.size() == oracle.size());
        for (std::size_t k = 0; k < comps.size(); ++k) {
            CHECK(comps[k].agrees_with(oracle[k]));
            CHECK_FALSE(oracle[k].is_zero());
        }
        // Every component of the determinant is +-R_p, so valuations agree.
        for (std::size_t k = 1; k < oracle.size(); ++k) CHECK(oracle[k].valuation() == oracle[0].valuation());
    }
}

TEST_CASE("padic_log_scalar")
{
    // log(1 + 7) by the rational series.
    auto l = padic_log_scalar(PadicScalar::from_integer(8, 7, 12));
    Rational series = 0;
    for (long k = 1; k <= 30; ++k) {
        Rational t(ipow(Integer(7), static_cast<unsigned long>(k)), Integer(k));
        series += (k % 2) ? t : Rational(-t);
    }
    CHECK(l.agrees_with(PadicScalar::from_rational(series, 7, 12)));
    // Roots of unity have log zero; log is a homomorphism.
    CHECK(padic_log_scalar(teichmuller(3, 7, 12)).is_zero());
    auto a = PadicScalar::from_integer(3, 5, 20), b = PadicScalar::from_rational(Rational(2, 7), 5, 20);
    CHECK(padic_log_scalar(a * b).agrees_with(padic_log_scalar(a) + padic_log_scalar(b)));
    CHECK_THROWS(padic_log_scalar(PadicScalar::from_integer(5, 5, 10)));
    auto c = PadicScalar::from_integer(3, 2, 20);
    CHECK(padic_log_scalar(c * c).agrees_with(padic_log_scalar(c).mul_exact(2)));
}

TEST_CASE("certificate valuation is intrinsic")
{
    auto f = real_cyclotomic_field(7);
    auto units = cyclotomic_xi_units(7);
    auto c10 = verify_leopoldt(f, 3, units);
    LeopoldtOptions o;
    o.start_precision = 40;
    auto c40 = verify_leopoldt(f, 3, units, o);
    REQUIRE(c10.status == LeopoldtStatus::verified);
    REQUIRE(c40.status == LeopoldtStatus::verified);
    CHECK(c10.valuation == c40.valuation);
}

TEST_CASE("recombining units shifts the valuation by v_p(det)")
{
    auto f = real_cyclotomic_field(7);
    auto units = cyclotomic_xi_units(7);
    auto base = verify_leopoldt(f, 3, units);
    REQUIRE(base.status == LeopoldtStatus::verified);
    auto u1 = verify_leopoldt(f, 3, recombine(units, {{2, 1}, {1, 1}}));
    CHECK(u1.valuation == base.valuation);
    auto u3 = verify_leopoldt(f, 3, recombine(units, {{3, 0}, {0, 1}}));
    CHECK(*u3.valuation == *base.valuation + 1);
    auto u9 = verify_leopoldt(f, 3, recombine(units, {{1, 4}, {2, -1}}));  // det -9
    CHECK(*u9.valuation == *base.valuation + 2);
}

TEST_CASE("choice of automorphism subset changes the determinant by sign")
{
    auto f = real_cyclotomic_field(7);
    auto units = cyclotomic_xi_units(7);
    auto autos = find_automorphisms(f).automorphisms;
    REQUIRE(autos.size() == 3);
    auto A = EtaleAlgebra::create(5, f->integer_poly());
    PrecisionBudget b(20);
    auto d1 = etale_det(padic_regulator_matrix(A, autos, units, 20, b), b);
    std::vector<Automorphism> other{autos[1], autos[2], autos[0]};
    auto d2 = etale_det(padic_regulator_matrix(A, other, units, 20, b), b);
    CHECK((d1.agrees_with(d2) || d1.agrees_with(-d2)));
    CHECK(d1.min_valuation() == d2.min_valuation());
}

TEST_CASE("Galois sextic with relation-search units")
{
    auto f = NumberField::create(RatPolynomial{-148, 0, 100, 0, -20, 0, 1}, "sextic");
    auto autos = find_automorphisms(f).automorphisms;
    RelationSearchOptions ro;
    ro.target = 5;
    ro.avoid_prime = 3;
    ro.automorphisms = autos;
    auto search = relation_search_units(f, ro);
    LeopoldtOptions o;
    o.automorphisms = autos;
    o.unit_method = "relation_search";
    o.seed = search.seed;
    auto c = verify_leopoldt(f, 3, search.units, o);
    CHECK(c.status == LeopoldtStatus::verified);
    MESSAGE("sextic p=3: M=" << c.precision << " v=" << (c.valuation ? *c.valuation : -1) << " " << c.ledger);
}
