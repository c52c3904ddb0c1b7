#include "doctest.h"

#include "leo/group_chars.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace leo;

namespace {

// Fixed cosets counted by listing the left cosets xH as element sets.
std::vector<long> brute_perm_character(const Subgroup& H)
{
    const PermGroup& G = *H.group;
    std::set<std::vector<int>> cosets;
    for (int x = 0; x < static_cast<int>(G.order()); ++x) {
        std::vector<int> c;
        for (int h : H.elements) c.push_back(G.mul(x, h));
        std::sort(c.begin(), c.end());
        cosets.insert(c);
    }
    std::vector<long> out;
    for (const auto& cls : G.classes()) {
        long fixed = 0;
        for (const auto& c : cosets) {
            std::vector<int> gc;
            for (int y : c) gc.push_back(G.mul(cls.front(), y));
            std::sort(gc.begin(), gc.end());
            fixed += gc == c;
        }
        out.push_back(fixed);
    }
    return out;
}

std::vector<CycloValue> as_row(const std::vector<long>& v)
{
    std::vector<CycloValue> r;
    for (long x : v) r.push_back(CycloValue::from_rational(1, Rational(x)));
    return r;
}

std::size_t index_of_name(const GroupTable& t, const std::string& name)
{
    auto it = std::find(t.names.begin(), t.names.end(), name);
    REQUIRE(it != t.names.end());
    return static_cast<std::size_t>(it - t.names.begin());
}

std::multiset<long> degrees(const GroupTable& t)
{
    std::multiset<long> d;
    for (const auto& row : t.characters) d.insert(row[0].rational_value().get_num().get_si());
    return d;
}

}  // namespace

TEST_CASE("tables are orthogonal")
{
    std::vector<std::string> tags = {"C:1",     "C:2",     "C:5",    "C:12",  "S3",    "S4",     "A4",
                                     "D:6",     "D:8",     "D:10",   "D:12",  "D:20",  "C3^1:C2", "C3^2:C2",
                                     "C3^3:C2", "Aff:2",   "Aff:3",  "Aff:4", "Aff:5", "Aff:7",  "Aff:8",
                                     "Aff:9",   "S3xC:2",  "C:2xC:2"};
    for (const auto& tag : tags) {
        CAPTURE(tag);
        auto t = group_table(tag);
        CHECK(t.characters.size() == t.class_count());
        CHECK(check_orthogonality(t));
        std::size_t total = 0;
        for (std::size_t c = 0; c < t.class_count(); ++c) total += t.class_size(c);
        CHECK(total == t.order());
    }
}

TEST_CASE("group orders and tags")
{
    CHECK(group_table("S4").order() == 24);
    CHECK(group_table("D:12").order() == 12);
    CHECK(group_table("D12").order() == 12);
    CHECK(group_table("Aff(5)").order() == 20);
    CHECK(group_table("Aff:5").class_count() == 5);
    CHECK(group_table("C3").order() == 3);
    CHECK(group_table("C3^2:C2").order() == 18);
    CHECK(group_table("S3xC:2").order() == 12);
    CHECK_THROWS_WITH(group_table("Q8"), doctest::Contains("unknown group tag"));
    CHECK_THROWS_WITH(group_table("Aff:6"), doctest::Contains("prime power"));
    CHECK_THROWS(group_table("D:7"));
}

TEST_CASE("Aff(q) tables")
{
    for (unsigned long q : {3UL, 4UL, 5UL, 7UL, 8UL, 9UL}) {
        auto t = aff_character_table(q);
        CAPTURE(q);
        CHECK(t.order() == q * (q - 1));
        std::multiset<long> expect;
        for (unsigned long j = 0; j + 1 < q; ++j) expect.insert(1);
        expect.insert(static_cast<long>(q) - 1);
        CHECK(degrees(t) == expect);
        const auto& tau = t.characters[index_of_name(t, "tau")];
        // Values: q - 1, -1 on the nontrivial translations, 0 elsewhere.
        long minus_ones = 0, zeros = 0;
        for (std::size_t c = 1; c < t.class_count(); ++c) {
            const Rational v = tau[c].rational_value();
            if (v == -1) minus_ones += static_cast<long>(t.class_size(c));
            if (v == 0) zeros += static_cast<long>(t.class_size(c));
        }
        CHECK(minus_ones == static_cast<long>(q) - 1);
        CHECK(zeros == static_cast<long>(q * (q - 1) - q));
    }
    // Aff(3) is S3 and Aff(4) is A4.
    CHECK(degrees(aff_character_table(3)) == degrees(s3_table()));
    CHECK(degrees(group_table("A4")) == std::multiset<long>{1, 1, 1, 3});
}

TEST_CASE("permutation characters")
{
    auto t = s3_table();
    const auto& G = t.group;
    // C3 = <(0 1 2)>.
    const int r = G->index_of({1, 2, 0});
    auto C3 = subgroup_generated_by(G, {r});
    auto chi = perm_character(C3);
    for (std::size_t c = 0; c < t.class_count(); ++c) {
        const Perm& g = G->element(G->classes()[c].front());
        long fixed = 0;
        for (std::size_t i = 0; i < 3; ++i) fixed += g[i] == i;
        const long expect = fixed == 3 ? 2 : (fixed == 1 ? 0 : 2);
        CHECK(chi[c] == expect);
    }
    auto whole = make_subgroup(G, {0, 1, 2, 3, 4, 5});
    CHECK(perm_character(whole) == std::vector<long>(t.class_count(), 1));
    auto trivial = make_subgroup(G, {0});
    auto reg = perm_character(trivial);
    CHECK(reg[0] == 6);
    for (std::size_t c = 1; c < reg.size(); ++c) CHECK(reg[c] == 0);

    const int s = G->index_of({1, 0, 2});
    CHECK_THROWS_WITH(make_subgroup(G, {0, s, r}), doctest::Contains("not a subgroup"));
    CHECK_THROWS_WITH(make_subgroup(G, {s}), doctest::Contains("not a subgroup"));

    for (const char* tag : {"S4", "D:12", "Aff:5", "C3^2:C2", "A4"}) {
        auto T = group_table(tag);
        for (const auto& H : subgroup_class_representatives(T.group)) CHECK(perm_character(H) == brute_perm_character(H));
    }
}

TEST_CASE("subgroup classes")
{
    CHECK(subgroup_class_representatives(group_table("S3").group).size() == 4);
    CHECK(subgroup_class_representatives(group_table("S4").group).size() == 11);
    CHECK(subgroup_class_representatives(group_table("A4").group).size() == 5);
    CHECK(subgroup_class_representatives(group_table("D:8").group).size() == 8);
    CHECK(subgroup_class_representatives(group_table("Aff:5").group).size() == 6);
    CHECK(subgroup_class_representatives(group_table("C:12").group).size() == 6);
    auto reps = subgroup_class_representatives(group_table("S4").group);
    CHECK(reps.front().order() == 24);
    CHECK(reps.back().order() == 1);
}

TEST_CASE("induction is transitive on S4")
{
    auto t = s4_table();
    const auto& G = t.group;
    // Chains H < K < S4 with K = S3 (point stabilizer), D8, A4.
    const int a = G->index_of({1, 0, 2, 3}), b = G->index_of({1, 2, 0, 3});
    const int c = G->index_of({1, 2, 3, 0}), d = G->index_of({2, 1, 0, 3});
    const int e = G->index_of({1, 2, 0, 3}), f = G->index_of({1, 0, 3, 2});
    std::vector<std::pair<Subgroup, Subgroup>> chains = {
        {subgroup_generated_by(G, {a}), subgroup_generated_by(G, {a, b})},
        {subgroup_generated_by(G, {c}), subgroup_generated_by(G, {c, d})},
        {subgroup_generated_by(G, {f}), subgroup_generated_by(G, {c, d})},
        {subgroup_generated_by(G, {e}), subgroup_generated_by(G, {e, f})},
        {subgroup_generated_by(G, {}), subgroup_generated_by(G, {e, f})},
    };
    for (const auto& [H, K] : chains) {
        REQUIRE(std::includes(K.elements.begin(), K.elements.end(), H.elements.begin(), H.elements.end()));
        // ind_H^K 1 on the elements of K: #{y in K : y^-1 k y in H} / |H|.
        std::vector<Rational> f_on_K;
        for (int k : K.elements) {
            long n = 0;
            for (int y : K.elements) n += H.contains(G->conjugate(k, y));
            f_on_K.push_back(Rational(n, static_cast<long>(H.order())));
        }
        auto two_step = induce(K, f_on_K);
        auto direct = perm_character(H);
        for (std::size_t i = 0; i < direct.size(); ++i) CHECK(two_step[i] == Rational(direct[i]));
    }
}

TEST_CASE("Artin induction")
{
    {
        auto t = s3_table();
        auto d = artin_induction_solve(t, t.characters[index_of_name(t, "standard")]);
        CHECK(d.n_rho == 1);
        REQUIRE(d.terms.size() == 2);
        std::map<std::size_t, Integer> by_order;
        for (const auto& term : d.terms) by_order[term.subgroup.order()] = term.coefficient;
        CHECK(by_order[6] == -1);
        CHECK(by_order[2] == 1);
    }
    for (unsigned long q : {3UL, 4UL, 5UL, 7UL}) {
        CAPTURE(q);
        auto t = aff_character_table(q);
        auto d = artin_induction_solve(t, t.characters[index_of_name(t, "tau")]);
        CHECK(d.n_rho == 1);
        REQUIRE(d.terms.size() == 2);
        std::map<std::size_t, Integer> by_order;
        for (const auto& term : d.terms) by_order[term.subgroup.order()] = term.coefficient;
        CHECK(by_order[q * (q - 1)] == -1);
        CHECK(by_order[q - 1] == 1);
        // The index-q subgroup is the stabilizer of a point, i.e. a copy of F_q^x.
        for (const auto& term : d.terms) {
            if (term.subgroup.order() != q - 1) continue;
            std::set<int> fixed_points;
            for (std::size_t i = 0; i < q; ++i) {
                bool fixed = true;
                for (int h : term.subgroup.elements) fixed = fixed && t.group->element(h)[i] == i;
                if (fixed) fixed_points.insert(static_cast<int>(i));
            }
            CHECK(fixed_points.size() == 1);
        }
    }
    {
        auto t = s4_table();
        auto d = artin_induction_solve(t, t.characters[0]);
        CHECK(d.n_rho == 1);
        REQUIRE(d.terms.size() == 1);
        CHECK(d.terms[0].subgroup.order() == 24);
        CHECK(d.terms[0].coefficient == 1);
    }
    {
        auto t = cyclic_table(3);
        CHECK_THROWS_WITH(artin_induction_solve(t, t.characters[1]), doctest::Contains("not rational-valued"));
        // chi + conj chi is rational.
        std::vector<CycloValue> s;
        for (std::size_t c = 0; c < t.class_count(); ++c) s.push_back(t.characters[1][c] + t.characters[2][c]);
        auto d = artin_induction_solve(t, s);
        CHECK(d.n_rho == 1);
    }
}

TEST_CASE("Perm(G) = R_C(G)")
{
    for (const char* tag : {"S3", "S4", "D:8", "D:12", "C:2", "C:2xC:2", "S3xC:2", "C3^2:C2"}) {
        CAPTURE(tag);
        auto t = group_table(tag);
        auto r = perm_equals_rc(t);
        CHECK(r.holds);
        CHECK(r.witnesses.size() == t.characters.size());
    }
    for (const char* tag : {"C:3", "A4", "Aff:5", "C:4"}) {
        CAPTURE(tag);
        auto r = perm_equals_rc(group_table(tag));
        CHECK_FALSE(r.holds);
        CHECK(r.reason.find("not rational-valued") != std::string::npos);
    }
}

TEST_CASE("perm characters of subgroups decompose with n_rho = 1")
{
    for (const char* tag : {"S4", "Aff:5", "D:12"}) {
        auto t = group_table(tag);
        for (const auto& H : subgroup_class_representatives(t.group)) {
            auto d = artin_induction_solve(t, as_row(perm_character(H)));
            CHECK(d.n_rho == 1);
            REQUIRE(d.terms.size() == 1);
            CHECK(d.terms[0].coefficient == 1);
        }
    }
}
