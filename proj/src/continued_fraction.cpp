#include "leo/continued_fraction.hpp"

#include <map>

namespace leo {

std::vector<Integer> PeriodicExpansion::terms(std::size_t count) const
{
    std::vector<Integer> out;
    for (std::size_t k = 0; k < count; ++k) {
        if (k < preperiod.size()) out.push_back(preperiod[k]);
        else out.push_back(period[(k - preperiod.size()) % period.size()]);
    }
    return out;
}

PeriodicExpansion quadratic_continued_fraction(const Integer& P0, const Integer& D, const Integer& Q0)
{
    if (D <= 0 || is_perfect_square(D)) throw Error("D must be a positive non-square");
    if (Q0 == 0 || (D - P0 * P0) % Q0 != 0) throw Error("Q must divide D - P^2");
    Integer root;
    mpz_sqrt(root.get_mpz_t(), D.get_mpz_t());

    // State (P, Q) represents (P + sqrt D) / Q; the expansion repeats as soon
    // as a state recurs.
    std::map<std::pair<Integer, Integer>, std::size_t> seen;
    std::vector<Integer> quotients;
    Integer P = P0, Q = Q0;
    while (true) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            PeriodicExpansion e;
            e.preperiod.assign(quotients.begin(), quotients.begin() + static_cast<long>(it->second));
            e.period.assign(quotients.begin() + static_cast<long>(it->second), quotients.end());
            return e;
        }
        seen.emplace(key, quotients.size());
        // a = floor((P + sqrt D) / Q), valid for either sign of Q.
        Integer a;
        if (Q > 0) {
            Integer num = P + root;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        } else {
            Integer num = P + root + 1;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        }
        quotients.push_back(a);
        Integer Pn = a * Q - P;
        Integer Qn = (D - Pn * Pn) / Q;
        P = std::move(Pn);
        Q = std::move(Qn);
    }
}

PeriodicExpansion sqrt_continued_fraction(const Integer& d)
{
    if (d < 2 || is_perfect_square(d)) throw Error("sqrt_continued_fraction: d must be a positive non-square");
    return quadratic_continued_fraction(0, d, 1);
}

std::vector<Convergent> convergents(const std::vector<Integer>& terms)
{
    std::vector<Convergent> out;
    Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
    // Standard recurrence seeded with p_{-1}/q_{-1} = 1/0, p_{-2}/q_{-2} = 0/1.
    for (const auto& a : terms) {
        Integer pn = a * p_prev + p;
        Integer qn = a * q_prev + q;
        p = std::move(p_prev);
        q = std::move(q_prev);
        p_prev = pn;
        q_prev = qn;
        out.push_back({std::move(pn), std::move(qn)});
    }
    return out;
}

}  // namespace leo
