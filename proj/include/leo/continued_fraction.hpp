#pragma once

#include "leo/exact.hpp"

#include <vector>

namespace leo {

/// Eventually periodic continued fraction [preperiod; period...].
struct PeriodicExpansion {
    std::vector<Integer> preperiod;
    std::vector<Integer> period;

    /// First `count` partial quotients.
    std::vector<Integer> terms(std::size_t count) const;
};

/// Expansion of sqrt(d) for d >= 2 not a perfect square: preperiod is the
/// single term floor(sqrt(d)), the period ends in 2 * floor(sqrt(d)).
PeriodicExpansion sqrt_continued_fraction(const Integer& d);

/// Expansion of (P + sqrt(D)) / Q with D > 0 not a square and Q | D - P^2.
PeriodicExpansion quadratic_continued_fraction(const Integer& P, const Integer& D, const Integer& Q);

struct Convergent {
    Integer p;
    Integer q;
};

/// Convergents p_k / q_k of the given partial quotients.
std::vector<Convergent> convergents(const std::vector<Integer>& terms);

}  // namespace leo
