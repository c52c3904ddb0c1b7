#pragma once

// Roots of integer polynomials modulo p and their Hensel lifts to Z/p^k.

#include "leo/exact.hpp"

#include <vector>

namespace leo {

/// f(x) mod m for an integer polynomial (lowest degree first).
Integer eval_mod(const std::vector<Integer>& f, const Integer& x, const Integer& m);

/// All roots of f in Z/p, by exhaustive evaluation (p small).
std::vector<unsigned long> roots_mod_p(const std::vector<Integer>& f, unsigned long p);

/// True when f mod p has deg f distinct roots in Z/p.
bool splits_completely_mod_p(const std::vector<Integer>& f, unsigned long p);

/// Lifts a simple root r of f mod p to a root mod p^k by Newton iteration.
Integer hensel_lift_root(const std::vector<Integer>& f, const Integer& r, unsigned long p, long k);

/// Roots of f in Z_p to precision p^k, lifted from the simple roots mod p.
std::vector<Integer> padic_roots(const std::vector<Integer>& f, unsigned long p, long k);

}  // namespace leo
