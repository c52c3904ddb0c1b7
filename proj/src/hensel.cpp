#include "leo/hensel.hpp"

#include <algorithm>

namespace leo {

Integer eval_mod(const std::vector<Integer>& f, const Integer& x, const Integer& m)
{
    Integer acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod(acc * x + *it, m);
    return acc;
}

namespace {

std::vector<Integer> derivative(const std::vector<Integer>& f)
{
    std::vector<Integer> d;
    for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * static_cast<unsigned long>(k));
    return d;
}

}  // namespace

std::vector<unsigned long> roots_mod_p(const std::vector<Integer>& f, unsigned long p)
{
    std::vector<unsigned long> out;
    if (p < (1UL << 32)) {
        std::vector<unsigned long> c;
        for (const auto& a : f) c.push_back(mod(a, Integer(p)).get_ui());
        for (unsigned long x = 0; x < p; ++x) {
            unsigned long acc = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % p;
            if (acc == 0) out.push_back(x);
        }
        return out;
    }
    const Integer m(p);
    for (unsigned long x = 0; x < p; ++x) {
        if (eval_mod(f, Integer(x), m) == 0) out.push_back(x);
    }
    return out;
}

bool splits_completely_mod_p(const std::vector<Integer>& f, unsigned long p)
{
    if (f.size() < 2) return true;
    if (f.back() % p == 0) return false;
    return roots_mod_p(f, p).size() == f.size() - 1;
}

Integer hensel_lift_root(const std::vector<Integer>& f, const Integer& r, unsigned long p, long k)
{
    const auto df = derivative(f);
    const Integer pm(p);
    if (eval_mod(df, r, pm) == 0) throw Error("hensel_lift_root: root is not simple");
    Integer x = mod(r, pm);
    long prec = 1;
    while (prec < k) {
        prec = std::min(2 * prec, k);
        const Integer& m = prime_power(p, prec);
        Integer fx = eval_mod(f, x, m);
        auto inv = inverse_mod(eval_mod(df, x, m), m);
        if (!inv) throw Error("hensel_lift_root: derivative not invertible");
        x = mod(x - fx * *inv, m);
    }
    return x;
}

std::vector<Integer> padic_roots(const std::vector<Integer>& f, unsigned long p, long k)
{
    const auto df = derivative(f);
    std::vector<Integer> out;
    for (unsigned long r : roots_mod_p(f, p)) {
        if (eval_mod(df, Integer(r), Integer(p)) == 0) continue;
        out.push_back(hensel_lift_root(f, Integer(r), p, k));
    }
    return out;
}

}  // namespace leo
