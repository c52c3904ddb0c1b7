#include "leo/group_chars.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace leo {

namespace {

std::string key_of(const Perm& g) { return std::string(g.begin(), g.end()); }

Perm compose(const Perm& a, const Perm& b)
{
    Perm out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
    return out;
}

Perm identity_perm(std::size_t n)
{
    Perm g(n);
    std::iota(g.begin(), g.end(), 0);
    return g;
}

Perm perm_from(std::size_t n, const std::function<std::size_t(std::size_t)>& f)
{
    Perm g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<std::uint8_t>(f(i));
    return g;
}

// Rows of a table from a value function on elements, read at class representatives.
void fill_rows(GroupTable& t, const std::vector<std::function<CycloValue(const Perm&)>>& chars)
{
    for (const auto& chi : chars) {
        std::vector<CycloValue> row;
        for (const auto& cls : t.group->classes()) row.push_back(chi(t.group->element(cls.front())));
        t.characters.push_back(std::move(row));
    }
}

CycloValue rat(long v) { return CycloValue::from_rational(1, Rational(v)); }

// Cycle lengths of a permutation, sorted decreasing.
std::vector<std::size_t> cycle_type(const Perm& g)
{
    std::vector<char> seen(g.size(), 0);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = g[j]) {
            seen[j] = 1;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

long fixed_points(const Perm& g)
{
    long f = 0;
    for (std::size_t i = 0; i < g.size(); ++i) f += g[i] == i;
    return f;
}

long perm_sign(const Perm& g)
{
    long s = 1;
    for (std::size_t len : cycle_type(g)) {
        if (len % 2 == 0) s = -s;
    }
    return s;
}

// F_q as integers 0..q-1 read as base-p digit vectors modulo a monic irreducible.
struct FiniteField {
    unsigned long p = 0, q = 0;
    unsigned k = 0;
    std::vector<int> add, mul, log;  // q x q tables; log[0] = -1
    unsigned long generator = 0;

    explicit FiniteField(unsigned long order)
    {
        auto pp = prime_power_decomposition(order);
        if (!pp) throw Error("q must be a prime power");
        if (order > 64) throw Error("q must be at most 64");
        p = pp->first;
        k = pp->second;
        q = order;
        add.assign(q * q, 0);
        for (unsigned long a = 0; a < q; ++a) {
            for (unsigned long b = 0; b < q; ++b) {
                unsigned long s = 0, pw = 1, x = a, y = b;
                for (unsigned i = 0; i < k; ++i) {
                    s += ((x % p + y % p) % p) * pw;
                    x /= p;
                    y /= p;
                    pw *= p;
                }
                add[a * q + b] = static_cast<int>(s);
            }
        }
        // Try monic moduli x^k + f until multiplication has no zero divisors.
        for (unsigned long f = 0; f < q; ++f) {
            if (try_modulus(f)) return;
        }
        throw Error("no irreducible modulus found");
    }

    std::vector<unsigned long> digits(unsigned long a) const
    {
        std::vector<unsigned long> d(k);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    }

    bool try_modulus(unsigned long f)
    {
        const auto low = digits(f);
        mul.assign(q * q, 0);
        for (unsigned long a = 0; a < q; ++a) {
            for (unsigned long b = 0; b < q; ++b) {
                const auto x = digits(a), y = digits(b);
                std::vector<unsigned long> z(2 * k, 0);
                for (unsigned i = 0; i < k; ++i) {
                    for (unsigned j = 0; j < k; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
                }
                // x^k = -low.
                for (unsigned d = 2 * k - 1; d >= k; --d) {
                    const unsigned long c = z[d];
                    z[d] = 0;
                    for (unsigned i = 0; i < k; ++i) z[d - k + i] = (z[d - k + i] + (p - low[i]) * c) % p;
                }
                unsigned long s = 0, pw = 1;
                for (unsigned i = 0; i < k; ++i) {
                    s += z[i] * pw;
                    pw *= p;
                }
                if (a && b && s == 0) return false;
                mul[a * q + b] = static_cast<int>(s);
            }
        }
        for (unsigned long g = 1; g < q; ++g) {
            std::vector<int> lg(q, -1);
            unsigned long x = 1;
            unsigned long e = 0;
            do {
                lg[x] = static_cast<int>(e++);
                x = static_cast<unsigned long>(mul[x * q + g]);
            } while (x != 1);
            if (e == q - 1) {
                generator = g;
                log = std::move(lg);
                return true;
            }
        }
        return false;
    }

    unsigned long neg(unsigned long a) const
    {
        for (unsigned long b = 0; b < q; ++b) {
            if (add[a * q + b] == 0) return b;
        }
        return 0;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, const std::vector<Perm>& generators) : degree_(degree)
{
    if (degree == 0 || degree > 255) throw Error("permutation degree out of range");
    for (const auto& g : generators) {
        if (g.size() != degree) throw Error("generator has the wrong degree");
    }
    elements_.push_back(identity_perm(degree));
    index_[key_of(elements_[0])] = 0;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        for (const auto& s : generators) {
            Perm h = compose(elements_[i], s);
            auto k = key_of(h);
            if (index_.count(k)) continue;
            if (elements_.size() >= kMaxOrder) throw Error("group order exceeds 4096");
            index_[k] = static_cast<int>(elements_.size());
            elements_.push_back(std::move(h));
        }
    }
    const std::size_t n = elements_.size();
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) table_[a * n + b] = static_cast<std::uint16_t>(index_of(compose(elements_[a], elements_[b])));
    }
    inverse_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (table_[a * n + b] == 0) {
                inverse_[a] = static_cast<int>(b);
                break;
            }
        }
    }
    class_of_.assign(n, -1);
    for (std::size_t g = 0; g < n; ++g) {
        if (class_of_[g] >= 0) continue;
        const int id = static_cast<int>(classes_.size());
        std::vector<int> cls;
        for (std::size_t x = 0; x < n; ++x) {
            const int c = conjugate(static_cast<int>(g), static_cast<int>(x));
            if (class_of_[static_cast<std::size_t>(c)] < 0) {
                class_of_[static_cast<std::size_t>(c)] = id;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes_.push_back(std::move(cls));
    }
}

int PermGroup::index_of(const Perm& g) const
{
    auto it = index_.find(key_of(g));
    if (it == index_.end()) throw Error("permutation is not in the group");
    return it->second;
}

std::vector<int> PermGroup::closure(const std::vector<int>& gens) const
{
    std::vector<char> in(order(), 0);
    std::vector<int> out{identity()};
    in[0] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (int s : gens) {
            const int h = mul(out[i], s);
            if (!in[static_cast<std::size_t>(h)]) {
                in[static_cast<std::size_t>(h)] = 1;
                out.push_back(h);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Families

GroupTable cyclic_table(unsigned long n)
{
    if (n == 0 || n > 255) throw Error("cyclic order out of range");
    GroupTable t;
    t.tag = "C:" + std::to_string(n);
    t.group = std::make_shared<PermGroup>(n, std::vector<Perm>{perm_from(n, [n](std::size_t i) { return (i + 1) % n; })});
    std::vector<std::function<CycloValue(const Perm&)>> chars;
    for (unsigned long j = 0; j < n; ++j) {
        chars.push_back([n, j](const Perm& g) { return CycloValue::root(n, static_cast<long>(j * g[0] % n)); });
        t.names.push_back("chi_" + std::to_string(j));
    }
    fill_rows(t, chars);
    return t;
}

GroupTable dihedral_table(unsigned long order)
{
    if (order < 6 || order % 2 || order / 2 > 255) throw Error("dihedral order must be even and >= 6");
    const unsigned long n = order / 2;
    GroupTable t;
    t.tag = "D:" + std::to_string(order);
    t.group = std::make_shared<PermGroup>(
        n, std::vector<Perm>{perm_from(n, [n](std::size_t i) { return (i + 1) % n; }),
                             perm_from(n, [n](std::size_t i) { return (n - i) % n; })});
    // g = r^a (rotation) or r^a s with s(i) = -i.
    auto rotation = [n](const Perm& g) { return g[1] == (g[0] + 1) % n; };
    auto sgn = [](unsigned long a) { return a % 2 ? -1L : 1L; };
    std::vector<std::function<CycloValue(const Perm&)>> chars;
    chars.push_back([](const Perm&) { return rat(1); });
    t.names.push_back("trivial");
    chars.push_back([rotation](const Perm& g) { return rat(rotation(g) ? 1 : -1); });
    t.names.push_back("sign");
    if (n % 2 == 0) {
        chars.push_back([sgn](const Perm& g) { return rat(sgn(g[0])); });
        t.names.push_back("eps_r");
        chars.push_back([rotation, sgn](const Perm& g) { return rat(rotation(g) ? sgn(g[0]) : -sgn(g[0])); });
        t.names.push_back("eps_rs");
    }
    for (unsigned long j = 1; 2 * j < n; ++j) {
        chars.push_back([rotation, n, j](const Perm& g) {
            if (!rotation(g)) return CycloValue::zero(n);
            const long a = static_cast<long>(j * g[0] % n);
            return CycloValue::root(n, a) + CycloValue::root(n, -a);
        });
        t.names.push_back("rho_" + std::to_string(j));
    }
    fill_rows(t, chars);
    return t;
}

GroupTable s3_table()
{
    GroupTable t;
    t.tag = "S3";
    t.group = std::make_shared<PermGroup>(3, std::vector<Perm>{{1, 0, 2}, {1, 2, 0}});
    fill_rows(t, {[](const Perm&) { return rat(1); }, [](const Perm& g) { return rat(perm_sign(g)); },
                  [](const Perm& g) { return rat(fixed_points(g) - 1); }});
    t.names = {"trivial", "sign", "standard"};
    return t;
}

GroupTable s4_table()
{
    GroupTable t;
    t.tag = "S4";
    t.group = std::make_shared<PermGroup>(4, std::vector<Perm>{{1, 0, 2, 3}, {1, 2, 3, 0}});
    auto two = [](const Perm& g) {
        const auto ct = cycle_type(g);
        if (ct[0] == 1) return rat(2);
        if (ct[0] == 3) return rat(-1);
        if (ct[0] == 2 && ct[1] == 2) return rat(2);
        return rat(0);
    };
    fill_rows(t, {[](const Perm&) { return rat(1); }, [](const Perm& g) { return rat(perm_sign(g)); }, two,
                  [](const Perm& g) { return rat(fixed_points(g) - 1); },
                  [](const Perm& g) { return rat((fixed_points(g) - 1) * perm_sign(g)); }});
    t.names = {"trivial", "sign", "two", "standard", "standard x sign"};
    return t;
}

GroupTable elementary_dihedral_table(unsigned m)
{
    if (m == 0 || m > 7) throw Error("(C3)^m x| C2 needs 1 <= m <= 7");
    const std::size_t deg = 3 * m;
    std::vector<Perm> gens;
    for (unsigned b = 0; b < m; ++b) {
        gens.push_back(perm_from(deg, [b](std::size_t i) { return i / 3 == b ? 3 * b + (i % 3 + 1) % 3 : i; }));
    }
    gens.push_back(perm_from(deg, [](std::size_t i) { return 3 * (i / 3) + (3 - i % 3) % 3; }));
    GroupTable t;
    t.tag = "C3^" + std::to_string(m) + ":C2";
    t.group = std::make_shared<PermGroup>(deg, gens);
    // Block b acts by j -> s j + v_b.
    auto shift = [](const Perm& g, unsigned b) { return static_cast<long>(g[3 * b] - 3 * b); };
    auto rotation = [](const Perm& g) { return g[1] == (g[0] + 1) % 3; };
    std::vector<std::function<CycloValue(const Perm&)>> chars;
    chars.push_back([](const Perm&) { return rat(1); });
    t.names.push_back("trivial");
    chars.push_back([rotation](const Perm& g) { return rat(rotation(g) ? 1 : -1); });
    t.names.push_back("sign");
    // w up to sign: first nonzero coordinate 1.
    unsigned long total = 1;
    for (unsigned i = 0; i < m; ++i) total *= 3;
    for (unsigned long code = 1; code < total; ++code) {
        std::vector<long> w(m);
        unsigned long c = code;
        for (unsigned i = 0; i < m; ++i) {
            w[i] = static_cast<long>(c % 3);
            c /= 3;
        }
        const long lead = *std::find_if(w.begin(), w.end(), [](long x) { return x != 0; });
        if (lead != 1) continue;
        chars.push_back([w, m, shift, rotation](const Perm& g) {
            if (!rotation(g)) return CycloValue::zero(3);
            long e = 0;
            for (unsigned b = 0; b < m; ++b) e += w[b] * shift(g, b);
            return CycloValue::root(3, e) + CycloValue::root(3, -e);
        });
        std::string name = "rho_";
        for (long x : w) name += std::to_string(x);
        t.names.push_back(name);
    }
    fill_rows(t, chars);
    return t;
}

GroupTable aff_character_table(unsigned long q)
{
    const auto F = std::make_shared<FiniteField>(q);
    const unsigned long g = F->generator;
    GroupTable t;
    t.tag = "Aff:" + std::to_string(q);
    t.group = std::make_shared<PermGroup>(
        q, std::vector<Perm>{perm_from(q, [F, q](std::size_t i) { return static_cast<std::size_t>(F->add[i * q + 1]); }),
                             perm_from(q, [F, q, g](std::size_t i) { return static_cast<std::size_t>(F->mul[i * q + g]); })});
    // g = (x -> a x + b): b = g(0), a = g(1) - b.
    auto slope = [F, q](const Perm& e) { return static_cast<unsigned long>(F->add[e[1] * q + F->neg(e[0])]); };
    std::vector<std::function<CycloValue(const Perm&)>> chars;
    for (unsigned long j = 0; j + 1 < q; ++j) {
        chars.push_back([F, slope, q, j](const Perm& e) {
            return CycloValue::root(q - 1, static_cast<long>(j) * F->log[slope(e)]);
        });
        t.names.push_back("chi_" + std::to_string(j));
    }
    chars.push_back([slope, q](const Perm& e) {
        if (slope(e) != 1) return rat(0);
        return rat(e[0] == 0 ? static_cast<long>(q) - 1 : -1);
    });
    t.names.push_back("tau");
    fill_rows(t, chars);
    return t;
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b)
{
    const std::size_t da = a.group->degree(), db = b.group->degree();
    if (da + db > 255) throw Error("permutation degree out of range");
    auto embed = [&](const Perm& g, std::size_t offset, std::size_t len) {
        Perm out = identity_perm(da + db);
        for (std::size_t i = 0; i < len; ++i) out[offset + i] = static_cast<std::uint8_t>(g[i] + offset);
        return out;
    };
    std::vector<Perm> gens;
    auto small_gens = [](const PermGroup& G) {
        std::vector<int> gens;
        std::vector<int> span{G.identity()};
        for (int x = 0; x < static_cast<int>(G.order()); ++x) {
            if (std::binary_search(span.begin(), span.end(), x)) continue;
            gens.push_back(x);
            span = G.closure(gens);
        }
        return gens;
    };
    for (int x : small_gens(*a.group)) gens.push_back(embed(a.group->element(x), 0, da));
    for (int x : small_gens(*b.group)) gens.push_back(embed(b.group->element(x), da, db));
    GroupTable t;
    t.tag = a.tag + "x" + b.tag;
    t.group = std::make_shared<PermGroup>(da + db, gens);
    for (std::size_t i = 0; i < a.characters.size(); ++i) {
        for (std::size_t j = 0; j < b.characters.size(); ++j) {
            std::vector<CycloValue> row;
            for (const auto& cls : t.group->classes()) {
                const Perm& g = t.group->element(cls.front());
                Perm ga(g.begin(), g.begin() + static_cast<long>(da));
                Perm gb(db);
                for (std::size_t k = 0; k < db; ++k) gb[k] = static_cast<std::uint8_t>(g[da + k] - da);
                const int ca = a.group->class_of(a.group->index_of(ga));
                const int cb = b.group->class_of(b.group->index_of(gb));
                row.push_back(a.characters[i][static_cast<std::size_t>(ca)] * b.characters[j][static_cast<std::size_t>(cb)]);
            }
            t.characters.push_back(std::move(row));
            t.names.push_back(a.names[i] + " x " + b.names[j]);
        }
    }
    return t;
}

GroupTable group_table(const std::string& tag)
{
    if (auto pos = tag.find('x'); pos != std::string::npos) {
        return direct_product(group_table(tag.substr(0, pos)), group_table(tag.substr(pos + 1)));
    }
    auto number_after = [&](std::size_t from) -> unsigned long {
        std::string digits = tag.substr(from);
        if (!digits.empty() && digits.back() == ')') digits.pop_back();
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw Error("unknown group tag: " + tag);
        }
        return std::stoul(digits);
    };
    if (tag == "S3") return s3_table();
    if (tag == "S4") return s4_table();
    if (tag == "A4") {
        GroupTable t = aff_character_table(4);
        t.tag = "A4";
        return t;
    }
    if (tag.rfind("C3^", 0) == 0) {
        const auto colon = tag.find(":C2");
        if (colon == std::string::npos || colon + 3 != tag.size()) throw Error("unknown group tag: " + tag);
        const std::string m = tag.substr(3, colon - 3);
        if (m.empty() || m.find_first_not_of("0123456789") != std::string::npos) throw Error("unknown group tag: " + tag);
        return elementary_dihedral_table(static_cast<unsigned>(std::stoul(m)));
    }
    if (tag.rfind("Aff", 0) == 0 && tag.size() > 3) return aff_character_table(number_after(4));
    if (tag.rfind("D", 0) == 0 && tag.size() > 1) return dihedral_table(number_after(tag[1] == ':' ? 2 : 1));
    if (tag.rfind("C", 0) == 0 && tag.size() > 1) return cyclic_table(number_after(tag[1] == ':' ? 2 : 1));
    throw Error("unknown group tag: " + tag);
}

bool check_orthogonality(const GroupTable& t)
{
    const std::size_t k = t.class_count();
    if (t.characters.size() != k) return false;
    const Rational order(static_cast<long>(t.order()));
    Rational degrees(0);
    for (const auto& row : t.characters) {
        if (row.size() != k || !row[0].is_rational()) return false;
        degrees += row[0].rational_value() * row[0].rational_value();
    }
    if (degrees != order) return false;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const CycloValue rows = inner_product(t, t.characters[i], t.characters[j]);
            if (rows != CycloValue::from_rational(1, i == j ? 1 : 0)) return false;
            CycloValue cols;
            for (const auto& row : t.characters) cols += row[i] * row[j].conj();
            const Rational expect = i == j ? order / Rational(static_cast<long>(t.class_size(i))) : Rational(0);
            if (cols != CycloValue::from_rational(1, expect)) return false;
        }
    }
    return true;
}

CycloValue inner_product(const GroupTable& t, const std::vector<CycloValue>& a, const std::vector<CycloValue>& b)
{
    if (a.size() != t.class_count() || b.size() != t.class_count()) throw Error("class function has the wrong length");
    CycloValue s;
    for (std::size_t c = 0; c < a.size(); ++c) s += a[c] * b[c].conj() * Rational(static_cast<long>(t.class_size(c)));
    return s * Rational(1, static_cast<long>(t.order()));
}

// ---------------------------------------------------------------------------
// Subgroups and permutation characters

Subgroup make_subgroup(const std::shared_ptr<const PermGroup>& group, std::vector<int> elements)
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    Subgroup H{group, std::move(elements), std::vector<char>(group->order(), 0)};
    for (int g : H.elements) {
        if (g < 0 || static_cast<std::size_t>(g) >= group->order()) throw Error("not a subgroup");
        H.member[static_cast<std::size_t>(g)] = 1;
    }
    if (H.elements.empty() || !H.contains(group->identity())) throw Error("not a subgroup");
    for (int a : H.elements) {
        for (int b : H.elements) {
            if (!H.contains(group->mul(a, b))) throw Error("not a subgroup");
        }
    }
    return H;
}

Subgroup subgroup_generated_by(const std::shared_ptr<const PermGroup>& group, const std::vector<int>& gens)
{
    return make_subgroup(group, group->closure(gens));
}

std::vector<Subgroup> subgroup_class_representatives(const std::shared_ptr<const PermGroup>& group)
{
    const PermGroup& G = *group;
    const int n = static_cast<int>(G.order());
    auto mask_of = [&](const std::vector<int>& elems) {
        std::string m(static_cast<std::size_t>(n), '\0');
        for (int g : elems) m[static_cast<std::size_t>(g)] = 1;
        return m;
    };
    // Cyclic subgroup id of each element, so that extensions by g and by a
    // generator of the same cyclic group are tried once.
    std::map<std::string, int> cyclic_ids;
    std::vector<int> cyclic_of(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g) {
        auto it = cyclic_ids.emplace(mask_of(G.closure({g})), static_cast<int>(cyclic_ids.size())).first;
        cyclic_of[static_cast<std::size_t>(g)] = it->second;
    }

    struct Found {
        std::vector<int> elements;
        std::vector<int> gens;
    };
    std::set<std::string> seen;
    std::vector<Found> reps;
    auto add = [&](const std::vector<int>& elems, const std::vector<int>& gens) {
        const std::string m = mask_of(elems);
        if (seen.count(m)) return;
        for (int x = 0; x < n; ++x) {
            std::vector<int> conj;
            for (int h : elems) conj.push_back(G.conjugate(h, x));
            seen.insert(mask_of(conj));
        }
        reps.push_back({elems, gens});
    };
    add({G.identity()}, {});
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const Found H = reps[i];
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (int h : H.elements) in[static_cast<std::size_t>(h)] = 1;
        std::set<int> tried;
        for (int g = 0; g < n; ++g) {
            if (in[static_cast<std::size_t>(g)] || !tried.insert(cyclic_of[static_cast<std::size_t>(g)]).second) continue;
            std::vector<int> gens = H.gens;
            gens.push_back(g);
            add(G.closure(gens), gens);
        }
    }
    std::stable_sort(reps.begin(), reps.end(), [](const Found& a, const Found& b) {
        if (a.elements.size() != b.elements.size()) return a.elements.size() > b.elements.size();
        return a.elements < b.elements;
    });
    std::vector<Subgroup> out;
    for (const auto& f : reps) out.push_back(make_subgroup(group, f.elements));
    return out;
}

std::vector<long> perm_character(const Subgroup& H)
{
    const PermGroup& G = *H.group;
    std::vector<long> out;
    for (const auto& cls : G.classes()) {
        const int g = cls.front();
        long fixed = 0;
        for (int x = 0; x < static_cast<int>(G.order()); ++x) fixed += H.contains(G.conjugate(g, x));
        out.push_back(fixed / static_cast<long>(H.order()));
    }
    return out;
}

std::vector<Rational> induce(const Subgroup& K, const std::vector<Rational>& f)
{
    const PermGroup& G = *K.group;
    if (f.size() != K.order()) throw Error("function must be given on the elements of K");
    std::vector<int> pos(G.order(), -1);
    for (std::size_t i = 0; i < K.elements.size(); ++i) pos[static_cast<std::size_t>(K.elements[i])] = static_cast<int>(i);
    std::vector<Rational> out;
    for (const auto& cls : G.classes()) {
        Rational s(0);
        for (int x = 0; x < static_cast<int>(G.order()); ++x) {
            const int c = G.conjugate(cls.front(), x);
            if (K.contains(c)) s += f[static_cast<std::size_t>(pos[static_cast<std::size_t>(c)])];
        }
        out.push_back(s / Rational(static_cast<long>(K.order())));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Artin induction

namespace {

using IntRow = std::vector<Integer>;

// Unimodular row reduction of A to echelon form; U tracks the row operations.
// Returns the pivot columns of the nonzero rows.
std::vector<std::size_t> echelon(std::vector<IntRow>& A, std::vector<IntRow>& U)
{
    const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    U.assign(rows, IntRow(rows, Integer(0)));
    for (std::size_t i = 0; i < rows; ++i) U[i][i] = 1;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (A[i][c] != 0 && (best == rows || abs(A[i][c]) < abs(A[best][c]))) best = i;
            }
            if (best == rows) break;
            std::swap(A[r], A[best]);
            std::swap(U[r], U[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (A[i][c] == 0) continue;
                Integer qt;
                mpz_fdiv_q(qt.get_mpz_t(), A[i][c].get_mpz_t(), A[r][c].get_mpz_t());
                for (std::size_t j = 0; j < cols; ++j) A[i][j] -= qt * A[r][j];
                for (std::size_t j = 0; j < rows; ++j) U[i][j] -= qt * U[r][j];
                if (A[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows && A[r][c] != 0) {
            pivots.push_back(c);
            ++r;
        }
    }
    return pivots;
}

// Solves target = sum y_i B_i for echelon rows B with the given pivots;
// nullopt when target is outside the rational span.
std::optional<std::vector<Rational>> solve_echelon(const std::vector<IntRow>& B, const std::vector<std::size_t>& pivots,
                                                   const std::vector<Rational>& target)
{
    std::vector<Rational> y(pivots.size(), Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Rational s = target[pivots[i]];
        for (std::size_t j = 0; j < i; ++j) s -= y[j] * Rational(B[j][pivots[i]]);
        y[i] = s / Rational(B[i][pivots[i]]);
    }
    for (std::size_t c = 0; c < target.size(); ++c) {
        Rational s(0);
        for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * Rational(B[i][c]);
        if (s != target[c]) return std::nullopt;
    }
    return y;
}

// Integer coefficients on the given rows with sum z_i P_i = target, when the
// rows are independent and the unique solution is integral.
std::optional<std::vector<Integer>> solve_support(const std::vector<IntRow>& P, const std::vector<std::size_t>& support,
                                                  const std::vector<Rational>& target)
{
    std::vector<IntRow> A;
    for (std::size_t i : support) A.push_back(P[i]);
    std::vector<IntRow> U;
    auto pivots = echelon(A, U);
    if (pivots.size() != support.size()) return std::nullopt;
    A.resize(pivots.size());
    auto y = solve_echelon(A, pivots, target);
    if (!y) return std::nullopt;
    std::vector<Integer> z(support.size(), Integer(0));
    for (std::size_t k = 0; k < support.size(); ++k) {
        Rational s(0);
        for (std::size_t i = 0; i < y->size(); ++i) s += (*y)[i] * Rational(U[i][k]);
        if (s.get_den() != 1) return std::nullopt;
        z[k] = s.get_num();
    }
    return z;
}

}  // namespace

ArtinDecomposition artin_induction_solve(const GroupTable& t, const std::vector<CycloValue>& rho)
{
    if (rho.size() != t.class_count()) throw Error("class function has the wrong length");
    std::vector<Rational> r;
    for (const auto& v : rho) {
        if (!v.is_rational()) throw Error("character is not rational-valued");
        r.push_back(v.rational_value());
    }
    const auto reps = subgroup_class_representatives(t.group);
    std::vector<IntRow> P;
    for (const auto& H : reps) {
        IntRow row;
        for (long v : perm_character(H)) row.push_back(Integer(v));
        P.push_back(std::move(row));
    }
    std::vector<IntRow> B = P, U;
    const auto pivots = echelon(B, U);
    B.resize(pivots.size());
    auto y = solve_echelon(B, pivots, r);
    if (!y) throw Error("Artin induction violated");
    Integer n(1);
    for (const auto& v : *y) n = lcm(n, Integer(v.get_den()));

    std::vector<Rational> target;
    for (const auto& v : r) target.push_back(v * Rational(n));
    std::vector<Integer> coeffs(P.size(), Integer(0));
    bool found = false;
    // Prefer short supports.
    const std::size_t k = P.size();
    std::vector<std::vector<std::size_t>> supports;
    for (std::size_t a = 0; a < k; ++a) supports.push_back({a});
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) supports.push_back({a, b});
    }
    if (k <= 40) {
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                for (std::size_t c = b + 1; c < k; ++c) supports.push_back({a, b, c});
            }
        }
    }
    for (const auto& s : supports) {
        if (auto z = solve_support(P, s, target)) {
            for (std::size_t i = 0; i < s.size(); ++i) coeffs[s[i]] = (*z)[i];
            found = true;
            break;
        }
    }
    if (!found) {
        for (std::size_t j = 0; j < k; ++j) {
            Rational s(0);
            for (std::size_t i = 0; i < y->size(); ++i) s += (*y)[i] * Rational(n) * Rational(U[i][j]);
            if (s.get_den() != 1) throw Error("Artin induction violated");
            coeffs[j] = s.get_num();
        }
    }
    // Exact re-evaluation on every class.
    for (std::size_t c = 0; c < r.size(); ++c) {
        Integer s(0);
        for (std::size_t j = 0; j < k; ++j) s += coeffs[j] * P[j][c];
        if (Rational(s) != target[c]) throw Error("Artin induction violated");
    }
    if (Integer(static_cast<long>(t.order())) % n != 0) throw Error("Artin induction violated: n_rho does not divide |G|");
    ArtinDecomposition out;
    out.n_rho = n;
    for (std::size_t j = 0; j < k; ++j) {
        if (coeffs[j] != 0) out.terms.push_back({reps[j], coeffs[j]});
    }
    return out;
}

PermRcResult perm_equals_rc(const GroupTable& t)
{
    PermRcResult res;
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
        for (const auto& v : t.characters[i]) {
            if (!v.is_rational()) {
                res.reason = "character " + t.names[i] + " is not rational-valued";
                res.witnesses.clear();
                return res;
            }
        }
        ArtinDecomposition d = artin_induction_solve(t, t.characters[i]);
        if (d.n_rho != 1) {
            res.reason = "character " + t.names[i] + " needs n_rho = " + to_string(d.n_rho);
            res.witnesses.clear();
            return res;
        }
        res.witnesses.push_back(std::move(d));
    }
    res.holds = true;
    return res;
}

}  // namespace leo
