#pragma once

// Finite groups as concrete permutation groups, with closed-form character
// tables for a few families, permutation characters and Artin induction.

#include "leo/cyclotomic.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace leo {

using Perm = std::vector<std::uint8_t>;

/// A permutation group with all elements listed and a multiplication table.
/// Products compose right to left: (a * b)(i) = a(b(i)).
class PermGroup {
public:
    static constexpr std::size_t kMaxOrder = 4096;

    PermGroup(std::size_t degree, const std::vector<Perm>& generators);

    std::size_t degree() const { return degree_; }
    std::size_t order() const { return elements_.size(); }
    const Perm& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
    int index_of(const Perm& g) const;
    int identity() const { return 0; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order() + static_cast<std::size_t>(b)]; }
    int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    int conjugate(int g, int x) const { return mul(inv(x), mul(g, x)); }  ///< x^-1 g x

    /// Conjugacy classes, the identity class first; each class lists its elements.
    const std::vector<std::vector<int>>& classes() const { return classes_; }
    int class_of(int g) const { return class_of_[static_cast<std::size_t>(g)]; }

    /// Smallest subgroup containing the given elements (sorted indices).
    std::vector<int> closure(const std::vector<int>& gens) const;

private:
    std::size_t degree_;
    std::vector<Perm> elements_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::uint16_t> table_;
    std::vector<int> inverse_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
};

/// Irreducible characters as rows indexed by the classes of `group`.
struct GroupTable {
    std::string tag;
    std::shared_ptr<const PermGroup> group;
    std::vector<std::string> names;
    std::vector<std::vector<CycloValue>> characters;

    std::size_t order() const { return group->order(); }
    std::size_t class_count() const { return group->classes().size(); }
    std::size_t class_size(std::size_t c) const { return group->classes()[c].size(); }
};

GroupTable cyclic_table(unsigned long n);
/// Dihedral group of the given order 2n (n >= 3) acting on an n-gon.
GroupTable dihedral_table(unsigned long order);
GroupTable s3_table();
GroupTable s4_table();
/// (C3)^m x| C2, the C2 acting by inversion.
GroupTable elementary_dihedral_table(unsigned m);
/// F_q x| F_q^x acting on F_q; q a prime power <= 64.
GroupTable aff_character_table(unsigned long q);
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

/// Parses "C:n", "S3", "S4", "A4", "D:2n", "Aff:q", "C3^m:C2" and products
/// joined by 'x', e.g. "S3xC:2".
GroupTable group_table(const std::string& tag);

/// Exact row and column orthogonality plus sum chi(1)^2 = |G|.
bool check_orthogonality(const GroupTable& t);

/// <a, b> = |G|^-1 sum_c |c| a(c) conj b(c).
CycloValue inner_product(const GroupTable& t, const std::vector<CycloValue>& a, const std::vector<CycloValue>& b);

struct Subgroup {
    std::shared_ptr<const PermGroup> group;
    std::vector<int> elements;  ///< sorted element indices
    std::vector<char> member;   ///< indexed by element

    std::size_t order() const { return elements.size(); }
    bool contains(int g) const { return member[static_cast<std::size_t>(g)] != 0; }
};

/// Throws "not a subgroup" unless the set contains 1 and is closed.
Subgroup make_subgroup(const std::shared_ptr<const PermGroup>& group, std::vector<int> elements);
Subgroup subgroup_generated_by(const std::shared_ptr<const PermGroup>& group, const std::vector<int>& gens);

/// One subgroup per conjugacy class, by decreasing order.
std::vector<Subgroup> subgroup_class_representatives(const std::shared_ptr<const PermGroup>& group);

/// ind_H^G 1_H(g) = #{xH : g x H = x H} on each class of G.
std::vector<long> perm_character(const Subgroup& H);

/// ind_K^G f for f given on the elements of K (f[i] belongs to K.elements[i]),
/// returned on the classes of G.
std::vector<Rational> induce(const Subgroup& K, const std::vector<Rational>& f);

struct ArtinTerm {
    Subgroup subgroup;
    Integer coefficient;
};

struct ArtinDecomposition {
    Integer n_rho;  ///< least n > 0 with n rho in the span of permutation characters
    std::vector<ArtinTerm> terms;
};

/// n_rho rho = sum n_H ind_H^G 1_H over subgroup class representatives. Sparse
/// solutions (one to three terms) are preferred when they reach the least
/// n_rho. Throws when rho is not rational-valued.
ArtinDecomposition artin_induction_solve(const GroupTable& t, const std::vector<CycloValue>& rho);

struct PermRcResult {
    bool holds = false;
    std::vector<ArtinDecomposition> witnesses;  ///< one per irreducible when holds
    std::string reason;
};

/// Whether every irreducible character is an integer combination of
/// permutation characters.
PermRcResult perm_equals_rc(const GroupTable& t);

}  // namespace leo
