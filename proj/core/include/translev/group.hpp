#pragma once

#include "translev/zmat.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace translev {

// element of a finite abelian p-group, one canonical residue per cyclic factor
using Element = std::vector<long long>;

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(unsigned long long required, unsigned long long budget)
        : std::runtime_error("enumeration budget exceeded: requires " + std::to_string(required) +
                             ", budget " + std::to_string(budget)),
          required(required), budget(budget) {}
    unsigned long long required;
    unsigned long long budget;
};

inline constexpr unsigned long long kDefaultBudget = 1ull << 22;
inline constexpr unsigned long long kMaxGroupOrder = 4096;

// A = Z/p^{k_1} x ... x Z/p^{k_j}, exponents descending. j = 0 is the
// trivial group. Doubles as the Pontryagin dual A* via the pairing
// <e_i*, a> = a_i / p^{k_i}.
class AbelianPGroup {
public:
    AbelianPGroup() = default;
    AbelianPGroup(long long p, std::vector<int> exponents);

    long long p() const { return p_; }
    const std::vector<int>& exponents() const { return exponents_; }
    std::size_t factor_count() const { return exponents_.size(); }
    unsigned long long order() const { return order_; }
    int max_exponent() const { return exponents_.empty() ? 0 : exponents_[0]; }
    unsigned long long modulus(std::size_t i) const { return moduli_[i]; }
    bool trivial() const { return exponents_.empty(); }

    Element zero() const { return Element(exponents_.size(), 0); }
    Element reduce(Element a) const;
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element smul(long long t, const Element& a) const;
    Element generator(std::size_t i) const;

    // order of a as a p-power exponent: ord(a) = p^result
    int element_order_exp(const Element& a) const;

    // canonical lexicographic enumeration (first coordinate most significant)
    unsigned long long index_of(const Element& a) const;
    Element element_at(unsigned long long idx) const;

    bool operator==(const AbelianPGroup& o) const {
        return p_ == o.p_ && exponents_ == o.exponents_;
    }
    bool operator!=(const AbelianPGroup& o) const { return !(*this == o); }

    std::string to_string() const;  // "p^k1,p^k2,..." style "4,2"
    static AbelianPGroup parse(const std::string& spec, long long p);

private:
    long long p_{2};
    std::vector<int> exponents_;
    std::vector<unsigned long long> moduli_;
    unsigned long long order_{1};
};

// --- Q_p/Z_p arithmetic ---

// a/p^e with 0 <= a < p^e and p ∤ a, or the zero class (0,0)
struct QZ {
    long long a{0};
    int e{0};
    auto operator<=>(const QZ&) const = default;
};

QZ qz_make(long long p, long long num, int e);
QZ qz_add(long long p, const QZ& x, const QZ& y);
QZ qz_smul(long long p, long long t, const QZ& x);

using QZVector = std::vector<QZ>;

QZVector qzv_add(long long p, const QZVector& x, const QZVector& y);
QZVector qzv_smul(long long p, long long t, const QZVector& x);
bool qzv_zero(const QZVector& x);

// --- homomorphisms ---

struct Homomorphism {
    AbelianPGroup domain;
    AbelianPGroup codomain;
    std::vector<Element> images;  // image of each domain generator

    Element apply(const Element& a) const;
    bool well_defined() const;
    bool is_surjective() const;
    bool operator==(const Homomorphism& o) const {
        return domain == o.domain && codomain == o.codomain && images == o.images;
    }
};

Homomorphism compose(const Homomorphism& g, const Homomorphism& f);  // g after f

// map into (Q_p/Z_p)^m; source is read as A* under the self-duality pairing
struct QZHom {
    AbelianPGroup source;
    int target_rank{0};
    std::vector<QZVector> images;  // one QZVector (length target_rank) per generator

    QZVector apply(const Element& a) const;
    bool is_injective() const;
    QZHom project_last(int h) const;   // last h coordinates
    QZHom project_first(int n) const;  // first n coordinates
    std::string key() const;           // canonical serialization
    bool operator==(const QZHom& o) const {
        return source == o.source && target_rank == o.target_rank && images == o.images;
    }
};

// all continuous homs Z_p^h -> A as h-tuples of elements, lexicographic
std::vector<Homomorphism> hom_set(const AbelianPGroup& A, int h,
                                  unsigned long long budget = kDefaultBudget);

// Pontryagin duals under the canonical pairing; they are mutually inverse
QZHom dual_hom(const Homomorphism& f);
Homomorphism dual_qzhom(const QZHom& g);

// --- subgroups ---

class Subgroup {
public:
    static Subgroup span(const AbelianPGroup& ambient, const std::vector<Element>& gens);
    static Subgroup trivial(const AbelianPGroup& ambient);
    static Subgroup full(const AbelianPGroup& ambient);
    static Subgroup from_indices(const AbelianPGroup& ambient,
                                 std::vector<unsigned long long> sorted_indices);

    const AbelianPGroup& ambient() const { return ambient_; }
    const std::vector<unsigned long long>& indices() const { return indices_; }
    std::vector<Element> elements() const;
    unsigned long long order() const { return indices_.size(); }
    bool contains(const Element& a) const;
    bool contains(const Subgroup& s) const;
    bool is_proper() const { return order() < ambient_.order(); }

    Subgroup intersect(const Subgroup& o) const;
    Subgroup join(const Subgroup& o) const;

    // Hermite-reduced basis of the preimage lattice in Z^j (includes the
    // modulus relations); unique per subgroup.
    ZMat generator_matrix() const;
    // abstract isomorphism type as an AbelianPGroup
    AbelianPGroup abstract_type() const;

    bool operator==(const Subgroup& o) const {
        return ambient_ == o.ambient_ && indices_ == o.indices_;
    }
    bool operator<(const Subgroup& o) const;  // by (order, generator matrix)
    std::string key() const;

private:
    AbelianPGroup ambient_;
    std::vector<unsigned long long> indices_;  // sorted element indices
};

std::vector<Subgroup> maximal_subgroups(const AbelianPGroup& A);
// all subgroups of order <= cap (cap = 0 means no cap); memoized per group
const std::vector<Subgroup>& all_subgroups(const AbelianPGroup& A);
std::vector<Subgroup> subgroups_of_order(const AbelianPGroup& A, unsigned long long order);

Subgroup hom_image(const Homomorphism& f);
Subgroup hom_kernel(const Homomorphism& f);
Subgroup preimage(const Homomorphism& q, const Subgroup& s);

// quotient group A/S with its canonical projection
std::pair<AbelianPGroup, Homomorphism> quotient_group(const AbelianPGroup& A, const Subgroup& S);

// characters: element b of A acting as chi_b(a) = sum_i b_i a_i / p^{k_i}
QZ character_value(const AbelianPGroup& A, const Element& b, const Element& a);
Subgroup character_kernel(const AbelianPGroup& A, const Element& b);
// annihilator {b : chi_b vanishes on S}, the dual of A/S inside A*
Subgroup annihilator(const AbelianPGroup& A, const Subgroup& S);

// --- families of subgroups ---

class SubgroupFamily {
public:
    SubgroupFamily() = default;
    SubgroupFamily(AbelianPGroup ambient, std::vector<Subgroup> maximal_members);
    static SubgroupFamily empty(const AbelianPGroup& ambient) { return {ambient, {}}; }
    static SubgroupFamily all_proper(const AbelianPGroup& ambient);

    const AbelianPGroup& ambient() const { return ambient_; }
    const std::vector<Subgroup>& maximal_members() const { return members_; }
    bool is_empty() const { return members_.empty(); }
    bool contains(const Subgroup& s) const;
    std::string key() const;
    bool operator==(const SubgroupFamily& o) const {
        return ambient_ == o.ambient_ && members_ == o.members_;
    }

private:
    AbelianPGroup ambient_;
    std::vector<Subgroup> members_;  // pairwise incomparable, sorted
};

// the minimal family containing every proper subgroup that f factors through
SubgroupFamily family_of(const Homomorphism& f);
// q^*F for surjective q, by preimages of the maximal members
SubgroupFamily family_pullback(const Homomorphism& q, const SubgroupFamily& F);

// deterministic direct-sum split A = M + K with S <= M and M minimal among
// summands containing S
std::pair<Subgroup, Subgroup> minimal_summand_split(const AbelianPGroup& A, const Subgroup& S);

// --- torsion subgroups of (Q_p/Z_p)^m ---

struct TorsionSubgroup {
    long long p{2};
    int rank{0};  // ambient rank m
    std::set<QZVector> elements;

    unsigned long long order() const { return elements.size(); }
    TorsionSubgroup project_last(int h) const;
    bool operator==(const TorsionSubgroup&) const = default;
    bool operator<(const TorsionSubgroup& o) const { return elements < o.elements; }
};

TorsionSubgroup qzhom_image(const QZHom& l, long long p);
// image of an injective level point as a canonical subgroup of torsion points
TorsionSubgroup image_subgroup(const QZHom& l, long long p);

// --- level and subgroup point sets ---

struct LevelPointSet {
    AbelianPGroup group;  // the domain A*
    int n{0}, h{0};
    std::optional<QZHom> constraint;
    std::vector<QZHom> points;
};

LevelPointSet level_points(const AbelianPGroup& A, int n, int h,
                           const std::optional<QZHom>& constraint = std::nullopt,
                           unsigned long long budget = kDefaultBudget);

// counts bucketed by the last-h projection key, plus the total; avoids
// storing points on big sweeps
struct FiberCounts {
    unsigned long long total{0};
    std::map<std::string, unsigned long long> by_projection;
};
FiberCounts level_counts_by_fiber(const AbelianPGroup& A, int n, int h,
                                  unsigned long long budget = kDefaultBudget);

struct SubPointSet {
    int n{0}, h{0}, k{0};
    TorsionSubgroup required_image;  // inside (Q_p/Z_p)^h
    std::vector<TorsionSubgroup> points;
};

SubPointSet sub_points(long long p, int n, int h, int k, const TorsionSubgroup& required_image,
                       unsigned long long budget = kDefaultBudget);

// --- monotypicity ---

struct MonotypicityWitness {
    bool monotypical{false};
    unsigned long long orbit_size{0};
    std::vector<Element> coset_reps;
};

MonotypicityWitness monotypicity_check(const Homomorphism& f);

// joint image of a pair of homs into the same codomain
Subgroup joint_image(const Homomorphism& a, const Homomorphism& b);

// all abelian p-groups of order <= max_order, ordered by (order, exponents)
std::vector<AbelianPGroup> groups_up_to(long long p, unsigned long long max_order);

}  // namespace translev
