#pragma once

#include "translev/fgl.hpp"
#include "translev/group.hpp"

#include <json.hpp>

namespace translev {

enum class CoeffMode { IntegerExact, FpFiber };

// element of an EAlgebra: dense coefficient vector over the monomial basis
struct RingElement {
    std::vector<Int> c;
    bool operator==(const RingElement&) const = default;
    bool is_zero() const {
        for (const auto& v : c)
            if (v != 0) return false;
        return true;
    }
};

// finite free model of the cohomology ring of BA: coefficient module with
// basis x^alpha, 0 <= alpha_i < B_i = p^{k_i n}, multiplication reduced by the
// monic Weierstrass form of [p^{k_i}](x_i) (IntegerExact) or by x_i^{B_i} = 0
// (FpFiber)
class EAlgebra {
public:
    EAlgebra(AbelianPGroup A, CoeffMode mode, FglSpec fgl);

    const AbelianPGroup& group() const { return group_; }
    CoeffMode mode() const { return mode_; }
    const FglSpec& fgl() const { return fgl_; }
    long long p() const { return group_.p(); }
    int height() const { return fgl_.n; }
    std::size_t nvars() const { return bounds_.size(); }
    const std::vector<int>& bounds() const { return bounds_; }
    unsigned long long rank() const { return rank_; }

    std::vector<int> exponents_at(unsigned long long idx) const;
    unsigned long long index_of(const std::vector<int>& e) const;

    RingElement zero() const { return {std::vector<Int>(rank_, 0)}; }
    RingElement one() const { return constant(1); }
    RingElement constant(Int c) const;
    RingElement monomial(unsigned long long idx, Int c = 1) const;
    RingElement variable(std::size_t i) const;
    RingElement from_series(const Series& s) const;

    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement sub(const RingElement& a, const RingElement& b) const;
    RingElement smul(const Int& t, const RingElement& a) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement mul_var(const RingElement& a, std::size_t i) const;  // a * x_i
    RingElement pow(const RingElement& a, unsigned long long e) const;
    // evaluate a univariate polynomial at a ring element
    RingElement eval(const Series& poly, const RingElement& at) const;

    Trunc series_trunc() const;  // nilpotency bounds (+ mod p in fiber mode)
    std::string print(const RingElement& a) const;  // canonical monomial order

private:
    AbelianPGroup group_;
    CoeffMode mode_;
    FglSpec fgl_;
    std::vector<int> bounds_;
    unsigned long long rank_{1};
    // red_[i][e - B_i] rewrites x_i^e, B_i <= e <= 2B_i - 2, as a dense
    // univariate of degree < B_i (all zero in fiber mode)
    std::vector<std::vector<std::vector<Int>>> red_;

    void accumulate(std::vector<Int>& out, const Int& c, const std::vector<int>& e) const;
    Int norm(Int v) const;
};

// e(chi_b) = [b_1](x_1) +_F ... +_F [b_j](x_j)
RingElement euler_class(const EAlgebra& R, const Element& b);

// Tr(1) from an index-p subgroup H: the angle-p series applied to the Euler
// class of the least character with kernel exactly H
RingElement transfer_unit(const EAlgebra& R, const Subgroup& H);

// ideal as a coefficient-module lattice, closed by multiplying each generator
// by every basis monomial
struct IdealLattice {
    std::vector<RingElement> generators;
    LatticeBasis lattice{0};  // IntegerExact
    FpMat fp_basis;           // FpFiber, rref
    std::size_t rank(CoeffMode mode) const {
        return mode == CoeffMode::IntegerExact ? lattice.rank() : fp_basis.size();
    }
};

IdealLattice ideal_lattice(const EAlgebra& R, std::vector<RingElement> gens);
IdealLattice transfer_ideal(const EAlgebra& R, const SubgroupFamily& F);
bool ideal_contains(const EAlgebra& R, const IdealLattice& I, const RingElement& r);
bool same_ideal(const EAlgebra& R, const IdealLattice& I, const IdealLattice& J);

// R/I as a coefficient module via the relation lattice
struct QuotientModule {
    CoeffMode mode{CoeffMode::IntegerExact};
    unsigned long long basis_size{0};
    unsigned long long free_rank{0};            // torsion-free part rank (IntegerExact)
    std::vector<Int> invariant_factors;         // nontrivial ones, ascending divisibility
    unsigned long long fp_dimension{0};         // FpFiber
    Int order() const {                         // |quotient| when finite, else 0
        if (free_rank > 0) return 0;
        Int o = 1;
        for (const auto& d : invariant_factors) o *= d;
        return o;
    }
};

QuotientModule quotient(const EAlgebra& R, const IdealLattice& I, bool with_invariants = true);

// Euler classes of nontrivial characters, optionally filtered to kernels
// inside a family
struct EulerSet {
    std::vector<Element> characters;
    std::vector<RingElement> elements;
};

EulerSet euler_set_all(const EAlgebra& R);
EulerSet euler_set_family(const EAlgebra& R, const SubgroupFamily& F);

// S^{-1}(field ⊗ R) computed as the stabilized image of multiplication by
// the product of S; the field is Q in IntegerExact mode and F_p in FpFiber
struct LocalizationImage {
    unsigned long long source_dim{0};
    unsigned long long dimension{0};
    int stabilization_steps{0};
};

LocalizationImage localize(const EAlgebra& R, const EulerSet& S);

// index into S of an element with s * g = 0, or -1
int annihilator_witness(const EAlgebra& R, const EulerSet& S, const RingElement& g);

// contravariant ring map induced by a group homomorphism phi: A -> A';
// generators of the model on A' land in Euler classes over A
struct RingMap {
    const EAlgebra* source{nullptr};
    const EAlgebra* target{nullptr};
    std::vector<RingElement> gen_images;
    RingElement apply(const RingElement& a) const;
};

RingMap induced_map(const EAlgebra& R_target, const Homomorphism& phi, const EAlgebra& R_source);

// height-1 oracle: induction of the trivial character from H in the group
// ring Z[A*], compared through chi -> 1 + e(chi)
struct RepOracle {
    std::vector<Int> induction;    // coefficients in Z[A*], indexed like A
    RingElement comparison_image;  // its image in the EAlgebra model
};

RepOracle representation_oracle(const EAlgebra& R, const Subgroup& H);

nlohmann::json quotient_to_json(const QuotientModule& q);

}  // namespace translev
