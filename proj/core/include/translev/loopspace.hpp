#pragma once

#include "translev/ealgebra.hpp"

#include <boost/rational.hpp>

#include <memory>

namespace translev {

using Rat = boost::rational<Int>;

// product model of the cohomology of the h-fold free loop space of BA: one
// copy of the E0(BA) model per hom from the h-torus lattice into A
struct LoopRing {
    AbelianPGroup group;
    int h{0};
    std::vector<Homomorphism> factors;  // canonical hom_set order
    std::shared_ptr<EAlgebra> model;
};

LoopRing build_loop_ring(const AbelianPGroup& A, int h, CoeffMode mode, FglSpec fgl,
                         unsigned long long budget = kDefaultBudget);

// transfer ideal of the loop ring: per factor f, the ideal generated by
// transfers from maximal proper subgroups containing im f
struct LoopIdeal {
    std::vector<IdealLattice> factors;
};

LoopIdeal loop_transfer_ideal(const LoopRing& L);

// rational class-function model: functions on pairs (alpha, alpha') of
// commuting tuples, alpha in Hom(lattice^n, A), alpha' in Hom(lattice^h, A)
struct ClassFunctionTable {
    AbelianPGroup group;
    int n{0}, h{0};
    std::vector<Homomorphism> alphas;
    std::vector<Homomorphism> alphaps;

    std::size_t pair_count() const { return alphas.size() * alphaps.size(); }
    std::size_t pair_index(std::size_t ai, std::size_t api) const {
        return ai * alphaps.size() + api;
    }
};

ClassFunctionTable character_model(const AbelianPGroup& A, int n, int h,
                                   unsigned long long budget = kDefaultBudget);

using ClassFn = std::vector<Rat>;  // indexed by pair_index

ClassFn cf_constant(const ClassFunctionTable& T, const Rat& v);
ClassFn cf_add(const ClassFn& a, const ClassFn& b);
ClassFn cf_mul(const ClassFn& a, const ClassFn& b);

// transfer from a subgroup: extend by zero off the pairs factoring through it
// and multiply by the index; gamma is read on the factoring pairs only
ClassFn cf_transfer(const ClassFunctionTable& T, const Subgroup& Ap, const ClassFn& gamma);

bool jointly_surjective(const ClassFunctionTable& T, std::size_t ai, std::size_t api);

// pairs surviving the quotient by all transfers from proper subgroups
std::vector<std::pair<std::size_t, std::size_t>> surviving_support(const ClassFunctionTable& T);

// the dual of the joint map (alpha, alpha'): A* -> (Q_p/Z_p)^{n+h}; it is
// injective exactly when the pair is jointly surjective
QZHom pair_to_dual(const ClassFunctionTable& T, std::size_t ai, std::size_t api);

}  // namespace translev
