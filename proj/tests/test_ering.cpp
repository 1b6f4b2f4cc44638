#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "translev/ealgebra.hpp"

#include <set>

using namespace translev;

namespace {

EAlgebra mult_algebra(const AbelianPGroup& A) {
    return EAlgebra(A, CoeffMode::IntegerExact, multiplicative_law(A.p()));
}

// brute-force product in Z[x]/([p^k](x) Weierstrass relation) for a cyclic
// group: multiply as polynomials, then reduce x^d for d >= B by the monic
// relation from [p^k](x) = unit * (monic), i.e. (1+x)^{p^k} = 1
std::vector<Int> brute_cyclic_mul(long long p, int k, const std::vector<Int>& a,
                                  const std::vector<Int>& b) {
    // in the multiplicative model x = t - 1 with t^{p^k} = 1; multiply in
    // Z[t]/(t^{p^k} - 1) after a change of basis, then change back
    std::size_t B = a.size();
    auto to_t = [&](const std::vector<Int>& c) {
        // sum c_i (t-1)^i
        std::vector<Int> r(B, 0);
        for (std::size_t i = 0; i < B; ++i) {
            // (t-1)^i via binomials
            std::vector<Int> pw(B, 0);
            pw[0] = 1;
            for (std::size_t s = 0; s < i; ++s) {
                std::vector<Int> nx(B, 0);
                for (std::size_t d = 0; d < B; ++d) {
                    if (pw[d] == 0) continue;
                    nx[(d + 1) % B] += pw[d];
                    nx[d] -= pw[d];
                }
                pw = nx;
            }
            for (std::size_t d = 0; d < B; ++d) r[d] += c[i] * pw[d];
        }
        return r;
    };
    std::vector<Int> ta = to_t(a), tb = to_t(b), tc(B, 0);
    for (std::size_t i = 0; i < B; ++i)
        for (std::size_t j = 0; j < B; ++j) tc[(i + j) % B] += ta[i] * tb[j];
    // change back: t = x + 1, so t^d = (x+1)^d
    std::vector<Int> out(B, 0);
    for (std::size_t d = 0; d < B; ++d) {
        if (tc[d] == 0) continue;
        std::vector<Int> pw(B, 0);
        pw[0] = 1;
        for (std::size_t s = 0; s < d; ++s) {
            std::vector<Int> nx(B, 0);
            for (std::size_t e = 0; e + 1 < B; ++e) nx[e + 1] += pw[e];
            for (std::size_t e = 0; e < B; ++e) nx[e] += pw[e];
            pw = nx;
        }
        for (std::size_t e = 0; e < B; ++e) out[e] += tc[d] * pw[e];
    }
    (void)p;
    (void)k;
    return out;
}

}  // namespace

TEST_CASE("algebra shape and monomial indexing") {
    AbelianPGroup A(2, {2, 1});
    EAlgebra R = mult_algebra(A);
    CHECK(R.rank() == 8);
    CHECK(R.bounds() == std::vector<int>{4, 2});
    for (unsigned long long i = 0; i < R.rank(); ++i)
        CHECK(R.index_of(R.exponents_at(i)) == i);
    CHECK(R.one().c[0] == 1);
    CHECK(R.print(R.variable(0)).find("x") != std::string::npos);
}

TEST_CASE("cyclic multiplication against the group-ring oracle") {
    // the multiplicative model of Z/p^k is Z[t]/(t^{p^k}-1) with x = t - 1
    for (auto [p, k] : {std::pair<long long, int>{2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
        AbelianPGroup A(p, {k});
        EAlgebra R = mult_algebra(A);
        std::vector<RingElement> samples;
        samples.push_back(R.variable(0));
        samples.push_back(R.add(R.pow(R.variable(0), 2), R.constant(3)));
        samples.push_back(R.monomial(R.rank() - 1, 2));
        samples.push_back(R.add(R.monomial(1, -1), R.monomial(R.rank() - 2, 5)));
        for (const auto& a : samples)
            for (const auto& b : samples) {
                RingElement got = R.mul(a, b);
                std::vector<Int> expect = brute_cyclic_mul(p, k, a.c, b.c);
                CHECK(got.c == expect);
            }
    }
}

TEST_CASE("ring axioms on random-ish elements") {
    AbelianPGroup A(2, {1, 1});
    EAlgebra R = mult_algebra(A);
    std::vector<RingElement> es;
    for (unsigned long long i = 0; i < R.rank(); ++i) es.push_back(R.monomial(i, Int(i) + 1));
    es.push_back(R.add(es[1], R.smul(-3, es[2])));
    for (const auto& a : es)
        for (const auto& b : es) {
            CHECK(R.mul(a, b) == R.mul(b, a));
            for (const auto& c : es) {
                CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
                CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
            }
        }
}

TEST_CASE("euler classes are formally additive in the character") {
    AbelianPGroup A(2, {2, 1});
    EAlgebra R = mult_algebra(A);
    CHECK(euler_class(R, A.zero()).is_zero());
    // in the multiplicative model e(chi) = t^chi - 1, so
    // e(a + b) = e(a) + e(b) + e(a) e(b)
    for (unsigned long long i = 0; i < A.order(); ++i)
        for (unsigned long long j = 0; j < A.order(); ++j) {
            Element a = A.element_at(i), b = A.element_at(j);
            RingElement ea = euler_class(R, a), eb = euler_class(R, b);
            RingElement sum = R.add(R.add(ea, eb), R.mul(ea, eb));
            CHECK(euler_class(R, A.add(a, b)) == sum);
        }
}

TEST_CASE("transfer units for cyclic groups are angle series") {
    for (auto [p, k] : {std::pair<long long, int>{2, 2}, {3, 2}}) {
        AbelianPGroup A(p, {k});
        EAlgebra R = mult_algebra(A);
        auto maxes = maximal_subgroups(A);
        REQUIRE(maxes.size() == 1);
        RingElement t = transfer_unit(R, maxes[0]);
        // the least character with kernel exactly H = pA is chi_{p^{k-1}}, so
        // Tr(1) = <p>([p^{k-1}](x)) = <p^k>(x)
        RingElement expect = R.eval(angle_series(R.fgl(), k), R.variable(0));
        CHECK(t == expect);
    }
}

TEST_CASE("ideal lattices and membership") {
    AbelianPGroup A(2, {1, 1});
    EAlgebra R = mult_algebra(A);
    IdealLattice I = ideal_lattice(R, {R.constant(2), R.variable(0)});
    CHECK(ideal_contains(R, I, R.constant(4)));
    CHECK(ideal_contains(R, I, R.mul(R.variable(0), R.variable(1))));
    CHECK_FALSE(ideal_contains(R, I, R.variable(1)));
    CHECK_FALSE(ideal_contains(R, I, R.one()));
    IdealLattice J = ideal_lattice(R, {R.variable(0), R.constant(2)});
    CHECK(same_ideal(R, I, J));
    IdealLattice K = ideal_lattice(R, {R.variable(0)});
    CHECK_FALSE(same_ideal(R, I, K));
}

TEST_CASE("quotient invariants for a cyclic angle-series ideal") {
    // Z[x]/((1+x)^4 - 1, <4>(x)): the quotient by the degree-2 angle factor
    // is free of rank 2
    AbelianPGroup A(2, {2});
    EAlgebra R = mult_algebra(A);
    IdealLattice I = ideal_lattice(R, {R.eval(angle_series(R.fgl(), 2), R.variable(0))});
    QuotientModule q = quotient(R, I);
    CHECK(q.free_rank == 2);
    CHECK(q.invariant_factors.empty());
    // full transfer family instead: angle series of the one maximal subgroup
    IdealLattice T = transfer_ideal(R, SubgroupFamily::all_proper(A));
    QuotientModule qt = quotient(R, T);
    CHECK(qt.free_rank == 2);
    // json rendering carries the module data
    auto j = quotient_to_json(qt);
    CHECK(j["rank"].get<unsigned long long>() == 2);
}

TEST_CASE("transfer ideal of the empty family is zero") {
    AbelianPGroup A(2, {1, 1});
    EAlgebra R = mult_algebra(A);
    IdealLattice I = transfer_ideal(R, SubgroupFamily::empty(A));
    CHECK(I.generators.empty());
    CHECK(I.lattice.rank() == 0);
    QuotientModule q = quotient(R, I);
    CHECK(q.free_rank == R.rank());
}

TEST_CASE("localization at Euler classes") {
    // Z/4, family of a non-surjective f: dimension drops to the free rank 2
    AbelianPGroup A(2, {2});
    EAlgebra R = mult_algebra(A);
    Homomorphism f{AbelianPGroup(2, {2}), A, {A.smul(2, A.generator(0))}};
    SubgroupFamily F = family_of(f);
    LocalizationImage loc = localize(R, euler_set_family(R, F));
    CHECK(loc.source_dim == 4);
    CHECK(loc.dimension == 2);
    // localizing at the empty set changes nothing
    LocalizationImage all = localize(R, EulerSet{});
    CHECK(all.dimension == 4);
    // rank-two elementary group: all Euler classes kill everything
    AbelianPGroup Z(2, {1, 1});
    EAlgebra RZ = mult_algebra(Z);
    CHECK(localize(RZ, euler_set_all(RZ)).dimension == 0);
}

TEST_CASE("annihilator witnesses") {
    AbelianPGroup Z(2, {1, 1});
    EAlgebra R = mult_algebra(Z);
    EulerSet S = euler_set_all(R);
    // each transfer generator is annihilated by some Euler class
    for (const auto& H : maximal_subgroups(Z)) {
        int w = annihilator_witness(R, S, transfer_unit(R, H));
        CHECK(w >= 0);
        CHECK(R.mul(S.elements[w], transfer_unit(R, H)).is_zero());
    }
    CHECK(annihilator_witness(R, S, R.one()) == -1);
}

TEST_CASE("induced maps are ring maps compatible with Euler classes") {
    AbelianPGroup A(2, {2, 1});
    Subgroup S = Subgroup::span(A, {Element{2, 0}});
    auto [Q, proj] = quotient_group(A, S);
    EAlgebra RA = mult_algebra(A);
    EAlgebra RQ = mult_algebra(Q);
    RingMap m = induced_map(RA, proj, RQ);
    CHECK(m.source == &RQ);
    CHECK(m.target == &RA);
    // multiplicativity on a sample set
    std::vector<RingElement> es{RQ.one(), RQ.variable(0), RQ.pow(RQ.variable(0), 2)};
    if (RQ.nvars() > 1) es.push_back(RQ.variable(1));
    for (const auto& a : es)
        for (const auto& b : es) CHECK(m.apply(RQ.mul(a, b)) == RA.mul(m.apply(a), m.apply(b)));
    // compatibility: e(chi_b) on Q pulls back to e(chi of the dual character)
    for (unsigned long long e = 0; e < Q.order(); ++e) {
        Element b = Q.element_at(e);
        RingElement lhs = m.apply(euler_class(RQ, b));
        // the dual character on A is b composed with the projection, i.e. the
        // unique a with chi_a = chi_b . proj
        bool found = false;
        for (unsigned long long i = 0; i < A.order(); ++i) {
            Element a = A.element_at(i);
            bool same = true;
            for (unsigned long long j = 0; j < A.order(); ++j) {
                Element t = A.element_at(j);
                if (character_value(A, a, t) != character_value(Q, b, proj.apply(t))) {
                    same = false;
                    break;
                }
            }
            if (same) {
                CHECK(lhs == euler_class(RA, a));
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("representation oracle on elementary groups") {
    AbelianPGroup Z(2, {1, 1});
    EAlgebra R = mult_algebra(Z);
    for (const auto& H : maximal_subgroups(Z)) {
        RepOracle o = representation_oracle(R, H);
        // induction of 1 from an index-2 subgroup: sum of the two characters
        // trivial on H
        Subgroup ann = annihilator(Z, H);
        Int total = 0;
        for (unsigned long long e = 0; e < Z.order(); ++e) {
            Int c = o.induction[e];
            CHECK(c == (ann.contains(Z.element_at(e)) ? 1 : 0));
            total += c;
        }
        CHECK(total == 2);
        // its image generates the same ideal as the transfer unit
        IdealLattice I = ideal_lattice(R, {transfer_unit(R, H)});
        IdealLattice J = ideal_lattice(R, {o.comparison_image});
        CHECK(same_ideal(R, I, J));
    }
}

TEST_CASE("fiber mode truncates by nilpotency") {
    AbelianPGroup A(2, {1, 1});
    FglSpec F = honda_law(2, 1, 8);
    EAlgebra R(A, CoeffMode::FpFiber, F);
    CHECK(R.rank() == 4);
    // x_i^2 = 0 in the fiber model of (Z/2)^2 at height 1
    CHECK(R.mul(R.variable(0), R.variable(0)).is_zero());
    CHECK_FALSE(R.mul(R.variable(0), R.variable(1)).is_zero());
    // coefficients live mod p
    CHECK(R.smul(2, R.one()).is_zero());
    // surjective f leaves the zero ideal and the full fiber dimension
    Homomorphism f{A, A, {A.generator(0), A.generator(1)}};
    QuotientModule q = quotient(R, transfer_ideal(R, family_of(f)));
    CHECK(q.fp_dimension == 4);
}

TEST_CASE("euler sets filtered by a family") {
    AbelianPGroup A(2, {2});
    EAlgebra R = mult_algebra(A);
    EulerSet all = euler_set_all(R);
    CHECK(all.characters.size() == 3);  // nontrivial characters only
    Homomorphism f{AbelianPGroup(2, {2}), A, {A.smul(2, A.generator(0))}};
    EulerSet fam = euler_set_family(R, family_of(f));
    // characters whose kernel lies in the family: kernels must be proper and
    // contained in the maximal subgroup over im f
    std::set<unsigned long long> got;
    for (const auto& b : fam.characters) got.insert(A.index_of(b));
    SubgroupFamily F = family_of(f);
    std::set<unsigned long long> expect;
    for (unsigned long long e = 1; e < A.order(); ++e)
        if (F.contains(character_kernel(A, A.element_at(e)))) expect.insert(e);
    CHECK(got == expect);
    CHECK_FALSE(expect.empty());
}
