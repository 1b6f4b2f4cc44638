#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "translev/group.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace translev;

namespace {

// brute-force subgroup enumeration: distinct spans of all generator subsets
// of size <= 3 (enough for groups of order <= 16 used here)
std::set<std::string> brute_subgroup_keys(const AbelianPGroup& A) {
    std::set<std::string> keys;
    keys.insert(Subgroup::trivial(A).key());
    unsigned long long N = A.order();
    for (unsigned long long i = 0; i < N; ++i)
        for (unsigned long long j = i; j < N; ++j)
            for (unsigned long long k = j; k < N; ++k)
                keys.insert(Subgroup::span(A, {A.element_at(i), A.element_at(j),
                                               A.element_at(k)}).key());
    return keys;
}

unsigned long long brute_surjection_count(const AbelianPGroup& A, int m) {
    unsigned long long N = A.order(), total = 0, tuples = 1;
    for (int i = 0; i < m; ++i) tuples *= N;
    for (unsigned long long t = 0; t < tuples; ++t) {
        std::vector<Element> gens;
        unsigned long long r = t;
        for (int i = 0; i < m; ++i) {
            gens.push_back(A.element_at(r % N));
            r /= N;
        }
        if (Subgroup::span(A, gens).order() == N) ++total;
    }
    return total;
}

}  // namespace

TEST_CASE("p-local invariant factors agree with full Smith normal form") {
    // deterministic pseudo-random presentations, oracle = smith_invariants
    std::mt19937 rng(12345);
    for (long long p : {2LL, 3LL}) {
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
            ZMat m(rows, ZRow(cols));
            for (auto& r : m)
                for (auto& x : r) {
                    long long pk = 1;
                    for (unsigned e = rng() % 4; e > 0; --e) pk *= p;
                    x = static_cast<long long>(rng() % 7) - 3;
                    x *= pk;
                }
            std::vector<Int> expect;
            for (const auto& d : smith_invariants(m, cols)) {
                Int q = d, pp = 1;
                while (q % p == 0) {
                    q /= p;
                    pp *= p;
                }
                if (pp > 1) expect.push_back(pp);
            }
            std::sort(expect.begin(), expect.end());
            std::vector<Int> got = plocal_invariants(m, cols, p);
            std::sort(got.begin(), got.end());
            CAPTURE(p);
            CAPTURE(trial);
            CHECK(got == expect);
        }
    }
}

TEST_CASE("group arithmetic and enumeration") {
    AbelianPGroup A(2, {2, 1});
    CHECK(A.order() == 8);
    CHECK(A.to_string() == "4,2");
    CHECK(A.exponents() == std::vector<int>{2, 1});
    for (unsigned long long i = 0; i < A.order(); ++i)
        CHECK(A.index_of(A.element_at(i)) == i);
    Element a{3, 1}, b{2, 1};
    CHECK(A.add(a, b) == Element{1, 0});
    CHECK(A.sub(a, b) == Element{1, 0});
    CHECK(A.smul(2, a) == Element{2, 0});
    CHECK(A.neg(a) == Element{1, 1});
    CHECK(A.element_order_exp(a) == 2);
    CHECK(A.element_order_exp(A.zero()) == 0);
}

TEST_CASE("parsing group specs") {
    CHECK(AbelianPGroup::parse("2,4", 2).to_string() == "4,2");  // sorted descending
    CHECK(AbelianPGroup::parse("", 2).trivial());
    CHECK(AbelianPGroup::parse("1", 3).trivial());
    CHECK_THROWS_AS(AbelianPGroup::parse("6", 2), std::invalid_argument);
    CHECK_THROWS_AS(AbelianPGroup(4, {1}), std::invalid_argument);
}

TEST_CASE("Q_p/Z_p arithmetic") {
    CHECK(qz_make(2, 3, 2) == QZ{3, 2});
    CHECK(qz_make(2, 2, 2) == QZ{1, 1});  // 2/4 reduces to 1/2
    CHECK(qz_make(2, 4, 2) == QZ{0, 0});
    CHECK(qz_add(2, QZ{1, 1}, QZ{1, 1}) == QZ{0, 0});
    CHECK(qz_add(2, QZ{1, 2}, QZ{1, 1}) == QZ{3, 2});
    CHECK(qz_smul(3, 3, QZ{1, 2}) == QZ{1, 1});
}

TEST_CASE("duality is a mutually inverse pair") {
    for (const AbelianPGroup& A : {AbelianPGroup(2, {2}), AbelianPGroup(2, {1, 1}),
                                   AbelianPGroup(3, {1, 1}), AbelianPGroup(2, {2, 1})}) {
        for (int h : {1, 2}) {
            for (const auto& f : hom_set(A, h)) {
                QZHom d = dual_hom(f);
                CHECK(dual_qzhom(d) == f);
                // surjectivity of f is injectivity of the dual
                CHECK(f.is_surjective() == d.is_injective());
            }
        }
    }
}

TEST_CASE("hom_set enumerates |A|^h well-defined maps") {
    AbelianPGroup A(2, {2, 1});
    auto homs = hom_set(A, 2);
    CHECK(homs.size() == 64);
    std::set<std::string> keys;
    for (const auto& f : homs) {
        CHECK(f.well_defined());
        keys.insert(dual_hom(f).key());
    }
    CHECK(keys.size() == 64);
    CHECK_THROWS_AS(hom_set(A, 3, 100), BudgetExceeded);
}

TEST_CASE("subgroup lattice matches brute-force spans") {
    for (const AbelianPGroup& A : {AbelianPGroup(2, {1, 1, 1}), AbelianPGroup(2, {2, 1}),
                                   AbelianPGroup(3, {1, 1}), AbelianPGroup(2, {3})}) {
        auto brute = brute_subgroup_keys(A);
        const auto& subs = all_subgroups(A);
        std::set<std::string> got;
        for (const auto& s : subs) got.insert(s.key());
        CHECK(got == brute);
        // maximal subgroups are the index-p ones: (|A/pA| - 1)/(p - 1) of them
        unsigned long long frat = 1;
        for (std::size_t i = 0; i < A.factor_count(); ++i) frat *= A.p();
        CHECK(maximal_subgroups(A).size() == (frat - 1) / (A.p() - 1));
        for (const auto& H : maximal_subgroups(A)) CHECK(H.order() * A.p() == A.order());
    }
}

TEST_CASE("subgroup operations") {
    AbelianPGroup A(2, {2, 1});
    Subgroup S = Subgroup::span(A, {Element{2, 0}});
    CHECK(S.order() == 2);
    CHECK(S.abstract_type().to_string() == "2");
    Subgroup T = Subgroup::span(A, {Element{0, 1}});
    CHECK(S.intersect(T).order() == 1);
    CHECK(S.join(T).order() == 4);
    CHECK(Subgroup::full(A).contains(S));
    CHECK_FALSE(S.contains(T));
}

TEST_CASE("quotient groups") {
    AbelianPGroup A(2, {2, 1});
    for (const auto& S : all_subgroups(A)) {
        auto [Q, proj] = quotient_group(A, S);
        CHECK(Q.order() * S.order() == A.order());
        CHECK(proj.is_surjective());
        CHECK(hom_kernel(proj) == S);
    }
}

TEST_CASE("characters and annihilators") {
    AbelianPGroup A(2, {2, 1});
    for (const auto& S : all_subgroups(A)) {
        Subgroup ann = annihilator(A, S);
        CHECK(ann.order() * S.order() == A.order());
        // brute force: b annihilates S iff chi_b vanishes on S
        for (unsigned long long e = 0; e < A.order(); ++e) {
            Element b = A.element_at(e);
            bool vanishes = true;
            for (const auto& s : S.elements())
                if (character_value(A, b, s) != QZ{0, 0}) vanishes = false;
            CHECK(ann.contains(b) == vanishes);
            if (vanishes) continue;
            CHECK(character_kernel(A, b).order() < A.order());
        }
    }
}

TEST_CASE("families of subgroups") {
    AbelianPGroup A(2, {1, 1});
    for (const auto& f : hom_set(A, 1)) {
        SubgroupFamily F = family_of(f);
        Subgroup im = hom_image(f);
        // brute force: maximal members are exactly the maximal subgroups over im f
        std::set<std::string> expect;
        for (const auto& H : maximal_subgroups(A))
            if (H.contains(im)) expect.insert(H.key());
        std::set<std::string> got;
        for (const auto& H : F.maximal_members()) got.insert(H.key());
        CHECK(got == expect);
        CHECK(F.is_empty() == f.is_surjective());
        // membership closure: every subgroup of a member is a member
        for (const auto& S : all_subgroups(A)) {
            bool expect_member = false;
            for (const auto& H : F.maximal_members())
                if (H.contains(S)) expect_member = true;
            CHECK(F.contains(S) == expect_member);
        }
    }
}

TEST_CASE("family pullback along a quotient projection") {
    AbelianPGroup A(2, {2, 1});
    Subgroup S = Subgroup::span(A, {Element{2, 0}});
    auto [Q, proj] = quotient_group(A, S);
    SubgroupFamily F = SubgroupFamily::all_proper(Q);
    SubgroupFamily FP = family_pullback(proj, F);
    for (const auto& T : all_subgroups(A)) {
        std::vector<Element> proj_gens;
        for (const auto& t : T.elements()) proj_gens.push_back(proj.apply(t));
        Subgroup img = Subgroup::span(Q, proj_gens);
        CHECK(FP.contains(T) == F.contains(img));
    }
}

TEST_CASE("minimal summand split") {
    AbelianPGroup A(2, {2, 1});
    for (const auto& S : all_subgroups(A)) {
        auto [M, K] = minimal_summand_split(A, S);
        CHECK(M.contains(S));
        CHECK(M.intersect(K).order() == 1);
        CHECK(M.join(K).order() == A.order());
    }
}

TEST_CASE("level point counts match brute-force surjection counts") {
    // duality: injections A* -> (Q_p/Z_p)^m correspond to surjections Z^m -> A
    for (const AbelianPGroup& A : {AbelianPGroup(2, {1}), AbelianPGroup(2, {1, 1}),
                                   AbelianPGroup(2, {2}), AbelianPGroup(3, {1}),
                                   AbelianPGroup(2, {2, 1})}) {
        for (int m : {1, 2}) {
            auto lp = level_points(A, 1, m - 1);
            CHECK(lp.points.size() == brute_surjection_count(A, m));
            for (const auto& l : lp.points) CHECK(l.is_injective());
        }
    }
}

TEST_CASE("fiber counts partition the level count") {
    AbelianPGroup A(2, {2, 1});
    int n = 1, h = 1;
    FiberCounts fc = level_counts_by_fiber(A, n, h);
    auto lp = level_points(A, n, h);
    CHECK(fc.total == lp.points.size());
    unsigned long long sum = 0;
    for (const auto& [key, c] : fc.by_projection) sum += c;
    CHECK(sum == fc.total);
    // constrained enumeration agrees with the buckets
    for (const auto& f : hom_set(A, h)) {
        QZHom fs = dual_hom(f);
        auto constrained = level_points(A, n, h, fs);
        auto it = fc.by_projection.find(fs.key());
        unsigned long long expect = it == fc.by_projection.end() ? 0 : it->second;
        CHECK(constrained.points.size() == expect);
        for (const auto& l : constrained.points) CHECK(l.project_last(h) == fs);
    }
}

TEST_CASE("subgroup points in the torsion module") {
    // order-2 subgroups of (Q_2/Z_2)^2: three, generated by (1/2,0), (0,1/2), (1/2,1/2)
    TorsionSubgroup none;
    none.p = 2;
    none.rank = 1;
    none.elements.insert(QZVector(1, QZ{}));
    SubPointSet sp = sub_points(2, 1, 1, 1, none);
    CHECK(sp.points.size() == 1);  // only (1/2,0) has trivial last projection
    TorsionSubgroup full;
    full.p = 2;
    full.rank = 1;
    full.elements.insert(QZVector(1, QZ{}));
    full.elements.insert(QZVector(1, QZ{1, 1}));
    SubPointSet sp2 = sub_points(2, 1, 1, 1, full);
    CHECK(sp2.points.size() == 2);  // (0,1/2) and (1/2,1/2)
}

TEST_CASE("image subgroups of level points") {
    AbelianPGroup A(2, {1, 1});
    auto lp = level_points(A, 1, 1);
    CHECK(lp.points.size() == 6);
    std::set<TorsionSubgroup> images;
    for (const auto& l : lp.points) {
        TorsionSubgroup T = image_subgroup(l, 2);
        CHECK(T.order() == A.order());
        images.insert(T);
    }
    // exponent-2 subgroups of order 4 all sit inside the unique 2-torsion plane
    CHECK(images.size() == 1);
}

TEST_CASE("monotypicity of coset decompositions") {
    for (const AbelianPGroup& A : {AbelianPGroup(2, {1, 1}), AbelianPGroup(2, {2}),
                                   AbelianPGroup(3, {1, 1}), AbelianPGroup(2, {2, 1})}) {
        for (const auto& f : hom_set(A, 1)) {
            MonotypicityWitness w = monotypicity_check(f);
            CHECK(w.monotypical);
            CHECK(w.orbit_size * w.coset_reps.size() == A.order());
        }
    }
}

TEST_CASE("joint images") {
    AbelianPGroup A(2, {1, 1});
    auto homs = hom_set(A, 1);
    for (const auto& a : homs)
        for (const auto& b : homs) {
            Subgroup expect = hom_image(a).join(hom_image(b));
            CHECK(joint_image(a, b) == expect);
        }
}

TEST_CASE("group sweep enumeration") {
    auto gs = groups_up_to(2, 16);
    // orders 1,2,4,4,8,8,8,16,16,16,16,16: partitions of 0..4
    CHECK(gs.size() == 1 + 1 + 2 + 3 + 5);
    for (std::size_t i = 1; i < gs.size(); ++i) CHECK(gs[i - 1].order() <= gs[i].order());
    CHECK(groups_up_to(3, 27).size() == 1 + 1 + 2 + 3);
}
