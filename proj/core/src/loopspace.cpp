#include "translev/loopspace.hpp"

#include <map>

namespace translev {

LoopRing build_loop_ring(const AbelianPGroup& A, int h, CoeffMode mode, FglSpec fgl,
                         unsigned long long budget) {
    LoopRing L;
    L.group = A;
    L.h = h;
    L.factors = hom_set(A, h, budget);
    L.model = std::make_shared<EAlgebra>(A, mode, std::move(fgl));
    unsigned long long total = L.factors.size() * L.model->rank();
    if (total > budget) throw BudgetExceeded(total, budget);
    return L;
}

LoopIdeal loop_transfer_ideal(const LoopRing& L) {
    LoopIdeal I;
    std::map<std::string, std::size_t> by_image;  // im f key -> index of computed ideal
    for (const auto& f : L.factors) {
        Subgroup im = hom_image(f);
        auto [it, fresh] = by_image.emplace(im.key(), I.factors.size());
        if (fresh) {
            I.factors.push_back(transfer_ideal(*L.model, family_of(f)));
        } else {
            I.factors.push_back(I.factors[it->second]);
        }
    }
    return I;
}

ClassFunctionTable character_model(const AbelianPGroup& A, int n, int h,
                                   unsigned long long budget) {
    ClassFunctionTable T;
    T.group = A;
    T.n = n;
    T.h = h;
    T.alphas = hom_set(A, n, budget);
    T.alphaps = hom_set(A, h, budget);
    if (T.pair_count() > budget) throw BudgetExceeded(T.pair_count(), budget);
    return T;
}

ClassFn cf_constant(const ClassFunctionTable& T, const Rat& v) {
    return ClassFn(T.pair_count(), v);
}

ClassFn cf_add(const ClassFn& a, const ClassFn& b) {
    ClassFn r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

ClassFn cf_mul(const ClassFn& a, const ClassFn& b) {
    ClassFn r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= b[i];
    return r;
}

namespace {

bool factors_through(const Homomorphism& f, const Subgroup& Ap) {
    for (const auto& img : f.images)
        if (!Ap.contains(img)) return false;
    return true;
}

}  // namespace

ClassFn cf_transfer(const ClassFunctionTable& T, const Subgroup& Ap, const ClassFn& gamma) {
    if (!(Ap.ambient() == T.group))
        throw std::invalid_argument("cf_transfer: subgroup of the wrong group");
    Rat index(Int(T.group.order() / Ap.order()));
    ClassFn r(T.pair_count(), Rat(0));
    for (std::size_t ai = 0; ai < T.alphas.size(); ++ai) {
        if (!factors_through(T.alphas[ai], Ap)) continue;
        for (std::size_t api = 0; api < T.alphaps.size(); ++api) {
            if (!factors_through(T.alphaps[api], Ap)) continue;
            std::size_t idx = T.pair_index(ai, api);
            r[idx] = index * gamma[idx];
        }
    }
    return r;
}

bool jointly_surjective(const ClassFunctionTable& T, std::size_t ai, std::size_t api) {
    return joint_image(T.alphas[ai], T.alphaps[api]).order() == T.group.order();
}

std::vector<std::pair<std::size_t, std::size_t>> surviving_support(const ClassFunctionTable& T) {
    // the transfer from a proper subgroup is supported exactly on the pairs
    // factoring through it, so the quotient keeps the pairs avoiding every
    // proper subgroup: the jointly surjective ones
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t ai = 0; ai < T.alphas.size(); ++ai)
        for (std::size_t api = 0; api < T.alphaps.size(); ++api) {
            Subgroup im = joint_image(T.alphas[ai], T.alphaps[api]);
            bool killed = false;
            for (const auto& H : maximal_subgroups(T.group))
                if (H.contains(im)) { killed = true; break; }
            if (!killed) out.emplace_back(ai, api);
        }
    return out;
}

QZHom pair_to_dual(const ClassFunctionTable& T, std::size_t ai, std::size_t api) {
    const Homomorphism& a = T.alphas[ai];
    const Homomorphism& ap = T.alphaps[api];
    Homomorphism joint{a.domain, T.group, a.images};
    joint.images.insert(joint.images.end(), ap.images.begin(), ap.images.end());
    // domain bookkeeping: n + h generators of exponent max_exponent
    int K = std::max(1, T.group.max_exponent());
    joint.domain = AbelianPGroup(T.group.p(), std::vector<int>(T.n + T.h, K));
    return dual_hom(joint);
}

}  // namespace translev
