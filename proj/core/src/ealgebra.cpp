#include "translev/ealgebra.hpp"

#include <algorithm>
#include <sstream>

namespace translev {

namespace {

unsigned long long upow(long long b, int e) {
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<unsigned long long>(b);
    return r;
}

constexpr unsigned long long kMaxAlgebraRank = 1ull << 16;

}  // namespace

EAlgebra::EAlgebra(AbelianPGroup A, CoeffMode mode, FglSpec fgl)
    : group_(std::move(A)), mode_(mode), fgl_(std::move(fgl)) {
    if (mode_ == CoeffMode::IntegerExact && fgl_.variant != FglVariant::Multiplicative)
        throw std::invalid_argument("EAlgebra: IntegerExact mode needs the multiplicative law");
    if (mode_ == CoeffMode::FpFiber && fgl_.variant != FglVariant::HondaFiber)
        throw std::invalid_argument("EAlgebra: FpFiber mode needs a special-fiber law");
    if (fgl_.p != group_.p()) throw std::invalid_argument("EAlgebra: prime mismatch");
    int n = fgl_.n;
    int degree_needed = 0;
    for (std::size_t i = 0; i < group_.factor_count(); ++i) {
        unsigned long long B = upow(group_.p(), group_.exponents()[i] * n);
        rank_ *= B;
        if (rank_ > kMaxAlgebraRank) throw std::invalid_argument("EAlgebra: rank too large");
        bounds_.push_back(static_cast<int>(B));
        degree_needed += static_cast<int>(B) - 1;
    }
    if (mode_ == CoeffMode::FpFiber && fgl_.trunc < degree_needed)
        throw std::invalid_argument("EAlgebra: law truncation degree below " +
                                    std::to_string(degree_needed));
    // rewrite rules for x_i^e, B_i <= e <= 2B_i - 2
    red_.resize(bounds_.size());
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        int B = bounds_[i];
        std::vector<std::vector<Int>> rows;
        if (mode_ == CoeffMode::FpFiber) {
            rows.assign(B - 1, std::vector<Int>(B, 0));
        } else {
            Series rel = p_series(fgl_, group_.exponents()[i]);  // monic of degree B
            std::vector<Int> base(B, 0);
            for (int d = 0; d < B; ++d) base[d] = -rel.coeff({d});
            rows.push_back(base);
            for (int e = B + 1; e <= 2 * B - 2; ++e) {
                const auto& prev = rows.back();
                std::vector<Int> cur(B, 0);
                Int top = prev[B - 1];
                for (int d = B - 1; d >= 1; --d) cur[d] = prev[d - 1];
                if (top != 0)
                    for (int d = 0; d < B; ++d) cur[d] += top * base[d];
                rows.push_back(std::move(cur));
            }
        }
        red_[i] = std::move(rows);
    }
}

std::vector<int> EAlgebra::exponents_at(unsigned long long idx) const {
    std::vector<int> e(bounds_.size(), 0);
    for (std::size_t i = bounds_.size(); i-- > 0;) {
        e[i] = static_cast<int>(idx % bounds_[i]);
        idx /= bounds_[i];
    }
    return e;
}

unsigned long long EAlgebra::index_of(const std::vector<int>& e) const {
    unsigned long long idx = 0;
    for (std::size_t i = 0; i < bounds_.size(); ++i) idx = idx * bounds_[i] + e[i];
    return idx;
}

Int EAlgebra::norm(Int v) const {
    if (mode_ == CoeffMode::FpFiber) {
        v %= group_.p();
        if (v < 0) v += group_.p();
    }
    return v;
}

RingElement EAlgebra::constant(Int c) const {
    RingElement r = zero();
    r.c[0] = norm(std::move(c));
    return r;
}

RingElement EAlgebra::monomial(unsigned long long idx, Int c) const {
    RingElement r = zero();
    r.c[idx] = norm(std::move(c));
    return r;
}

RingElement EAlgebra::variable(std::size_t i) const {
    std::vector<int> e(bounds_.size(), 0);
    e[i] = 1;
    return monomial(index_of(e));
}

RingElement EAlgebra::from_series(const Series& s) const {
    if (s.nvars() != bounds_.size())
        throw std::invalid_argument("from_series: variable count mismatch");
    RingElement r = zero();
    Series t = s.apply(series_trunc());
    for (const auto& [k, c] : t.coeffs()) r.c[index_of(k)] = norm(c);
    return r;
}

RingElement EAlgebra::add(const RingElement& a, const RingElement& b) const {
    RingElement r = a;
    for (unsigned long long i = 0; i < rank_; ++i) r.c[i] = norm(r.c[i] + b.c[i]);
    return r;
}

RingElement EAlgebra::sub(const RingElement& a, const RingElement& b) const {
    RingElement r = a;
    for (unsigned long long i = 0; i < rank_; ++i) r.c[i] = norm(r.c[i] - b.c[i]);
    return r;
}

RingElement EAlgebra::smul(const Int& t, const RingElement& a) const {
    RingElement r = a;
    for (unsigned long long i = 0; i < rank_; ++i) r.c[i] = norm(r.c[i] * t);
    return r;
}

void EAlgebra::accumulate(std::vector<Int>& out, const Int& c, const std::vector<int>& e) const {
    // expand each over-bound exponent through its rewrite row
    std::vector<unsigned long long> stack_idx{0};
    std::vector<Int> stack_coeff{c};
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        int B = bounds_[i];
        std::vector<unsigned long long> nidx;
        std::vector<Int> ncoeff;
        if (e[i] < B) {
            for (std::size_t t = 0; t < stack_idx.size(); ++t) {
                nidx.push_back(stack_idx[t] * B + e[i]);
                ncoeff.push_back(stack_coeff[t]);
            }
        } else {
            const auto& row = red_[i][e[i] - B];
            for (int d = 0; d < B; ++d) {
                if (row[d] == 0) continue;
                for (std::size_t t = 0; t < stack_idx.size(); ++t) {
                    nidx.push_back(stack_idx[t] * B + d);
                    ncoeff.push_back(stack_coeff[t] * row[d]);
                }
            }
        }
        stack_idx = std::move(nidx);
        stack_coeff = std::move(ncoeff);
        if (stack_idx.empty()) return;
    }
    for (std::size_t t = 0; t < stack_idx.size(); ++t)
        out[stack_idx[t]] += stack_coeff[t];
}

RingElement EAlgebra::mul(const RingElement& a, const RingElement& b) const {
    std::vector<std::pair<std::vector<int>, Int>> an, bn;
    for (unsigned long long i = 0; i < rank_; ++i)
        if (a.c[i] != 0) an.emplace_back(exponents_at(i), a.c[i]);
    for (unsigned long long i = 0; i < rank_; ++i)
        if (b.c[i] != 0) bn.emplace_back(exponents_at(i), b.c[i]);
    RingElement r = zero();
    std::vector<int> e(bounds_.size());
    for (const auto& [ea, ca] : an)
        for (const auto& [eb, cb] : bn) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            accumulate(r.c, ca * cb, e);
        }
    for (auto& v : r.c) v = norm(std::move(v));
    return r;
}

RingElement EAlgebra::mul_var(const RingElement& a, std::size_t i) const {
    RingElement r = zero();
    for (unsigned long long idx = 0; idx < rank_; ++idx) {
        if (a.c[idx] == 0) continue;
        std::vector<int> e = exponents_at(idx);
        e[i] += 1;
        accumulate(r.c, a.c[idx], e);
    }
    for (auto& v : r.c) v = norm(std::move(v));
    return r;
}

RingElement EAlgebra::pow(const RingElement& a, unsigned long long e) const {
    RingElement r = one();
    for (unsigned long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

RingElement EAlgebra::eval(const Series& poly, const RingElement& at) const {
    if (poly.nvars() != 1) throw std::invalid_argument("eval: univariate polynomial expected");
    RingElement r = zero();
    std::vector<RingElement> pw{one()};
    for (const auto& [k, c] : poly.coeffs()) {
        while (static_cast<int>(pw.size()) <= k[0]) pw.push_back(mul(pw.back(), at));
        r = add(r, smul(c, pw[k[0]]));
    }
    return r;
}

Trunc EAlgebra::series_trunc() const {
    Trunc tr;
    tr.bounds = bounds_;
    if (mode_ == CoeffMode::FpFiber) tr.mod = group_.p();
    return tr;
}

std::string EAlgebra::print(const RingElement& a) const {
    Series s(std::max<std::size_t>(bounds_.size(), 1));
    if (bounds_.empty()) {
        if (a.c[0] != 0) s.set({0}, a.c[0]);
    } else {
        for (unsigned long long i = 0; i < rank_; ++i)
            if (a.c[i] != 0) s.set(exponents_at(i), a.c[i]);
    }
    return s.to_string();
}

RingElement euler_class(const EAlgebra& R, const Element& b) {
    const AbelianPGroup& A = R.group();
    Trunc tr = R.series_trunc();
    Series acc(R.nvars());
    for (std::size_t i = 0; i < R.nvars(); ++i) {
        if (b[i] == 0) continue;
        Series part = m_series(R.fgl(), b[i]);
        part = part.apply({-1, {R.bounds()[i]}, tr.mod});
        part = part.promote(R.nvars(), i);
        acc = acc.is_zero() ? part : formal_sum(R.fgl(), acc, part, tr);
    }
    (void)A;
    return R.from_series(acc);
}

RingElement transfer_unit(const EAlgebra& R, const Subgroup& H) {
    const AbelianPGroup& A = R.group();
    if (!(H.ambient() == A)) throw std::invalid_argument("transfer_unit: wrong ambient group");
    if (H.order() * static_cast<unsigned long long>(A.p()) != A.order())
        throw std::invalid_argument("transfer_unit: subgroup must have index p");
    for (unsigned long long e = 0; e < A.order(); ++e) {
        Element b = A.element_at(e);
        if (character_kernel(A, b) == H)
            return R.eval(angle_series(R.fgl(), 1), euler_class(R, b));
    }
    throw std::logic_error("transfer_unit: no character with the given kernel");
}

IdealLattice ideal_lattice(const EAlgebra& R, std::vector<RingElement> gens) {
    IdealLattice I;
    I.generators = std::move(gens);
    if (R.mode() == CoeffMode::IntegerExact) {
        LatticeBasis b(R.rank());
        for (const auto& g : I.generators)
            for (unsigned long long m = 0; m < R.rank(); ++m) {
                RingElement gm = R.mul(g, R.monomial(m));
                b.add(ZRow(gm.c.begin(), gm.c.end()));
            }
        I.lattice = std::move(b);
    } else {
        FpMat rows;
        for (const auto& g : I.generators)
            for (unsigned long long m = 0; m < R.rank(); ++m) {
                RingElement gm = R.mul(g, R.monomial(m));
                std::vector<long long> row;
                row.reserve(gm.c.size());
                for (const auto& v : gm.c) row.push_back(static_cast<long long>(v));
                rows.push_back(std::move(row));
            }
        I.fp_basis = fp_rref(std::move(rows), R.p());
    }
    return I;
}

IdealLattice transfer_ideal(const EAlgebra& R, const SubgroupFamily& F) {
    if (!(F.ambient() == R.group()))
        throw std::invalid_argument("transfer_ideal: family on the wrong group");
    std::vector<RingElement> gens;
    for (const auto& H : F.maximal_members()) gens.push_back(transfer_unit(R, H));
    return ideal_lattice(R, std::move(gens));
}

bool ideal_contains(const EAlgebra& R, const IdealLattice& I, const RingElement& r) {
    if (R.mode() == CoeffMode::IntegerExact) {
        if (I.lattice.cols() == 0) return r.is_zero();
        return I.lattice.contains(ZRow(r.c.begin(), r.c.end()));
    }
    FpMat m = I.fp_basis;
    std::vector<long long> row;
    for (const auto& v : r.c) row.push_back(static_cast<long long>(v));
    m.push_back(std::move(row));
    return fp_rank(std::move(m), R.p()) == I.fp_basis.size();
}

bool same_ideal(const EAlgebra& R, const IdealLattice& I, const IdealLattice& J) {
    if (R.mode() == CoeffMode::IntegerExact) return I.lattice == J.lattice;
    return I.fp_basis == J.fp_basis;
}

QuotientModule quotient(const EAlgebra& R, const IdealLattice& I, bool with_invariants) {
    QuotientModule q;
    q.mode = R.mode();
    q.basis_size = R.rank();
    if (R.mode() == CoeffMode::FpFiber) {
        q.fp_dimension = R.rank() - I.fp_basis.size();
        return q;
    }
    q.free_rank = R.rank() - I.lattice.rank();
    if (with_invariants) {
        for (const auto& d : plocal_invariants(I.lattice.rows(), R.rank(), R.p()))
            if (d > 1) q.invariant_factors.push_back(d);
    }
    return q;
}

EulerSet euler_set_all(const EAlgebra& R) {
    EulerSet S;
    const AbelianPGroup& A = R.group();
    for (unsigned long long e = 1; e < A.order(); ++e) {
        Element b = A.element_at(e);
        S.characters.push_back(b);
        S.elements.push_back(euler_class(R, b));
    }
    return S;
}

EulerSet euler_set_family(const EAlgebra& R, const SubgroupFamily& F) {
    EulerSet S;
    const AbelianPGroup& A = R.group();
    for (unsigned long long e = 1; e < A.order(); ++e) {
        Element b = A.element_at(e);
        if (!F.contains(character_kernel(A, b))) continue;
        S.characters.push_back(b);
        S.elements.push_back(euler_class(R, b));
    }
    return S;
}

LocalizationImage localize(const EAlgebra& R, const EulerSet& S) {
    LocalizationImage L;
    L.source_dim = R.rank();
    if (S.elements.empty()) {
        L.dimension = R.rank();
        return L;
    }
    RingElement sigma = R.one();
    for (const auto& s : S.elements) sigma = R.mul(sigma, s);
    // multiplication by sigma^t has image sigma^t * basis; iterate to a
    // stable rank (the ambient ring is Artinian over the field)
    RingElement st = sigma;
    std::size_t prev_rank = R.rank();
    for (int step = 1;; ++step) {
        std::size_t rk;
        if (R.mode() == CoeffMode::IntegerExact) {
            LatticeBasis b(R.rank());
            for (unsigned long long m = 0; m < R.rank(); ++m) {
                RingElement sm = R.mul(st, R.monomial(m));
                b.add(ZRow(sm.c.begin(), sm.c.end()));
            }
            rk = b.rank();
        } else {
            FpMat rows;
            for (unsigned long long m = 0; m < R.rank(); ++m) {
                RingElement sm = R.mul(st, R.monomial(m));
                std::vector<long long> row;
                for (const auto& v : sm.c) row.push_back(static_cast<long long>(v));
                rows.push_back(std::move(row));
            }
            rk = fp_rank(std::move(rows), R.p());
        }
        L.stabilization_steps = step;
        if (rk == prev_rank) {
            L.dimension = rk;
            return L;
        }
        prev_rank = rk;
        st = R.mul(st, sigma);
    }
}

int annihilator_witness(const EAlgebra& R, const EulerSet& S, const RingElement& g) {
    for (std::size_t i = 0; i < S.elements.size(); ++i)
        if (R.mul(S.elements[i], g).is_zero()) return static_cast<int>(i);
    return -1;
}

RingElement RingMap::apply(const RingElement& a) const {
    const EAlgebra& Rs = *source;
    const EAlgebra& Rt = *target;
    std::vector<std::vector<RingElement>> pw(Rs.nvars());
    for (std::size_t i = 0; i < Rs.nvars(); ++i) pw[i].push_back(Rt.one());
    auto gp = [&](std::size_t i, int e) -> const RingElement& {
        while (static_cast<int>(pw[i].size()) <= e)
            pw[i].push_back(Rt.mul(pw[i].back(), gen_images[i]));
        return pw[i][e];
    };
    RingElement r = Rt.zero();
    for (unsigned long long idx = 0; idx < Rs.rank(); ++idx) {
        if (a.c[idx] == 0) continue;
        std::vector<int> e = Rs.exponents_at(idx);
        RingElement term = Rt.constant(a.c[idx]);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = Rt.mul(term, gp(i, e[i]));
        r = Rt.add(r, term);
    }
    return r;
}

RingMap induced_map(const EAlgebra& R_target, const Homomorphism& phi, const EAlgebra& R_source) {
    if (!(phi.domain == R_target.group()) || !(phi.codomain == R_source.group()))
        throw std::invalid_argument("induced_map: homomorphism does not match the models");
    const AbelianPGroup& A = phi.domain;
    const AbelianPGroup& Ap = phi.codomain;
    long long p = A.p();
    RingMap f;
    f.source = &R_source;
    f.target = &R_target;
    // generator character of A' composed with phi corresponds to an element
    // of A under the duality pairing
    for (std::size_t l = 0; l < Ap.factor_count(); ++l) {
        Element b = A.zero();
        for (std::size_t i = 0; i < A.factor_count(); ++i) {
            QZ q = qz_make(p, phi.images[i][l], Ap.exponents()[l]);
            if (q.e > A.exponents()[i])
                throw std::logic_error("induced_map: character order exceeds the factor order");
            unsigned long long scale = 1;
            for (int t = 0; t < A.exponents()[i] - q.e; ++t) scale *= p;
            b[i] = q.a * static_cast<long long>(scale);
        }
        f.gen_images.push_back(euler_class(R_target, A.reduce(std::move(b))));
    }
    return f;
}

RepOracle representation_oracle(const EAlgebra& R, const Subgroup& H) {
    if (R.mode() != CoeffMode::IntegerExact || R.height() != 1)
        throw std::invalid_argument("representation_oracle: height-1 exact mode only");
    const AbelianPGroup& A = R.group();
    if (!(H.ambient() == A))
        throw std::invalid_argument("representation_oracle: wrong ambient group");
    RepOracle o;
    o.induction.assign(A.order(), 0);
    o.comparison_image = R.zero();
    Subgroup ann = annihilator(A, H);
    for (auto bidx : ann.indices()) {
        o.induction[bidx] = 1;
        Element b = A.element_at(bidx);
        o.comparison_image =
            R.add(o.comparison_image, R.add(R.one(), euler_class(R, b)));
    }
    return o;
}

nlohmann::json quotient_to_json(const QuotientModule& q) {
    nlohmann::json j;
    j["basis_size"] = q.basis_size;
    if (q.mode == CoeffMode::FpFiber) {
        j["mode"] = "fiber";
        j["dimension"] = q.fp_dimension;
    } else {
        j["mode"] = "exact";
        j["rank"] = q.free_rank;
        nlohmann::json inv = nlohmann::json::array();
        for (const auto& d : q.invariant_factors) inv.push_back(d.str());
        j["invariant_factors"] = std::move(inv);
    }
    return j;
}

}  // namespace translev
