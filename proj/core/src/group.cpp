#include "translev/group.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace translev {

namespace {

unsigned long long ipow(long long b, int e) {
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<unsigned long long>(b);
    return r;
}

int p_valuation(long long a, long long p, int cap) {
    if (a == 0) return cap;
    int v = 0;
    while (v < cap && a % p == 0) { a /= p; ++v; }
    return v;
}

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

AbelianPGroup::AbelianPGroup(long long p, std::vector<int> exponents)
    : p_(p), exponents_(std::move(exponents)) {
    if (!is_prime(p_)) throw std::invalid_argument("p must be prime");
    for (int k : exponents_)
        if (k <= 0) throw std::invalid_argument("exponents must be positive");
    std::sort(exponents_.begin(), exponents_.end(), std::greater<int>());
    order_ = 1;
    for (int k : exponents_) {
        moduli_.push_back(ipow(p_, k));
        order_ *= moduli_.back();
    }
    if (order_ > kMaxGroupOrder)
        throw std::invalid_argument("group order exceeds supported cap " +
                                    std::to_string(kMaxGroupOrder));
}

Element AbelianPGroup::reduce(Element a) const {
    if (a.size() != exponents_.size()) throw std::invalid_argument("element width mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long m = static_cast<long long>(moduli_[i]);
        a[i] %= m;
        if (a[i] < 0) a[i] += m;
    }
    return a;
}

Element AbelianPGroup::add(const Element& a, const Element& b) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return reduce(std::move(r));
}

Element AbelianPGroup::sub(const Element& a, const Element& b) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return reduce(std::move(r));
}

Element AbelianPGroup::neg(const Element& a) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return reduce(std::move(r));
}

Element AbelianPGroup::smul(long long t, const Element& a) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long m = static_cast<long long>(moduli_[i]);
        long long tm = ((t % m) + m) % m;
        r[i] = static_cast<long long>((__int128)tm * a[i] % m);
    }
    return r;
}

Element AbelianPGroup::generator(std::size_t i) const {
    Element r = zero();
    r[i] = 1;
    return r;
}

int AbelianPGroup::element_order_exp(const Element& a) const {
    int best = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int k = exponents_[i];
        int v = p_valuation(a[i], p_, k);
        best = std::max(best, k - v);
    }
    return best;
}

unsigned long long AbelianPGroup::index_of(const Element& a) const {
    unsigned long long idx = 0;
    for (std::size_t i = 0; i < a.size(); ++i) idx = idx * moduli_[i] + a[i];
    return idx;
}

Element AbelianPGroup::element_at(unsigned long long idx) const {
    Element a(exponents_.size(), 0);
    for (std::size_t i = exponents_.size(); i-- > 0;) {
        a[i] = static_cast<long long>(idx % moduli_[i]);
        idx /= moduli_[i];
    }
    return a;
}

std::string AbelianPGroup::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i) os << ",";
        os << moduli_[i];
    }
    if (moduli_.empty()) os << "1";
    return os.str();
}

AbelianPGroup AbelianPGroup::parse(const std::string& spec, long long p) {
    std::vector<int> exps;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        long long m = std::stoll(tok);
        if (m == 1) continue;
        int k = 0;
        long long t = m;
        while (t > 1) {
            if (t % p != 0)
                throw std::invalid_argument("factor " + tok + " is not a power of p=" +
                                            std::to_string(p));
            t /= p;
            ++k;
        }
        exps.push_back(k);
    }
    return AbelianPGroup(p, std::move(exps));
}

// --- QZ ---

QZ qz_make(long long p, long long num, int e) {
    unsigned long long den = ipow(p, e);
    long long m = static_cast<long long>(den);
    num %= m;
    if (num < 0) num += m;
    while (e > 0 && num % p == 0) {
        num /= p;
        m /= p;
        --e;
    }
    if (num == 0) return {0, 0};
    return {num, e};
}

QZ qz_add(long long p, const QZ& x, const QZ& y) {
    int e = std::max(x.e, y.e);
    long long num = x.a * static_cast<long long>(ipow(p, e - x.e)) +
                    y.a * static_cast<long long>(ipow(p, e - y.e));
    return qz_make(p, num, e);
}

QZ qz_smul(long long p, long long t, const QZ& x) {
    long long m = static_cast<long long>(ipow(p, x.e));
    long long tm = ((t % m) + m) % m;
    return qz_make(p, static_cast<long long>((__int128)tm * x.a % m), x.e);
}

QZVector qzv_add(long long p, const QZVector& x, const QZVector& y) {
    QZVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = qz_add(p, x[i], y[i]);
    return r;
}

QZVector qzv_smul(long long p, long long t, const QZVector& x) {
    QZVector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = qz_smul(p, t, x[i]);
    return r;
}

bool qzv_zero(const QZVector& x) {
    for (const auto& q : x)
        if (q.a != 0) return false;
    return true;
}

// --- Homomorphism ---

Element Homomorphism::apply(const Element& a) const {
    Element r = codomain.zero();
    for (std::size_t i = 0; i < images.size(); ++i)
        r = codomain.add(r, codomain.smul(a[i], images[i]));
    return r;
}

bool Homomorphism::well_defined() const {
    if (images.size() != domain.factor_count()) return false;
    for (std::size_t i = 0; i < images.size(); ++i)
        if (codomain.element_order_exp(images[i]) > domain.exponents()[i]) return false;
    return true;
}

bool Homomorphism::is_surjective() const { return hom_image(*this).order() == codomain.order(); }

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
    if (!(f.codomain == g.domain)) throw std::invalid_argument("compose: domain mismatch");
    Homomorphism r{f.domain, g.codomain, {}};
    for (const auto& img : f.images) r.images.push_back(g.apply(img));
    return r;
}

// --- QZHom ---

QZVector QZHom::apply(const Element& a) const {
    long long p = source.p();
    QZVector r(target_rank, QZ{});
    for (std::size_t i = 0; i < images.size(); ++i)
        r = qzv_add(p, r, qzv_smul(p, a[i], images[i]));
    return r;
}

bool QZHom::is_injective() const {
    std::set<QZVector> seen;
    for (unsigned long long idx = 0; idx < source.order(); ++idx)
        if (!seen.insert(apply(source.element_at(idx))).second) return false;
    return true;
}

QZHom QZHom::project_last(int h) const {
    QZHom r{source, h, {}};
    for (const auto& v : images)
        r.images.emplace_back(v.end() - h, v.end());
    return r;
}

QZHom QZHom::project_first(int n) const {
    QZHom r{source, n, {}};
    for (const auto& v : images)
        r.images.emplace_back(v.begin(), v.begin() + n);
    return r;
}

std::string QZHom::key() const {
    std::ostringstream os;
    os << target_rank << "|";
    for (const auto& v : images) {
        for (const auto& q : v) os << q.a << "/" << q.e << ",";
        os << ";";
    }
    return os.str();
}

// --- hom_set / duality ---

std::vector<Homomorphism> hom_set(const AbelianPGroup& A, int h, unsigned long long budget) {
    if (h < 0) throw std::invalid_argument("h must be >= 0");
    unsigned long long count = 1;
    for (int i = 0; i < h; ++i) {
        count *= A.order();
        if (count > budget) throw BudgetExceeded(count, budget);
    }
    int K = std::max(1, A.max_exponent());
    AbelianPGroup domain(A.p(), std::vector<int>(h, K));
    std::vector<Homomorphism> out;
    out.reserve(count);
    for (unsigned long long c = 0; c < count; ++c) {
        Homomorphism f{domain, A, {}};
        unsigned long long t = c;
        f.images.resize(h);
        for (int i = h; i-- > 0;) {
            f.images[i] = A.element_at(t % A.order());
            t /= A.order();
        }
        out.push_back(std::move(f));
    }
    return out;
}

QZHom dual_hom(const Homomorphism& f) {
    const AbelianPGroup& A = f.codomain;
    long long p = A.p();
    int h = static_cast<int>(f.images.size());
    QZHom g{A, h, {}};
    for (std::size_t i = 0; i < A.factor_count(); ++i) {
        QZVector v(h);
        for (int l = 0; l < h; ++l) v[l] = qz_make(p, f.images[l][i], A.exponents()[i]);
        g.images.push_back(std::move(v));
    }
    return g;
}

Homomorphism dual_qzhom(const QZHom& g) {
    const AbelianPGroup& A = g.source;
    long long p = A.p();
    int m = g.target_rank;
    int K = std::max(1, A.max_exponent());
    AbelianPGroup domain(p, std::vector<int>(m, K));
    Homomorphism f{domain, A, std::vector<Element>(m, A.zero())};
    for (std::size_t i = 0; i < A.factor_count(); ++i) {
        int k = A.exponents()[i];
        for (int l = 0; l < m; ++l) {
            const QZ& q = g.images[i][l];
            if (q.e > k) throw std::invalid_argument("dual_qzhom: image order too large");
            f.images[l][i] = q.a * static_cast<long long>(ipow(p, k - q.e));
        }
    }
    for (auto& img : f.images) img = A.reduce(std::move(img));
    return f;
}

// --- Subgroup ---

Subgroup Subgroup::from_indices(const AbelianPGroup& ambient,
                                std::vector<unsigned long long> sorted_indices) {
    Subgroup s;
    s.ambient_ = ambient;
    s.indices_ = std::move(sorted_indices);
    return s;
}

Subgroup Subgroup::span(const AbelianPGroup& ambient, const std::vector<Element>& gens) {
    std::vector<bool> in(ambient.order(), false);
    in[ambient.index_of(ambient.zero())] = true;
    std::vector<unsigned long long> members{0};
    for (std::size_t qi = 0; qi < members.size(); ++qi) {
        Element cur = ambient.element_at(members[qi]);
        for (const auto& g : gens) {
            Element nxt = ambient.add(cur, g);
            unsigned long long id = ambient.index_of(nxt);
            if (!in[id]) {
                in[id] = true;
                members.push_back(id);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return from_indices(ambient, std::move(members));
}

Subgroup Subgroup::trivial(const AbelianPGroup& ambient) {
    return from_indices(ambient, {ambient.index_of(ambient.zero())});
}

Subgroup Subgroup::full(const AbelianPGroup& ambient) {
    std::vector<unsigned long long> all(ambient.order());
    for (unsigned long long i = 0; i < ambient.order(); ++i) all[i] = i;
    return from_indices(ambient, std::move(all));
}

std::vector<Element> Subgroup::elements() const {
    std::vector<Element> out;
    out.reserve(indices_.size());
    for (auto i : indices_) out.push_back(ambient_.element_at(i));
    return out;
}

bool Subgroup::contains(const Element& a) const {
    unsigned long long id = ambient_.index_of(ambient_.reduce(a));
    return std::binary_search(indices_.begin(), indices_.end(), id);
}

bool Subgroup::contains(const Subgroup& s) const {
    return std::includes(indices_.begin(), indices_.end(), s.indices_.begin(), s.indices_.end());
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
    std::vector<unsigned long long> out;
    std::set_intersection(indices_.begin(), indices_.end(), o.indices_.begin(), o.indices_.end(),
                          std::back_inserter(out));
    return from_indices(ambient_, std::move(out));
}

Subgroup Subgroup::join(const Subgroup& o) const {
    std::vector<Element> gens = elements();
    auto oe = o.elements();
    gens.insert(gens.end(), oe.begin(), oe.end());
    return span(ambient_, gens);
}

ZMat Subgroup::generator_matrix() const {
    std::size_t j = ambient_.factor_count();
    LatticeBasis b(j);
    for (std::size_t i = 0; i < j; ++i) {
        ZRow r(j, 0);
        r[i] = static_cast<long long>(ambient_.modulus(i));
        b.add(std::move(r));
    }
    for (auto idx : indices_) {
        Element a = ambient_.element_at(idx);
        ZRow r(j, 0);
        for (std::size_t i = 0; i < j; ++i) r[i] = a[i];
        b.add(std::move(r));
    }
    return b.hermite();
}

AbelianPGroup Subgroup::abstract_type() const {
    // invariants from torsion counts: #exponents >= t equals
    // log_p|S[p^t]| - log_p|S[p^{t-1}]|
    long long p = ambient_.p();
    int K = ambient_.max_exponent();
    // count of factors with exponent >= t is log_p(|S[p^t]| / |S[p^{t-1}]|)
    std::vector<int> count_ge(K + 2, 0);
    unsigned long long prev = 1;
    for (int t = 1; t <= K; ++t) {
        unsigned long long cnt = 0;
        for (auto idx : indices_)
            if (ambient_.element_order_exp(ambient_.element_at(idx)) <= t) ++cnt;
        unsigned long long ratio = cnt / prev;
        int r = 0;
        while (ratio > 1) { ratio /= static_cast<unsigned long long>(p); ++r; }
        count_ge[t] = r;
        prev = cnt;
    }
    std::vector<int> invs;
    for (int t = 1; t <= K; ++t)
        for (int c = 0; c < count_ge[t] - count_ge[t + 1]; ++c) invs.push_back(t);
    return AbelianPGroup(p, std::move(invs));
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (order() != o.order()) return order() < o.order();
    return generator_matrix() < o.generator_matrix();
}

std::string Subgroup::key() const {
    std::ostringstream os;
    for (auto i : indices_) os << i << ",";
    return os.str();
}

namespace {
std::map<std::pair<long long, std::vector<int>>, std::vector<Subgroup>> g_maximal_cache;
std::mutex g_maximal_mutex;
}  // namespace

std::vector<Subgroup> maximal_subgroups(const AbelianPGroup& A) {
    long long p = A.p();
    std::size_t j = A.factor_count();
    {
        std::lock_guard<std::mutex> lk(g_maximal_mutex);
        auto it = g_maximal_cache.find({p, A.exponents()});
        if (it != g_maximal_cache.end()) return it->second;
    }
    std::vector<Subgroup> out;
    // hyperplanes of A/pA, one per nonzero phi in (Z/p)^j up to scalar
    std::vector<long long> phi(j, 0);
    std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool leading_set) {
        if (i == j) {
            if (!leading_set) return;
            std::vector<unsigned long long> idxs;
            for (unsigned long long e = 0; e < A.order(); ++e) {
                Element a = A.element_at(e);
                long long s = 0;
                for (std::size_t t = 0; t < j; ++t) s += phi[t] * (a[t] % p);
                if (s % p == 0) idxs.push_back(e);
            }
            out.push_back(Subgroup::from_indices(A, std::move(idxs)));
            return;
        }
        if (!leading_set) {
            phi[i] = 0;
            rec(i + 1, false);
            phi[i] = 1;
            rec(i + 1, true);
        } else {
            for (long long v = 0; v < p; ++v) {
                phi[i] = v;
                rec(i + 1, true);
            }
        }
        phi[i] = 0;
    };
    rec(0, false);
    std::sort(out.begin(), out.end());
    std::lock_guard<std::mutex> lk(g_maximal_mutex);
    g_maximal_cache.emplace(std::make_pair(p, A.exponents()), out);
    return out;
}

namespace {
std::map<std::pair<long long, std::vector<int>>, std::vector<Subgroup>> g_subgroup_cache;
std::mutex g_subgroup_mutex;
}  // namespace

const std::vector<Subgroup>& all_subgroups(const AbelianPGroup& A) {
    std::lock_guard<std::mutex> lk(g_subgroup_mutex);
    auto cache_key = std::make_pair(A.p(), A.exponents());
    auto it = g_subgroup_cache.find(cache_key);
    if (it != g_subgroup_cache.end()) return it->second;

    std::vector<Subgroup> subs{Subgroup::trivial(A)};
    std::set<std::vector<unsigned long long>> seen{subs[0].indices()};
    for (std::size_t qi = 0; qi < subs.size(); ++qi) {
        Subgroup cur = subs[qi];
        for (unsigned long long e = 1; e < A.order(); ++e) {
            if (cur.contains(A.element_at(e))) continue;
            Element a = A.element_at(e);
            // <cur, a> = { s + t*a }
            std::set<unsigned long long> idxs(cur.indices().begin(), cur.indices().end());
            long long ord = static_cast<long long>(ipow(A.p(), A.element_order_exp(a)));
            for (long long t = 1; t < ord; ++t) {
                Element ta = A.smul(t, a);
                for (auto si : cur.indices())
                    idxs.insert(A.index_of(A.add(A.element_at(si), ta)));
            }
            std::vector<unsigned long long> v(idxs.begin(), idxs.end());
            if (seen.insert(v).second) subs.push_back(Subgroup::from_indices(A, std::move(v)));
        }
    }
    std::sort(subs.begin(), subs.end());
    auto [pos, inserted] = g_subgroup_cache.emplace(cache_key, std::move(subs));
    return pos->second;
}

std::vector<Subgroup> subgroups_of_order(const AbelianPGroup& A, unsigned long long order) {
    std::vector<Subgroup> out;
    for (const auto& s : all_subgroups(A))
        if (s.order() == order) out.push_back(s);
    return out;
}

Subgroup hom_image(const Homomorphism& f) { return Subgroup::span(f.codomain, f.images); }

Subgroup hom_kernel(const Homomorphism& f) {
    std::vector<unsigned long long> idxs;
    for (unsigned long long e = 0; e < f.domain.order(); ++e) {
        Element a = f.domain.element_at(e);
        Element img = f.apply(a);
        if (img == f.codomain.zero()) idxs.push_back(e);
    }
    return Subgroup::from_indices(f.domain, std::move(idxs));
}

Subgroup preimage(const Homomorphism& q, const Subgroup& s) {
    std::vector<unsigned long long> idxs;
    for (unsigned long long e = 0; e < q.domain.order(); ++e)
        if (s.contains(q.apply(q.domain.element_at(e)))) idxs.push_back(e);
    return Subgroup::from_indices(q.domain, std::move(idxs));
}

std::pair<AbelianPGroup, Homomorphism> quotient_group(const AbelianPGroup& A, const Subgroup& S) {
    long long p = A.p();
    std::size_t j = A.factor_count();
    if (j == 0) {
        AbelianPGroup Q(p, {});
        return {Q, Homomorphism{A, Q, {}}};
    }
    // relations: modulus rows and lifted subgroup elements
    ZMat rel;
    for (std::size_t i = 0; i < j; ++i) {
        ZRow r(j, 0);
        r[i] = static_cast<long long>(A.modulus(i));
        rel.push_back(std::move(r));
    }
    for (auto idx : S.indices()) {
        Element a = A.element_at(idx);
        ZRow r(j, 0);
        for (std::size_t i = 0; i < j; ++i) r[i] = a[i];
        rel.push_back(std::move(r));
    }
    ZMat V;
    std::vector<Int> d = smith_invariants(rel, j, &V);
    // Z^j / rel, coordinates x |-> (x*V) mod d; nontrivial factors only
    std::vector<int> exps;
    std::vector<std::size_t> cols;  // columns of V giving nontrivial factors, largest first
    for (std::size_t c = d.size(); c-- > 0;) {
        Int t = d[c];
        int k = 0;
        while (t > 1) { t /= p; ++k; }
        if (k > 0) { exps.push_back(k); cols.push_back(c); }
    }
    AbelianPGroup Q(p, exps);
    Homomorphism proj{A, Q, {}};
    for (std::size_t i = 0; i < j; ++i) {
        Element img = Q.zero();
        for (std::size_t t = 0; t < cols.size(); ++t) {
            Int v = V[i][cols[t]] % Int(Q.modulus(t));
            img[t] = static_cast<long long>(v);
        }
        proj.images.push_back(Q.reduce(std::move(img)));
    }
    return {Q, proj};
}

QZ character_value(const AbelianPGroup& A, const Element& b, const Element& a) {
    long long p = A.p();
    QZ r{0, 0};
    for (std::size_t i = 0; i < A.factor_count(); ++i) {
        long long m = static_cast<long long>(A.modulus(i));
        long long num = static_cast<long long>((__int128)b[i] * a[i] % m);
        r = qz_add(p, r, qz_make(p, num, A.exponents()[i]));
    }
    return r;
}

Subgroup character_kernel(const AbelianPGroup& A, const Element& b) {
    std::vector<unsigned long long> idxs;
    for (unsigned long long e = 0; e < A.order(); ++e)
        if (character_value(A, b, A.element_at(e)).a == 0) idxs.push_back(e);
    return Subgroup::from_indices(A, std::move(idxs));
}

Subgroup annihilator(const AbelianPGroup& A, const Subgroup& S) {
    std::vector<unsigned long long> idxs;
    for (unsigned long long e = 0; e < A.order(); ++e) {
        Element b = A.element_at(e);
        bool ok = true;
        for (auto si : S.indices())
            if (character_value(A, b, A.element_at(si)).a != 0) { ok = false; break; }
        if (ok) idxs.push_back(e);
    }
    return Subgroup::from_indices(A, std::move(idxs));
}

// --- SubgroupFamily ---

SubgroupFamily::SubgroupFamily(AbelianPGroup ambient, std::vector<Subgroup> maximal_members)
    : ambient_(std::move(ambient)) {
    // prune non-maximal members, sort canonically
    for (const auto& m : maximal_members) {
        if (!m.is_proper()) throw std::invalid_argument("family member must be proper");
        bool dominated = false;
        for (const auto& o : maximal_members)
            if (!(o == m) && o.contains(m)) { dominated = true; break; }
        if (!dominated) members_.push_back(m);
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SubgroupFamily SubgroupFamily::all_proper(const AbelianPGroup& ambient) {
    return {ambient, maximal_subgroups(ambient)};
}

bool SubgroupFamily::contains(const Subgroup& s) const {
    for (const auto& m : members_)
        if (m.contains(s)) return true;
    return false;
}

std::string SubgroupFamily::key() const {
    std::ostringstream os;
    for (const auto& m : members_) os << m.key() << "|";
    return os.str();
}

SubgroupFamily family_of(const Homomorphism& f) {
    const AbelianPGroup& A = f.codomain;
    Subgroup im = hom_image(f);
    if (im.order() == A.order()) return SubgroupFamily::empty(A);
    std::vector<Subgroup> members;
    for (const auto& m : maximal_subgroups(A))
        if (m.contains(im)) members.push_back(m);
    return {A, std::move(members)};
}

SubgroupFamily family_pullback(const Homomorphism& q, const SubgroupFamily& F) {
    if (!q.is_surjective()) throw std::invalid_argument("family_pullback: q must be surjective");
    if (!(F.ambient() == q.codomain))
        throw std::invalid_argument("family_pullback: family lives on the wrong group");
    std::vector<Subgroup> members;
    for (const auto& m : F.maximal_members()) members.push_back(preimage(q, m));
    return {q.domain, std::move(members)};
}

std::pair<Subgroup, Subgroup> minimal_summand_split(const AbelianPGroup& A, const Subgroup& S) {
    const auto& subs = all_subgroups(A);  // sorted by (order, matrix)
    for (const auto& M : subs) {
        if (M.order() % S.order() != 0) continue;
        if (!M.contains(S)) continue;
        unsigned long long corder = A.order() / M.order();
        for (const auto& K : subs) {
            if (K.order() != corder) continue;
            if (M.intersect(K).order() == 1) return {M, K};
        }
    }
    throw std::logic_error("minimal_summand_split: no summand found");  // unreachable
}

// --- torsion subgroups ---

TorsionSubgroup qzhom_image(const QZHom& l, long long p) {
    TorsionSubgroup t;
    t.p = p;
    t.rank = l.target_rank;
    for (unsigned long long e = 0; e < l.source.order(); ++e)
        t.elements.insert(l.apply(l.source.element_at(e)));
    return t;
}

TorsionSubgroup image_subgroup(const QZHom& l, long long p) {
    TorsionSubgroup t = qzhom_image(l, p);
    if (t.order() != l.source.order())
        throw std::invalid_argument("image_subgroup: map is not injective");
    return t;
}

TorsionSubgroup TorsionSubgroup::project_last(int h) const {
    TorsionSubgroup t;
    t.p = p;
    t.rank = h;
    for (const auto& v : elements) t.elements.insert(QZVector(v.end() - h, v.end()));
    return t;
}

// --- level point enumeration ---

namespace {

struct LevelEnum {
    const AbelianPGroup& A;
    int n, h, m, K;
    long long p;
    unsigned long long pK;
    const QZHom* constraint;
    std::vector<std::vector<long long>> constraint_res;  // residues mod p^K, per generator
    // partial state
    std::vector<std::vector<long long>> gen_images;  // residue vectors mod p^K
    std::unordered_multiset<unsigned long long> img_set;  // hashed codes
    std::vector<std::vector<long long>> img_vecs;
    std::function<void(const std::vector<std::vector<long long>>&)> emit;

    unsigned __int128 encode(const std::vector<long long>& v) const {
        unsigned __int128 c = 0;
        for (long long x : v) c = (c << 16) | static_cast<unsigned long long>(x);
        return c;
    }
    static unsigned long long hash128(unsigned __int128 c) {
        unsigned long long lo = static_cast<unsigned long long>(c);
        unsigned long long hi = static_cast<unsigned long long>(c >> 64);
        return lo * 0x9e3779b97f4a7c15ull ^ (hi + 0x517cc1b727220a95ull);
    }

    bool in_set(const std::vector<long long>& v) const {
        unsigned long long hh = hash128(encode(v));
        if (img_set.find(hh) == img_set.end()) return false;
        // rare hash collision guard: verify by scan
        for (const auto& w : img_vecs)
            if (w == v) return true;
        return false;
    }

    void run(int gi) {
        std::size_t j = A.factor_count();
        if (static_cast<std::size_t>(gi) == j) {
            emit(gen_images);
            return;
        }
        int k = A.exponents()[gi];
        unsigned long long pk = ipow(p, k);
        unsigned long long scale = pK / pk;
        int freecoords = constraint ? n : m;
        unsigned long long cand_count = 1;
        for (int c = 0; c < freecoords; ++c) cand_count *= pk;
        for (unsigned long long ci = 0; ci < cand_count; ++ci) {
            std::vector<long long> v(m, 0);
            unsigned long long t = ci;
            for (int c = freecoords; c-- > 0;) {
                v[c] = static_cast<long long>((t % pk) * scale);
                t /= pk;
            }
            if (constraint)
                for (int c = 0; c < h; ++c) v[n + c] = constraint_res[gi][c];
            // injectivity: s*v must avoid the partial image for 0 < s < p^k
            bool ok = true;
            std::vector<long long> sv(m, 0);
            for (unsigned long long s = 1; s < pk && ok; ++s) {
                for (int c = 0; c < m; ++c) sv[c] = (sv[c] + v[c]) % static_cast<long long>(pK);
                if (in_set(sv)) ok = false;
            }
            if (!ok) continue;
            // extend partial image, recurse, roll back
            std::size_t mark = img_vecs.size();
            gen_images.push_back(v);
            std::vector<long long> acc(m, 0);
            for (unsigned long long s = 1; s < pk; ++s) {
                for (int c = 0; c < m; ++c) acc[c] = (acc[c] + v[c]) % static_cast<long long>(pK);
                // coset s*v + previous subgroup (img_vecs[0..mark) includes 0)
                for (std::size_t u = 0; u < mark; ++u) {
                    std::vector<long long> w(m);
                    for (int c = 0; c < m; ++c)
                        w[c] = (acc[c] + img_vecs[u][c]) % static_cast<long long>(pK);
                    img_set.insert(hash128(encode(w)));
                    img_vecs.push_back(std::move(w));
                }
            }
            run(gi + 1);
            while (img_vecs.size() > mark) {
                img_set.erase(img_set.find(hash128(encode(img_vecs.back()))));
                img_vecs.pop_back();
            }
            gen_images.pop_back();
        }
    }
};

void enumerate_level(const AbelianPGroup& A, int n, int h,
                     const std::optional<QZHom>& constraint, unsigned long long budget,
                     const std::function<void(const std::vector<std::vector<long long>>&)>& emit) {
    if (n < 0 || h < 0) throw std::invalid_argument("n, h must be >= 0");
    int m = n + h;
    if (m > 8) throw std::invalid_argument("n+h > 8 not supported");
    long long p = A.p();
    int K = std::max(1, A.max_exponent());
    unsigned long long pK = ipow(p, K);
    if (pK >= (1ull << 16)) throw std::invalid_argument("p^K too large for enumeration");
    if (constraint) {
        if (!(constraint->source == A) || constraint->target_rank != h)
            throw std::invalid_argument("level_points: constraint shape mismatch");
    }
    int freecoords = constraint ? n : m;
    unsigned long long total = 1;
    for (std::size_t i = 0; i < A.factor_count(); ++i)
        for (int c = 0; c < freecoords; ++c) {
            total *= A.modulus(i);
            if (total > budget) throw BudgetExceeded(total, budget);
        }

    LevelEnum en{A, n, h, m, K, p, pK, constraint ? &*constraint : nullptr, {}, {}, {}, {}, emit};
    if (constraint) {
        for (std::size_t i = 0; i < A.factor_count(); ++i) {
            std::vector<long long> res(h, 0);
            for (int c = 0; c < h; ++c) {
                const QZ& q = constraint->images[i][c];
                if (q.e > A.exponents()[i])
                    throw std::invalid_argument("level_points: constraint not well-defined");
                res[c] = q.a * static_cast<long long>(ipow(p, K - q.e));
            }
            en.constraint_res.push_back(std::move(res));
        }
    }
    // image of 0
    std::vector<long long> z(m, 0);
    en.img_set.insert(LevelEnum::hash128(en.encode(z)));
    en.img_vecs.push_back(z);
    en.run(0);
}

QZHom point_from_residues(const AbelianPGroup& A, int m, int K,
                          const std::vector<std::vector<long long>>& gen_images) {
    long long p = A.p();
    QZHom l{A, m, {}};
    for (const auto& v : gen_images) {
        QZVector qv(m);
        for (int c = 0; c < m; ++c) qv[c] = qz_make(p, v[c], K);
        l.images.push_back(std::move(qv));
    }
    return l;
}

}  // namespace

LevelPointSet level_points(const AbelianPGroup& A, int n, int h,
                           const std::optional<QZHom>& constraint, unsigned long long budget) {
    LevelPointSet out{A, n, h, constraint, {}};
    int K = std::max(1, A.max_exponent());
    enumerate_level(A, n, h, constraint, budget,
                    [&](const std::vector<std::vector<long long>>& gi) {
                        out.points.push_back(point_from_residues(A, n + h, K, gi));
                    });
    return out;
}

FiberCounts level_counts_by_fiber(const AbelianPGroup& A, int n, int h,
                                  unsigned long long budget) {
    FiberCounts fc;
    int K = std::max(1, A.max_exponent());
    enumerate_level(A, n, h, std::nullopt, budget,
                    [&](const std::vector<std::vector<long long>>& gi) {
                        QZHom l = point_from_residues(A, n + h, K, gi);
                        ++fc.total;
                        ++fc.by_projection[l.project_last(h).key()];
                    });
    return fc;
}

SubPointSet sub_points(long long p, int n, int h, int k, const TorsionSubgroup& required_image,
                       unsigned long long budget) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    unsigned long long target = ipow(p, k);
    if (required_image.order() > target)
        throw std::invalid_argument("sub_points: required image larger than p^k");
    int m = n + h;
    SubPointSet out{n, h, k, required_image, {}};
    if (k == 0) {
        TorsionSubgroup triv;
        triv.p = p;
        triv.rank = m;
        triv.elements.insert(QZVector(m, QZ{}));
        if (required_image.order() <= 1) out.points.push_back(std::move(triv));
        return out;
    }
    // ambient (Z/p^k)^{n+h}
    AbelianPGroup G(p, std::vector<int>(m, k));
    if (G.order() > budget) throw BudgetExceeded(G.order(), budget);
    for (const auto& s : subgroups_of_order(G, target)) {
        TorsionSubgroup t;
        t.p = p;
        t.rank = m;
        for (auto idx : s.indices()) {
            Element a = G.element_at(idx);
            QZVector v(m);
            for (int c = 0; c < m; ++c) v[c] = qz_make(p, a[c], k);
            t.elements.insert(std::move(v));
        }
        if (h == 0) {
            if (required_image.order() <= 1) out.points.push_back(std::move(t));
        } else if (t.project_last(h) == required_image) {
            out.points.push_back(std::move(t));
        }
    }
    return out;
}

MonotypicityWitness monotypicity_check(const Homomorphism& f) {
    const AbelianPGroup& A = f.codomain;
    Subgroup im = hom_image(f);
    MonotypicityWitness w;
    w.monotypical = true;  // cosets of im(f) are always isomorphic translation orbits
    w.orbit_size = im.order();
    std::vector<bool> seen(A.order(), false);
    for (unsigned long long e = 0; e < A.order(); ++e) {
        if (seen[e]) continue;
        Element rep = A.element_at(e);
        w.coset_reps.push_back(rep);
        for (auto si : im.indices()) seen[A.index_of(A.add(rep, A.element_at(si)))] = true;
    }
    return w;
}

Subgroup joint_image(const Homomorphism& a, const Homomorphism& b) {
    std::vector<Element> gens = a.images;
    gens.insert(gens.end(), b.images.begin(), b.images.end());
    return Subgroup::span(a.codomain, gens);
}

std::vector<AbelianPGroup> groups_up_to(long long p, unsigned long long max_order) {
    std::vector<AbelianPGroup> out;
    int maxm = 0;
    unsigned long long o = 1;
    while (o * static_cast<unsigned long long>(p) <= max_order) {
        o *= p;
        ++maxm;
    }
    for (int m = 0; m <= maxm; ++m) {
        // partitions of m, descending parts, lexicographic
        std::vector<int> part;
        std::function<void(int, int)> rec = [&](int left, int maxpart) {
            if (left == 0) {
                out.emplace_back(p, part);
                return;
            }
            for (int t = std::min(left, maxpart); t >= 1; --t) {
                part.push_back(t);
                rec(left - t, t);
                part.pop_back();
            }
        };
        rec(m, m);
    }
    std::sort(out.begin(), out.end(), [](const AbelianPGroup& a, const AbelianPGroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.exponents() < b.exponents();
    });
    return out;
}

}  // namespace translev
