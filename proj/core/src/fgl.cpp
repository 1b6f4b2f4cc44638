#include "translev/fgl.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace translev {

namespace {

using Rat = boost::rational<Int>;

bool killed(const Series::Key& k, const Trunc& tr) {
    if (tr.total >= 0) {
        int d = std::accumulate(k.begin(), k.end(), 0);
        if (d > tr.total) return true;
    }
    if (!tr.bounds.empty())
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] >= tr.bounds[i]) return true;
    return false;
}

Int reduce_coeff(Int c, const Trunc& tr) {
    if (tr.mod > 0) {
        c %= tr.mod;
        if (c < 0) c += tr.mod;
    }
    return c;
}

}  // namespace

Series Series::variable(std::size_t nvars, std::size_t i) {
    Series s(nvars);
    Key k(nvars, 0);
    k[i] = 1;
    s.coeffs_[k] = 1;
    return s;
}

Series Series::constant(std::size_t nvars, Int c) {
    Series s(nvars);
    if (c != 0) s.coeffs_[Key(nvars, 0)] = std::move(c);
    return s;
}

Int Series::coeff(const Key& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Int(0) : it->second;
}

int Series::degree() const {
    int d = -1;
    for (const auto& [k, c] : coeffs_)
        d = std::max(d, std::accumulate(k.begin(), k.end(), 0));
    return d;
}

void Series::set(Key k, Int c) {
    if (k.size() != nvars_) throw std::invalid_argument("Series::set: key width mismatch");
    if (c == 0)
        coeffs_.erase(k);
    else
        coeffs_[std::move(k)] = std::move(c);
}

Series Series::apply(const Trunc& tr) const {
    Series r(nvars_);
    for (const auto& [k, c] : coeffs_) {
        if (killed(k, tr)) continue;
        Int rc = reduce_coeff(c, tr);
        if (rc != 0) r.coeffs_[k] = std::move(rc);
    }
    return r;
}

Series Series::promote(std::size_t nvars, std::size_t at) const {
    if (at + nvars_ > nvars) throw std::invalid_argument("Series::promote: slot out of range");
    Series r(nvars);
    for (const auto& [k, c] : coeffs_) {
        Key nk(nvars, 0);
        for (std::size_t i = 0; i < nvars_; ++i) nk[at + i] = k[i];
        r.coeffs_[std::move(nk)] = c;
    }
    return r;
}

std::string Series::to_string(const std::vector<std::string>& names) const {
    auto var_name = [&](std::size_t i) -> std::string {
        if (i < names.size()) return names[i];
        if (nvars_ == 1) return "x";
        if (nvars_ <= 3) return std::string(1, static_cast<char>('x' + i));
        return "x" + std::to_string(i + 1);
    };
    if (coeffs_.empty()) return "0";
    // graded lexicographic, highest degree first
    std::vector<const std::pair<const Key, Int>*> terms;
    for (const auto& t : coeffs_) terms.push_back(&t);
    auto deg = [](const Key& k) { return std::accumulate(k.begin(), k.end(), 0); };
    std::sort(terms.begin(), terms.end(), [&](auto* a, auto* b) {
        int da = deg(a->first), db = deg(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : terms) {
        const Int& c = t->second;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        Int a = abs(c);
        bool has_var = deg(t->first) > 0;
        if (a != 1 || !has_var) os << a.str();
        bool star = a != 1;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (t->first[i] == 0) continue;
            if (star) os << "*";
            os << var_name(i);
            if (t->first[i] > 1) os << "^" << t->first[i];
            star = true;
        }
    }
    return os.str();
}

Series add(const Series& a, const Series& b, const Trunc& tr) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("add: variable count mismatch");
    Series r(a.nvars());
    for (const auto& [k, c] : a.coeffs()) r.set(k, c);
    for (const auto& [k, c] : b.coeffs()) r.set(k, r.coeff(k) + c);
    return r.apply(tr);
}

Series sub(const Series& a, const Series& b, const Trunc& tr) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("sub: variable count mismatch");
    Series r(a.nvars());
    for (const auto& [k, c] : a.coeffs()) r.set(k, c);
    for (const auto& [k, c] : b.coeffs()) r.set(k, r.coeff(k) - c);
    return r.apply(tr);
}

Series mul(const Series& a, const Series& b, const Trunc& tr) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("mul: variable count mismatch");
    Series r(a.nvars());
    for (const auto& [ka, ca] : a.coeffs())
        for (const auto& [kb, cb] : b.coeffs()) {
            Series::Key k(a.nvars());
            for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
            if (killed(k, tr)) continue;
            Int v = r.coeff(k) + ca * cb;
            r.set(std::move(k), std::move(v));
        }
    return r.apply(tr);
}

Series smul(const Int& c, const Series& a, const Trunc& tr) {
    Series r(a.nvars());
    for (const auto& [k, v] : a.coeffs()) r.set(k, c * v);
    return r.apply(tr);
}

Series power(const Series& a, int e, const Trunc& tr) {
    Series r = Series::constant(a.nvars(), 1);
    for (int i = 0; i < e; ++i) r = mul(r, a, tr);
    return r;
}

Series substitute(const Series& a, const std::vector<Series>& args, const Trunc& tr) {
    if (args.size() != a.nvars()) throw std::invalid_argument("substitute: argument count mismatch");
    std::size_t N = args.empty() ? 1 : args[0].nvars();
    for (const auto& g : args)
        if (g.nvars() != N) throw std::invalid_argument("substitute: argument widths differ");
    // powers of each argument, computed on demand
    std::vector<std::vector<Series>> pw(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) pw[i].push_back(Series::constant(N, 1));
    auto arg_power = [&](std::size_t i, int e) -> const Series& {
        while (static_cast<int>(pw[i].size()) <= e)
            pw[i].push_back(mul(pw[i].back(), args[i], tr));
        return pw[i][e];
    };
    Series r(N);
    for (const auto& [k, c] : a.coeffs()) {
        Series term = Series::constant(N, c);
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] > 0) term = mul(term, arg_power(i, k[i]), tr);
        r = add(r, term, tr);
    }
    return r;
}

nlohmann::json series_to_json(const Series& s) {
    nlohmann::json j;
    j["nvars"] = s.nvars();
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [k, c] : s.coeffs()) {
        std::ostringstream os;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) os << ",";
            os << k[i];
        }
        table[os.str()] = c.str();
    }
    j["coefficients"] = std::move(table);
    return j;
}

Series exact_divide(const Series& num, const Series& den) {
    if (num.nvars() != 1 || den.nvars() != 1)
        throw std::invalid_argument("exact_divide: univariate only");
    int dd = den.degree();
    if (dd < 0) throw std::invalid_argument("exact_divide: division by zero");
    Int lead = den.coeff({dd});
    Series rem = num;
    Series quot(1);
    while (!rem.is_zero() && rem.degree() >= dd) {
        int rd = rem.degree();
        Int rc = rem.coeff({rd});
        if (rc % lead != 0) throw std::runtime_error("exact_divide: inexact division");
        Int q = rc / lead;
        Series t(1);
        t.set({rd - dd}, q);
        quot = add(quot, t);
        rem = sub(rem, mul(t, den));
    }
    if (!rem.is_zero()) throw std::runtime_error("exact_divide: nonzero remainder");
    return quot;
}

// --- laws ---

FglSpec multiplicative_law(long long p) {
    FglSpec F;
    F.variant = FglVariant::Multiplicative;
    F.p = p;
    F.n = 1;
    Series law(2);
    law.set({1, 0}, 1);
    law.set({0, 1}, 1);
    law.set({1, 1}, 1);
    F.law = std::move(law);
    return F;
}

namespace {

unsigned long long upow(long long b, int e) {
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<unsigned long long>(b);
    return r;
}

}  // namespace

FglSpec honda_law(long long p, int n, int D) {
    if (D < 2) throw std::invalid_argument("honda_law: truncation degree must be >= 2");
    if (n < 1) throw std::invalid_argument("honda_law: height must be >= 1");
    // log(x) = sum_i x^{p^{ni}} / p^i to degree D
    std::vector<Rat> L(D + 1, Rat(0));
    Int denom = 1;
    for (int i = 0;; ++i) {
        unsigned long long e = upow(p, n * i);
        if (e > static_cast<unsigned long long>(D)) break;
        L[e] = Rat(1, denom);
        denom *= p;
    }
    // functional inverse E with E(L(x)) = x: solve degree by degree using
    // powers of L (L has leading coefficient 1 in degree 1)
    std::vector<std::vector<Rat>> Lk;  // Lk[k] = L^{k+1}
    Lk.push_back(L);
    std::vector<Rat> E(D + 1, Rat(0));
    E[1] = Rat(1);
    for (int d = 2; d <= D; ++d) {
        while (static_cast<int>(Lk.size()) < d) {
            const auto& prev = Lk.back();
            std::vector<Rat> nxt(D + 1, Rat(0));
            for (int a = 0; a <= D; ++a) {
                if (prev[a] == Rat(0)) continue;
                for (int b = 1; a + b <= D; ++b) {
                    if (L[b] == Rat(0)) continue;
                    nxt[a + b] += prev[a] * L[b];
                }
            }
            Lk.push_back(std::move(nxt));
        }
        Rat acc(0);
        for (int k = 1; k < d; ++k) acc += E[k] * Lk[k - 1][d];
        E[d] = -acc;  // pivot coefficient of E_d in (E o L)_d is 1
    }
    // F(x,y) = E(log x + log y), dense on total degree <= D
    auto idx = [D](int i, int j) { return i * (D + 1) + j; };
    std::vector<Rat> u((D + 1) * (D + 1), Rat(0));
    for (int e = 1; e <= D; ++e) {
        if (L[e] != Rat(0)) {
            u[idx(e, 0)] += L[e];
            u[idx(0, e)] += L[e];
        }
    }
    std::vector<Rat> uk = u;  // u^k
    std::vector<Rat> F2((D + 1) * (D + 1), Rat(0));
    for (int k = 1; k <= D; ++k) {
        if (k > 1) {
            std::vector<Rat> nxt((D + 1) * (D + 1), Rat(0));
            for (int a = 0; a <= D; ++a)
                for (int b = 0; a + b <= D; ++b) {
                    if (uk[idx(a, b)] == Rat(0)) continue;
                    for (int c = 0; a + c <= D; ++c)
                        for (int e = 0; a + b + c + e <= D; ++e) {
                            if (u[idx(c, e)] == Rat(0)) continue;
                            nxt[idx(a + c, b + e)] += uk[idx(a, b)] * u[idx(c, e)];
                        }
                }
            uk = std::move(nxt);
        }
        if (E[k] == Rat(0)) continue;
        for (int a = 0; a <= D; ++a)
            for (int b = 0; a + b <= D; ++b)
                F2[idx(a, b)] += E[k] * uk[idx(a, b)];
    }
    // p-integrality, then reduction mod p
    FglSpec F;
    F.variant = FglVariant::HondaFiber;
    F.p = p;
    F.n = n;
    F.trunc = D;
    Series law(2);
    for (int a = 0; a <= D; ++a)
        for (int b = 0; a + b <= D; ++b) {
            const Rat& c = F2[idx(a, b)];
            if (c == Rat(0)) continue;
            if (c.denominator() % p == 0)
                throw std::runtime_error("honda_law: coefficient at x^" + std::to_string(a) +
                                         " y^" + std::to_string(b) + " is not p-integral");
            Int num = c.numerator() % p;
            if (num < 0) num += p;
            Int den = c.denominator() % p;
            // invert den mod p by Fermat
            Int inv = 1, base = den, e = p - 2;
            while (e > 0) {
                if (e % 2 == 1) inv = inv * base % p;
                base = base * base % p;
                e /= 2;
            }
            Int v = num * inv % p;
            if (v != 0) law.set({a, b}, v);
        }
    F.law = std::move(law);
    if (!law_unital(F)) throw std::runtime_error("honda_law: unit axiom failed");
    return F;
}

Series m_series(const FglSpec& F, long long m) {
    if (m < 0) throw std::invalid_argument("m_series: m must be >= 0");
    Series x = Series::variable(1, 0);
    if (F.variant == FglVariant::Multiplicative) {
        // (1+x)^m - 1 by binomials
        Series r(1);
        Int binom = 1;
        for (long long i = 1; i <= m; ++i) {
            binom = binom * (m - i + 1) / i;
            r.set({static_cast<int>(i)}, binom);
        }
        return r;
    }
    Trunc tr = F.law_trunc();
    Series acc(1);
    for (long long i = 0; i < m; ++i) acc = formal_sum(F, acc, x, tr);
    return acc;
}

Series p_series(const FglSpec& F, int k) {
    if (k < 0) throw std::invalid_argument("p_series: k must be >= 0");
    if (F.variant == FglVariant::Multiplicative) {
        long long m = 1;
        for (int i = 0; i < k; ++i) m *= F.p;
        return m_series(F, m);
    }
    Series r(1);
    r.set({static_cast<int>(upow(F.p, k * F.n))}, 1);
    return r;
}

Series angle_series(const FglSpec& F, int k) {
    if (k < 1) throw std::invalid_argument("angle_series: k must be >= 1");
    if (F.variant == FglVariant::Multiplicative)
        return exact_divide(p_series(F, k), p_series(F, k - 1));
    Series r(1);
    r.set({static_cast<int>(upow(F.p, k * F.n) - upow(F.p, (k - 1) * F.n))}, 1);
    return r;
}

Series formal_sum(const FglSpec& F, const Series& a, const Series& b, const Trunc& tr) {
    if (a.constant_term() != 0 || b.constant_term() != 0)
        throw std::invalid_argument("formal_sum: arguments must have zero constant term");
    if (F.variant == FglVariant::HondaFiber) {
        // the law table only reaches the truncation degree; refuse bounds that
        // would need more of it
        int need = -1;
        if (tr.total >= 0) need = tr.total;
        if (!tr.bounds.empty()) {
            int s = 0;
            for (int bnd : tr.bounds) s += bnd - 1;
            need = need < 0 ? s : std::min(need, s);
        }
        if (need < 0 || need > F.trunc)
            throw std::invalid_argument("formal_sum: truncation exceeds the law table degree");
    }
    Trunc eff = tr;
    if (F.variant == FglVariant::HondaFiber) eff.mod = F.p;
    return substitute(F.law, {a, b}, eff);
}

bool law_unital(const FglSpec& F) {
    Series x = Series::variable(1, 0);
    Series z(1);
    Trunc tr = F.law_trunc();
    return substitute(F.law, {x, z}, tr) == x && substitute(F.law, {z, x}, tr) == x;
}

bool law_commutative(const FglSpec& F) {
    for (const auto& [k, c] : F.law.coeffs())
        if (F.law.coeff({k[1], k[0]}) != c) return false;
    return true;
}

bool law_associative(const FglSpec& F) {
    Trunc tr = F.law_trunc();
    Series X = Series::variable(3, 0), Y = Series::variable(3, 1), Z = Series::variable(3, 2);
    Series xy = substitute(F.law, {X, Y}, tr);
    Series yz = substitute(F.law, {Y, Z}, tr);
    return substitute(F.law, {xy, Z}, tr) == substitute(F.law, {X, yz}, tr);
}

}  // namespace translev
