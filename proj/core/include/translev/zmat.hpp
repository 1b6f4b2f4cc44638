#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace translev {

using Int = boost::multiprecision::cpp_int;
using ZRow = std::vector<Int>;
using ZMat = std::vector<ZRow>;

// Integer lattice given by the span of its rows, maintained in row-echelon
// form with strictly increasing pivot columns and positive pivots.
class LatticeBasis {
public:
    explicit LatticeBasis(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    const ZMat& rows() const { return rows_; }

    void add(ZRow v) {
        if (v.size() != cols_) throw std::invalid_argument("LatticeBasis: row width mismatch");
        bool changed = false;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j] == 0) continue;
            int r = row_with_pivot(j);
            if (r < 0) {
                if (v[j] < 0)
                    for (auto& x : v) x = -x;
                insert_row(std::move(v), j);
                reduce_above();
                return;
            }
            Int& pj = rows_[r][j];
            if (v[j] % pj == 0) {
                Int q = v[j] / pj;
                for (std::size_t c = j; c < cols_; ++c) v[c] -= q * rows_[r][c];
            } else {
                // replace pivot row by the gcd combination, continue reducing v
                Int a, b, g;
                g = ext_gcd(pj, v[j], a, b);
                ZRow nr(cols_, 0);
                for (std::size_t c = j; c < cols_; ++c) nr[c] = a * rows_[r][c] + b * v[c];
                Int qv = v[j] / g, qr = pj / g;
                for (std::size_t c = j; c < cols_; ++c) {
                    Int t = qr * v[c] - qv * rows_[r][c];
                    v[c] = t;
                }
                rows_[r] = std::move(nr);
                changed = true;
            }
        }
        if (changed) reduce_above();
    }

    void add_all(const ZMat& m) {
        for (const auto& r : m) add(r);
    }

    // v in the lattice?
    bool contains(ZRow v) const {
        if (v.size() != cols_) throw std::invalid_argument("LatticeBasis: row width mismatch");
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j] == 0) continue;
            int r = row_with_pivot(j);
            if (r < 0) return false;
            if (v[j] % rows_[r][j] != 0) return false;
            Int q = v[j] / rows_[r][j];
            for (std::size_t c = j; c < cols_; ++c) v[c] -= q * rows_[r][c];
        }
        return true;
    }

    // Canonical Hermite normal form: entries above each pivot reduced into
    // [0, pivot). Two bases span the same lattice iff their forms agree.
    // The invariant is maintained by add(), so the rows are already reduced.
    ZMat hermite() const { return rows_; }

    bool operator==(const LatticeBasis& o) const {
        return cols_ == o.cols_ && hermite() == o.hermite();
    }

    static Int floor_div(const Int& a, const Int& b) {
        Int q = a / b, r = a % b;
        if (r != 0 && ((r < 0) != (b < 0))) --q;
        return q;
    }

private:
    std::size_t cols_;
    ZMat rows_;

    static std::size_t pivot_col(const ZRow& r) {
        for (std::size_t j = 0; j < r.size(); ++j)
            if (r[j] != 0) return j;
        assert(false);
        return r.size();
    }

    int row_with_pivot(std::size_t j) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::size_t pj = pivot_col(rows_[i]);
            if (pj == j) return static_cast<int>(i);
            if (pj > j) return -1;
        }
        return -1;
    }

    void insert_row(ZRow v, std::size_t j) {
        std::size_t pos = 0;
        while (pos < rows_.size() && pivot_col(rows_[pos]) < j) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
    }

    // restore the Hermite invariant: entries above each pivot in [0, pivot)
    void reduce_above() {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::size_t pj = pivot_col(rows_[i]);
            for (std::size_t t = 0; t < i; ++t) {
                Int q = floor_div(rows_[t][pj], rows_[i][pj]);
                if (q == 0) continue;
                for (std::size_t c = pj; c < cols_; ++c) rows_[t][c] -= q * rows_[i][c];
            }
        }
    }

    // g = gcd(x,y) = a*x + b*y, g > 0
    static Int ext_gcd(Int x, Int y, Int& a, Int& b) {
        Int old_r = x, r = y;
        Int old_s = 1, s = 0;
        Int old_t = 0, t = 1;
        while (r != 0) {
            Int q = old_r / r;
            Int tmp = old_r - q * r; old_r = r; r = tmp;
            tmp = old_s - q * s; old_s = s; s = tmp;
            tmp = old_t - q * t; old_t = t; t = tmp;
        }
        if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
        a = old_s;
        b = old_t;
        return old_r;
    }
};

namespace detail {

inline void smith_improve_pivot(ZMat& m, std::size_t t, std::size_t nr, std::size_t nc,
                                ZMat* V) {
    // move an entry of minimal absolute value in the trailing block to (t,t)
    std::size_t bi = t, bj = t;
    Int best = 0;
    for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j) {
            if (m[i][j] == 0) continue;
            Int a = abs(m[i][j]);
            if (best == 0 || a < best) { best = a; bi = i; bj = j; }
        }
    std::swap(m[t], m[bi]);
    if (bj != t) {
        for (std::size_t i = 0; i < nr; ++i) std::swap(m[i][t], m[i][bj]);
        if (V)
            for (std::size_t i = 0; i < nc; ++i) std::swap((*V)[i][t], (*V)[i][bj]);
    }
}

}  // namespace detail

// p-primary invariant factors p^{v_1} <= p^{v_2} <= ... of the cokernel
// Z^cols / rowspan(m). The multiset of valuations is read off from the
// indices [Z^cols : L + p^k Z^cols]: with r0 the free rank of the cokernel,
// v_p of that index is k*r0 + sum_i min(v_i, k), so consecutive differences
// count the factors of valuation > k. Each index comes from a Hermite basis
// that contains p^k times the standard vectors, which keeps every entry
// reduced and avoids the coefficient growth of direct Smith pivoting.
inline std::vector<Int> plocal_invariants(const ZMat& m, std::size_t cols, long long p) {
    LatticeBasis base(cols);
    base.add_all(m);
    std::size_t r0 = cols - base.rank();

    auto vp_index = [&](int k) -> long long {
        Int pk = 1;
        for (int t = 0; t < k; ++t) pk *= p;
        LatticeBasis b(cols);
        for (std::size_t i = 0; i < cols; ++i) {
            ZRow e(cols, 0);
            e[i] = pk;
            b.add(std::move(e));
        }
        for (const auto& row : m) {
            ZRow rr(row);
            for (auto& x : rr) {
                x %= pk;
                if (x < 0) x += pk;
            }
            b.add(std::move(rr));
        }
        long long v = 0;
        for (const auto& row : b.rows())
            for (const auto& x : row) {
                if (x == 0) continue;
                Int piv = x;
                while (piv % p == 0) {
                    piv /= p;
                    ++v;
                }
                break;
            }
        return v;
    };

    std::vector<Int> out;
    long long prev = vp_index(1);  // r0 + #(v_i >= 1), since vp_index(0) = 0
    Int pk = p;
    for (int k = 1; prev > static_cast<long long>(r0); ++k) {
        long long cur = vp_index(k + 1) - vp_index(k);  // r0 + #(v_i > k)
        for (long long t = 0; t < prev - cur; ++t) out.push_back(pk);
        prev = cur;
        pk *= p;
        if (k > 4096) throw std::logic_error("plocal_invariants: valuation bound exceeded");
    }
    return out;
}

// Invariant factors d1 | d2 | ... (positive, nontrivial zeros dropped) of the
// cokernel presentation given by the rows of m in Z^cols.
inline std::vector<Int> smith_invariants(ZMat m, std::size_t cols,
                                         ZMat* col_transform = nullptr) {
    std::size_t nr = m.size(), nc = cols;
    for (auto& r : m)
        if (r.size() != nc) throw std::invalid_argument("smith_invariants: width mismatch");
    ZMat V;
    if (col_transform) {
        V.assign(nc, ZRow(nc, 0));
        for (std::size_t i = 0; i < nc; ++i) V[i][i] = 1;
    }
    std::vector<Int> res;
    std::size_t t = 0;
    while (t < nr && t < nc) {
        bool nonzero = false;
        for (std::size_t i = t; i < nr && !nonzero; ++i)
            for (std::size_t j = t; j < nc; ++j)
                if (m[i][j] != 0) { nonzero = true; break; }
        if (!nonzero) break;

        for (;;) {
            detail::smith_improve_pivot(m, t, nr, nc, col_transform ? &V : nullptr);
            Int& piv = m[t][t];
            bool dirty = false;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (m[i][t] == 0) continue;
                Int q = m[i][t] / piv;
                for (std::size_t j = t; j < nc; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (m[t][j] == 0) continue;
                Int q = m[t][j] / piv;
                for (std::size_t i = 0; i < nr; ++i) m[i][j] -= q * m[i][t];
                if (col_transform)
                    for (std::size_t i = 0; i < nc; ++i) V[i][j] -= q * V[i][t];
                if (m[t][j] != 0) dirty = true;
            }
            if (dirty) continue;
            // enforce divisibility of the trailing block by the pivot
            bool fixed = false;
            for (std::size_t i = t + 1; i < nr && !fixed; ++i)
                for (std::size_t j = t + 1; j < nc; ++j)
                    if (m[i][j] % piv != 0) {
                        for (std::size_t c = t; c < nc; ++c) m[t][c] += m[i][c];
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (m[t][t] < 0) {
            for (std::size_t i = 0; i < nr; ++i) m[i][t] = -m[i][t];
            if (col_transform)
                for (std::size_t i = 0; i < nc; ++i) V[i][t] = -V[i][t];
        }
        res.push_back(m[t][t]);
        ++t;
    }
    if (col_transform) *col_transform = std::move(V);
    return res;
}

// --- small prime-field linear algebra ---

inline long long fp_inv(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("fp_inv: not invertible");
    return ((t % p) + p) % p;
}

using FpMat = std::vector<std::vector<long long>>;

// reduced row echelon form mod p (canonical per row span)
inline FpMat fp_rref(FpMat m, long long p) {
    for (auto& row : m)
        for (auto& x : row) x = ((x % p) + p) % p;
    std::size_t nr = m.size();
    if (nr == 0) return m;
    std::size_t nc = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t sel = nr;
        for (std::size_t i = r; i < nr; ++i)
            if (m[i][c] != 0) { sel = i; break; }
        if (sel == nr) continue;
        std::swap(m[r], m[sel]);
        long long inv = fp_inv(m[r][c], p);
        for (std::size_t j = c; j < nc; ++j) m[r][j] = m[r][j] * inv % p;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || m[i][c] == 0) continue;
            long long f = m[i][c];
            for (std::size_t j = c; j < nc; ++j)
                m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    m.resize(r);
    return m;
}

inline std::size_t fp_rank(FpMat m, long long p) { return fp_rref(std::move(m), p).size(); }

// rank over Q of an integer matrix (row reduction preserves rank)
inline std::size_t zq_rank(const ZMat& m, std::size_t cols) {
    LatticeBasis b(cols);
    b.add_all(m);
    return b.rank();
}

}  // namespace translev
