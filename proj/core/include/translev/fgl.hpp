#pragma once

#include "translev/zmat.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace translev {

// truncation policy applied after arithmetic: drop terms over the total
// degree, drop terms hitting a per-variable nilpotency bound, and reduce
// coefficients mod a prime when nonzero
struct Trunc {
    int total{-1};
    std::vector<int> bounds;
    long long mod{0};
};

// sparse multivariate polynomial with integer coefficients
class Series {
public:
    using Key = std::vector<int>;

    explicit Series(std::size_t nvars = 1) : nvars_(nvars) {}
    static Series variable(std::size_t nvars, std::size_t i);
    static Series constant(std::size_t nvars, Int c);

    std::size_t nvars() const { return nvars_; }
    const std::map<Key, Int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    Int coeff(const Key& k) const;
    Int constant_term() const { return coeff(Key(nvars_, 0)); }
    int degree() const;  // total degree, -1 if zero

    void set(Key k, Int c);
    Series apply(const Trunc& tr) const;
    Series promote(std::size_t nvars, std::size_t at) const;  // embed var i at slot at+i

    bool operator==(const Series& o) const {
        return nvars_ == o.nvars_ && coeffs_ == o.coeffs_;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const;  // graded lex

private:
    std::size_t nvars_;
    std::map<Key, Int> coeffs_;
};

Series add(const Series& a, const Series& b, const Trunc& tr = {});
Series sub(const Series& a, const Series& b, const Trunc& tr = {});
Series mul(const Series& a, const Series& b, const Trunc& tr = {});
Series smul(const Int& c, const Series& a, const Trunc& tr = {});
Series power(const Series& a, int e, const Trunc& tr = {});
// substitute args[i] for variable i; args share a common variable set
Series substitute(const Series& a, const std::vector<Series>& args, const Trunc& tr);

nlohmann::json series_to_json(const Series& s);

// univariate exact division; throws if a remainder is left
Series exact_divide(const Series& num, const Series& den);

enum class FglVariant { Multiplicative, HondaFiber };

// a one-dimensional formal group law at one of the two computable
// specializations: x+y+xy exactly over the integers, or the law with
// [p](x) = x^{p^n} over F_p carried to a fixed truncation degree
struct FglSpec {
    FglVariant variant{FglVariant::Multiplicative};
    long long p{2};
    int n{1};
    int trunc{0};       // truncation degree (HondaFiber only)
    Series law{2};      // F(x,y) table

    Trunc law_trunc() const {
        if (variant == FglVariant::Multiplicative) return {};
        return {trunc, {}, p};
    }
};

FglSpec multiplicative_law(long long p);
// builds the law from the p-typical logarithm sum x^{p^{ni}}/p^i: reverts it,
// forms exp(log x + log y) to degree D, asserts p-integrality of every
// coefficient, and reduces mod p; throws on an integrality failure
FglSpec honda_law(long long p, int n, int D);

Series p_series(const FglSpec& F, int k);        // [p^k](x)
Series m_series(const FglSpec& F, long long m);  // [m](x)
Series angle_series(const FglSpec& F, int k);    // [p^k](x) / [p^{k-1}](x)

// a +_F b; both arguments must have zero constant term
Series formal_sum(const FglSpec& F, const Series& a, const Series& b, const Trunc& tr);

// F(x,0) = x, F(x,y) = F(y,x), F(F(x,y),z) = F(x,F(y,z)) to the truncation
bool law_unital(const FglSpec& F);
bool law_commutative(const FglSpec& F);
bool law_associative(const FglSpec& F);

}  // namespace translev
