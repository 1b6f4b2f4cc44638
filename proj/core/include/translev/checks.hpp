#pragma once

#include "translev/loopspace.hpp"

#include <json.hpp>

#include <optional>

namespace translev {

enum class CheckStatus { Pass, Fail, Skipped };

std::string status_name(CheckStatus s);

struct CheckReport {
    std::string name;
    std::string parameters;
    CheckStatus status{CheckStatus::Pass};
    std::string left;     // computed data
    std::string right;    // expected / independently computed data
    std::string witness;  // mismatch witness or note

    bool passed() const { return status != CheckStatus::Fail; }
};

nlohmann::json report_to_json(const CheckReport& r);
std::string reports_to_markdown(const std::vector<CheckReport>& rs);
bool all_passed(const std::vector<CheckReport>& rs);

// the worked example at p = 2 on the rank-two elementary group: quotient of
// order 2 with invariant factors [2], and the generator-set identity
// (x+2, y+2, xy+x+y+2) = (2, x, y)
CheckReport check_f2_example();

// cyclic groups: the ideal for non-surjective f is principal on the angle
// series and the torsion-free quotient is free of rank p^{k-1}(p-1),
// matching the brute-force injection count
std::vector<CheckReport> check_cyclic_ideals(long long p, int kmax);

// per f: rank of the torsion-free quotient equals the constrained level
// count; the total matches the unconstrained count
std::vector<CheckReport> check_fiber_rank(const AbelianPGroup& A, int h,
                                          unsigned long long budget = kDefaultBudget);
// one aggregated report per (A, h) over all groups of order <= max_order
std::vector<CheckReport> check_fiber_rank_sweep(long long p, unsigned long long max_order,
                                                const std::vector<int>& hs,
                                                unsigned long long budget = kDefaultBudget);

// explicit bijection: jointly surjective pairs of commuting tuples match the
// injective duals, pair by pair and as point sets
std::vector<CheckReport> check_lemma43(long long p, unsigned long long max_order,
                                       unsigned long long budget = kDefaultBudget);

// invariant-factor multiset multiplicativity across a direct-sum split
// compatible with im f; hypothesis failures are reported as skipped
CheckReport check_fdecomp(const AbelianPGroup& A, const Homomorphism& f);
std::vector<CheckReport> check_fdecomp_sweep(long long p, unsigned long long max_order);

// Q-dimension of the quotient against the Artinian localization at the
// Euler classes with kernel in the family of f
CheckReport check_localizations(const AbelianPGroup& A, const Homomorphism& f);
std::vector<CheckReport> check_localization_sweep(long long p, unsigned long long max_order);

// localization at all Euler classes of the rank-two elementary group is zero
CheckReport check_vandermonde(long long p);

// point-level checks at a fixed f: kernel restriction injectivity, the
// image-subgroup assignment landing in the constrained subgroup point set,
// and monotypicity of the coset decomposition
CheckReport check_square_at_points(const AbelianPGroup& A, const Homomorphism& f, int h,
                                   unsigned long long budget = kDefaultBudget);
std::vector<CheckReport> check_square_sweep(long long p, unsigned long long max_order,
                                            unsigned long long im_map_max_order,
                                            unsigned long long budget = kDefaultBudget);

// special-fiber law: axioms to the truncation degree, the p-series via
// repeated formal sums, and fiber dimension = level count for surjective f
std::vector<CheckReport> check_honda(long long p, int n);

// transfer units against the representation-ring induction oracle
std::vector<CheckReport> check_oracle(long long p, unsigned long long max_order);

struct SuiteOptions {
    long long p{2};
    std::optional<AbelianPGroup> group;
    int n{1};
    int h{1};
    unsigned long long max_order{16};
    unsigned long long budget{kDefaultBudget};
};

std::vector<std::string> known_checks();
std::vector<CheckReport> run_named_check(const std::string& name, const SuiteOptions& opt);

}  // namespace translev
