// Acceptance gate: one line per criterion, pass/fail, with runtime.
#include "translev/checks.hpp"

#include <chrono>
#include <iostream>

using namespace translev;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& title, const std::vector<CheckReport>& rs,
            double seconds, double limit) {
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : rs) {
        if (r.status == CheckStatus::Fail) ++fail;
        else if (r.status == CheckStatus::Skipped) ++skip;
        else ++pass;
    }
    bool over = limit > 0 && seconds > limit;
    bool ok = fail == 0 && !over;
    std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << " - " << title
              << " (" << pass << " pass, " << fail << " fail, " << skip << " skipped, "
              << seconds << " s";
    if (limit > 0) std::cout << ", limit " << limit << " s";
    std::cout << ")\n";
    if (!ok) {
        ++failures;
        if (over) std::cout << "    time limit exceeded\n";
        for (const auto& r : rs)
            if (r.status == CheckStatus::Fail)
                std::cout << "    " << r.name << " " << r.parameters << ": " << r.left
                          << " vs " << r.right << " " << r.witness << "\n";
    }
}

template <typename F>
void run(int number, const std::string& title, double limit, F&& body) {
    auto t0 = clk::now();
    std::vector<CheckReport> rs;
    try {
        rs = body();
    } catch (const std::exception& e) {
        rs.push_back({"exception", "", CheckStatus::Fail, "", "", e.what()});
    }
    double dt = std::chrono::duration<double>(clk::now() - t0).count();
    report(number, title, rs, dt, limit);
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
}

}  // namespace

int main() {
    run(1, "worked example at p=2 on Z/2 x Z/2", 1.0,
        [] { return std::vector<CheckReport>{check_f2_example()}; });

    run(2, "cyclic transfer ideals, p in {2,3}, k <= 3", 5.0, [] {
        std::vector<CheckReport> rs;
        append(rs, check_cyclic_ideals(2, 3));
        append(rs, check_cyclic_ideals(3, 3));
        return rs;
    });

    run(3, "rank identity per hom, |A| <= 64, p in {2,3}, h in {1,2}", 600.0, [] {
        std::vector<CheckReport> rs;
        append(rs, check_fiber_rank_sweep(2, 64, {1, 2}));
        append(rs, check_fiber_rank_sweep(3, 64, {1, 2}));
        return rs;
    });

    run(4, "explicit pair bijection, |A| <= 16, n+h <= 3", 60.0, [] {
        std::vector<CheckReport> rs;
        append(rs, check_lemma43(2, 16));
        append(rs, check_lemma43(3, 16));
        return rs;
    });

    run(5, "invariant-factor multiplicativity sweep, |A| <= 64", 0, [] {
        std::vector<CheckReport> rs;
        append(rs, check_fdecomp_sweep(2, 64));
        append(rs, check_fdecomp_sweep(3, 64));
        return rs;
    });

    run(6, "localization dimension sweep and total vanishing on (Z/p)^2", 0, [] {
        std::vector<CheckReport> rs;
        append(rs, check_localization_sweep(2, 64));
        append(rs, check_localization_sweep(3, 64));
        rs.push_back(check_vandermonde(2));
        rs.push_back(check_vandermonde(3));
        return rs;
    });

    run(7, "special fiber laws for (p,n) in {(2,1),(2,2),(3,2)}", 120.0, [] {
        std::vector<CheckReport> rs;
        append(rs, check_honda(2, 1));
        append(rs, check_honda(2, 2));
        append(rs, check_honda(3, 2));
        return rs;
    });

    run(8, "representation-ring induction oracle, |A| <= 16, p in {2,3}", 0, [] {
        std::vector<CheckReport> rs;
        append(rs, check_oracle(2, 16));
        append(rs, check_oracle(3, 16));
        return rs;
    });

    run(9, "point-level monotypicity (|A| <= 32) and image subgroups", 0, [] {
        std::vector<CheckReport> rs;
        append(rs, check_square_sweep(2, 32, 16));
        append(rs, check_square_sweep(3, 32, 16));
        return rs;
    });

    if (failures == 0) {
        std::cout << "acceptance: all 9 criteria PASS\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria FAILED\n";
    return 1;
}
