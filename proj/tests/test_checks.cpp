#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "translev/checks.hpp"

using namespace translev;

namespace {

int count_status(const std::vector<CheckReport>& rs, CheckStatus s) {
    int n = 0;
    for (const auto& r : rs)
        if (r.status == s) ++n;
    return n;
}

}  // namespace

TEST_CASE("report bookkeeping") {
    CheckReport r{"demo", "p=2", CheckStatus::Pass, "1", "1", ""};
    CHECK(r.passed());
    r.status = CheckStatus::Skipped;
    CHECK(r.passed());  // skipped is not a failure
    r.status = CheckStatus::Fail;
    CHECK_FALSE(r.passed());
    CHECK(std::string(status_name(CheckStatus::Pass)) == "pass");
    CHECK(std::string(status_name(CheckStatus::Fail)) == "fail");
    CHECK(std::string(status_name(CheckStatus::Skipped)) == "skipped");

    auto j = report_to_json(r);
    CHECK(j["name"] == "demo");
    CHECK(j["status"] == "fail");
    CHECK(reports_to_markdown({r}).find("demo") != std::string::npos);
    CHECK_FALSE(all_passed({r}));
    CHECK(all_passed({}));
}

TEST_CASE("worked example at p=2 on the rank-two elementary group") {
    CheckReport r = check_f2_example();
    CHECK(r.status == CheckStatus::Pass);
    CHECK(r.left == r.right);
}

TEST_CASE("cyclic ideals for both primes") {
    for (long long p : {2ll, 3ll}) {
        auto rs = check_cyclic_ideals(p, 3);
        CHECK(rs.size() == 3);
        CHECK(count_status(rs, CheckStatus::Fail) == 0);
    }
}

TEST_CASE("fiber rank identity on a single group") {
    AbelianPGroup A(2, {2});
    auto rs = check_fiber_rank(A, 1);
    CHECK(rs.size() == 5);  // four homs plus the aggregate row
    CHECK(count_status(rs, CheckStatus::Fail) == 0);
}

TEST_CASE("fiber rank sweep") {
    auto rs = check_fiber_rank_sweep(2, 8, {1}, kDefaultBudget);
    CHECK(rs.size() == 7);  // one row per group of order <= 8 at h = 1
    CHECK(count_status(rs, CheckStatus::Fail) == 0);
}

TEST_CASE("pair bijection sweep") {
    auto rs = check_lemma43(2, 8);
    CHECK_FALSE(rs.empty());
    CHECK(count_status(rs, CheckStatus::Fail) == 0);
}

TEST_CASE("decomposition sweep distinguishes skipped from failed") {
    for (long long p : {2ll, 3ll}) {
        auto rs = check_fdecomp_sweep(p, p == 2 ? 16 : 27);
        CHECK_FALSE(rs.empty());
        CHECK(count_status(rs, CheckStatus::Fail) == 0);
    }
}

TEST_CASE("localization sweep") {
    for (long long p : {2ll, 3ll}) {
        auto rs = check_localization_sweep(p, p == 2 ? 16 : 27);
        CHECK_FALSE(rs.empty());
        CHECK(count_status(rs, CheckStatus::Fail) == 0);
        CHECK(count_status(rs, CheckStatus::Pass) > 0);
    }
    CHECK(check_vandermonde(2).status == CheckStatus::Pass);
    CHECK(check_vandermonde(3).status == CheckStatus::Pass);
}

TEST_CASE("point-level square checks") {
    auto rs = check_square_sweep(2, 8, 8, kDefaultBudget);
    CHECK_FALSE(rs.empty());
    CHECK(count_status(rs, CheckStatus::Fail) == 0);
}

TEST_CASE("special fiber checks") {
    auto rs = check_honda(2, 1);
    CHECK_FALSE(rs.empty());
    CHECK(count_status(rs, CheckStatus::Fail) == 0);
}

TEST_CASE("induction oracle") {
    auto rs = check_oracle(2, 8);
    CHECK_FALSE(rs.empty());
    CHECK(count_status(rs, CheckStatus::Fail) == 0);
}

TEST_CASE("named check registry") {
    auto names = known_checks();
    CHECK_FALSE(names.empty());
    SuiteOptions opt;
    opt.max_order = 4;
    for (const auto& name : names) {
        if (name == "all") continue;
        auto rs = run_named_check(name, opt);
        CHECK_FALSE(rs.empty());
        CHECK(count_status(rs, CheckStatus::Fail) == 0);
    }
    CHECK_THROWS_AS(run_named_check("nope", opt), std::invalid_argument);
    // the group option narrows fiber-rank to a single group
    opt.group = AbelianPGroup(2, {1});
    auto rs = run_named_check("fiber-rank", opt);
    CHECK(rs.size() == 3);  // two homs plus the aggregate
}
