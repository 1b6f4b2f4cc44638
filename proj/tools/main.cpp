#include "translev/checks.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace translev;
using nlohmann::json;

namespace {

struct Options {
    long long p{2};
    int n{1};
    int loops{1};
    std::string group;
    std::string mode{"exact1"};
    int trunc{0};
    unsigned long long budget{kDefaultBudget};
    std::string format{"md"};
    std::string out;
    unsigned long long max_order{16};
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--p", o.p, "prime");
    cmd->add_option("--n", o.n, "height (exact1 forces n=1)");
    cmd->add_option("--loops", o.loops, "number of loop coordinates h");
    cmd->add_option("--group", o.group, "group spec, comma-separated factor orders, e.g. 4,2");
    cmd->add_option("--mode", o.mode, "coefficient mode: exact1 | fiber")
        ->check(CLI::IsMember({"exact1", "fiber"}));
    cmd->add_option("--trunc", o.trunc, "truncation degree for the fiber law (0 = automatic)");
    cmd->add_option("--budget", o.budget, "enumeration budget")->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "output format: json | md | csv")
        ->check(CLI::IsMember({"json", "md", "csv"}));
    cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(o.out);
        if (!f) throw std::runtime_error("cannot open output file " + o.out);
        f << text;
    }
}

std::string csv_quote(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += "\"\"";
        r += c;
    }
    r += "\"";
    return r;
}

std::string reports_to_csv(const std::vector<CheckReport>& rs) {
    std::ostringstream os;
    os << "name,parameters,status,computed,expected,witness\n";
    for (const auto& r : rs)
        os << csv_quote(r.name) << "," << csv_quote(r.parameters) << ","
           << status_name(r.status) << "," << csv_quote(r.left) << "," << csv_quote(r.right)
           << "," << csv_quote(r.witness) << "\n";
    return os.str();
}

std::string render_reports(const Options& o, const std::vector<CheckReport>& rs) {
    if (o.format == "json") {
        json j = json::array();
        for (const auto& r : rs) j.push_back(report_to_json(r));
        return j.dump(2);
    }
    if (o.format == "csv") return reports_to_csv(rs);
    return reports_to_markdown(rs);
}

AbelianPGroup parse_group(const Options& o) {
    return AbelianPGroup::parse(o.group, o.p);
}

FglSpec make_fgl(const Options& o, const AbelianPGroup& A) {
    if (o.mode == "exact1") {
        if (o.n != 1)
            throw CLI::ValidationError("--mode exact1 requires --n 1");
        return multiplicative_law(o.p);
    }
    int D = o.trunc;
    if (D <= 0) {
        long long need = 1;
        for (int i = 0; i < o.n; ++i) need *= o.p;  // cover [p](x) = x^{p^n}
        long long fiber = 0;
        for (int k : A.exponents()) {
            long long B = 1;
            for (int t = 0; t < k * o.n; ++t) B *= o.p;
            fiber += B - 1;
        }
        D = static_cast<int>(std::max(need, std::max<long long>(fiber, 2)));
    }
    return honda_law(o.p, o.n, D);
}

int cmd_group_info(const Options& o) {
    AbelianPGroup A = parse_group(o);
    auto maxes = maximal_subgroups(A);
    unsigned long long homs = 1;
    for (int i = 0; i < o.loops; ++i) homs *= A.order();
    if (o.format == "json") {
        json j;
        j["p"] = o.p;
        j["group"] = A.to_string();
        j["order"] = A.order();
        j["factor_count"] = A.factor_count();
        j["pairing"] = "<e_i*, a> = a_i / p^{k_i}, factors in descending order";
        j["maximal_subgroup_count"] = maxes.size();
        json ms = json::array();
        for (const auto& H : maxes) ms.push_back(H.abstract_type().to_string());
        j["maximal_subgroup_types"] = ms;
        j["hom_count"] = homs;
        j["loops"] = o.loops;
        emit(o, j.dump(2));
    } else {
        std::ostringstream os;
        os << "group: " << A.to_string() << " (p = " << o.p << ")\n";
        os << "order: " << A.order() << "\n";
        os << "dual pairing: <e_i*, a> = a_i / p^{k_i}, factors in descending order\n";
        os << "maximal subgroups: " << maxes.size() << "\n";
        for (const auto& H : maxes) os << "  type " << H.abstract_type().to_string() << "\n";
        os << "|Hom(Z_p^" << o.loops << ", A)| = " << homs << "\n";
        emit(o, os.str());
    }
    return 0;
}

std::string render_hom_cli(const Homomorphism& f) {
    std::ostringstream os;
    for (std::size_t i = 0; i < f.images.size(); ++i) {
        if (i) os << ";";
        for (std::size_t c = 0; c < f.images[i].size(); ++c) {
            if (c) os << ",";
            os << f.images[i][c];
        }
        if (f.images[i].empty()) os << "0";
    }
    if (f.images.empty()) os << "-";
    return os.str();
}

int cmd_fibers(const Options& o) {
    AbelianPGroup A = parse_group(o);
    CoeffMode mode = o.mode == "exact1" ? CoeffMode::IntegerExact : CoeffMode::FpFiber;
    EAlgebra R(A, mode, make_fgl(o, A));
    FiberCounts fc = level_counts_by_fiber(A, o.n, o.loops, o.budget);
    json rows = json::array();
    bool all_match = true;
    for (const auto& f : hom_set(A, o.loops, o.budget)) {
        SubgroupFamily F = family_of(f);
        IdealLattice I = transfer_ideal(R, F);
        QuotientModule q = quotient(R, I);
        QZHom fs = dual_hom(f);
        auto it = fc.by_projection.find(fs.key());
        unsigned long long count = it == fc.by_projection.end() ? 0 : it->second;
        json row;
        row["f"] = render_hom_cli(f);
        json fam = json::array();
        for (const auto& H : F.maximal_members()) fam.push_back(H.abstract_type().to_string());
        row["family_maximal_members"] = fam;
        row["ideal_generators"] = I.generators.size();
        if (mode == CoeffMode::IntegerExact) {
            row["rank"] = q.free_rank;
            json inv = json::array();
            for (const auto& d : q.invariant_factors) inv.push_back(d.str());
            row["invariant_factors"] = inv;
            row["level_count"] = count;
            bool m = q.free_rank == count;
            row["match"] = m;
            all_match = all_match && m;
        } else {
            row["fiber_dimension"] = q.fp_dimension;
            row["level_count"] = count;
        }
        rows.push_back(std::move(row));
    }
    if (o.format == "json") {
        json j;
        j["group"] = A.to_string();
        j["p"] = o.p;
        j["n"] = o.n;
        j["loops"] = o.loops;
        j["total_level_count"] = fc.total;
        j["rows"] = rows;
        emit(o, j.dump(2));
    } else {
        std::ostringstream os;
        const char* sep = o.format == "csv" ? "," : " | ";
        if (o.format == "md")
            os << "| f | family | gens | rank | invariants | level count | match |\n"
               << "|---|---|---|---|---|---|---|\n";
        else
            os << "f,family,gens,rank,invariants,level_count,match\n";
        for (const auto& row : rows) {
            std::string fam, inv;
            for (const auto& t : row["family_maximal_members"])
                fam += (fam.empty() ? "" : ";") + t.get<std::string>();
            if (row.contains("invariant_factors"))
                for (const auto& d : row["invariant_factors"])
                    inv += (inv.empty() ? "" : ";") + d.get<std::string>();
            std::string rank = row.contains("rank") ? std::to_string(row["rank"].get<unsigned long long>())
                                                    : std::to_string(row["fiber_dimension"].get<unsigned long long>());
            std::string match = row.contains("match") ? (row["match"].get<bool>() ? "yes" : "no") : "-";
            if (o.format == "md") os << "| ";
            os << row["f"].get<std::string>() << sep << fam << sep
               << row["ideal_generators"].get<std::size_t>() << sep << rank << sep << inv << sep
               << row["level_count"].get<unsigned long long>() << sep << match;
            if (o.format == "md") os << " |";
            os << "\n";
        }
        emit(o, os.str());
    }
    return all_match ? 0 : 1;
}

int cmd_level_count(const Options& o) {
    AbelianPGroup A = parse_group(o);
    FiberCounts fc = level_counts_by_fiber(A, o.n, o.loops, o.budget);
    if (o.format == "json") {
        json j;
        j["group"] = A.to_string();
        j["p"] = o.p;
        j["n"] = o.n;
        j["loops"] = o.loops;
        j["level_count"] = fc.total;
        j["fiber_count"] = fc.by_projection.size();
        emit(o, j.dump(2));
    } else {
        std::ostringstream os;
        os << "group " << A.to_string() << ", n = " << o.n << ", loops = " << o.loops
           << ": " << fc.total << " level points in " << fc.by_projection.size()
           << " fibers\n";
        emit(o, os.str());
    }
    return 0;
}

int cmd_sub_count(const Options& o) {
    AbelianPGroup A = parse_group(o);
    int k = 0;
    unsigned long long ord = A.order();
    while (ord > 1) { ord /= o.p; ++k; }
    TorsionSubgroup required;
    required.p = o.p;
    required.rank = o.loops;
    required.elements.insert(QZVector(o.loops, QZ{}));
    SubPointSet sp = sub_points(o.p, o.n, o.loops, k, required, o.budget);
    if (o.format == "json") {
        json j;
        j["p"] = o.p;
        j["n"] = o.n;
        j["loops"] = o.loops;
        j["k"] = k;
        j["sub_count"] = sp.points.size();
        emit(o, j.dump(2));
    } else {
        std::ostringstream os;
        os << "subgroups of order p^" << k << " in (Q_p/Z_p)^" << (o.n + o.loops)
           << " with trivial last-" << o.loops << " projection constraint: " << sp.points.size()
           << "\n";
        emit(o, os.str());
    }
    return 0;
}

int cmd_localize(const Options& o) {
    AbelianPGroup A = parse_group(o);
    CoeffMode mode = o.mode == "exact1" ? CoeffMode::IntegerExact : CoeffMode::FpFiber;
    EAlgebra R(A, mode, make_fgl(o, A));
    LocalizationImage loc = localize(R, euler_set_all(R));
    if (o.format == "json") {
        json j;
        j["group"] = A.to_string();
        j["p"] = o.p;
        j["mode"] = o.mode;
        j["source_dimension"] = loc.source_dim;
        j["localized_dimension"] = loc.dimension;
        j["stabilization_steps"] = loc.stabilization_steps;
        emit(o, j.dump(2));
    } else {
        std::ostringstream os;
        os << "localization of the model on " << A.to_string()
           << " at all nontrivial Euler classes: dimension " << loc.dimension << " of "
           << loc.source_dim << " after " << loc.stabilization_steps << " steps\n";
        emit(o, os.str());
    }
    return 0;
}

SuiteOptions suite_options(const Options& o) {
    SuiteOptions s;
    s.p = o.p;
    s.n = o.n;
    s.h = o.loops;
    s.max_order = o.max_order;
    s.budget = o.budget;
    if (!o.group.empty()) s.group = AbelianPGroup::parse(o.group, o.p);
    return s;
}

// manifest: one check per nonempty non-comment line,
//   <name> [p=..] [group=..] [n=..] [loops=..] [max-order=..] [budget=..]
std::vector<std::pair<std::string, SuiteOptions>> parse_manifest(const std::string& path,
                                                                 const Options& base) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open manifest " + path);
    std::vector<std::pair<std::string, SuiteOptions>> out;
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue;
        Options o = base;
        o.group.clear();
        std::string kv;
        while (ls >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("manifest entry '" + kv + "' is not key=value");
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "p") o.p = std::stoll(val);
            else if (key == "group") o.group = val;
            else if (key == "n") o.n = std::stoi(val);
            else if (key == "loops") o.loops = std::stoi(val);
            else if (key == "max-order") o.max_order = std::stoull(val);
            else if (key == "budget") o.budget = std::stoull(val);
            else throw std::runtime_error("unknown manifest key '" + key + "'");
        }
        out.emplace_back(name, suite_options(o));
    }
    return out;
}

int cmd_verify(const Options& o, const std::vector<std::string>& names,
               const std::string& manifest) {
    std::vector<std::pair<std::string, SuiteOptions>> jobs;
    if (!manifest.empty()) {
        jobs = parse_manifest(manifest, o);
    }
    for (const auto& name : names) jobs.emplace_back(name, suite_options(o));
    if (jobs.empty()) throw std::invalid_argument("no checks requested");
    std::vector<CheckReport> reports;
    for (const auto& [name, opt] : jobs)
        for (auto& r : run_named_check(name, opt)) reports.push_back(std::move(r));
    emit(o, render_reports(o, reports));
    return all_passed(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer-ideal and level-structure calculator for finite abelian p-groups"};
    app.require_subcommand(1);

    Options o;
    std::vector<std::string> check_names;
    std::string manifest;

    CLI::App* info = app.add_subcommand("group-info", "group order, duality, maximal subgroups");
    add_common(info, o);
    info->get_option("--group")->required();

    CLI::App* fibers = app.add_subcommand(
        "fibers", "per-hom table: family, transfer ideal, quotient rank, level count");
    add_common(fibers, o);
    fibers->get_option("--group")->required();

    CLI::App* lcount = app.add_subcommand("level-count", "count level points for (A, n, loops)");
    add_common(lcount, o);
    lcount->get_option("--group")->required();

    CLI::App* scount = app.add_subcommand(
        "sub-count", "count torsion subgroups of order |A| with constrained projection");
    add_common(scount, o);
    scount->get_option("--group")->required();

    CLI::App* loc = app.add_subcommand("localize",
                                       "localize the model at all nontrivial Euler classes");
    add_common(loc, o);
    loc->get_option("--group")->required();

    CLI::App* verify = app.add_subcommand("verify", "run named checks and report");
    add_common(verify, o);
    verify->add_option("checks", check_names, "check names (see --list)");
    verify->add_option("--max-order", o.max_order, "sweep bound on the group order");
    verify->add_option("--manifest", manifest, "config file listing checks, one per line");
    bool list = false;
    verify->add_flag("--list", list, "list known check names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (info->parsed()) return cmd_group_info(o);
        if (fibers->parsed()) return cmd_fibers(o);
        if (lcount->parsed()) return cmd_level_count(o);
        if (scount->parsed()) return cmd_sub_count(o);
        if (loc->parsed()) return cmd_localize(o);
        if (verify->parsed()) {
            if (list) {
                for (const auto& n : known_checks()) std::cout << n << "\n";
                return 0;
            }
            return cmd_verify(o, check_names, manifest);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
