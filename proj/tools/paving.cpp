// paving: inventory, graph, point counts and cell checks for the E7(a4) and
// E7(a5) Springer fibre reductions.

#include "paving/report.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#ifndef PAVING_GOLDEN_DIR
#define PAVING_GOLDEN_DIR "data/golden"
#endif

namespace fs = std::filesystem;
using namespace paving;

namespace {

enum Exit { ok = 0, discrepancy = 1, config_error = 2 };

std::vector<CaseId> parse_cases(const std::vector<std::string>& names) {
    std::vector<CaseId> out;
    for (const auto& n : names) {
        if (n == "all") return {all_cases.begin(), all_cases.end()};
        try {
            const auto id = parse_case(n);
            if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(ex.what());
        }
    }
    return out;
}

CaseId one_case(const std::string& name) {
    const auto ids = parse_cases({name});
    if (ids.size() != 1) throw ConfigError("pick one case, not " + name);
    return ids.front();
}

// Outputs are staged in a hidden directory and moved into place at the end,
// so an interrupted run never leaves half-written files under --out.
class Writer {
public:
    explicit Writer(fs::path out) : out_(std::move(out)), stage_(out_ / (".partial-" + std::to_string(::getpid()))) {
        std::error_code ec;
        fs::create_directories(stage_, ec);
        if (ec) throw ConfigError("cannot create " + stage_.string() + ": " + ec.message());
    }

    void put(const fs::path& rel, const std::string& text) {
        const auto path = stage_ / rel;
        fs::create_directories(path.parent_path());
        std::ofstream f(path);
        if (!f || !(f << text)) throw ConfigError("cannot write " + path.string());
        files_.push_back(rel);
    }

    void commit() {
        for (const auto& rel : files_) {
            fs::create_directories((out_ / rel).parent_path());
            fs::rename(stage_ / rel, out_ / rel);
        }
        fs::remove_all(stage_);
    }

private:
    fs::path out_, stage_;
    std::vector<fs::path> files_;
};

void print_discrepancies(const std::vector<Discrepancy>& ds) {
    for (const auto& d : ds) std::cout << "  DISCREPANCY " << d.where << ": expected " << d.expected << ", got " << d.actual << '\n';
}

int list_cases() {
    for (CaseId id : all_cases) {
        const auto& m = CaseModel::get(id);
        const auto rank = m.stabilizer_rank(m.base_point<Rational>());
        std::cout << m.name() << ": V_A " << m.dim_A() << ", V_B " << m.dim_B() << ", V_C " << m.dim_C() << ", dim g0 " << m.g0_dim()
                  << ", dim g2 " << m.g2_dim() << ", flag dim " << m.flag_dim() << ", |G0/B0(F_q)| q=2: " << flag_total(id, 2)
                  << " q=3: " << flag_total(id, 3) << ", stabilizer rank " << rank << "/" << m.g0_dim()
                  << (rank == m.g0_dim() ? " OK" : " DEFICIENT") << '\n';
    }
    return ok;
}

struct AnalyzeArgs {
    std::vector<std::string> cases{"all"};
    RunConfig config;
    std::string out = "out";
    std::string golden = PAVING_GOLDEN_DIR;
    bool bless = false;
    std::vector<std::string> formats{"json", "csv", "dot"};
};

int analyze(const AnalyzeArgs& a) {
    RunConfig config = a.config;
    config.cases = parse_cases(a.cases);
    config.validate();
    const std::set<std::string> formats(a.formats.begin(), a.formats.end());
    Writer writer(a.out);
    std::size_t total = 0;

    for (CaseId id : config.cases) {
        auto r = analyze_case(id, config);
        const auto name = to_string(id);
        if (a.bless) {
            bless_golden(r, a.golden);
        } else {
            auto g = compare_golden(r, a.golden);
            r.discrepancies.insert(r.discrepancies.end(), g.begin(), g.end());
        }

        std::cout << name << ": " << r.graph.vertices.size() << " subspaces, " << r.graph.edges.size() << " edges, "
                  << r.graph.components.size() << " components of Gamma*, primes";
        for (int q : r.primes) std::cout << ' ' << q;
        std::cout << ", holdout";
        for (int q : r.holdouts) std::cout << ' ' << q;
        std::cout << '\n';
        for (std::size_t c = 0; c < r.graph.components.size(); ++c) {
            const auto& s = r.subspaces[r.graph.components[c].front()];
            std::cout << "  component " << c + 1 << ": " << r.graph.components[c].size()
                      << " vertices, components (assuming paving) " << s.poly.constant_term() << '\n';
        }
        for (const auto& s : r.subspaces)
            if (s.nonempty && s.dims->dim_y >= 3)
                std::cout << "  delta " << s.dims->dim_y << ": " << s.params.label() << " paved by " << s.paving << '\n';
        if (r.blowup)
            std::cout << "  blow-up " << r.blowup->params.label() << ": identity holds, cells "
                      << (r.blowup->cells_match ? "match" : "DIFFER") << '\n';
        for (const auto& b : r.bad_reduction)
            std::cout << "  bad reduction at q=2: " << b.params.label() << " has " << b.count << " points, polynomial gives "
                      << b.predicted << '\n';
        print_discrepancies(r.discrepancies);
        if (a.bless) std::cout << "  blessed " << (fs::path(a.golden) / name).string() << '\n';
        total += r.discrepancies.size();

        if (formats.count("json")) writer.put(fs::path(name) / "report.json", report_json(r));
        if (formats.count("csv"))
            for (const auto& t : report_tables(r)) writer.put(fs::path(name) / (t.name + ".csv"), to_csv(t));
        if (formats.count("dot")) writer.put(fs::path(name) / "gamma.dot", graph_dot(r.graph));
    }
    writer.commit();
    std::cout << (total == 0 ? "all golden comparisons pass" : std::to_string(total) + " discrepancies") << '\n';
    return total == 0 ? ok : discrepancy;
}

int cells(const std::string& case_name, const std::string& params, const std::vector<int>& primes, const std::string& format,
          const std::string& out) {
    const auto id = one_case(case_name);
    const auto p = require_params(id, params);
    RunConfig check;
    check.primes = primes;
    check.validate();
    const auto reports = check_affine_paving(id, p, primes);
    const auto text = format == "json" ? cells_json(id, p, reports) : cells_csv(id, reports);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f || !(f << text)) throw ConfigError("cannot write " + out);
    }
    bool bad = false;
    for (const auto& r : reports) bad = bad || r.cls == CellClass::NotAffine || r.elimination.outcome == Elimination::Outcome::Unresolved;
    return bad ? discrepancy : ok;
}

int graph(const std::string& case_name, const OrbitSearch& opts, int jobs, const std::string& format, const std::string& out) {
    const auto g = build_graph(one_case(case_name), opts, jobs);
    const auto text = format == "json" ? graph_json(g) : graph_dot(g);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f || !(f << text)) throw ConfigError("cannot write " + out);
    }
    return ok;
}

int blowup(const std::vector<int>& primes) {
    RunConfig check;
    check.primes = primes;
    check.validate();
    const auto r = verify_blowup_case(primes);
    std::cout << blowup_json(r);
    return r.cells_match ? ok : discrepancy;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point counts, Gamma graphs and Schubert cell checks for E7(a4) and E7(a5)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "paving 1.0");

    app.add_subcommand("list-cases", "Print case dimensions and stabilizer certificates");

    AnalyzeArgs aa;
    auto* an = app.add_subcommand("analyze", "Full run: inventory, graph, polynomials, cells, golden diff");
    an->add_option("--case", aa.cases, "E7a4, E7a5 or all")->delimiter(',');
    an->add_option("--primes", aa.config.primes, "Sample primes, comma separated")->delimiter(',');
    an->add_option("--holdout", aa.config.holdouts, "Holdout primes")->delimiter(',');
    an->add_option("--seed", aa.config.seed, "Orbit search seed");
    an->add_option("--trials", aa.config.trials, "Orbit search trials per subspace");
    an->add_option("--out", aa.out, "Output directory");
    an->add_option("--golden", aa.golden, "Golden directory");
    an->add_flag("--bless", aa.bless, "Overwrite the golden files with this run");
    an->add_option("--jobs", aa.config.jobs, "Worker threads");
    an->add_option("--format", aa.formats, "Outputs to write")->delimiter(',')->check(CLI::IsMember({"json", "csv", "dot"}));

    std::string cell_case = "E7a4", cell_params, cell_format = "csv", cell_out;
    std::vector<int> cell_pr(cell_primes.begin(), cell_primes.end());
    auto* ce = app.add_subcommand("cells", "Schubert cell report for one subspace");
    ce->add_option("--case", cell_case, "E7a4 or E7a5");
    ce->add_option("params", cell_params, "Subspace, e.g. 00|10|2|3")->required();
    ce->add_option("--primes", cell_pr, "Primes for the cell counts")->delimiter(',');
    ce->add_option("--format", cell_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    ce->add_option("--out", cell_out, "Output file (default stdout)");

    std::string graph_case = "E7a4", graph_format = "dot", graph_out;
    OrbitSearch graph_opts;
    int graph_jobs = 1;
    auto* gr = app.add_subcommand("graph", "Gamma as DOT or JSON");
    gr->add_option("--case", graph_case, "E7a4 or E7a5");
    gr->add_option("--format", graph_format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    gr->add_option("--out", graph_out, "Output file (default stdout)");
    gr->add_option("--seed", graph_opts.seed, "Orbit search seed");
    gr->add_option("--trials", graph_opts.trials, "Orbit search trials per subspace");
    gr->add_option("--jobs", graph_jobs, "Worker threads");

    std::vector<int> blow_pr{2, 3, 5, 7};
    auto* bl = app.add_subcommand("blowup", "Check the blow-up identity for 100|200|2 of E7a5");
    bl->add_option("--primes", blow_pr, "Primes")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (app.got_subcommand("list-cases")) return list_cases();
        if (app.got_subcommand(an)) return analyze(aa);
        if (app.got_subcommand(ce)) return cells(cell_case, cell_params, cell_pr, cell_format, cell_out);
        if (app.got_subcommand(gr)) {
            if (graph_opts.trials < 1 || graph_jobs < 1) throw ConfigError("--trials and --jobs must be positive");
            return graph(graph_case, graph_opts, graph_jobs, graph_format, graph_out);
        }
        if (app.got_subcommand(bl)) return blowup(blow_pr);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return discrepancy;
    }
    return config_error;
}
