#include "coaltree/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "coaltree/coalescent/kernel.hpp"
#include "coaltree/errors.hpp"
#include "coaltree/hortonode/export.hpp"
#include "coaltree/stats/export.hpp"
#include "coaltree/treecore/horton.hpp"
#include "coaltree/treecore/shape.hpp"
#include "coaltree/treecore/tree_io.hpp"
#include "json.hpp"

namespace coaltree::cli {

namespace {

using nlohmann::json;

struct Common {
    std::string format = "csv";
    std::string out_path;
    unsigned threads = 0;
};

// What a command produced: the JSON result, the CSV body writer, extra
// metadata and whether every requested check held.
struct Output {
    json result;
    std::function<void(std::ostream&)> csv;
    json flags;
    std::optional<std::uint64_t> seed;
    bool seed_generated = false;
    bool within_tolerance = true;
    std::vector<std::string> notes;  // also printed to stderr
};

std::string put(double v) {
    if (std::isnan(v)) return "nan";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void emit(const std::string& command, const Common& common, const Output& o, std::ostream& out) {
    const std::string schema = "coaltree." + command + "/1";
    if (common.format == "json") {
        json doc{{"schema", schema}, {"version", kVersion}, {"command", command}, {"flags", o.flags}};
        doc["seed"] = o.seed ? json(*o.seed) : json(nullptr);
        if (o.seed_generated) doc["seed_generated"] = true;
        doc["within_tolerance"] = o.within_tolerance;
        doc["result"] = o.result;
        out << doc.dump(2) << '\n';
        return;
    }
    out << "# schema: " << schema << '\n';
    out << "# version: " << kVersion << '\n';
    out << "# flags: " << o.flags.dump() << '\n';
    out << "# seed: " << (o.seed ? std::to_string(*o.seed) : std::string("none"))
        << (o.seed_generated ? " (generated)" : "") << '\n';
    for (const auto& n : o.notes) out << "# " << n << '\n';
    o.csv(out);
}

std::uint64_t fresh_seed() {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

// Resolves --seed: explicit, or generated and flagged as such.
void take_seed(Output& o, const std::optional<std::uint64_t>& seed) {
    if (seed) {
        o.seed = *seed;
    } else {
        o.seed = fresh_seed();
        o.seed_generated = true;
    }
}

// ---- solve-horton ---------------------------------------------------------

struct HortonArgs {
    int orders = 0;
    double eps = 1e-8;
    double tol = 1e-13;
    bool invariants = false;
    std::string h_out;
};

Output solve_horton(const HortonArgs& a) {
    hortonode::SolverConfig cfg;
    cfg.max_order = a.orders;
    cfg.epsilon = a.eps;
    cfg.tolerance = a.tol;
    cfg.validate();
    const auto sol = hortonode::solve_h_system(cfg);
    const auto ratios = hortonode::horton_ratios(sol);
    const auto gamma = hortonode::gamma_sequence(sol);

    Output o;
    o.flags = {{"orders", a.orders}, {"eps", a.eps}, {"tol", a.tol}, {"invariants", a.invariants}};
    o.result = hortonode::horton_summary(sol);
    std::optional<hortonode::REstimate> r;
    if (ratios.size() >= 4) r = hortonode::estimate_R(ratios.values);
    if (a.invariants) {
        const auto report = hortonode::check_h_invariants(sol);
        o.result["invariants"] = hortonode::to_json(report);
        if (!report.all_passed()) {
            o.within_tolerance = false;
            for (const auto& c : report.checks) {
                if (!c.passed) o.notes.push_back("invariant failed: " + c.name + " " + c.detail);
            }
        }
    }
    if (!a.h_out.empty()) {
        std::ofstream file(a.h_out);
        if (!file) throw std::ios_base::failure("cannot write " + a.h_out);
        hortonode::write_h_csv(file, sol);
    }
    for (const auto& w : gamma.warnings) o.notes.push_back("warning: " + w);

    o.csv = [ratios, gamma, r](std::ostream& out) {
        out << "# tail_error_bound: " << put(ratios.tail_bound) << '\n';
        if (r) {
            out << "# R_ratio: " << put(r->r_ratio) << '\n';
            out << "# R_root: " << put(r->r_root) << '\n';
        }
        out << "# R_via_gamma: " << put(gamma.r_via_gamma) << '\n';
        out << "k,N_k,n_k,gamma_k\n";
        for (int k = 1; k <= ratios.size(); ++k) {
            out << k << ',' << put(ratios.at(k)) << ',';
            out << (k < ratios.size() ? put(ratios.ratio(k)) : "") << ',';
            out << (k <= static_cast<int>(gamma.values.size()) ? put(gamma.at(k)) : "") << '\n';
        }
    };
    return o;
}

// ---- solve-tokunaga -------------------------------------------------------

struct TokunagaArgs {
    int max_order = 0;
    std::string view = "pruned";
    double eps = 1e-8;
    double tol = 1e-13;
};

Output solve_tokunaga(const TokunagaArgs& a) {
    const auto view = a.view == "pruned" ? hortonode::TreeView::pruned : hortonode::TreeView::coalescent;
    hortonode::SolverConfig cfg;
    cfg.max_order = a.max_order + (view == hortonode::TreeView::pruned ? 1 : 0);
    cfg.epsilon = a.eps;
    cfg.tolerance = a.tol;
    cfg.validate();
    const auto sol = hortonode::solve_h_system(cfg);
    const auto t = hortonode::tokunaga_matrix(sol, a.max_order, view);

    Output o;
    o.flags = {{"max_order", a.max_order}, {"view", a.view}, {"eps", a.eps}, {"tol", a.tol}};
    o.result = hortonode::to_json(t);
    o.csv = [t](std::ostream& out) {
        out << "# view: " << (t.view == hortonode::TreeView::pruned ? "pruned" : "coalescent") << '\n';
        out << "# tail_error_bound: " << put(t.tail_bound) << '\n';
        out << "i,j,T_ij\n";
        for (int i = 1; i < t.max_order; ++i) {
            for (int j = i + 1; j <= t.max_order; ++j) out << i << ',' << j << ',' << put(t.at(i, j)) << '\n';
        }
    };
    return o;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string model;
    std::int64_t n = 0;
    std::size_t reps = 0;
    std::optional<std::uint64_t> seed;
    std::string what = "branch";
    int min_i = 2;
};

Output simulate(const SimulateArgs& a, unsigned threads) {
    const auto g = stats::parse_generator(a.model);
    Output o;
    take_seed(o, a.seed);
    o.flags = {{"model", a.model}, {"n", a.n}, {"reps", a.reps}, {"what", a.what}};
    if (a.what == "branch") {
        const auto s = stats::branch_statistics(g, a.n, a.reps, *o.seed, threads);
        o.result = stats::to_json(s);
        o.csv = [s](std::ostream& out) { stats::write_branch_csv(out, s); };
    } else if (a.what == "histogram") {
        const auto h = stats::shape_distribution(g, a.n, a.reps, *o.seed, threads);
        o.result = stats::to_json(h);
        o.csv = [h](std::ostream& out) { stats::write_histogram_csv(out, h); };
    } else {
        o.flags["min_i"] = a.min_i;
        const auto t = stats::empirical_tokunaga(g, a.n, a.reps, *o.seed, a.min_i, threads);
        o.result = stats::to_json(t);
        o.csv = [t](std::ostream& out) { stats::write_tokunaga_csv(out, t); };
    }
    return o;
}

// ---- compare-shapes -------------------------------------------------------

struct CompareArgs {
    std::int64_t n = 0;
    std::size_t reps = 0;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> models;
    std::vector<std::string> inputs;
    double alpha = 0.01;
};

// Histogram CSV as written by `simulate --what histogram`.
stats::ShapeHistogram read_histogram(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::ios_base::failure("cannot read " + path);
    stats::ShapeHistogram h;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "shape,count") throw ParseError(path + ": expected header shape,count", line_no);
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(path + ": expected shape,count", line_no);
        const std::string shape = line.substr(0, comma);
        std::size_t count = 0;
        try {
            std::size_t used = 0;
            count = std::stoull(line.substr(comma + 1), &used);
            if (used != line.size() - comma - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError(path + ": bad count", line_no);
        }
        const auto leaves = static_cast<std::int64_t>(std::count(shape.begin(), shape.end(), 'L'));
        if (h.leaves != 0 && leaves != h.leaves) throw ParseError(path + ": mixed leaf counts", line_no);
        h.leaves = leaves;
        h.counts[shape] += count;
        h.total += count;
    }
    if (!header) throw ParseError(path + ": missing header", line_no);
    return h;
}

Output compare_shapes(const CompareArgs& a, unsigned threads) {
    Output o;
    std::vector<std::pair<std::string, stats::ShapeHistogram>> samples;
    for (const auto& path : a.inputs) samples.emplace_back(path, read_histogram(path));
    if (!a.models.empty()) {
        take_seed(o, a.seed);
        for (std::size_t m = 0; m < a.models.size(); ++m) {
            const auto g = stats::parse_generator(a.models[m]);
            samples.emplace_back(a.models[m], stats::shape_distribution(g, a.n, a.reps, *o.seed + m, threads));
        }
    }
    if (samples.size() < 2) throw DomainError("compare-shapes needs at least two histograms (--models, --input)");
    o.flags = {{"n", a.n}, {"reps", a.reps}, {"models", a.models}, {"input", a.inputs}, {"alpha", a.alpha}};

    struct Row {
        std::string a, b;
        stats::EquivalenceResult r;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            rows.push_back({samples[i].first, samples[j].first,
                            stats::equivalence_test(samples[i].second, samples[j].second)});
        }
    }
    json tests = json::array();
    for (const auto& row : rows) {
        json t = stats::to_json(row.r);
        t["a"] = row.a;
        t["b"] = row.b;
        t["rejected"] = row.r.p_value <= a.alpha;
        tests.push_back(t);
    }
    json hist = json::object();
    for (const auto& [name, h] : samples) hist[name] = stats::to_json(h);
    o.result = {{"tests", tests}, {"histograms", hist}};
    o.notes.push_back("model k uses base seed seed + k");
    const double alpha = a.alpha;
    o.csv = [rows, alpha](std::ostream& out) {
        out << "a,b,chi_square,dof,p_value,total_variation,pooled_cells,rejected\n";
        for (const auto& row : rows) {
            out << row.a << ',' << row.b << ',' << put(row.r.chi_square) << ',' << row.r.dof << ','
                << put(row.r.p_value) << ',' << put(row.r.total_variation) << ',' << row.r.pooled_cells << ','
                << (row.r.p_value <= alpha ? 1 : 0) << '\n';
        }
    };
    return o;
}

// ---- hydro-check ----------------------------------------------------------

struct HydroArgs {
    std::vector<std::int64_t> n_list;
    std::size_t reps = 0;
    double horizon = 10.0;
    int max_order = 4;
    std::optional<std::uint64_t> seed;
};

Output hydro_check(const HydroArgs& a, unsigned threads) {
    if (a.max_order < 1) throw DomainError("--max-order must be >= 1");
    Output o;
    take_seed(o, a.seed);
    o.flags = {{"n_list", a.n_list}, {"reps", a.reps}, {"horizon", a.horizon}, {"max_order", a.max_order}};
    const auto ode = hortonode::solve_g_system(a.max_order + 1, std::max(1e3, a.horizon));
    std::vector<stats::HydroReport> reports;
    for (const auto n : a.n_list) {
        reports.push_back(stats::hydrodynamic_check(n, a.reps, *o.seed, ode, a.horizon, a.max_order, threads));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (!(reports[i].mean_l2_total < reports[i - 1].mean_l2_total)) decreasing = false;
    }
    json rows = json::array();
    for (const auto& r : reports) rows.push_back(stats::to_json(r));
    o.result = {{"reports", rows}, {"strictly_decreasing", decreasing}};
    if (!decreasing) {
        o.within_tolerance = false;
        o.notes.push_back("mean L2 distance does not decrease strictly with N");
    }
    o.notes.push_back("every N uses the same base seed");
    const int max_order = a.max_order;
    o.csv = [reports, max_order, decreasing](std::ostream& out) {
        out << "# strictly_decreasing: " << (decreasing ? "true" : "false") << '\n';
        out << "n,reps,mean_l2_total,se_l2_total";
        for (int j = 1; j <= max_order; ++j) out << ",mean_l2_eta_" << j;
        out << '\n';
        for (const auto& r : reports) {
            out << r.leaves << ',' << r.replicates << ',' << put(r.mean_l2_total) << ',' << put(r.se_l2_total);
            for (const double v : r.mean_l2_order) out << ',' << put(v);
            out << '\n';
        }
    };
    return o;
}

// ---- analyze-tree ---------------------------------------------------------

Output analyze_tree(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::ios_base::failure("cannot read " + path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    const auto tree = treecore::parse_tree(buffer.str());
    const auto analysis = treecore::assign_horton_strahler(tree);
    const auto counts = treecore::tokunaga_counts(tree, analysis);
    const int omega = analysis.tree_order;

    Output o;
    o.flags = {{"in", path}};
    json side = json::array();
    for (int i = 1; i < omega; ++i) {
        for (int j = i + 1; j <= omega; ++j) {
            side.push_back({{"i", i}, {"j", j}, {"N_ij", counts.count(i, j)}, {"tau_ij", number(counts.tau(i, j))}});
        }
    }
    o.result = {{"leaves", tree.leaf_count()},
                {"tree_order", omega},
                {"branch_counts", analysis.branch_counts},
                {"side_branches", side},
                {"canonical_shape", treecore::canonical_shape(tree)}};
    o.csv = [analysis, counts, omega](std::ostream& out) {
        out << "statistic,i,j,value\n";
        out << "tree_order,,," << omega << '\n';
        for (int k = 1; k <= omega; ++k) out << "N_k," << k << ",," << analysis.branches(k) << '\n';
        for (int i = 1; i < omega; ++i) {
            for (int j = i + 1; j <= omega; ++j) {
                out << "N_ij," << i << ',' << j << ',' << counts.count(i, j) << '\n';
                out << "tau_ij," << i << ',' << j << ',' << put(counts.tau(i, j)) << '\n';
            }
        }
    };
    return o;
}

// ---- solve-general --------------------------------------------------------

struct GeneralArgs {
    std::string kernel;
    int max_order = 4;
    int max_mass = 512;
    double t_max = 200.0;
    double tol = 1e-9;
    double lost_warning = 1e-3;
    std::size_t points = 201;
};

Output solve_general(const GeneralArgs& a) {
    const auto kernel = coalescent::Kernel::from_name(a.kernel);
    hortonode::GeneralConfig cfg;
    cfg.max_order = a.max_order;
    cfg.max_mass = a.max_mass;
    cfg.t_max = a.t_max;
    cfg.tolerance = a.tol;
    cfg.lost_mass_warning = a.lost_warning;
    if (a.points < 2) throw DomainError("--points must be >= 2");
    const auto sol = hortonode::solve_general_smoluchowski_horton(kernel, cfg);

    Output o;
    o.flags = {{"kernel", a.kernel}, {"max_order", a.max_order}, {"max_mass", a.max_mass}, {"t_max", a.t_max},
               {"tol", a.tol},       {"lost_warning", a.lost_warning}, {"points", a.points}};
    o.result = hortonode::general_summary(sol, a.points);
    for (const auto& w : sol.warnings()) {
        o.notes.push_back("warning: " + w);
        o.within_tolerance = false;
    }
    const std::size_t points = a.points;
    o.csv = [sol = o.result, cfg, points](std::ostream& out) {
        for (const auto& h : sol["horton_estimates"]) {
            out << "# N_" << h["j"].get<int>() << ": " << put(h["N_j"].get<double>()) << '\n';
        }
        out << 't';
        for (int j = 1; j <= cfg.max_order; ++j) out << ",eta_" << j;
        out << ",eta_above_" << cfg.max_order << ",lost_mass\n";
        for (std::size_t i = 0; i < points; ++i) {
            const auto& s = sol["samples"][i];
            out << put(s["t"].get<double>());
            for (const auto& v : s["order_totals"]) out << ',' << put(v.get<double>());
            out << ',' << put(s["lost_mass"].get<double>()) << '\n';
        }
    };
    return o;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const DomainError*>(&e)) return kDomain;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const StructuralError*>(&e) ||
        dynamic_cast<const DegenerateInputError*>(&e) || dynamic_cast<const std::ios_base::failure*>(&e)) {
        return kInput;
    }
    if (dynamic_cast<const SolverError*>(&e)) return kSolver;
    if (dynamic_cast<const ConsistencyError*>(&e)) return kConsistency;
    if (dynamic_cast<const TestUndefinedError*>(&e)) return kTestUndefined;
    return kInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Horton-Strahler statistics of coalescent trees: ODE solvers and simulations", "coaltree"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", common.out_path, "Output file (default: standard output)");
        sub->add_option("--threads", common.threads, "Worker threads, 0 = all cores");
    };

    HortonArgs horton;
    auto* sub_horton = app.add_subcommand("solve-horton", "Horton ratios N_k, n_k, gamma_k and R from the h-system");
    sub_horton->add_option("--orders", horton.orders, "Number K of h_k solved")->required()->check(CLI::Range(2, 40));
    sub_horton->add_option("--eps", horton.eps, "Distance of the right end from 1");
    sub_horton->add_option("--tol", horton.tol, "Local error tolerance");
    sub_horton->add_flag("--invariants", horton.invariants, "Also run the analytic invariant checks");
    sub_horton->add_option("--h-out", horton.h_out, "Also write the h_k on the solver grid to this CSV");
    add_common(sub_horton);

    TokunagaArgs tokunaga;
    auto* sub_tok = app.add_subcommand("solve-tokunaga", "Tokunaga matrix T_ij from the h-system");
    sub_tok->add_option("--max-order", tokunaga.max_order, "Largest j")->required()->check(CLI::Range(2, 39));
    sub_tok->add_option("--view", tokunaga.view, "pruned (tree without leaves) or coalescent")
        ->check(CLI::IsMember({"pruned", "coalescent"}));
    sub_tok->add_option("--eps", tokunaga.eps, "Distance of the right end from 1");
    sub_tok->add_option("--tol", tokunaga.tol, "Local error tolerance");
    add_common(sub_tok);

    SimulateArgs sim;
    auto* sub_sim = app.add_subcommand("simulate", "Monte-Carlo branch statistics, shape histograms or Tokunaga");
    sub_sim->add_option("--model", sim.model, "Tree model")
        ->required()
        ->check(CLI::IsMember({"kingman", "whitenoise", "fragmentation", "comb"}));
    sub_sim->add_option("--n", sim.n, "Leaves per tree")->required();
    sub_sim->add_option("--reps", sim.reps, "Replicates")->required();
    sub_sim->add_option("--seed", sim.seed, "Base seed (generated and reported if absent)");
    sub_sim->add_option("--what", sim.what, "branch, histogram or tokunaga")
        ->check(CLI::IsMember({"branch", "histogram", "tokunaga"}));
    sub_sim->add_option("--min-i", sim.min_i, "Smallest i pooled for Tokunaga");
    add_common(sub_sim);

    CompareArgs cmp;
    auto* sub_cmp = app.add_subcommand("compare-shapes", "Pairwise chi-square tests of shape histograms");
    sub_cmp->add_option("--n", cmp.n, "Leaves per tree (simulated models)");
    sub_cmp->add_option("--reps", cmp.reps, "Replicates per model");
    sub_cmp->add_option("--seed", cmp.seed, "Base seed; model k uses seed + k");
    sub_cmp->add_option("--models", cmp.models, "Models to simulate")
        ->delimiter(',')
        ->check(CLI::IsMember({"kingman", "whitenoise", "fragmentation", "comb"}));
    sub_cmp->add_option("--input", cmp.inputs, "Histogram CSV from simulate --what histogram")->check(CLI::ExistingFile);
    sub_cmp->add_option("--alpha", cmp.alpha, "Level used for the rejected column");
    add_common(sub_cmp);

    HydroArgs hydro;
    auto* sub_hydro = app.add_subcommand("hydro-check", "L2 distance of Kingman cluster counts to the ODE");
    sub_hydro->add_option("--n-list", hydro.n_list, "Leaf counts")->required()->delimiter(',');
    sub_hydro->add_option("--reps", hydro.reps, "Replicates per N")->required();
    sub_hydro->add_option("--horizon", hydro.horizon, "Upper end of the time window");
    sub_hydro->add_option("--max-order", hydro.max_order, "Orders compared individually");
    sub_hydro->add_option("--seed", hydro.seed, "Base seed (generated and reported if absent)");
    add_common(sub_hydro);

    std::string tree_path;
    auto* sub_tree = app.add_subcommand("analyze-tree", "Horton-Strahler and Tokunaga counts of one tree");
    sub_tree->add_option("--in", tree_path, "Tree file")->required();
    add_common(sub_tree);

    GeneralArgs general;
    auto* sub_general = app.add_subcommand("solve-general", "Mass-and-order rate equations for a kernel");
    sub_general->add_option("--kernel", general.kernel, "constant[:c], additive or multiplicative")->required();
    sub_general->add_option("--max-order", general.max_order, "Orders tracked separately");
    sub_general->add_option("--max-mass", general.max_mass, "Mass truncation");
    sub_general->add_option("--t-max", general.t_max, "End time");
    sub_general->add_option("--tol", general.tol, "Local error tolerance");
    sub_general->add_option("--lost-warning", general.lost_warning, "Lost-mass fraction that triggers a warning");
    sub_general->add_option("--points", general.points, "Output times");
    add_common(sub_general);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        Output o;
        std::string name;
        if (sub_horton->parsed()) {
            name = "solve-horton";
            o = solve_horton(horton);
        } else if (sub_tok->parsed()) {
            name = "solve-tokunaga";
            o = solve_tokunaga(tokunaga);
        } else if (sub_sim->parsed()) {
            name = "simulate";
            o = simulate(sim, common.threads);
        } else if (sub_cmp->parsed()) {
            name = "compare-shapes";
            if (!cmp.models.empty() && (cmp.n == 0 || cmp.reps == 0)) {
                err << "compare-shapes: --models needs --n and --reps\n";
                return kUsage;
            }
            o = compare_shapes(cmp, common.threads);
        } else if (sub_hydro->parsed()) {
            name = "hydro-check";
            o = hydro_check(hydro, common.threads);
        } else if (sub_tree->parsed()) {
            name = "analyze-tree";
            o = analyze_tree(tree_path);
        } else {
            name = "solve-general";
            o = solve_general(general);
        }
        o.flags["format"] = common.format;
        if (o.seed_generated) err << name << ": generated seed " << *o.seed << '\n';
        for (const auto& n : o.notes) {
            if (n.rfind("warning", 0) == 0 || n.rfind("invariant", 0) == 0 || n.rfind("mean L2", 0) == 0) {
                err << name << ": " << n << '\n';
            }
        }
        if (common.out_path.empty()) {
            emit(name, common, o, out);
        } else {
            std::ofstream file(common.out_path);
            if (!file) throw std::ios_base::failure("cannot write " + common.out_path);
            emit(name, common, o, file);
        }
        return o.within_tolerance ? kOk : kAccuracy;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace coaltree::cli
