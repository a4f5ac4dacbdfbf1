// catcode: batch driver for failure-rate measurement, policy search,
// distortion analysis, simulation, and report comparison.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catcode/code_set.hpp"
#include "catcode/errors.hpp"
#include "catcode/framing.hpp"
#include "catcode/io.hpp"
#include "catcode/optimizer.hpp"
#include "catcode/pe_table.hpp"
#include "catcode/rd_curve.hpp"
#include "catcode/sim.hpp"
#include "catcode/version.hpp"

namespace {

using namespace catcode;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Rate> parse_rate_list(const std::string& text) {
    std::vector<Rate> out;
    for (const std::string& item : split_list(text)) out.push_back(Rate::parse(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const std::string& item : split_list(text)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            require(used == item.size(), Errc::invalid_value, "bad integer '" + item + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw_error(Errc::invalid_value, "bad integer '" + item + "'");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split_list(text)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            require(used == item.size(), Errc::invalid_value, "bad number '" + item + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw_error(Errc::invalid_value, "bad number '" + item + "'");
        }
    }
    return out;
}

double parse_zeta(const std::string& text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        require(used == text.size(), Errc::invalid_value, "bad zeta '" + text + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw_error(Errc::invalid_value, "bad zeta '" + text + "'");
    }
}

// Worker count and output path never enter the manifest: neither may change
// the bytes a command produces.
RunManifest make_manifest(const std::string& command, std::vector<std::string> inputs,
                          std::map<std::string, std::string> config, std::uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.inputs = std::move(inputs);
    m.config = std::move(config);
    m.version = kVersion;
    m.seed = seed;
    return m;
}

CodeSet resolve_code_set(const std::string& codes_file) {
    return codes_file.empty() ? default_code_set() : load_code_set_json(codes_file);
}

// Full code definitions carried inside a policy file extend the working set.
void merge_embedded(CodeSet& set, const PolicyFile& file) {
    for (const CodeSpec& code : file.embedded)
        if (!set.contains(code.rate)) set.add(code);
}

double resolve_eps0(bool given, double flag_value, const PeTable& table) {
    if (given) return flag_value;
    std::vector<double> values = table.eps0_values();
    require(values.size() == 1, Errc::invalid_value,
            "table holds " + std::to_string(values.size()) +
                " crossover values; disambiguate with --eps0");
    return values[0];
}

// ---- subcommand drivers ----

struct PeEstimateArgs {
    std::string codes_file, upsilons, eps0s, out;
    std::vector<std::string> rates_list;
    std::uint64_t trials = 10000;
    int frame_chunks = 3;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

int run_pe_estimate(const PeEstimateArgs& a) {
    CodeSet set = resolve_code_set(a.codes_file);
    std::vector<std::vector<Rate>> vectors;
    for (const std::string& text : a.rates_list) {
        std::vector<Rate> rates = parse_rate_list(text);
        require(!rates.empty(), Errc::invalid_value, "--rates must name at least one code");
        vectors.push_back(std::move(rates));
    }
    std::vector<int> upsilons = parse_int_list(a.upsilons);
    std::vector<double> eps0s = parse_double_list(a.eps0s);
    CrcSpec crc;

    PeTable table;
    for (const std::vector<Rate>& rates : vectors) {
        for (int upsilon : upsilons) {
            for (double eps0 : eps0s) {
                // One row per protection suffix, so the table can serve every
                // stage of a policy built from this code vector.
                for (std::size_t z = 0; z < rates.size(); ++z) {
                    std::vector<Rate> suffix(rates.begin() + static_cast<std::ptrdiff_t>(z),
                                             rates.end());
                    if (table.contains(suffix, upsilon, eps0)) continue;
                    PeEntry entry = estimate_pe(suffix, upsilon, eps0, a.trials, a.seed,
                                                set, crc, a.frame_chunks, a.threads);
                    table.insert(suffix, upsilon, eps0, entry);
                }
            }
        }
    }

    std::string rates_joined;
    for (std::size_t i = 0; i < a.rates_list.size(); ++i)
        rates_joined += (i ? ";" : "") + a.rates_list[i];
    std::vector<std::string> inputs;
    if (!a.codes_file.empty()) inputs.push_back(a.codes_file);
    RunManifest manifest = make_manifest(
        "pe-estimate", inputs,
        {{"codes", a.codes_file.empty() ? "default" : a.codes_file},
         {"rates", rates_joined},
         {"upsilon", a.upsilons},
         {"eps0", a.eps0s},
         {"trials", std::to_string(a.trials)},
         {"frame_chunks", std::to_string(a.frame_chunks)}},
        a.seed);
    write_pe_csv(a.out, table, &manifest);
    return 0;
}

struct OptimizeArgs {
    std::string space_file, pe_file, rd_file, problem, out;
    std::string zeta_text, budget_mode;
    double gamma_d = 0.0, eps0 = 0.0;
    bool has_gamma = false, has_eps0 = false, has_zeta = false, has_mode = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

int run_optimize(const OptimizeArgs& a) {
    std::string code_set_ref;
    SearchSpace space = load_space_json(a.space_file, &code_set_ref);
    CodeSet set =
        code_set_ref == "default" ? default_code_set() : load_code_set_json(code_set_ref);
    PeTable table = load_pe_csv(a.pe_file);
    RdCurve curve = load_rd_csv(a.rd_file);
    if (a.has_mode) space.budget_mode = budget_mode_from_name(a.budget_mode);
    double eps0 = resolve_eps0(a.has_eps0, a.eps0, table);
    Problem problem = problem_from_name(a.problem);

    Solution solution;
    double zeta = 0.0;
    switch (problem) {
        case Problem::p1:
            solution = solve_p1(space, set, table, eps0, curve, a.threads);
            break;
        case Problem::p2:
            require(a.has_gamma, Errc::invalid_value, "p2 needs --gamma-d");
            solution = solve_p2(space, set, table, eps0, curve, a.gamma_d, a.threads);
            break;
        case Problem::p3:
            require(a.has_gamma && a.has_zeta, Errc::invalid_value,
                    "p3 needs --gamma-d and --zeta");
            zeta = parse_zeta(a.zeta_text);
            solution = solve_p3(space, set, table, eps0, curve, a.gamma_d, zeta, a.threads);
            break;
    }
    validate_solution(solution, space, set, table, curve);

    std::map<std::string, std::string> config = {
        {"problem", problem_name(problem)},
        {"eps0", fmt_double(eps0)},
        {"budget_mode", budget_mode_name(space.budget_mode)},
        {"code_set_ref", code_set_ref}};
    if (a.has_gamma) config["gamma_d"] = fmt_double(a.gamma_d);
    if (a.has_zeta) config["zeta"] = std::isinf(zeta) ? "inf" : fmt_double(zeta);
    std::vector<std::string> inputs = {a.space_file, a.pe_file, a.rd_file};
    if (code_set_ref != "default") inputs.push_back(code_set_ref);
    RunManifest manifest = make_manifest("optimize", inputs, config, a.seed);
    write_solution_json(a.out, solution, &manifest);
    return 0;
}

struct AnalyzeArgs {
    std::string policy_file, pe_file, rd_file, codes_file, format = "json", out;
    int max_moment = 2;
    double eps0 = 0.0;
    bool has_eps0 = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

int run_analyze(const AnalyzeArgs& a) {
    PolicyFile file = load_policy_json(a.policy_file);
    CodeSet set = resolve_code_set(a.codes_file);
    merge_embedded(set, file);
    file.policy.validate(set);
    PeTable table = load_pe_csv(a.pe_file);
    RdCurve curve = load_rd_csv(a.rd_file);
    double eps0 = resolve_eps0(a.has_eps0, a.eps0, table);
    MomentReport report = compute_moments(file.policy, table, eps0, curve, a.max_moment);

    std::vector<std::string> inputs = {a.policy_file, a.pe_file, a.rd_file};
    if (!a.codes_file.empty()) inputs.push_back(a.codes_file);
    RunManifest manifest = make_manifest(
        "analyze", inputs,
        {{"n", std::to_string(a.max_moment)},
         {"eps0", fmt_double(eps0)},
         {"format", a.format},
         {"codes", a.codes_file.empty() ? "default" : a.codes_file}},
        a.seed);
    if (a.format == "csv")
        write_moment_csv(a.out, report, &manifest);
    else
        write_moment_json(a.out, report, &manifest);
    return 0;
}

struct SimulateArgs {
    std::string policy_file, rd_file, pe_file, codes_file, mode, dump_trials, out;
    double eps0 = 0.0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

int run_simulate(const SimulateArgs& a) {
    PolicyFile file = load_policy_json(a.policy_file);
    CodeSet set = resolve_code_set(a.codes_file);
    merge_embedded(set, file);
    file.policy.validate(set);
    RdCurve curve = load_rd_csv(a.rd_file);
    CrcSpec crc;

    std::vector<std::string> inputs = {a.policy_file, a.rd_file};
    if (!a.pe_file.empty()) inputs.push_back(a.pe_file);
    if (!a.codes_file.empty()) inputs.push_back(a.codes_file);
    RunManifest manifest = make_manifest(
        "simulate", inputs,
        {{"mode", a.mode},
         {"eps0", fmt_double(a.eps0)},
         {"trials", std::to_string(a.trials)},
         {"codes", a.codes_file.empty() ? "default" : a.codes_file}},
        a.seed);

    if (a.mode == "gap") {
        require(!a.pe_file.empty(), Errc::invalid_value, "gap mode needs --pe");
        PeTable table = load_pe_csv(a.pe_file);
        GapReport gap = assumption_gap(file.policy, a.eps0, a.trials, table, curve, set, crc,
                                       a.seed, a.threads);
        write_gap_json(a.out, gap, &manifest);
        return 0;
    }

    TrialConfig config;
    config.policy = file.policy;
    config.eps0 = a.eps0;
    config.trials = a.trials;
    config.mode = sim_mode_from_name(a.mode);
    config.seed = a.seed;

    PeTable table;
    const PeTable* table_ptr = nullptr;
    if (config.mode == SimMode::idealized) {
        require(!a.pe_file.empty(), Errc::invalid_value, "idealized mode needs --pe");
        table = load_pe_csv(a.pe_file);
        table_ptr = &table;
    }
    std::vector<TrialRow> rows;
    std::vector<TrialRow>* rows_ptr = a.dump_trials.empty() ? nullptr : &rows;
    EmpiricalReport report =
        run_trials(config, set, crc, table_ptr, curve, a.threads, rows_ptr);
    write_empirical_json(a.out, report, &manifest);
    if (rows_ptr) write_trials_csv(a.dump_trials, rows, &manifest);
    return 0;
}

struct CompareArgs {
    std::string file_a, file_b, out;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // accepted for interface symmetry; the work is serial
};

int run_compare(const CompareArgs& a) {
    Solution baseline = load_solution_json(a.file_a);
    Solution candidate = load_solution_json(a.file_b);
    CompareReport report = compare_solutions(baseline, candidate);
    RunManifest manifest =
        make_manifest("compare", {a.file_a, a.file_b}, {}, a.seed);
    write_compare_csv(a.out, baseline, candidate, report, &manifest);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"concatenated-code policy toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    PeEstimateArgs pe;
    CLI::App* cmd_pe = app.add_subcommand("pe-estimate", "measure chunk failure rates");
    cmd_pe->add_option("--codes", pe.codes_file, "code set JSON (defaults to built-in family)")
        ->envname("CATCODE_CODES");
    cmd_pe
        ->add_option("--rates", pe.rates_list,
                     "stage code vector 'c1,c2,...' innermost first; repeatable, every "
                     "protection suffix of each vector is measured")
        ->required()
        ->envname("CATCODE_RATES");
    cmd_pe->add_option("--upsilon", pe.upsilons, "comma-separated chunk sizes in bits")
        ->required()
        ->envname("CATCODE_UPSILON");
    cmd_pe->add_option("--eps0", pe.eps0s, "comma-separated crossover probabilities")
        ->required()
        ->envname("CATCODE_EPS0");
    cmd_pe->add_option("--trials", pe.trials, "trials per table entry")
        ->envname("CATCODE_TRIALS");
    cmd_pe->add_option("--frame-chunks", pe.frame_chunks, "innermost chunks per trial frame")
        ->envname("CATCODE_FRAME_CHUNKS");
    cmd_pe->add_option("--seed", pe.seed, "root seed")->envname("CATCODE_SEED");
    cmd_pe->add_option("--threads", pe.threads, "worker cap")->envname("CATCODE_THREADS");
    cmd_pe->add_option("--out", pe.out, "output CSV path")
        ->required()
        ->envname("CATCODE_OUT");

    OptimizeArgs opt;
    CLI::App* cmd_opt = app.add_subcommand("optimize", "search the policy space");
    cmd_opt->add_option("--space", opt.space_file, "search space JSON")
        ->required()
        ->envname("CATCODE_SPACE");
    cmd_opt->add_option("--pe", opt.pe_file, "failure table CSV")
        ->required()
        ->envname("CATCODE_PE");
    cmd_opt->add_option("--rd", opt.rd_file, "rate-distortion CSV")
        ->required()
        ->envname("CATCODE_RD");
    cmd_opt->add_option("--problem", opt.problem, "p1 | p2 | p3")
        ->required()
        ->envname("CATCODE_PROBLEM");
    cmd_opt->add_option("--gamma-d", opt.gamma_d, "mean-distortion bound (p2/p3)")
        ->envname("CATCODE_GAMMA_D");
    cmd_opt->add_option("--zeta", opt.zeta_text, "mean window half-width for p3, or 'inf'")
        ->envname("CATCODE_ZETA");
    cmd_opt->add_option("--eps0", opt.eps0, "crossover to read from the table")
        ->envname("CATCODE_EPS0");
    cmd_opt->add_option("--budget-mode", opt.budget_mode, "idealized | exact (override)")
        ->envname("CATCODE_BUDGET_MODE");
    cmd_opt->add_option("--seed", opt.seed, "recorded in the manifest")
        ->envname("CATCODE_SEED");
    cmd_opt->add_option("--threads", opt.threads, "worker cap")->envname("CATCODE_THREADS");
    cmd_opt->add_option("--out", opt.out, "output JSON path")
        ->required()
        ->envname("CATCODE_OUT");

    AnalyzeArgs ana;
    CLI::App* cmd_ana = app.add_subcommand("analyze", "closed-form distortion moments");
    cmd_ana->add_option("--policy", ana.policy_file, "policy JSON")
        ->required()
        ->envname("CATCODE_POLICY");
    cmd_ana->add_option("--pe", ana.pe_file, "failure table CSV")
        ->required()
        ->envname("CATCODE_PE");
    cmd_ana->add_option("--rd", ana.rd_file, "rate-distortion CSV")
        ->required()
        ->envname("CATCODE_RD");
    cmd_ana->add_option("--codes", ana.codes_file, "code set JSON (defaults to built-in)")
        ->envname("CATCODE_CODES");
    cmd_ana->add_option("--n", ana.max_moment, "highest moment order")
        ->envname("CATCODE_N");
    cmd_ana->add_option("--eps0", ana.eps0, "crossover to read from the table")
        ->envname("CATCODE_EPS0");
    cmd_ana->add_option("--format", ana.format, "json | csv")->envname("CATCODE_FORMAT");
    cmd_ana->add_option("--seed", ana.seed, "recorded in the manifest")
        ->envname("CATCODE_SEED");
    cmd_ana->add_option("--threads", ana.threads, "worker cap")->envname("CATCODE_THREADS");
    cmd_ana->add_option("--out", ana.out, "output path")->required()->envname("CATCODE_OUT");

    SimulateArgs sim;
    CLI::App* cmd_sim = app.add_subcommand("simulate", "Monte Carlo distortion runs");
    cmd_sim->add_option("--policy", sim.policy_file, "policy JSON")
        ->required()
        ->envname("CATCODE_POLICY");
    cmd_sim->add_option("--rd", sim.rd_file, "rate-distortion CSV")
        ->required()
        ->envname("CATCODE_RD");
    cmd_sim->add_option("--mode", sim.mode, "end_to_end | idealized | gap")
        ->required()
        ->envname("CATCODE_MODE");
    cmd_sim->add_option("--eps0", sim.eps0, "channel crossover probability")
        ->required()
        ->envname("CATCODE_EPS0");
    cmd_sim->add_option("--trials", sim.trials, "trial count")->envname("CATCODE_TRIALS");
    cmd_sim->add_option("--pe", sim.pe_file, "failure table CSV (idealized / gap)")
        ->envname("CATCODE_PE");
    cmd_sim->add_option("--codes", sim.codes_file, "code set JSON (defaults to built-in)")
        ->envname("CATCODE_CODES");
    cmd_sim->add_option("--dump-trials", sim.dump_trials, "also write per-trial CSV here")
        ->envname("CATCODE_DUMP_TRIALS");
    cmd_sim->add_option("--seed", sim.seed, "root seed")->envname("CATCODE_SEED");
    cmd_sim->add_option("--threads", sim.threads, "worker cap")->envname("CATCODE_THREADS");
    cmd_sim->add_option("--out", sim.out, "output JSON path")
        ->required()
        ->envname("CATCODE_OUT");

    CompareArgs cmp;
    CLI::App* cmd_cmp = app.add_subcommand("compare", "tabulate two solutions side by side");
    cmd_cmp->add_option("--a", cmp.file_a, "baseline solution JSON")
        ->required()
        ->envname("CATCODE_A");
    cmd_cmp->add_option("--b", cmp.file_b, "candidate solution JSON")
        ->required()
        ->envname("CATCODE_B");
    cmd_cmp->add_option("--seed", cmp.seed, "recorded in the manifest")
        ->envname("CATCODE_SEED");
    cmd_cmp->add_option("--threads", cmp.threads, "worker cap")->envname("CATCODE_THREADS");
    cmd_cmp->add_option("--out", cmp.out, "output CSV path")
        ->required()
        ->envname("CATCODE_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        opt.has_gamma = cmd_opt->count("--gamma-d") > 0;
        opt.has_zeta = cmd_opt->count("--zeta") > 0;
        opt.has_eps0 = cmd_opt->count("--eps0") > 0;
        opt.has_mode = cmd_opt->count("--budget-mode") > 0;
        ana.has_eps0 = cmd_ana->count("--eps0") > 0;

        if (app.got_subcommand(cmd_pe)) return run_pe_estimate(pe);
        if (app.got_subcommand(cmd_opt)) return run_optimize(opt);
        if (app.got_subcommand(cmd_ana)) return run_analyze(ana);
        if (app.got_subcommand(cmd_sim)) return run_simulate(sim);
        if (app.got_subcommand(cmd_cmp)) return run_compare(cmp);
        std::cerr << "error: no command selected\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(Errc::internal);
    }
}
