#include "catcode/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>

#include <json.hpp>

namespace catcode {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        require(used == trim(text).size() || used == text.size(), Errc::bad_file,
                "trailing characters in number '" + text + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw_error(Errc::bad_file, "malformed number '" + text + "'");
    }
}

std::int64_t parse_int(const std::string& text) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(text, &used);
        require(used == text.size(), Errc::bad_file, "trailing characters in '" + text + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw_error(Errc::bad_file, "malformed integer '" + text + "'");
    }
}

std::uint64_t parse_uint(const std::string& text) {
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(text, &used);
        require(used == text.size(), Errc::bad_file, "trailing characters in '" + text + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw_error(Errc::bad_file, "malformed integer '" + text + "'");
    }
}

// Data lines of a CSV file: comments ('#') and blank lines dropped, the
// header line verified and dropped.
std::vector<std::string> csv_data_lines(const std::string& path, const std::string& header) {
    std::ifstream in(path);
    require(in.good(), Errc::bad_file, "cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!saw_header) {
            require(t == header, Errc::bad_file,
                    path + ": expected header '" + header + "', found '" + t + "'");
            saw_header = true;
            continue;
        }
        lines.push_back(t);
    }
    require(saw_header, Errc::bad_file, path + ": missing header '" + header + "'");
    return lines;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), Errc::bad_file, "cannot write " + path);
    return out;
}

json manifest_obj(const RunManifest& manifest) {
    json j;
    j["command"] = manifest.command;
    j["inputs"] = manifest.inputs;
    j["config"] = manifest.config;
    j["version"] = manifest.version;
    j["seed"] = manifest.seed;
    return j;
}

void emit_manifest_comment(std::ofstream& out, const RunManifest* manifest) {
    if (manifest) out << "# manifest: " << manifest_obj(*manifest).dump() << "\n";
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::bad_file, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw_error(Errc::bad_file, path + ": " + e.what());
    }
}

void dump_json(const std::string& path, const json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
}

}  // namespace

std::string manifest_to_json(const RunManifest& manifest) {
    return manifest_obj(manifest).dump();
}

// --- rate-distortion curves ---------------------------------------------------

RdCurve load_rd_csv(const std::string& path, Interp interp) {
    std::vector<std::pair<double, double>> rows;
    for (const std::string& line : csv_data_lines(path, "rate,distortion")) {
        auto cells = split(line, ',');
        require(cells.size() == 2, Errc::bad_file, path + ": bad row '" + line + "'");
        rows.emplace_back(parse_double(cells[0]), parse_double(cells[1]));
    }
    return load_rd_curve(rows, interp);
}

void write_rd_csv(const std::string& path, const RdCurve& curve, const RunManifest* manifest) {
    std::ofstream out = open_out(path);
    emit_manifest_comment(out, manifest);
    out << "rate,distortion\n";
    for (const auto& [rate, dist] : curve.points())
        out << fmt_double(rate) << "," << fmt_double(dist) << "\n";
}

// --- code sets -----------------------------------------------------------------

namespace {

json code_to_json(const CodeSpec& code) {
    json j;
    j["rate"] = code.rate.str();
    j["kind"] = code.kind == CodeKind::conv ? "conv" : "ideal";
    if (code.kind == CodeKind::conv) {
        j["memory"] = code.conv.memory;
        json gens = json::array();
        for (std::uint32_t g : code.conv.generators) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%o", g);
            gens.push_back(std::string(buf));
        }
        j["generators"] = gens;
        if (!code.conv.puncture.empty()) j["puncturing"] = code.conv.puncture;
    }
    return j;
}

CodeSpec code_from_json(const json& j) {
    CodeSpec code;
    code.rate = Rate::parse(j.at("rate").get<std::string>());
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "ideal") {
        code.kind = CodeKind::ideal;
    } else if (kind == "conv") {
        code.kind = CodeKind::conv;
        code.conv.memory = j.at("memory").get<int>();
        code.conv.generators.clear();
        for (const auto& g : j.at("generators")) {
            std::string text = g.get<std::string>();
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(text, &used, 8);
            } catch (const std::exception&) {
                throw_error(Errc::bad_file, "malformed octal generator '" + text + "'");
            }
            require(used == text.size(), Errc::bad_file,
                    "malformed octal generator '" + text + "'");
            code.conv.generators.push_back(static_cast<std::uint32_t>(v));
        }
        if (j.contains("puncturing"))
            code.conv.puncture = j.at("puncturing").get<std::vector<std::vector<std::uint8_t>>>();
        code.conv.rate = code.rate;
    } else {
        throw_error(Errc::bad_file, "unknown code kind '" + kind + "'");
    }
    code.validate();
    return code;
}

}  // namespace

CodeSet load_code_set_json(const std::string& path) {
    json j = load_json(path);
    try {
        CodeSet set;
        for (const auto& entry : j.at("codes")) set.add(code_from_json(entry));
        require(set.size() > 0, Errc::bad_file, path + ": empty code set");
        return set;
    } catch (const json::exception& e) {
        throw_error(Errc::bad_file, path + ": " + e.what());
    }
}

void write_code_set_json(const std::string& path, const CodeSet& set) {
    json j;
    j["codes"] = json::array();
    for (const CodeSpec& code : set.codes()) j["codes"].push_back(code_to_json(code));
    dump_json(path, j);
}

// --- failure-probability tables -------------------------------------------------

PeTable load_pe_csv(const std::string& path) {
    PeTable table;
    for (const std::string& line : csv_data_lines(path, "rates,upsilon,eps0,pe,trials")) {
        auto cells = split(line, ',');
        require(cells.size() == 5, Errc::bad_file, path + ": bad row '" + line + "'");
        std::vector<Rate> rates;
        for (const std::string& r : split(cells[0], ';')) rates.push_back(Rate::parse(r));
        PeEntry entry;
        entry.pe = parse_double(cells[3]);
        entry.trials = parse_uint(cells[4]);
        entry.provenance = Provenance::ingested;
        table.insert(rates, static_cast<int>(parse_int(cells[1])), parse_double(cells[2]),
                     entry);
    }
    return table;
}

void write_pe_csv(const std::string& path, const PeTable& table, const RunManifest* manifest) {
    std::ofstream out = open_out(path);
    emit_manifest_comment(out, manifest);
    out << "rates,upsilon,eps0,pe,trials\n";
    for (const PeTable::Row& row : table.rows()) {
        for (std::size_t i = 0; i < row.rates.size(); ++i)
            out << (i ? ";" : "") << row.rates[i].str();
        out << "," << row.upsilon << "," << fmt_double(row.eps0) << ","
            << fmt_double(row.entry.pe) << "," << row.entry.trials << "\n";
    }
}

// --- policies --------------------------------------------------------------------

namespace {

json policy_to_json(const Policy& policy) {
    json j;
    j["M"] = policy.plan.stages;
    j["m"] = policy.plan.m;
    j["upsilon"] = policy.plan.upsilon;
    j["N_r"] = policy.plan.n_r;
    j["N_s"] = policy.plan.n_samples;
    json codes = json::array();
    for (const Rate& r : policy.codes) codes.push_back(r.str());
    j["codes"] = codes;
    j["interleaver_seed"] = policy.interleaver_seed;
    j["budget_mode"] = budget_mode_name(policy.budget_mode);
    return j;
}

PolicyFile policy_from_json(const json& j) {
    PolicyFile file;
    Policy& policy = file.policy;
    policy.plan.stages = j.at("M").get<int>();
    policy.plan.m = j.at("m").get<std::vector<int>>();
    policy.plan.upsilon = j.at("upsilon").get<int>();
    policy.plan.n_r = j.at("N_r").get<int>();
    policy.plan.n_samples = j.at("N_s").get<std::int64_t>();
    for (const auto& entry : j.at("codes")) {
        if (entry.is_string()) {
            policy.codes.push_back(Rate::parse(entry.get<std::string>()));
        } else {
            CodeSpec code = code_from_json(entry);
            policy.codes.push_back(code.rate);
            file.embedded.push_back(std::move(code));
        }
    }
    if (j.contains("interleaver_seed"))
        policy.interleaver_seed = j.at("interleaver_seed").get<std::uint64_t>();
    if (j.contains("budget_mode"))
        policy.budget_mode = budget_mode_from_name(j.at("budget_mode").get<std::string>());
    policy.plan.validate();
    return file;
}

}  // namespace

PolicyFile load_policy_json(const std::string& path) {
    json j = load_json(path);
    try {
        return policy_from_json(j);
    } catch (const json::exception& e) {
        throw_error(Errc::bad_file, path + ": " + e.what());
    }
}

void write_policy_json(const std::string& path, const Policy& policy) {
    dump_json(path, policy_to_json(policy));
}

// --- search spaces -----------------------------------------------------------------

SearchSpace load_space_json(const std::string& path, std::string* code_set_ref) {
    json j = load_json(path);
    try {
        SearchSpace space;
        auto range = j.at("M_range").get<std::vector<int>>();
        require(range.size() == 2, Errc::bad_file, path + ": M_range must be [lo, hi]");
        space.stages_min = range[0];
        space.stages_max = range[1];
        space.upsilon_grid = j.at("upsilon_grid").get<std::vector<int>>();
        space.budget = j.at("B").get<double>();
        space.n_r = j.at("N_r").get<int>();
        space.n_samples = j.at("N_s").get<std::int64_t>();
        if (j.contains("caps")) {
            const json& caps = j.at("caps");
            if (caps.contains("max_total_chunks"))
                space.max_total_chunks = caps.at("max_total_chunks").get<int>();
            if (caps.contains("max_candidates"))
                space.max_candidates = caps.at("max_candidates").get<std::int64_t>();
        }
        if (j.contains("budget_mode"))
            space.budget_mode = budget_mode_from_name(j.at("budget_mode").get<std::string>());
        if (j.contains("interleaver_seed"))
            space.interleaver_seed = j.at("interleaver_seed").get<std::uint64_t>();
        if (code_set_ref) *code_set_ref = j.at("code_set_ref").get<std::string>();
        space.validate();
        return space;
    } catch (const json::exception& e) {
        throw_error(Errc::bad_file, path + ": " + e.what());
    }
}

// --- moment reports ------------------------------------------------------------------

namespace {

json report_to_json(const MomentReport& report) {
    json j;
    j["mean"] = report.mean();
    j["second_moment"] = report.second_moment();
    j["variance"] = report.variance();
    j["moments"] = report.moments;
    json levels = json::array();
    for (const LevelEntry& level : report.levels) {
        json row;
        row["stage"] = level.stage;
        row["index"] = level.index;
        row["rate"] = level.rate;
        row["distortion"] = level.distortion;
        row["prob"] = level.prob;
        levels.push_back(row);
    }
    j["levels"] = levels;
    return j;
}

MomentReport report_from_json(const json& j) {
    MomentReport report;
    report.moments = j.at("moments").get<std::vector<double>>();
    require(!report.moments.empty(), Errc::bad_file, "report carries no moments");
    for (const auto& row : j.at("levels")) {
        LevelEntry level;
        level.stage = row.at("stage").get<int>();
        level.index = row.at("index").get<int>();
        level.rate = row.at("rate").get<double>();
        level.distortion = row.at("distortion").get<double>();
        level.prob = row.at("prob").get<double>();
        report.levels.push_back(level);
    }
    return report;
}

void check_distribution(const MomentReport& report, const std::string& path) {
    double total = 0.0;
    for (const LevelEntry& level : report.levels) {
        require(level.prob >= -1e-15 && level.prob <= 1.0 + 1e-12, Errc::bad_file,
                path + ": level probability out of range");
        total += level.prob;
    }
    require(std::abs(total - 1.0) <= 1e-9, Errc::bad_file,
            path + ": level probabilities sum to " + fmt_double(total) + ", not 1");
}

}  // namespace

void write_moment_json(const std::string& path, const MomentReport& report,
                       const RunManifest* manifest) {
    json j = report_to_json(report);
    if (manifest) j["manifest"] = manifest_obj(*manifest);
    dump_json(path, j);
}

MomentReport load_moment_json(const std::string& path) {
    json j = load_json(path);
    try {
        MomentReport report = report_from_json(j);
        check_distribution(report, path);
        return report;
    } catch (const json::exception& e) {
        throw_error(Errc::bad_file, path + ": " + e.what());
    }
}

void write_moment_csv(const std::string& path, const MomentReport& report,
                      const RunManifest* manifest) {
    std::ofstream out = open_out(path);
    emit_manifest_comment(out, manifest);
    out << "# mean=" << fmt_double(report.mean())
        << " second_moment=" << fmt_double(report.second_moment())
        << " variance=" << fmt_double(report.variance()) << "\n";
    out << "j,i,rate,distortion,prob\n";
    for (const LevelEntry& level : report.levels)
        out << level.stage << "," << level.index << "," << fmt_double(level.rate) << ","
            << fmt_double(level.distortion) << "," << fmt_double(level.prob) << "\n";
}

MomentReport load_moment_csv(const std::string& path) {
    MomentReport report;
    for (const std::string& line : csv_data_lines(path, "j,i,rate,distortion,prob")) {
        auto cells = split(line, ',');
        require(cells.size() == 5, Errc::bad_file, path + ": bad row '" + line + "'");
        LevelEntry level;
        level.stage = static_cast<int>(parse_int(cells[0]));
        level.index = static_cast<int>(parse_int(cells[1]));
        level.rate = parse_double(cells[2]);
        level.distortion = parse_double(cells[3]);
        level.prob = parse_double(cells[4]);
        report.levels.push_back(level);
    }
    report.moments.assign(2, 0.0);
    for (const LevelEntry& level : report.levels) {
        report.moments[0] += level.prob * level.distortion;
        report.moments[1] += level.prob * level.distortion * level.distortion;
    }
    check_distribution(report, path);
    return report;
}

// --- solutions ---------------------------------------------------------------------

void write_solution_json(const std::string& path, const Solution& solution,
                         const RunManifest* manifest) {
    json j;
    j["problem"] = problem_name(solution.problem);
    j["objective"] = solution.objective;
    j["r_tr"] = solution.r_tr;
    j["eps0"] = solution.eps0;
    if (solution.gamma_d) j["gamma_d"] = *solution.gamma_d;
    if (solution.zeta) {
        if (std::isinf(*solution.zeta))
            j["zeta"] = "inf";
        else
            j["zeta"] = *solution.zeta;
    }
    if (solution.achieved_margin) j["achieved_margin"] = *solution.achieved_margin;
    j["policy"] = policy_to_json(solution.policy);
    j["report"] = report_to_json(solution.report);
    if (manifest) j["manifest"] = manifest_obj(*manifest);
    dump_json(path, j);
}

Solution load_solution_json(const std::string& path) {
    json j = load_json(path);
    try {
        Solution solution;
        solution.problem = problem_from_name(j.at("problem").get<std::string>());
        solution.objective = j.at("objective").get<double>();
        solution.r_tr = j.at("r_tr").get<double>();
        solution.eps0 = j.at("eps0").get<double>();
        if (j.contains("gamma_d")) solution.gamma_d = j.at("gamma_d").get<double>();
        if (j.contains("zeta")) {
            const json& z = j.at("zeta");
            solution.zeta = z.is_string() ? std::numeric_limits<double>::infinity()
                                          : z.get<double>();
        }
        if (j.contains("achieved_margin"))
            solution.achieved_margin = j.at("achieved_margin").get<double>();
        solution.policy = policy_from_json(j.at("policy")).policy;
        solution.report = report_from_json(j.at("report"));
        check_distribution(solution.report, path);
        return solution;
    } catch (const json::exception& e) {
        throw_error(Errc::bad_file, path + ": " + e.what());
    }
}

// --- empirical reports ----------------------------------------------------------------

namespace {

json empirical_to_json(const EmpiricalReport& report) {
    json j;
    j["trials"] = report.trials;
    j["mean"] = report.mean;
    j["variance"] = report.variance;
    j["std_error"] = report.std_error;
    j["fourth_central"] = report.fourth_central;
    j["level_histogram"] = report.level_histogram;
    j["undetected_errors"] = report.undetected_errors;
    return j;
}

}  // namespace

void write_empirical_json(const std::string& path, const EmpiricalReport& report,
                          const RunManifest* manifest) {
    json j = empirical_to_json(report);
    if (manifest) j["manifest"] = manifest_obj(*manifest);
    dump_json(path, j);
}

void write_trials_csv(const std::string& path, const std::vector<TrialRow>& rows,
                      const RunManifest* manifest) {
    std::ofstream out = open_out(path);
    emit_manifest_comment(out, manifest);
    out << "trial,decoded_chunks,distortion\n";
    for (const TrialRow& row : rows)
        out << row.trial << "," << row.decoded_chunks << "," << fmt_double(row.distortion)
            << "\n";
}

void write_gap_json(const std::string& path, const GapReport& gap,
                    const RunManifest* manifest) {
    json j;
    j["end_to_end"] = empirical_to_json(gap.end_to_end);
    j["idealized"] = empirical_to_json(gap.idealized);
    j["mean_gap"] = gap.mean_gap;
    j["mean_gap_se"] = gap.mean_gap_se;
    j["var_gap"] = gap.var_gap;
    j["var_gap_se"] = gap.var_gap_se;
    if (manifest) j["manifest"] = manifest_obj(*manifest);
    dump_json(path, j);
}

// --- comparisons -------------------------------------------------------------------------

void write_compare_csv(const std::string& path, const Solution& baseline,
                       const Solution& candidate, const CompareReport& report,
                       const RunManifest* manifest) {
    std::ofstream out = open_out(path);
    emit_manifest_comment(out, manifest);
    out << "scheme,r_tr,eps0,mean,std_dev,variance,psnr,pct_decrease_std,pct_decrease_var\n";
    out << "baseline," << fmt_double(baseline.r_tr) << "," << fmt_double(baseline.eps0) << ","
        << fmt_double(report.mean_a) << "," << fmt_double(report.std_a) << ","
        << fmt_double(report.var_a) << "," << fmt_double(report.psnr_a) << ",,\n";
    out << "candidate," << fmt_double(candidate.r_tr) << "," << fmt_double(candidate.eps0)
        << "," << fmt_double(report.mean_b) << "," << fmt_double(report.std_b) << ","
        << fmt_double(report.var_b) << "," << fmt_double(report.psnr_b) << ","
        << (report.pct_decrease_std ? fmt_double(*report.pct_decrease_std) : "undefined")
        << ","
        << (report.pct_decrease_var ? fmt_double(*report.pct_decrease_var) : "undefined")
        << "\n";
}

// --- raw bit files -------------------------------------------------------------------------

void write_bit_file(const std::string& path, const BitVec& bits) {
    std::ofstream out = open_out(path);
    auto bytes = bytes_from_bits(bits);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

BitVec read_bit_file(const std::string& path, std::size_t nbits) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), Errc::bad_file, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    std::size_t have = bytes.size() * 8;
    if (nbits == 0) nbits = have;
    require(nbits <= have, Errc::bad_file, path + ": file carries fewer bits than requested");
    return bits_from_bytes(bytes, nbits);
}

}  // namespace catcode
