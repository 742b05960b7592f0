// atomize: atomic-set analysis and equivalence-preserving CNF preprocessing.
//
// Subcommands:
//   analyze     compute the atomic sets of a DIMACS CNF
//   preprocess  condense atomic sets, fix the backbone, simplify and renumber
//   verify      cross-check analysis and preprocessing against the
//               exhaustive-enumeration oracle (single file or fuzz mode)
//   bench       run analyze + preprocess over a directory, emit CSV/JSON
//
// Exit codes: 0 ok, 1 parse error or empty bench directory, 2 unsatisfiable
// input, 3 time budget exceeded, 4 write failure, 5 oracle limit exceeded,
// 6 verification mismatch.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "atomize/atomize.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace atomize;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitUnsat = 2;
constexpr int kExitTimeLimit = 3;
constexpr int kExitWrite = 4;
constexpr int kExitOracleLimit = 5;
constexpr int kExitMismatch = 6;

struct SolveOptions {
    double time_limit = 600.0;
    std::string solver = "cdcl";
    bool json = false;
};

std::string percent(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f%%", value);
    return buffer;
}

std::string fixed(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

CnfFormula load_formula(const std::string& path) {
    std::ifstream in(path);
    if (!in.good())
        throw ParseError("cannot open '" + path + "'");
    return parse_dimacs(in);
}

GntOptions gnt_options(const SolveOptions& opts) {
    GntOptions g;
    g.time_limit_seconds = opts.time_limit;
    g.solver = opts.solver;
    return g;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ordered_json report_to_json(const std::string& instance, const CnfFormula& formula,
                            const AtomicSetReport& report, double seconds) {
    ordered_json sets = ordered_json::array();
    for (const AtomicSet& s : report.sets)
        sets.push_back({{"kind", to_string(s.kind)}, {"members", s.members}});
    return ordered_json{
        {"instance", instance},
        {"vars", formula.var_count()},
        {"clauses", formula.clause_count()},
        {"backbone", {{"core", report.backbone.core}, {"dead", report.backbone.dead}}},
        {"atomic_sets", sets},
        {"stats", {{"sat_calls", report.stats.sat_calls}, {"seconds", seconds}}},
    };
}

std::string member_list(const CnfFormula& formula, const std::vector<int>& members) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += formula.name_of(members[i]);
    }
    return out + "}";
}

void print_human_analysis(const CnfFormula& formula, const AtomicSetReport& report,
                          const AnalysisRecord& record) {
    std::cout << "instance:  " << record.instance << "\n"
              << "variables: " << record.vars << "   clauses: " << record.clauses << "\n"
              << "backbone:  " << report.backbone.core.size() << " core, "
              << report.backbone.dead.size() << " dead\n"
              << "atomic sets: " << record.sets << " (" << record.set_vars
              << " variables, mean " << fixed(record.mean_size, 2) << ", max "
              << record.max_size << ")\n";
    for (const AtomicSet& s : report.sets)
        std::cout << "  " << to_string(s.kind) << (s.kind == AtomicSetKind::regular ? " " : "    ")
                  << member_list(formula, s.members) << "\n";
    std::cout << "sat calls: " << record.sat_calls << "   time: " << fixed(record.seconds, 3)
              << " s\n";
}

int run_analyze(const std::string& input, const SolveOptions& opts) {
    CnfFormula formula = load_formula(input);
    const auto start = std::chrono::steady_clock::now();
    AtomicSetReport report = gnt_atomic_sets(formula, gnt_options(opts));
    const double elapsed = seconds_since(start);

    const std::string instance = fs::path(input).stem().string();
    AnalysisRecord record = make_analysis_record(instance, formula, report, elapsed);
    if (opts.json)
        std::cout << report_to_json(instance, formula, report, elapsed).dump(2) << "\n";
    else
        print_human_analysis(formula, report, record);
    return kExitOk;
}

int run_preprocess(const std::string& input, std::string out_path, std::string map_path,
                   const SolveOptions& opts) {
    CnfFormula formula = load_formula(input);
    AtomicSetReport report = gnt_atomic_sets(formula, gnt_options(opts));
    auto [reduced, map] = eliminate(formula, report);

    if (out_path.empty())
        out_path = (fs::path(input).parent_path() / fs::path(input).stem()).string() + ".ase.cnf";
    if (map_path.empty())
        map_path = (fs::path(input).parent_path() / fs::path(input).stem()).string() + ".map";

    {
        std::ofstream out(out_path);
        if (out.good())
            write_dimacs(reduced, out);
        if (!out.good()) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitWrite;
        }
    }
    {
        std::ofstream out(map_path);
        if (out.good())
            write_variable_map(map, out);
        if (!out.good()) {
            std::cerr << "error: cannot write '" << map_path << "'\n";
            return kExitWrite;
        }
    }

    const std::string instance = fs::path(input).stem().string();
    ReductionRecord record = make_reduction_record(instance, formula, reduced);
    if (opts.json) {
        ordered_json doc{
            {"instance", instance},
            {"vars",
             {{"before", record.vars_before},
              {"after", record.vars_after},
              {"delta", percent(record.var_delta_percent())}}},
            {"clauses",
             {{"before", record.clauses_before},
              {"after", record.clauses_after},
              {"delta", percent(record.clause_delta_percent())}}},
            {"output", out_path},
            {"map", map_path},
        };
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << instance << ": variables " << record.vars_before << " -> "
                  << record.vars_after << " (" << percent(record.var_delta_percent())
                  << "), clauses " << record.clauses_before << " -> " << record.clauses_after
                  << " (" << percent(record.clause_delta_percent()) << ")\n"
                  << "wrote " << out_path << " and " << map_path << "\n";
    }
    return kExitOk;
}

/// Full cross-check of one formula: the SAT-based analysis must equal the
/// enumeration oracle, and elimination must preserve model count and
/// cardinalities.
std::string verify_one(const CnfFormula& formula, const SolveOptions& opts, int oracle_limit) {
    AtomicSetReport expected = oracle_atomic_sets(formula, oracle_limit);
    AtomicSetReport actual = gnt_atomic_sets(formula, gnt_options(opts));
    if (!same_partition(actual, expected))
        return "atomic-set analysis disagrees with the enumeration oracle";
    auto [reduced, map] = eliminate(formula, actual);
    VerificationResult result = verify_elimination(formula, reduced, map, oracle_limit);
    if (!result.pass)
        return "elimination check failed: " + result.diagnosis;
    return "";
}

int run_verify(const std::string& input, int fuzz, std::uint64_t seed, int oracle_limit,
               const SolveOptions& opts) {
    if (fuzz > 0) {
        for (int i = 0; i < fuzz; ++i) {
            CnfFormula formula = random_satisfiable_cnf(seed, static_cast<std::uint64_t>(i));
            const std::string failure = verify_one(formula, opts, oracle_limit);
            if (!failure.empty()) {
                std::cerr << "fail: instance " << i << " (seed " << seed << "): " << failure
                          << "\n";
                return kExitMismatch;
            }
        }
        std::cout << "pass: " << fuzz << " fuzz instances verified (seed " << seed << ")\n";
        return kExitOk;
    }

    CnfFormula formula = load_formula(input);
    if (formula.var_count() > oracle_limit) {
        std::cerr << "error: " << formula.var_count() << " variables exceed the oracle limit of "
                  << oracle_limit << "\n";
        return kExitOracleLimit;
    }
    const std::string failure = verify_one(formula, opts, oracle_limit);
    if (!failure.empty()) {
        std::cerr << "fail: " << failure << "\n";
        return kExitMismatch;
    }
    std::cout << "pass: analysis matches the oracle and elimination preserves the "
                 "configuration space\n";
    return kExitOk;
}

struct BenchRow {
    std::string instance;
    std::string status = "ok"; // ok | timeout | error
    std::string detail;
    AnalysisRecord analysis;
    ReductionRecord reduction;
};

BenchRow bench_instance(const fs::path& path, const SolveOptions& opts) {
    BenchRow row;
    row.instance = path.stem().string();
    try {
        CnfFormula formula = load_formula(path.string());
        const auto start = std::chrono::steady_clock::now();
        AtomicSetReport report = gnt_atomic_sets(formula, gnt_options(opts));
        const double elapsed = seconds_since(start);
        row.analysis = make_analysis_record(row.instance, formula, report, elapsed);
        auto [reduced, map] = eliminate(formula, report);
        row.reduction = make_reduction_record(row.instance, formula, reduced);
    } catch (const TimeLimitError&) {
        row.status = "timeout";
    } catch (const std::exception& e) {
        row.status = "error";
        row.detail = e.what();
    }
    return row;
}

// Table-1-style column order; a status column is appended at the end.
constexpr const char* kCsvHeader =
    "instance,vars,clauses,sets,set_vars,mean,max,seconds,sat_calls,status";

std::string csv_line(const BenchRow& row) {
    std::ostringstream line;
    line << row.instance << ',';
    if (row.status == "ok") {
        line << row.analysis.vars << ',' << row.analysis.clauses << ',' << row.analysis.sets
             << ',' << row.analysis.set_vars << ',' << fixed(row.analysis.mean_size, 2) << ','
             << row.analysis.max_size << ',' << fixed(row.analysis.seconds, 3) << ','
             << row.analysis.sat_calls;
    } else {
        line << ",,,,,,,";
    }
    line << ',' << row.status;
    return line.str();
}

ordered_json bench_row_json(const BenchRow& row) {
    ordered_json doc{{"instance", row.instance}, {"status", row.status}};
    if (row.status == "ok") {
        doc["vars"] = row.analysis.vars;
        doc["clauses"] = row.analysis.clauses;
        doc["sets"] = row.analysis.sets;
        doc["set_vars"] = row.analysis.set_vars;
        doc["mean"] = row.analysis.mean_size;
        doc["max"] = row.analysis.max_size;
        doc["seconds"] = row.analysis.seconds;
        doc["sat_calls"] = row.analysis.sat_calls;
        doc["reduction"] = {
            {"vars_before", row.reduction.vars_before},
            {"vars_after", row.reduction.vars_after},
            {"var_delta", percent(row.reduction.var_delta_percent())},
            {"clauses_before", row.reduction.clauses_before},
            {"clauses_after", row.reduction.clauses_after},
            {"clause_delta", percent(row.reduction.clause_delta_percent())},
        };
    } else if (!row.detail.empty()) {
        doc["detail"] = row.detail;
    }
    return doc;
}

int run_bench(const std::string& directory, int jobs, const std::string& out_base,
              const SolveOptions& opts) {
    std::vector<fs::path> inputs;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(directory, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".cnf")
            inputs.push_back(entry.path());
    if (ec) {
        std::cerr << "error: cannot read directory '" << directory << "'\n";
        return kExitParse;
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) {
        std::cerr << "error: no .cnf files in '" << directory << "'\n";
        return kExitParse;
    }

    std::vector<BenchRow> rows(inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= inputs.size())
                return;
            rows[i] = bench_instance(inputs[i], opts);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& thread : pool)
            thread.join();
    }

    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    ordered_json json_rows = ordered_json::array();
    for (const BenchRow& row : rows) {
        csv << csv_line(row) << '\n';
        json_rows.push_back(bench_row_json(row));
    }

    const std::string csv_path = out_base + ".csv";
    const std::string json_path = out_base + ".json";
    {
        std::ofstream out(csv_path);
        out << csv.str();
        if (!out.good()) {
            std::cerr << "error: cannot write '" << csv_path << "'\n";
            return kExitWrite;
        }
    }
    {
        std::ofstream out(json_path);
        out << json_rows.dump(2) << "\n";
        if (!out.good()) {
            std::cerr << "error: cannot write '" << json_path << "'\n";
            return kExitWrite;
        }
    }

    if (opts.json)
        std::cout << json_rows.dump(2) << "\n";
    else
        std::cout << csv.str() << "wrote " << csv_path << " and " << json_path << "\n";
    return kExitOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"atomic-set analysis and CNF preprocessing"};
    app.require_subcommand(1);

    SolveOptions opts;
    std::string input;
    std::string out_path;
    std::string map_path;
    std::string directory;
    std::string bench_out = "bench_results";
    int jobs = 1;
    int fuzz = 0;
    std::uint64_t seed = 1;
    int oracle_limit = kDefaultOracleLimit;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", opts.json, "machine-readable output on stdout");
        cmd->add_option("--time-limit", opts.time_limit, "analysis time budget in seconds")
            ->default_val(600.0);
        cmd->add_option("--solver", opts.solver, "SAT backend (cdcl, dpll)")->default_val("cdcl");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "compute atomic sets of a DIMACS CNF");
    analyze->add_option("input", input, "DIMACS CNF file")->required();
    add_common(analyze);

    CLI::App* preprocess =
        app.add_subcommand("preprocess", "atomic-set elimination to a reduced DIMACS CNF");
    preprocess->add_option("input", input, "DIMACS CNF file")->required();
    preprocess->add_option("--out", out_path, "output CNF path (default: <input>.ase.cnf)");
    preprocess->add_option("--map", map_path, "variable map path (default: <input>.map)");
    add_common(preprocess);

    CLI::App* verify =
        app.add_subcommand("verify", "cross-check analysis and elimination against the oracle");
    verify->add_option("input", input, "DIMACS CNF file");
    verify->add_option("--fuzz", fuzz, "verify N seeded random instances instead of a file");
    verify->add_option("--seed", seed, "seed for --fuzz")->default_val(1);
    verify->add_option("--oracle-limit", oracle_limit, "enumeration variable limit")
        ->default_val(kDefaultOracleLimit);
    add_common(verify);

    CLI::App* bench = app.add_subcommand("bench", "analyze every .cnf file in a directory");
    bench->add_option("directory", directory, "directory of DIMACS CNF files")->required();
    bench->add_option("--jobs", jobs, "concurrent instances")->default_val(1);
    bench->add_option("--out", bench_out, "basename for the CSV/JSON result files")
        ->default_val("bench_results");
    add_common(bench);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed())
            return run_analyze(input, opts);
        if (preprocess->parsed())
            return run_preprocess(input, out_path, map_path, opts);
        if (verify->parsed()) {
            if (fuzz <= 0 && input.empty()) {
                std::cerr << "error: verify needs an input file or --fuzz N\n";
                return kExitParse;
            }
            return run_verify(input, fuzz, seed, oracle_limit, opts);
        }
        if (bench->parsed())
            return run_bench(directory, jobs, bench_out, opts);
    } catch (const EmptyClauseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsat;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UnsatisfiableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsat;
    } catch (const TimeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTimeLimit;
    } catch (const OracleLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOracleLimit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
