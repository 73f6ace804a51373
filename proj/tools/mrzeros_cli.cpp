// Command-line front end: analyze one system, run Monte Carlo sweeps, check the
// structured fixtures, and print closed-form zero summaries.

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrzeros/harness.hpp"
#include "mrzeros/io.hpp"

namespace {

constexpr int kExitAgree    = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitUsage    = 2;

std::vector<int> parse_taus(const std::string& spec, int N) {
    std::vector<int> taus;
    if (spec == "all") {
        for (int t = 1; t <= N; ++t) taus.push_back(t);
        return taus;
    }
    try {
        std::size_t used = 0;
        const int t      = std::stoi(spec, &used);
        if (used != spec.size()) throw std::invalid_argument(spec);
        taus.push_back(t);
    } catch (const std::exception&) {
        throw mrz::Error(mrz::ErrorKind::InvalidInput, "--tau expects an integer or 'all', got '" + spec + "'");
    }
    return taus;
}

mrz::Dimensions parse_dims(const std::string& spec) {
    std::vector<int> v;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            v.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw mrz::Error(mrz::ErrorKind::InvalidInput, "--dims entry '" + item + "' is not an integer");
        }
    }
    if (v.size() != 5) throw mrz::Error(mrz::ErrorKind::InvalidInput, "--dims expects n,m,p1,p2,N");
    const mrz::Dimensions d{v[0], v[1], v[2], v[3], v[4]};
    if (!d.valid()) throw mrz::Error(mrz::ErrorKind::InvalidInput, "invalid dims " + mrz::to_string(d));
    return d;
}

int cmd_analyze(const std::string& system_path, const std::string& tau_spec, const std::string& policy_path,
                std::uint64_t seed, bool emit_blocked, const std::string& out_path) {
    const auto sys    = mrz::load_system(system_path);
    const auto policy = policy_path.empty() ? mrz::TolerancePolicy{} : mrz::load_policy(policy_path);
    const auto& d     = sys.dims;
    const bool tall   = mrz::is_tall(d);

    mrz::json results = mrz::json::array();
    bool all_agree    = true;
    for (int tau : parse_taus(tau_spec, d.N)) {
        const auto blk = mrz::block(sys, tau);
        mrz::json entry;
        entry["tau"]     = tau;
        entry["profile"] = mrz::rank_profile(blk, policy, seed);
        const auto zr    = mrz::zero_report(blk, policy, seed);
        entry["zeros"]   = zr;
        if (tall) {
            const auto pred = mrz::predict(d, tau);
            entry["prediction"] = pred;
            const mrz::json agree = {{"rank_D", mrz::numerical_rank(blk.D, policy) == pred.rank_D},
                                     {"normal_rank", zr.normal_rank == pred.normal_rank},
                                     {"mult_at_zero", zr.mult_at_zero == pred.mult_at_zero},
                                     {"mult_at_infinity", zr.mult_at_infinity == pred.mult_at_infinity},
                                     {"zero_free", zr.finite_nonzero_zeros.empty()}};
            for (const auto& [k, v] : agree.items()) all_agree = all_agree && v.get<bool>();
            entry["agreement"] = agree;
        } else {
            entry["prediction"] = nullptr;
            entry["agreement"]  = nullptr;
        }
        if (emit_blocked) entry["blocked"] = mrz::blocked_to_json(blk);
        results.push_back(std::move(entry));
    }

    const mrz::json out = {{"tool_version", mrz::kVersion},
                           {"dims", d},
                           {"class", std::string(mrz::to_string(mrz::classify(d)))},
                           {"seed", seed},
                           {"policy", policy},
                           {"results", results},
                           {"all_agree", all_agree}};
    mrz::write_text_file(out_path, out.dump(2) + "\n");
    std::cout << "analyzed " << results.size() << " delay(s) of " << mrz::to_string(d) << " -> " << out_path << '\n';
    return all_agree ? kExitAgree : kExitDisagree;
}

void print_summary(const mrz::VerificationReport& rep) {
    for (const auto& [q, s] : rep.agreement)
        std::cout << "  " << std::left << std::setw(24) << q << s.agree << "/" << s.total << '\n';
}

int cmd_verify(const std::string& grid_path, int seeds, int threads, const std::string& out_path) {
    auto spec = mrz::read_json_file(grid_path).get<mrz::GridSpec>();
    if (seeds > 0) spec.trials_per_cell = seeds;
    if (threads >= 0) spec.threads = threads;
    const auto rep = mrz::run_grid(spec);
    const bool csv = std::filesystem::path(out_path).extension() == ".csv";
    mrz::emit_report(rep, csv ? mrz::ReportFormat::Csv : mrz::ReportFormat::Json, out_path);
    std::cout << rep.total_trials() << " trials, " << rep.disagreements.size() << " disagreeing\n";
    print_summary(rep);
    return rep.all_agree() ? kExitAgree : kExitDisagree;
}

int cmd_fixtures(const std::string& policy_path, const std::string& out_path) {
    const auto policy = policy_path.empty() ? mrz::TolerancePolicy{} : mrz::load_policy(policy_path);
    const auto rep    = mrz::run_fixture_suite(policy);
    mrz::emit_report(rep, mrz::ReportFormat::Json, out_path);
    std::cout << rep.fixture_checks.size() << " fixture checks\n";
    print_summary(rep);
    return rep.all_agree() ? kExitAgree : kExitDisagree;
}

int cmd_table(const std::string& dims_spec, const std::string& out_path) {
    const auto d = parse_dims(dims_spec);
    std::ostringstream out;
    out << "dims " << mrz::to_string(d) << "  class " << mrz::to_string(mrz::classify(d)) << '\n';
    out << "normal rank " << mrz::predict_normal_rank(d).value << '\n';
    out << std::left << std::setw(6) << "tau" << std::setw(10) << "rank_D" << std::setw(16) << "finite nonzero"
        << std::setw(16) << "at origin" << std::setw(16) << "at infinity" << '\n';
    auto cell = [](const std::string& yes_no, int mult) {
        return yes_no == "Yes" ? "Yes (" + std::to_string(mult) + ")" : yes_no;
    };
    for (int tau = 1; tau <= d.N; ++tau) {
        const auto row = mrz::summary_table(d, tau);
        out << std::left << std::setw(6) << tau << std::setw(10) << mrz::predict_rank_D(d, tau).value << std::setw(16)
            << row.finite_nonzero << std::setw(16) << cell(row.at_origin, row.mult_at_zero) << std::setw(16)
            << cell(row.at_infinity, row.mult_at_infinity) << '\n';
    }
    out << "zeros at 0 / infinity: " << mrz::summary_table(d, 1).regime << '\n';
    mrz::write_text_file(out_path, out.str());
    std::cout << out.str();
    return kExitAgree;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeros of blocked tall two-rate linear systems"};
    app.require_subcommand(1);

    std::string system_path, tau_spec = "all", policy_path, out_path, grid_path, dims_spec;
    std::uint64_t seed = 0;
    int seeds = 0, threads = -1;
    bool emit_blocked = false;

    auto* analyze = app.add_subcommand("analyze", "zero report and oracle comparison for one system");
    analyze->add_option("--system", system_path, "system JSON file")->required();
    analyze->add_option("--tau", tau_spec, "blocking delay or 'all'");
    analyze->add_option("--policy", policy_path, "tolerance policy JSON file");
    analyze->add_option("--seed", seed, "seed for sampling and compression");
    analyze->add_flag("--emit-blocked", emit_blocked, "include the blocked matrices in the report");
    analyze->add_option("--out", out_path, "report JSON path")->required();

    auto* verify = app.add_subcommand("verify", "Monte Carlo sweep against the closed forms");
    verify->add_option("--grid", grid_path, "grid JSON file")->required();
    verify->add_option("--seeds", seeds, "trials per cell (overrides the grid file)");
    verify->add_option("--threads", threads, "worker threads (0 = all cores)");
    verify->add_option("--out", out_path, "report path (.json or .csv)")->required();

    auto* fixtures = app.add_subcommand("fixtures", "exact-rank checks on the shift fixtures");
    fixtures->add_option("--policy", policy_path, "tolerance policy JSON file");
    fixtures->add_option("--out", out_path, "report JSON path")->required();

    auto* table = app.add_subcommand("table", "closed-form zero summary for every delay");
    table->add_option("--dims", dims_spec, "n,m,p1,p2,N")->required();
    table->add_option("--out", out_path, "text output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*analyze) return cmd_analyze(system_path, tau_spec, policy_path, seed, emit_blocked, out_path);
        if (*verify) return cmd_verify(grid_path, seeds, threads, out_path);
        if (*fixtures) return cmd_fixtures(policy_path, out_path);
        if (*table) return cmd_table(dims_spec, out_path);
    } catch (const mrz::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
