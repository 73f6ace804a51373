#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "blocking.hpp"
#include "io.hpp"
#include "model.hpp"
#include "numerics.hpp"
#include "oracle.hpp"
#include "version.hpp"
#include "zeros.hpp"

namespace mrz {

inline constexpr double kLiftResidualTol = 1e-9;
inline constexpr int kLiftPointsPerTrial = 3;

/// Names of the per-trial agreement flags, in report order.
inline const std::vector<std::string>& agreement_quantities() {
    static const std::vector<std::string> q = {"rank_D",    "normal_rank", "mult_at_zero",     "mult_at_infinity",
                                               "zero_free", "duality",     "tau_independence", "lift_recursion"};
    return q;
}

struct IntRange {
    int min = 1;
    int max = 1;

    friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// Dimension sweep. p2 is placed above the tallness threshold:
/// p2 = max(0, N (m - p1)) + offset, offset >= 1.
struct GridSpec {
    IntRange n{1, 5};
    IntRange m{1, 4};
    int p1_min = 1;
    std::optional<int> p1_max;  ///< unset means p1 <= m
    std::vector<int> p2_offsets{1, 2};
    std::vector<int> N_values{2, 3, 4};
    std::optional<std::vector<int>> taus;  ///< unset means every tau in 1..N
    int trials_per_cell      = 10;
    std::uint64_t base_seed  = 20130611;
    TolerancePolicy policy;
    int threads = 0;  ///< 0 means hardware concurrency; never affects results

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Cell {
    Dimensions dims;
    int tau = 1;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell& a, const Cell& b) {
        return std::tie(a.dims.n, a.dims.m, a.dims.p1, a.dims.p2, a.dims.N, a.tau) <=>
               std::tie(b.dims.n, b.dims.m, b.dims.p1, b.dims.p2, b.dims.N, b.tau);
    }
};

/// Cells in lexicographic (n, m, p1, p2, N, tau) order.
inline std::vector<Cell> enumerate_cells(const GridSpec& spec) {
    if (spec.trials_per_cell < 1) throw Error(ErrorKind::InvalidInput, "trials_per_cell must be >= 1");
    std::vector<Cell> cells;
    for (int n = spec.n.min; n <= spec.n.max; ++n)
        for (int m = spec.m.min; m <= spec.m.max; ++m)
            for (int p1 = spec.p1_min; p1 <= spec.p1_max.value_or(m); ++p1)
                for (int N : spec.N_values)
                    for (int off : spec.p2_offsets) {
                        if (off < 1) throw Error(ErrorKind::InvalidInput, "p2 offsets must be >= 1");
                        const Dimensions d{n, m, p1, std::max(0, N * (m - p1)) + off, N};
                        if (!d.valid() || !is_tall(d))
                            throw Error(ErrorKind::InvalidInput, "grid produced invalid dims " + to_string(d));
                        if (spec.taus) {
                            for (int t : *spec.taus)
                                if (t >= 1 && t <= N) cells.push_back({d, t});
                        } else {
                            for (int t = 1; t <= N; ++t) cells.push_back({d, t});
                        }
                    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

struct TrialRecord {
    Dimensions dims;
    int tau            = 1;
    std::uint64_t seed = 0;
    TolerancePolicy policy;
    RankProfile profile;
    ZeroReport zeros;
    TheoryPrediction predicted;
    int dual_tau              = 1;
    int dual_mult_at_zero     = 0;
    int dual_mult_at_infinity = 0;
    std::vector<int> normal_rank_by_tau;
    std::vector<double> lift_residuals;
    std::map<std::string, bool> agreement;
    std::string error;  ///< empty unless the trial failed
    double elapsed_ms = 0.0;

    bool agree_all() const {
        return error.empty() && std::all_of(agreement.begin(), agreement.end(), [](const auto& kv) { return kv.second; });
    }

    /// Equality over everything except timing.
    bool same_payload(const TrialRecord& o) const {
        return dims == o.dims && tau == o.tau && seed == o.seed && policy == o.policy && profile == o.profile &&
               zeros == o.zeros && predicted == o.predicted && dual_tau == o.dual_tau &&
               dual_mult_at_zero == o.dual_mult_at_zero && dual_mult_at_infinity == o.dual_mult_at_infinity &&
               normal_rank_by_tau == o.normal_rank_by_tau && lift_residuals == o.lift_residuals &&
               agreement == o.agreement && error == o.error;
    }
};

struct QuantityStats {
    int agree = 0;
    int total = 0;

    double rate() const { return total == 0 ? 1.0 : static_cast<double>(agree) / total; }
    friend bool operator==(const QuantityStats&, const QuantityStats&) = default;
};

struct CellAggregate {
    Cell cell;
    int trials     = 0;
    int agree_all  = 0;
    std::map<std::string, QuantityStats> quantities;

    friend bool operator==(const CellAggregate&, const CellAggregate&) = default;
};

/// Exact-rank check on a structured fixture.
struct FixtureCheck {
    std::string fixture;
    Dimensions dims;
    int tau      = 0;  ///< 0 when not applicable
    int nu       = 0;  ///< controllability horizon, 0 when not applicable
    std::string quantity;
    int measured = 0;
    int expected = 0;
    bool agree   = false;

    friend bool operator==(const FixtureCheck&, const FixtureCheck&) = default;
};

struct VerificationReport {
    std::string kind;  ///< "grid" or "fixtures"
    std::optional<GridSpec> grid;
    TolerancePolicy policy;
    std::vector<CellAggregate> cells;
    std::map<std::string, QuantityStats> agreement;
    std::vector<TrialRecord> trials;
    std::vector<TrialRecord> disagreements;
    std::vector<FixtureCheck> fixture_checks;
    std::string tool_version = kVersion;
    std::string timestamp;

    bool all_agree() const {
        return std::all_of(agreement.begin(), agreement.end(), [](const auto& kv) { return kv.second.agree == kv.second.total; });
    }
    int total_trials() const { return static_cast<int>(trials.size()); }
};

// ---------------------------------------------------------------------------

namespace detail {

/// Multiplicities at 0 and infinity only, without the candidate search.
inline std::pair<int, int> origin_infinity_multiplicities(const BlockedSystem& blk, const TolerancePolicy& policy,
                                                          std::uint64_t seed) {
    const MatrixPencil P = system_pencil(blk);
    const int rho        = normal_rank(P, policy, seed);
    return {verify_zero(P, Complex(0.0, 0.0), policy, rho), std::max(0, rho - rank_at_infinity(blk, policy))};
}

inline std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Unit-circle points for the lifting check, skipping any that sit on a pole.
inline std::vector<double> lift_residuals(const MultirateSystem& sys, int tau, std::uint64_t seed,
                                          const TolerancePolicy& policy) {
    std::vector<double> out;
    CounterRng rng(seed, Stream::LiftPoints, static_cast<std::uint64_t>(tau));
    for (int draws = 0; static_cast<int>(out.size()) < kLiftPointsPerTrial && draws < 10 * kLiftPointsPerTrial;
         ++draws) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * rng.next_uniform());
        try {
            out.push_back(lift_relation_residual(sys, tau, z, policy));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ResolventSingular) throw;
        }
    }
    return out;
}

}  // namespace detail

/// One seeded instance at one delay, measured and compared against the oracle.
/// Besides the closed-form quantities, the record carries the duality check against
/// delay N - tau + 1, the normal rank at every delay, and the lifting recursion
/// residuals at three unit-circle points (vacuous for tau = N).
inline TrialRecord run_trial(const Dimensions& dims, int tau, std::uint64_t seed, const TolerancePolicy& policy = {}) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.dims     = dims;
    rec.tau      = tau;
    rec.seed     = seed;
    rec.policy   = policy;
    rec.dual_tau = dims.N - tau + 1;
    for (const auto& q : agreement_quantities()) rec.agreement[q] = false;

    try {
        rec.predicted = predict(dims, tau);
        rec.dual_tau  = dual_index(tau, dims.N);

        const MultirateSystem sys = random_generic(dims, seed);
        const BlockedSystem blk   = block(sys, tau);

        rec.zeros                    = zero_report(blk, policy, seed);
        rec.profile.normal_rank      = rec.zeros.normal_rank;
        rec.profile.rank_at_zero     = rank_at(system_pencil(blk), Complex(0.0, 0.0), policy);
        rec.profile.rank_D           = numerical_rank(blk.D, policy);
        rec.profile.rank_at_infinity = dims.n + rec.profile.rank_D;

        std::tie(rec.dual_mult_at_zero, rec.dual_mult_at_infinity) =
            detail::origin_infinity_multiplicities(block(sys, rec.dual_tau), policy, seed);

        for (int t = 1; t <= dims.N; ++t)
            rec.normal_rank_by_tau.push_back(t == tau ? rec.zeros.normal_rank
                                                      : normal_rank(system_pencil(block(sys, t)), policy, seed));

        if (tau < dims.N) rec.lift_residuals = detail::lift_residuals(sys, tau, seed, policy);

        auto& a               = rec.agreement;
        a["rank_D"]           = rec.profile.rank_D == rec.predicted.rank_D;
        a["normal_rank"]      = rec.zeros.normal_rank == rec.predicted.normal_rank;
        a["mult_at_zero"]     = rec.zeros.mult_at_zero == rec.predicted.mult_at_zero;
        a["mult_at_infinity"] = rec.zeros.mult_at_infinity == rec.predicted.mult_at_infinity;
        a["zero_free"]        = rec.zeros.finite_nonzero_zeros.empty();
        a["duality"]          = rec.zeros.mult_at_zero == rec.dual_mult_at_infinity &&
                       rec.zeros.mult_at_infinity == rec.dual_mult_at_zero;
        a["tau_independence"] = std::all_of(rec.normal_rank_by_tau.begin(), rec.normal_rank_by_tau.end(),
                                            [&](int r) { return r == rec.normal_rank_by_tau.front(); });
        a["lift_recursion"]   = tau == dims.N ||
                              (static_cast<int>(rec.lift_residuals.size()) == kLiftPointsPerTrial &&
                               std::all_of(rec.lift_residuals.begin(), rec.lift_residuals.end(),
                                           [](double r) { return r < kLiftResidualTol; }));
    } catch (const Error& e) {
        rec.error = e.what();
        for (auto& kv : rec.agreement) kv.second = false;
    }
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

namespace detail {

inline void accumulate(std::map<std::string, QuantityStats>& stats, const TrialRecord& rec) {
    for (const auto& [q, ok] : rec.agreement) {
        auto& s = stats[q];
        ++s.total;
        if (ok) ++s.agree;
    }
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers          = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
}

}  // namespace detail

/// Runs trials_per_cell trials per cell with seed = base_seed + global trial index.
/// The result does not depend on the thread count.
inline VerificationReport run_grid(const GridSpec& spec) {
    const auto cells = enumerate_cells(spec);
    const std::size_t per_cell = static_cast<std::size_t>(spec.trials_per_cell);

    VerificationReport rep;
    rep.kind      = "grid";
    rep.grid      = spec;
    rep.policy    = spec.policy;
    rep.timestamp = detail::utc_timestamp();
    rep.trials.resize(cells.size() * per_cell);

    detail::parallel_for(rep.trials.size(), spec.threads, [&](std::size_t idx) {
        const Cell& c   = cells[idx / per_cell];
        rep.trials[idx] = run_trial(c.dims, c.tau, spec.base_seed + idx, spec.policy);
    });

    for (const auto& q : agreement_quantities()) rep.agreement[q] = {};
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        CellAggregate agg;
        agg.cell = cells[ci];
        for (std::size_t t = 0; t < per_cell; ++t) {
            const auto& rec = rep.trials[ci * per_cell + t];
            ++agg.trials;
            if (rec.agree_all()) ++agg.agree_all;
            detail::accumulate(agg.quantities, rec);
            detail::accumulate(rep.agreement, rec);
            if (!rec.agree_all()) rep.disagreements.push_back(rec);
        }
        rep.cells.push_back(std::move(agg));
    }
    return rep;
}

/// Exact ranks of the structured fixtures:
///   shift_small_n: rank D_tau = (N-1) p1 + m + n
///   shift_large_n: rank D_tau = (tau-1) p1 + (N-tau+1) m
///   shift_controllability: rank [B, AB, ..., A^{nu-1}B] = min(n, nu m)
inline VerificationReport run_fixture_suite(const TolerancePolicy& policy = {}) {
    VerificationReport rep;
    rep.kind      = "fixtures";
    rep.policy    = policy;
    rep.timestamp = detail::utc_timestamp();

    auto record = [&](FixtureCheck chk) {
        chk.agree = chk.measured == chk.expected;
        auto& s   = rep.agreement["fixture_" + chk.quantity];
        ++s.total;
        if (chk.agree) ++s.agree;
        rep.fixture_checks.push_back(std::move(chk));
    };

    for (int n = 1; n <= 6; ++n)
        for (int m = 2; m <= 4; ++m)
            for (int p1 = 1; p1 < m; ++p1)
                for (int N = 2; N <= 4; ++N)
                    for (int tau = 1; tau < N; ++tau) {
                        const int k     = m - p1;
                        const int cycle = (N - tau) * k;
                        if (n < k) continue;
                        const Dimensions d{n, m, p1, std::max(N * k + 1, std::max(n, cycle) + k), N};
                        const bool small = n <= cycle;
                        const auto name  = small ? FixtureName::ShiftSmallN : FixtureName::ShiftLargeN;
                        const auto sys   = fixture(name, d, tau, 0);
                        const int expected = small ? (N - 1) * p1 + m + n : (tau - 1) * p1 + (N - tau + 1) * m;
                        record({std::string(to_string(name)), d, tau, 0, "rank_D",
                                numerical_rank(block(sys, tau).D, policy), expected, false});
                    }

    for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= 3; ++m)
            for (int nu = 1; nu <= 4; ++nu) {
                const Dimensions d{n, m, 1, 1, 2};
                const auto sys = fixture(FixtureName::ShiftControllability, d, 1, 0);
                record({std::string(to_string(FixtureName::ShiftControllability)), d, 0, nu, "controllability_rank",
                        numerical_rank(controllability_matrix(sys.A, sys.B, nu), policy),
                        predict_controllability_rank(n, m, nu), false});
            }
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization.

inline void to_json(json& j, const GridSpec& g) {
    j = {{"n", {{"min", g.n.min}, {"max", g.n.max}}},
         {"m", {{"min", g.m.min}, {"max", g.m.max}}},
         {"p1", {{"min", g.p1_min}, {"max", g.p1_max ? json(*g.p1_max) : json(nullptr)}}},
         {"p2_offsets", g.p2_offsets},
         {"N", g.N_values},
         {"tau", g.taus ? json(*g.taus) : json("all")},
         {"trials_per_cell", g.trials_per_cell},
         {"base_seed", g.base_seed},
         {"policy", g.policy}};
}

inline void from_json(const json& j, GridSpec& g) {
    auto range = [&](const char* key, IntRange& r) {
        if (j.contains(key)) {
            r.min = j.at(key).at("min").get<int>();
            r.max = j.at(key).at("max").get<int>();
        }
    };
    range("n", g.n);
    range("m", g.m);
    if (j.contains("p1")) {
        const auto& p = j.at("p1");
        g.p1_min      = p.value("min", 1);
        if (p.contains("max") && !p.at("max").is_null()) g.p1_max = p.at("max").get<int>();
        else g.p1_max.reset();
    }
    if (j.contains("p2_offsets")) g.p2_offsets = j.at("p2_offsets").get<std::vector<int>>();
    if (j.contains("N")) g.N_values = j.at("N").get<std::vector<int>>();
    if (j.contains("tau")) {
        const auto& t = j.at("tau");
        if (t.is_string() && t.get<std::string>() == "all") g.taus.reset();
        else g.taus = t.get<std::vector<int>>();
    }
    g.trials_per_cell = j.value("trials_per_cell", g.trials_per_cell);
    g.base_seed       = j.value("base_seed", g.base_seed);
    g.threads         = j.value("threads", g.threads);
    if (j.contains("policy")) g.policy = j.at("policy").get<TolerancePolicy>();
    if (g.trials_per_cell < 1) throw Error(ErrorKind::InvalidInput, "trials_per_cell must be >= 1");
}

inline void to_json(json& j, const QuantityStats& s) {
    j = {{"agree", s.agree}, {"total", s.total}, {"rate", s.rate()}};
}
inline void from_json(const json& j, QuantityStats& s) {
    s.agree = j.at("agree").get<int>();
    s.total = j.at("total").get<int>();
}

struct EmitOptions {
    bool include_timing = true;  ///< timestamp and per-trial elapsed time
};

inline json trial_to_json(const TrialRecord& r, const EmitOptions& opt = {}) {
    json j = {{"dims", r.dims},
              {"tau", r.tau},
              {"seed", r.seed},
              {"policy", r.policy},
              {"class", std::string(to_string(classify(r.dims)))},
              {"measured", {{"profile", r.profile}, {"zeros", r.zeros}}},
              {"predicted", r.predicted},
              {"dual", {{"tau", r.dual_tau}, {"mult_at_zero", r.dual_mult_at_zero}, {"mult_at_infinity", r.dual_mult_at_infinity}}},
              {"normal_rank_by_tau", r.normal_rank_by_tau},
              {"lift_residuals", r.lift_residuals},
              {"agreement", r.agreement},
              {"agree_all", r.agree_all()},
              {"error", r.error}};
    if (opt.include_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline TrialRecord trial_from_json(const json& j) {
    TrialRecord r;
    r.dims                  = j.at("dims").get<Dimensions>();
    r.tau                   = j.at("tau").get<int>();
    r.seed                  = j.at("seed").get<std::uint64_t>();
    r.policy                = j.at("policy").get<TolerancePolicy>();
    r.profile               = j.at("measured").at("profile").get<RankProfile>();
    r.zeros                 = j.at("measured").at("zeros").get<ZeroReport>();
    r.predicted             = j.at("predicted").get<TheoryPrediction>();
    r.dual_tau              = j.at("dual").at("tau").get<int>();
    r.dual_mult_at_zero     = j.at("dual").at("mult_at_zero").get<int>();
    r.dual_mult_at_infinity = j.at("dual").at("mult_at_infinity").get<int>();
    r.normal_rank_by_tau    = j.at("normal_rank_by_tau").get<std::vector<int>>();
    r.lift_residuals        = j.at("lift_residuals").get<std::vector<double>>();
    r.agreement             = j.at("agreement").get<std::map<std::string, bool>>();
    r.error                 = j.at("error").get<std::string>();
    r.elapsed_ms            = j.value("elapsed_ms", 0.0);
    return r;
}

inline json cell_to_json(const CellAggregate& c) {
    return {{"dims", c.cell.dims}, {"tau", c.cell.tau}, {"trials", c.trials}, {"agree_all", c.agree_all},
            {"quantities", c.quantities}};
}

inline void to_json(json& j, const FixtureCheck& f) {
    j = {{"fixture", f.fixture}, {"dims", f.dims},         {"tau", f.tau},           {"nu", f.nu},
         {"quantity", f.quantity}, {"measured", f.measured}, {"expected", f.expected}, {"agree", f.agree}};
}
inline void from_json(const json& j, FixtureCheck& f) {
    f.fixture  = j.at("fixture").get<std::string>();
    f.dims     = j.at("dims").get<Dimensions>();
    f.tau      = j.at("tau").get<int>();
    f.nu       = j.at("nu").get<int>();
    f.quantity = j.at("quantity").get<std::string>();
    f.measured = j.at("measured").get<int>();
    f.expected = j.at("expected").get<int>();
    f.agree    = j.at("agree").get<bool>();
}

inline json report_to_json(const VerificationReport& r, const EmitOptions& opt = {}) {
    json trials = json::array(), dis = json::array(), cells = json::array();
    for (const auto& t : r.trials) trials.push_back(trial_to_json(t, opt));
    for (const auto& t : r.disagreements) dis.push_back(trial_to_json(t, opt));
    for (const auto& c : r.cells) cells.push_back(cell_to_json(c));
    json j = {{"kind", r.kind},
              {"tool_version", r.tool_version},
              {"grid", r.grid ? json(*r.grid) : json(nullptr)},
              {"policy", r.policy},
              {"total_trials", r.total_trials()},
              {"all_agree", r.all_agree()},
              {"agreement", r.agreement},
              {"cells", cells},
              {"disagreements", dis},
              {"fixture_checks", r.fixture_checks},
              {"trials", trials}};
    if (opt.include_timing) j["timestamp"] = r.timestamp;
    return j;
}

inline VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    r.kind         = j.at("kind").get<std::string>();
    r.tool_version = j.at("tool_version").get<std::string>();
    if (!j.at("grid").is_null()) r.grid = j.at("grid").get<GridSpec>();
    r.policy    = j.at("policy").get<TolerancePolicy>();
    r.agreement = j.at("agreement").get<std::map<std::string, QuantityStats>>();
    for (const auto& c : j.at("cells")) {
        CellAggregate agg;
        agg.cell       = {c.at("dims").get<Dimensions>(), c.at("tau").get<int>()};
        agg.trials     = c.at("trials").get<int>();
        agg.agree_all  = c.at("agree_all").get<int>();
        agg.quantities = c.at("quantities").get<std::map<std::string, QuantityStats>>();
        r.cells.push_back(std::move(agg));
    }
    for (const auto& t : j.at("trials")) r.trials.push_back(trial_from_json(t));
    for (const auto& t : j.at("disagreements")) r.disagreements.push_back(trial_from_json(t));
    r.fixture_checks = j.at("fixture_checks").get<std::vector<FixtureCheck>>();
    r.timestamp      = j.value("timestamp", std::string());
    return r;
}

inline const char* kCsvHeader =
    "n,m,p1,p2,N,tau,seed,class,rank_D_meas,rank_D_pred,nrank_meas,nrank_pred,mz_meas,mz_pred,minf_meas,minf_pred,"
    "n_finite_nonzero,agree_all";

inline std::string report_to_csv(const VerificationReport& r) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& t : r.trials) {
        const auto& d = t.dims;
        out << d.n << ',' << d.m << ',' << d.p1 << ',' << d.p2 << ',' << d.N << ',' << t.tau << ',' << t.seed << ','
            << to_string(classify(d)) << ',' << t.profile.rank_D << ',' << t.predicted.rank_D << ','
            << t.zeros.normal_rank << ',' << t.predicted.normal_rank << ',' << t.zeros.mult_at_zero << ','
            << t.predicted.mult_at_zero << ',' << t.zeros.mult_at_infinity << ',' << t.predicted.mult_at_infinity << ','
            << t.zeros.finite_nonzero_zeros.size() << ',' << (t.agree_all() ? 1 : 0) << '\n';
    }
    return out.str();
}

enum class ReportFormat { Json, Csv };

inline void emit_report(const VerificationReport& r, ReportFormat format, const std::filesystem::path& path,
                        const EmitOptions& opt = {}) {
    write_text_file(path, format == ReportFormat::Json ? report_to_json(r, opt).dump(2) + "\n" : report_to_csv(r));
}

}  // namespace mrz
