#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "blocking.hpp"
#include "model.hpp"
#include "numerics.hpp"
#include "oracle.hpp"
#include "zeros.hpp"

// JSON conventions: matrices are row-major nested arrays, complex numbers are
// {"re": x, "im": y}.

namespace mrz {

using json = nlohmann::json;

inline json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Parses a row-major nested array. Errors name the field.
inline Matrix matrix_from_json(const json& j, const std::string& field, Eigen::Index rows, Eigen::Index cols) {
    auto fail = [&](const std::string& why) { throw Error(ErrorKind::InvalidInput, "field " + field + ": " + why); };
    if (!j.is_array()) fail("expected a nested array");
    if (static_cast<Eigen::Index>(j.size()) != rows)
        fail("has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    Matrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            fail("row " + std::to_string(i) + " does not have " + std::to_string(cols) + " entries");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) fail("entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not a number");
            const double x = v.get<double>();
            if (!std::isfinite(x)) fail("entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not finite");
            M(i, k) = x;
        }
    }
    return M;
}

inline json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }
inline Complex complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline void to_json(json& j, const Dimensions& d) {
    j = {{"n", d.n}, {"m", d.m}, {"p1", d.p1}, {"p2", d.p2}, {"N", d.N}};
}
inline void from_json(const json& j, Dimensions& d) {
    d.n  = j.at("n").get<int>();
    d.m  = j.at("m").get<int>();
    d.p1 = j.at("p1").get<int>();
    d.p2 = j.at("p2").get<int>();
    d.N  = j.at("N").get<int>();
}

inline void to_json(json& j, const TolerancePolicy& p) {
    j = {{"rel_rank_tol", p.rel_rank_tol},
         {"zero_radius", p.zero_radius},
         {"cluster_tol", p.cluster_tol},
         {"normal_rank_samples", p.normal_rank_samples},
         {"resample_limit", p.resample_limit},
         {"condition_cap", p.condition_cap}};
}
/// Missing keys keep their defaults.
inline void from_json(const json& j, TolerancePolicy& p) {
    p.rel_rank_tol        = j.value("rel_rank_tol", p.rel_rank_tol);
    p.zero_radius         = j.value("zero_radius", p.zero_radius);
    p.cluster_tol         = j.value("cluster_tol", p.cluster_tol);
    p.normal_rank_samples = j.value("normal_rank_samples", p.normal_rank_samples);
    p.resample_limit      = j.value("resample_limit", p.resample_limit);
    p.condition_cap       = j.value("condition_cap", p.condition_cap);
    if (!p.valid()) throw Error(ErrorKind::InvalidInput, "policy: all tolerances must be positive and samples >= 3");
}

inline json system_to_json(const MultirateSystem& sys) {
    json j = sys.dims;
    j["A"]  = matrix_to_json(sys.A);
    j["B"]  = matrix_to_json(sys.B);
    j["Cf"] = matrix_to_json(sys.Cf);
    j["Cs"] = matrix_to_json(sys.Cs);
    j["Df"] = matrix_to_json(sys.Df);
    j["Ds"] = matrix_to_json(sys.Ds);
    return j;
}

inline MultirateSystem system_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "system file must hold a JSON object");
    MultirateSystem sys;
    for (const char* key : {"n", "m", "p1", "p2", "N"})
        if (!j.contains(key) || !j.at(key).is_number_integer())
            throw Error(ErrorKind::InvalidInput, std::string("field ") + key + ": missing or not an integer");
    sys.dims = j.get<Dimensions>();
    if (!sys.dims.valid()) throw Error(ErrorKind::InvalidInput, "dims " + to_string(sys.dims) + " are invalid");
    const auto& d = sys.dims;
    auto field = [&](const char* key) -> const json& {
        if (!j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("field ") + key + ": missing");
        return j.at(key);
    };
    sys.A  = matrix_from_json(field("A"), "A", d.n, d.n);
    sys.B  = matrix_from_json(field("B"), "B", d.n, d.m);
    sys.Cf = matrix_from_json(field("Cf"), "Cf", d.p1, d.n);
    sys.Cs = matrix_from_json(field("Cs"), "Cs", d.p2, d.n);
    sys.Df = matrix_from_json(field("Df"), "Df", d.p1, d.m);
    sys.Ds = matrix_from_json(field("Ds"), "Ds", d.p2, d.m);
    return sys;
}

inline json blocked_to_json(const BlockedSystem& blk) {
    json j        = {{"dims", blk.dims}, {"tau", blk.tau}};
    j["reverse_time"] = blk.reverse_time;
    j["has_slow_rows"] = blk.has_slow_rows;
    j["A"] = matrix_to_json(blk.A);
    j["B"] = matrix_to_json(blk.B);
    j["C"] = matrix_to_json(blk.C);
    j["D"] = matrix_to_json(blk.D);
    return j;
}

inline void to_json(json& j, const RankProfile& r) {
    j = {{"normal_rank", r.normal_rank},
         {"rank_at_zero", r.rank_at_zero},
         {"rank_at_infinity", r.rank_at_infinity},
         {"rank_D", r.rank_D}};
}
inline void from_json(const json& j, RankProfile& r) {
    r.normal_rank      = j.at("normal_rank").get<int>();
    r.rank_at_zero     = j.at("rank_at_zero").get<int>();
    r.rank_at_infinity = j.at("rank_at_infinity").get<int>();
    r.rank_D           = j.at("rank_D").get<int>();
}

inline void to_json(json& j, const ZeroReport& r) {
    json zeros = json::array();
    for (const auto& z : r.finite_nonzero_zeros)
        zeros.push_back({{"location", complex_to_json(z.location)}, {"multiplicity", z.multiplicity}});
    json diag = json::array();
    for (const auto& c : r.diagnostics) diag.push_back({{"location", complex_to_json(c.location)}, {"reason", c.reason}});
    j = {{"tau", r.tau},
         {"normal_rank", r.normal_rank},
         {"mult_at_zero", r.mult_at_zero},
         {"mult_at_infinity", r.mult_at_infinity},
         {"finite_nonzero_zeros", zeros},
         {"candidates_examined", r.candidates_examined},
         {"seed", r.seed},
         {"diagnostics", diag}};
}
inline void from_json(const json& j, ZeroReport& r) {
    r.tau                 = j.at("tau").get<int>();
    r.normal_rank         = j.at("normal_rank").get<int>();
    r.mult_at_zero        = j.at("mult_at_zero").get<int>();
    r.mult_at_infinity    = j.at("mult_at_infinity").get<int>();
    r.candidates_examined = j.at("candidates_examined").get<int>();
    r.seed                = j.at("seed").get<std::uint64_t>();
    r.finite_nonzero_zeros.clear();
    for (const auto& z : j.at("finite_nonzero_zeros"))
        r.finite_nonzero_zeros.push_back({complex_from_json(z.at("location")), z.at("multiplicity").get<int>()});
    r.diagnostics.clear();
    for (const auto& c : j.at("diagnostics"))
        r.diagnostics.push_back({complex_from_json(c.at("location")), c.at("reason").get<std::string>()});
}

inline SystemClass system_class_from_string(const std::string& s) {
    for (auto c : {SystemClass::FastTall, SystemClass::MixedTall, SystemClass::NotTall})
        if (to_string(c) == s) return c;
    throw Error(ErrorKind::InvalidInput, "unknown system class " + s);
}

inline void to_json(json& j, const TheoryPrediction& p) {
    j = {{"dims", p.dims},
         {"tau", p.tau},
         {"system_class", std::string(to_string(p.system_class))},
         {"rank_D", p.rank_D},
         {"normal_rank", p.normal_rank},
         {"mult_at_zero", p.mult_at_zero},
         {"mult_at_infinity", p.mult_at_infinity},
         {"case_labels", p.case_labels}};
}
inline void from_json(const json& j, TheoryPrediction& p) {
    p.dims             = j.at("dims").get<Dimensions>();
    p.tau              = j.at("tau").get<int>();
    p.system_class     = system_class_from_string(j.at("system_class").get<std::string>());
    p.rank_D           = j.at("rank_D").get<int>();
    p.normal_rank      = j.at("normal_rank").get<int>();
    p.mult_at_zero     = j.at("mult_at_zero").get<int>();
    p.mult_at_infinity = j.at("mult_at_infinity").get<int>();
    p.case_labels      = j.at("case_labels").get<std::map<std::string, std::string>>();
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
    }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

inline MultirateSystem load_system(const std::filesystem::path& path) {
    const auto sys = system_from_json(read_json_file(path));
    require_valid(sys);
    return sys;
}

inline TolerancePolicy load_policy(const std::filesystem::path& path) {
    return read_json_file(path).get<TolerancePolicy>();
}

}  // namespace mrz
