#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "model.hpp"
#include "types.hpp"

namespace mrz {

/// A closed-form value together with the case of the formula that produced it.
struct Prediction {
    int value = 0;
    std::string case_label;

    friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Generic-case predictions for one (dims, tau).
struct TheoryPrediction {
    Dimensions dims;
    int tau = 1;
    SystemClass system_class = SystemClass::NotTall;
    int rank_D           = 0;
    int normal_rank      = 0;
    int mult_at_zero     = 0;
    int mult_at_infinity = 0;
    std::map<std::string, std::string> case_labels;

    friend bool operator==(const TheoryPrediction&, const TheoryPrediction&) = default;
};

namespace detail {

inline void require_tall(const Dimensions& d) {
    if (!d.valid()) throw Error(ErrorKind::InvalidInput, "invalid dims " + to_string(d));
    if (classify(d) == SystemClass::NotTall)
        throw Error(ErrorKind::NotTallClass, "blocked system is not tall for " + to_string(d));
}

inline void require_tau(const Dimensions& d, int tau) {
    if (tau < 1 || tau > d.N)
        throw Error(ErrorKind::TauOutOfRange, "tau=" + std::to_string(tau) + " outside 1.." + std::to_string(d.N));
}

}  // namespace detail

inline Prediction predict_rank_D(const Dimensions& d, int tau) {
    detail::require_tall(d);
    detail::require_tau(d, tau);
    const int N = d.N, n = d.n, m = d.m, p1 = d.p1;
    if (p1 > m) return {N * m, "rank_D.fast_tall"};
    const int k = m - p1;
    if (n <= (N - tau) * k) return {(N - 1) * p1 + m + n, "rank_D.state_fits_shift"};
    return {(tau - 1) * p1 + (N - tau + 1) * m, "rank_D.state_exceeds_shift"};
}

inline Prediction predict_normal_rank(const Dimensions& d) {
    detail::require_tall(d);
    const int N = d.N, n = d.n, m = d.m, p1 = d.p1;
    if (p1 >= m) return {n + N * m, "normal_rank.p1_ge_m"};
    if (n < (N - 1) * (m - p1)) return {(N - 1) * p1 + m + 2 * n, "normal_rank.deficient"};
    return {n + N * m, "normal_rank.full_column"};
}

inline Prediction predict_mult_infinity(const Dimensions& d, int tau) {
    detail::require_tall(d);
    detail::require_tau(d, tau);
    const int N = d.N, n = d.n, m = d.m, p1 = d.p1;
    if (p1 > m) return {0, "mult_inf.fast_tall"};
    if (p1 == m) return {0, "mult_inf.p1_eq_m"};
    const int k = m - p1;
    if (n <= (N - tau) * k) return {0, "mult_inf.none"};
    if (n <= (N - 1) * k) return {n - (N - tau) * k, "mult_inf.partial"};
    return {(tau - 1) * k, "mult_inf.saturated"};
}

inline Prediction predict_mult_zero(const Dimensions& d, int tau) {
    detail::require_tall(d);
    detail::require_tau(d, tau);
    const int N = d.N, n = d.n, m = d.m, p1 = d.p1;
    if (p1 > m) return {0, "mult_zero.fast_tall"};
    if (p1 == m) return {0, "mult_zero.p1_eq_m"};
    const int k = m - p1;
    if (n <= (tau - 1) * k) return {0, "mult_zero.none"};
    if (n <= (N - 1) * k) return {n - (tau - 1) * k, "mult_zero.partial"};
    return {(N - tau) * k, "mult_zero.saturated"};
}

/// Generic rank of [B, AB, ..., A^{nu-1}B] for A n x n, B n x m.
inline int predict_controllability_rank(int n, int m, int nu) {
    if (n < 1 || m < 1 || nu < 1) throw Error(ErrorKind::InvalidInput, "controllability rank needs n, m, nu >= 1");
    return std::min(n, nu * m);
}

/// Delay whose zeros at the origin and at infinity swap with those of tau.
inline int dual_index(int tau, int N) {
    if (tau < 1 || tau > N)
        throw Error(ErrorKind::TauOutOfRange, "tau=" + std::to_string(tau) + " outside 1.." + std::to_string(N));
    return N - tau + 1;
}

inline TheoryPrediction predict(const Dimensions& d, int tau) {
    const auto rD   = predict_rank_D(d, tau);
    const auto nr   = predict_normal_rank(d);
    const auto mz   = predict_mult_zero(d, tau);
    const auto minf = predict_mult_infinity(d, tau);
    TheoryPrediction out;
    out.dims             = d;
    out.tau              = tau;
    out.system_class     = classify(d);
    out.rank_D           = rD.value;
    out.normal_rank      = nr.value;
    out.mult_at_zero     = mz.value;
    out.mult_at_infinity = minf.value;
    out.case_labels      = {{"rank_D", rD.case_label},
                            {"normal_rank", nr.case_label},
                            {"mult_at_zero", mz.case_label},
                            {"mult_at_infinity", minf.case_label}};
    return out;
}

/// Qualitative zero summary for one delay.
struct TableRow {
    int tau = 1;
    std::string finite_nonzero;  ///< always "No" for generic tall systems
    std::string at_origin;       ///< "No" or "Yes"
    std::string at_infinity;
    std::string regime;          ///< "No" when p1 >= m, else "depends on tau"
    int mult_at_zero     = 0;
    int mult_at_infinity = 0;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

inline TableRow summary_table(const Dimensions& d, int tau) {
    const auto mz   = predict_mult_zero(d, tau);
    const auto minf = predict_mult_infinity(d, tau);
    TableRow row;
    row.tau              = tau;
    row.finite_nonzero   = "No";
    row.mult_at_zero     = mz.value;
    row.mult_at_infinity = minf.value;
    row.at_origin        = mz.value > 0 ? "Yes" : "No";
    row.at_infinity      = minf.value > 0 ? "Yes" : "No";
    row.regime           = d.p1 >= d.m ? "No" : "depends on tau";
    return row;
}

}  // namespace mrz
