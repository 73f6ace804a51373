#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace mrz {

using Matrix   = Eigen::MatrixXd;
using CMatrix  = Eigen::MatrixXcd;
using Complex  = std::complex<double>;

enum class ErrorKind {
    SingularA,
    TauOutOfRange,
    ResolventSingular,
    ZeroZ,
    ConvergenceFailure,
    CompressionFailure,
    SingularD,
    NotTallClass,
    UnsupportedDims,
    InvalidInput,
    Io,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::SingularA: return "SingularA";
        case ErrorKind::TauOutOfRange: return "TauOutOfRange";
        case ErrorKind::ResolventSingular: return "ResolventSingular";
        case ErrorKind::ZeroZ: return "ZeroZ";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::CompressionFailure: return "CompressionFailure";
        case ErrorKind::SingularD: return "SingularD";
        case ErrorKind::NotTallClass: return "NotTallClass";
        case ErrorKind::UnsupportedDims: return "UnsupportedDims";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Sizes of a two-rate system: fast outputs every step, slow outputs every N steps.
struct Dimensions {
    int n  = 1;  ///< states
    int m  = 1;  ///< inputs
    int p1 = 1;  ///< fast outputs
    int p2 = 1;  ///< slow outputs
    int N  = 2;  ///< rate ratio

    int p() const { return p1 + p2; }
    bool valid() const { return n >= 1 && m >= 1 && p1 >= 1 && p2 >= 1 && N >= 2; }

    friend bool operator==(const Dimensions&, const Dimensions&) = default;
    friend auto operator<=>(const Dimensions&, const Dimensions&) = default;
};

inline std::string to_string(const Dimensions& d) {
    return "(n=" + std::to_string(d.n) + ",m=" + std::to_string(d.m) + ",p1=" + std::to_string(d.p1) +
           ",p2=" + std::to_string(d.p2) + ",N=" + std::to_string(d.N) + ")";
}

enum class SystemClass { FastTall, MixedTall, NotTall };

constexpr std::string_view to_string(SystemClass c) {
    switch (c) {
        case SystemClass::FastTall: return "FastTall";
        case SystemClass::MixedTall: return "MixedTall";
        case SystemClass::NotTall: return "NotTall";
    }
    return "Unknown";
}

/// Thresholds shared by every rank and zero computation.
struct TolerancePolicy {
    double rel_rank_tol        = 1e-9;
    double zero_radius         = 1e-8;
    double cluster_tol         = 1e-6;
    int    normal_rank_samples = 7;
    int    resample_limit      = 5;
    double condition_cap       = 1e10;

    bool valid() const {
        return rel_rank_tol > 0 && zero_radius > 0 && cluster_tol > 0 && normal_rank_samples >= 3 &&
               resample_limit > 0 && condition_cap > 0;
    }

    friend bool operator==(const TolerancePolicy&, const TolerancePolicy&) = default;
};

}  // namespace mrz
