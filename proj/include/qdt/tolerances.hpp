#pragma once

namespace qdt {

/// Numerical cut-offs for structural checks. The exact algebra has no
/// tolerances; these are policy and may be overridden per call.
struct Tolerances {
    double hermitian_rel = 1e-12;   // max|M - M^+| relative to max|M|
    double psd = 1e-10;             // smallest admissible eigenvalue is -psd
    double trace = 1e-10;           // |Tr rho - 1|
    double idempotent = 1e-10;      // ||P^2 - P||_max
    double orthogonal = 1e-10;      // ||P_m P_n||_max
    double degeneracy_rel = 1e-9;   // eigenvalue equality for grouping
    double separability = 1e-8;     // residual norm cut
    double product = 1e-8;          // product-state defect cut
    double ppt = 1e-10;             // partial-transpose negativity cut
    double unity_warning = 1e-8;    // resolution-of-unity defect warning
    double normalization = 1e-12;   // smallest admissible sum for normalized mode
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace qdt
