#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qdt/composite.hpp"
#include "qdt/matrix.hpp"
#include "qdt/state.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

/// Weighted set of possible events B_alpha with amplitudes b_alpha over the
/// factor-B basis. The weights |b_alpha|^2 need not sum to one.
struct UncertainEvent {
    ComplexVector amplitudes;

    std::vector<double> weights() const;
    /// <B|B>
    double norm_squared() const;
    std::size_t nonzero_count() const;
};

/// |B><B| with |B> = sum_alpha b_alpha |alpha>. Throws ZeroAmplitude when
/// every amplitude vanishes.
ComplexMatrix uncertain_operator(const UncertainEvent& b, const ProductSpace& space);

/// pi_n = A_n (x) B
struct Prospect {
    std::string label;
    std::size_t event_a = 0;
    UncertainEvent uncertain_b;
};

struct ProspectOperator {
    ComplexMatrix matrix;
    Prospect source;
};

/// P_n (x) |B><B|
ProspectOperator prospect_operator(const Prospect& pi, const CompositeSystem& sys);

/// A complete family of prospects (one per factor-A event) with operators.
struct ProspectLattice {
    CompositeSystem system;
    std::vector<Prospect> prospects;
    std::vector<ProspectOperator> operators;
    double unity_defect = 0.0;  // ||sum_n P(pi_n) - 1||_max
    std::vector<std::string> warnings;
};

/// Builds the operators and records the resolution-of-unity defect (a warning
/// is attached, not an error, when it exceeds the tolerance).
ProspectLattice assemble_lattice(std::vector<Prospect> prospects, const CompositeSystem& sys,
                                 const Tolerances& tol = default_tolerances());

enum class Mode { Raw, Normalized };

const char* to_string(Mode m);

struct ProspectProbability {
    std::string label;
    double p = 0.0;
    double f = 0.0;
    double q = 0.0;
};

struct ProbabilityReport {
    Mode mode = Mode::Normalized;
    std::vector<ProspectProbability> rows;
    double sum_p = 0.0;
    double sum_f = 0.0;
    double sum_q = 0.0;
};

/// Prospect probabilities p = Tr(rho P(pi_n)) split into the classical part
/// f = sum_alpha |b_alpha|^2 Tr(rho P_n (x) P_alpha) and the interference part
/// q = sum_{alpha != beta} b_alpha b_beta^* Tr(rho P_n (x) |alpha><beta|).
///
/// Raw mode reports the traces as they are, so p = f + q holds identically.
/// Normalized mode divides p and f by their sums and sets q = p - f, which
/// makes p and f probability measures and sum q = 0. Throws
/// DegenerateNormalization when either raw sum is not positive.
ProbabilityReport evaluate(const ProspectLattice& lattice, const StatisticalState& rho, Mode mode,
                           const Tolerances& tol = default_tolerances());

/// Removes every coherence <n alpha|rho|m beta> with alpha != beta in the
/// factor-B basis of the space.
StatisticalState decohere(const StatisticalState& rho, const ProductSpace& space,
                          const Tolerances& tol = default_tolerances());

}  // namespace qdt
