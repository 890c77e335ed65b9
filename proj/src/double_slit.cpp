#include "qdt/double_slit.hpp"

#include <cmath>

#include "qdt/errors.hpp"

namespace qdt {

void validate_geometry(const DoubleSlitGeometry& g) {
    if (g.detectors < 2) {
        throw ValidationError("double slit needs at least two detectors");
    }
    if (!(g.wavenumber >= 0.0) || !std::isfinite(g.wavenumber)) {
        throw ValidationError("wavenumber must be finite and non-negative");
    }
    if (!(g.slit_separation > 0.0) || !(g.screen_distance > 0.0) || !(g.screen_span > 0.0)) {
        throw ValidationError("slit separation, screen distance and screen span must be positive");
    }
}

std::vector<double> detector_positions(const DoubleSlitGeometry& g) {
    validate_geometry(g);
    std::vector<double> xs(g.detectors);
    const double step = g.screen_span / static_cast<double>(g.detectors - 1);
    for (std::size_t n = 0; n < g.detectors; ++n) {
        xs[n] = -0.5 * g.screen_span + step * static_cast<double>(n);
    }
    return xs;
}

double slit_distance(const DoubleSlitGeometry& g, std::size_t alpha, double x) {
    const double y = alpha == 0 ? -0.5 * g.slit_separation : 0.5 * g.slit_separation;
    return std::hypot(g.screen_distance, x - y);
}

ComplexVector double_slit_state(const DoubleSlitGeometry& g) {
    const auto xs = detector_positions(g);
    const double amp = 1.0 / std::sqrt(2.0 * static_cast<double>(g.detectors));
    ComplexVector psi(2 * g.detectors);
    for (std::size_t n = 0; n < g.detectors; ++n) {
        for (std::size_t alpha = 0; alpha < 2; ++alpha) {
            psi[n * 2 + alpha] = amp * std::polar(1.0, g.wavenumber * slit_distance(g, alpha, xs[n]));
        }
    }
    return psi;
}

std::vector<Prospect> double_slit_prospects(const DoubleSlitGeometry& g) {
    validate_geometry(g);
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Prospect> out;
    out.reserve(g.detectors);
    for (std::size_t n = 0; n < g.detectors; ++n) {
        out.push_back(Prospect{"x" + std::to_string(n), n, UncertainEvent{{h, h}}});
    }
    return out;
}

std::vector<FringeRow> double_slit_fringes(const DoubleSlitGeometry& g) {
    const auto xs = detector_positions(g);
    const auto sys = computational_system(g.detectors, 2);
    const auto lattice = assemble_lattice(double_slit_prospects(g), sys);
    const auto rho = StatisticalState::from_pure(double_slit_state(g));
    const auto report = evaluate(lattice, rho, Mode::Normalized);
    std::vector<FringeRow> rows;
    rows.reserve(g.detectors);
    for (std::size_t n = 0; n < g.detectors; ++n) {
        rows.push_back(FringeRow{n, xs[n], report.rows[n].p, report.rows[n].f, report.rows[n].q});
    }
    return rows;
}

}  // namespace qdt
