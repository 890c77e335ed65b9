#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

#include "qdt/matrix.hpp"
#include "qdt/prospects.hpp"

namespace qdt {

/// Two slits at y = -d/2 and y = +d/2, a flat screen at distance L carrying
/// N detectors spread uniformly over [-span/2, span/2]. Lengths are in units
/// of the wavelength, so the default wavenumber is 2*pi.
struct DoubleSlitGeometry {
    std::size_t detectors = 64;
    double wavenumber = 2.0 * std::numbers::pi;
    double slit_separation = 5.0;
    double screen_distance = 100.0;
    double screen_span = 40.0;
};

/// Throws ValidationError unless detectors >= 2, wavenumber >= 0 and every
/// length is positive.
void validate_geometry(const DoubleSlitGeometry& g);

std::vector<double> detector_positions(const DoubleSlitGeometry& g);

/// Distance from slit alpha (0: lower, 1: upper) to a screen point x.
double slit_distance(const DoubleSlitGeometry& g, std::size_t alpha, double x);

/// Composite amplitude psi[n*2 + alpha] = exp(i k r_alpha(x_n)) / sqrt(2N).
ComplexVector double_slit_state(const DoubleSlitGeometry& g);

/// One prospect per detector, each with b = (1/sqrt2, 1/sqrt2).
std::vector<Prospect> double_slit_prospects(const DoubleSlitGeometry& g);

struct FringeRow {
    std::size_t detector = 0;
    double x = 0.0;
    double p = 0.0;
    double f = 0.0;
    double q = 0.0;
};

/// Normalized (p, f, q) per detector through the prospect machinery.
std::vector<FringeRow> double_slit_fringes(const DoubleSlitGeometry& g);

}  // namespace qdt
