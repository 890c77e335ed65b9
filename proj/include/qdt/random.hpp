#pragma once

#include <cstdint>
#include <random>

#include "qdt/matrix.hpp"

namespace qdt {

using Rng = std::mt19937_64;

/// Engine for substream `stream` of a master seed. Substreams are derived
/// through std::seed_seq so (seed, stream) pairs give unrelated sequences.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(Rng& rng);

/// Complex standard normal: real and imaginary parts independent N(0, 1/2).
cplx complex_normal(Rng& rng);

/// Vector of complex standard normals (not normalized).
ComplexVector random_complex_vector(Rng& rng, std::size_t n);

/// Unit vector drawn from the rotation-invariant ensemble.
ComplexVector random_unit_vector(Rng& rng, std::size_t n);

/// (G + G^+)/2 with G complex standard normal; exactly Hermitian.
ComplexMatrix random_hermitian(Rng& rng, std::size_t n);

/// Unitary from Gram-Schmidt on complex normal columns.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

/// G G^+ / Tr(G G^+) for an n x rank complex normal G.
ComplexMatrix random_density_matrix(Rng& rng, std::size_t n, std::size_t rank);

}  // namespace qdt
