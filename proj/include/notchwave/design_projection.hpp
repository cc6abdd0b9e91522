#pragma once

#include <cstdint>
#include <vector>

#include "notchwave/spectral.hpp"
#include "notchwave/types.hpp"

namespace notchwave {

// Constant-modulus random-phase reference, element i = exp(j 2 pi u_i)/sqrt(n)
// with u_i iid uniform on [0,1). Unit energy; identical output for a fixed
// seed.
ComplexSequence generate_reference(std::size_t n, std::uint64_t seed);

struct ProjectionRequest {
    ComplexSequence reference;
    std::vector<StopBand> bands;
};

// Removes every spectral component of the reference on the stop-band grid
// bins: the Euclidean projection onto the orthogonal complement of the
// stop-band steering subspace. Computed as a length-n transform, zeroed
// stop-band bins, inverse transform; the per-frequency subtraction loop is
// identical on the orthonormal grid and is kept in the tests as an oracle.
// No renormalization: the output norm drops by exactly the removed energy.
ComplexSequence project_notch(const ProjectionRequest& req);

ComplexSequence project_notch(const ComplexSequence& reference,
                              const std::vector<StopBand>& bands);

}  // namespace notchwave
