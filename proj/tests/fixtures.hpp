#pragma once

#include "nnspectra/matrix.hpp"

namespace fixtures {

// 4x4 matrix with fractional cover 4 and rank 3.
inline nnspectra::NonnegativeMatrix incomparable_a() {
    return nnspectra::NonnegativeMatrix{{1, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}};
}

// 4x4 matrix with fractional cover 7/2 and rank 4.
inline nnspectra::NonnegativeMatrix incomparable_b() {
    return nnspectra::NonnegativeMatrix{{1, 0, 1, 1}, {0, 1, 1, 0}, {0, 1, 1, 1}, {1, 1, 0, 1}};
}

// 4x4 matrix whose maximum induced matching has size 2.
inline nnspectra::NonnegativeMatrix matching_example() {
    return nnspectra::NonnegativeMatrix{{1, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 1}};
}

}  // namespace fixtures
