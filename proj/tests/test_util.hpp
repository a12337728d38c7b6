#pragma once

// Shared helpers for the test suites: compact constructors and seeded
// random sequence generation.

#include <random>
#include <vector>

#include "zslab/core.hpp"

namespace zslab::testutil {

inline ResidueSequence seq(int n, const std::vector<int>& values) {
    return ResidueSequence(Modulus(n), values);
}

inline ResidueSequence random_sequence(std::mt19937_64& rng, int n, int max_len,
                                       int min_len = 0) {
    std::uniform_int_distribution<int> len_dist(min_len, max_len);
    std::uniform_int_distribution<int> val_dist(0, n - 1);
    std::vector<int> values(len_dist(rng));
    for (int& v : values) {
        v = val_dist(rng);
    }
    return ResidueSequence(Modulus(n), values);
}

}  // namespace zslab::testutil
