#pragma once

#include "qdx/monalg.hpp"

#include <random>
#include <string>
#include <utility>

namespace qdx {

// Seeded random corpus generators and the property suites built on them.
// Every suite is deterministic in (seed, count).

struct SuiteResult {
    bool pass = true;
    long long checked = 0;
    std::string detail; // first failure, empty on success
};

// Random weighted monomial quotient: n <= 6 variables, weights <= 3,
// <= 8 generators with exponents <= 4.
std::pair<WeightedRing, MonIdeal> random_monomial_quotient(std::mt19937_64& rng);

SuiteResult suite_series_properties(unsigned long long seed, int count);
SuiteResult suite_hilbert_oracle(unsigned long long seed, int count, int max_degree);
SuiteResult suite_dimension_coherence(unsigned long long seed, int count);
SuiteResult suite_algebraic_additivity(unsigned long long seed, int count);
SuiteResult suite_wmod(unsigned long long seed, int count);
SuiteResult suite_tensor_length(unsigned long long seed, int count);

} // namespace qdx
