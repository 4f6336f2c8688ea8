#pragma once

#include <cstdint>
#include <vector>

#include "qftv/statevector.hpp"

namespace qftv {

// Row-major dense matrix of a circuit, column k = circuit applied to |k>.
// Restricted to n <= kMaxDenseQubits.
struct DenseMatrix {
    std::uint64_t dim = 0;
    std::vector<cdouble> entries;  // entries[row * dim + col]

    cdouble& at(std::uint64_t row, std::uint64_t col) { return entries[row * dim + col]; }
    const cdouble& at(std::uint64_t row, std::uint64_t col) const {
        return entries[row * dim + col];
    }
};

DenseMatrix circuit_unitary(const Circuit& circuit);

// Spectral norm of the difference of the two circuit unitaries
// (largest singular value, accurate to ~1e-8).
double operator_distance(const Circuit& c1, const Circuit& c2);

}  // namespace qftv
