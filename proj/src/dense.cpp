#include "qftv/dense.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace qftv {

DenseMatrix circuit_unitary(const Circuit& circuit) {
    const int n = circuit.num_qubits;
    if (n < 1 || n > kMaxDenseQubits) {
        throw std::out_of_range("dense-matrix path limited to n <= " +
                                std::to_string(kMaxDenseQubits));
    }
    const std::uint64_t dim = 1ull << n;
    DenseMatrix matrix{dim, std::vector<cdouble>(dim * dim)};
    for (std::uint64_t col = 0; col < dim; ++col) {
        const StateVector column = apply_circuit(StateVector::basis(n, col), circuit);
        for (std::uint64_t row = 0; row < dim; ++row) {
            matrix.at(row, col) = column.amp(row);
        }
    }
    return matrix;
}

double operator_distance(const Circuit& c1, const Circuit& c2) {
    if (c1.num_qubits != c2.num_qubits) {
        throw std::invalid_argument("circuits act on different qubit counts");
    }
    const DenseMatrix m1 = circuit_unitary(c1);
    const DenseMatrix m2 = circuit_unitary(c2);
    const auto dim = static_cast<Eigen::Index>(m1.dim);

    using ComplexMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const ComplexMatrix> a(m1.entries.data(), dim, dim);
    Eigen::Map<const ComplexMatrix> b(m2.entries.data(), dim, dim);
    const ComplexMatrix diff = a - b;

    // largest singular value via the hermitian eigenproblem of D^H D
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(diff.adjoint() * diff,
                                                        Eigen::EigenvaluesOnly);
    const double largest = solver.eigenvalues().maxCoeff();
    return std::sqrt(std::max(largest, 0.0));
}

}  // namespace qftv
