#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qubism/models.hpp"
#include "qubism/state.hpp"

namespace qubism {

enum class EigenMethod { automatic, dense, lanczos };

struct EigenOptions {
    EigenMethod method = EigenMethod::automatic;
    // The automatic choice diagonalizes densely up to this dimension.
    Index dense_max_dim = 2048;
    // Budget of Hamiltonian applications for the whole Lanczos run.
    int max_iterations = 5000;
    int krylov_dim = 120;
    std::uint64_t seed = 0x5eed'1234ULL;
};

struct EigenResult {
    std::vector<double> eigenvalues;       // ascending
    std::vector<StateVector> eigenvectors; // largest-modulus amplitude real positive
    std::vector<double> residuals;         // ||H v - lambda v||
    std::vector<bool> degenerate;          // level shares its eigenvalue with a neighbour
    EigenMethod method_used = EigenMethod::dense;
};

// Lowest k eigenpairs. Residuals are guaranteed <= 1e-9 * max_row_norm(op),
// otherwise ConvergenceError is thrown carrying the best residual reached.
EigenResult solve_lowest(const SparseOperator &op, int k, const EigenOptions &options = {});

// Rotates the vector so its largest-modulus amplitude (first one, within a
// relative 1e-12 tie window) is real and positive.
std::vector<cplx> canonicalize_phase(std::vector<cplx> v);

} // namespace qubism
