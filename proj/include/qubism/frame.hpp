#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qubism/models.hpp"
#include "qubism/qmap.hpp"
#include "qubism/render.hpp"
#include "qubism/state.hpp"

namespace qubism {

/// Expectation values f(X, Y) = <A(X, Y)> of all 4^n Pauli strings, where
/// site k carries sigma^(X_k + 2 Y_k) with sigma^0..3 = I, x, y, z. Bit
/// strings are stored as integers with X_1 the most significant bit.
struct FrameTable {
    int n = 0;
    std::vector<double> values; // X * 2^n + Y

    FrameTable() = default;
    FrameTable(int num_qubits, std::vector<double> vals);

    Index side() const { return Index{1} << n; }
    double at(Index x, Index y) const { return values[x * side() + y]; }
};

// Parses a bit string such as "0110" into an integer, X_1 first.
Index parse_bits(const std::string &bits);
std::string format_bits(Index value, int n);

SparseOperator pauli_string(Index x, Index y, int n);
SparseOperator pauli_string(const std::string &x_bits, const std::string &y_bits);

// Throws DimensionError for spin-1 input and NumericalError when an
// expectation value has an imaginary part above 1e-10 * |psi|^2.
FrameTable frame_of_state(const StateVector &state);

// rho = 2^-n sum f(X, Y) A(X, Y)
Eigen::MatrixXcd state_from_frame(const FrameTable &table);

// (1 / 2^n) sum f^2, the purity tr rho^2.
double frame_purity(const FrameTable &table);

// Column X rightwards, row Y upwards from the bottom, so the identity string
// sits in the lower-left cell. Returned row is counted from the top.
Cell frame_cell_position(Index x, Index y, int n);

// TSV with header "X\tY\tf", Y in the outer loop.
void write_frame_tsv(const FrameTable &table, std::ostream &out);

// Diverging red/green rendering on the frame_cell_position layout,
// normalized by the largest |f| (excluding the identity cell by default).
RasterImage render_frame(const FrameTable &table, int px_per_cell, bool exclude_identity = true);

} // namespace qubism
