#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qubism {

using cplx = std::complex<double>;
using Index = std::uint64_t;

// Number of basis states b^N; throws RangeError on overflow or bad arguments.
Index basis_dimension(int num_sites, int local_dim);

/// Digit string labelling one tensor-basis state. Site 1 is digits[0] and is
/// the most significant digit of the flat index.
struct QuantumIndex {
    std::vector<int> digits;
    int local_dim = 2;

    int num_sites() const { return static_cast<int>(digits.size()); }
    bool operator==(const QuantumIndex &) const = default;
};

QuantumIndex flat_to_index(Index flat, int num_sites, int local_dim);
Index index_to_flat(const QuantumIndex &index);

// Parses a digit string such as "0110" (qubits) or "-0+" (spin-1, with
// '-' -> 0, '0' -> 1, '+' -> 2).
QuantumIndex parse_index(const std::string &text, int local_dim);
std::string format_index(const QuantumIndex &index);

/// Single-site unitary applied uniformly to every site.
class LocalUnitary {
public:
    explicit LocalUnitary(Eigen::MatrixXcd matrix);

    static LocalUnitary identity(int local_dim);
    static LocalUnitary hadamard();

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }
    LocalUnitary adjoint() const { return LocalUnitary(matrix_.adjoint()); }

private:
    Eigen::MatrixXcd matrix_;
};

/// Amplitudes of an N-site pure state over the site-major tensor basis.
/// Immutable once constructed.
class StateVector {
public:
    StateVector(int num_sites, int local_dim, std::vector<cplx> amplitudes);

    static StateVector basis(int num_sites, int local_dim, Index flat);

    int num_sites() const { return num_sites_; }
    int local_dim() const { return local_dim_; }
    Index dim() const { return amplitudes_.size(); }

    std::span<const cplx> amplitudes() const { return amplitudes_; }
    const cplx &operator[](Index i) const { return amplitudes_[i]; }

    double norm() const;
    bool is_normalized(double tol = 1e-12) const;
    // Copy scaled to unit norm; throws NumericalError for the zero vector.
    StateVector normalized() const;

private:
    int num_sites_;
    int local_dim_;
    std::vector<cplx> amplitudes_;
};

double norm(const StateVector &state);

// (U x ... x U)|psi>. Norm is preserved up to rounding.
StateVector rotate_local_basis(const StateVector &state, const LocalUnitary &u);

cplx inner_product(const StateVector &bra, const StateVector &ket);

// QSV1 text format: "QSV1", "<b> <N>", then b^N lines "<re> <im>" printed
// with 17 significant digits in flat-index order.
void save_state(const StateVector &state, const std::filesystem::path &path);
void write_state(const StateVector &state, std::ostream &out);
StateVector load_state(const std::filesystem::path &path);
StateVector read_state(std::istream &in);

} // namespace qubism
