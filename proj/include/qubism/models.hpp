#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qubism/state.hpp"

namespace qubism {

/// Sparse Hermitian operator in compressed-row form over the b^N tensor basis.
class SparseOperator {
public:
    struct Entry {
        Index row;
        Index col;
        cplx value;
    };

    // Entries with the same (row, col) are summed; exact zeros are dropped.
    SparseOperator(int num_sites, int local_dim, std::vector<Entry> entries);

    int num_sites() const { return num_sites_; }
    int local_dim() const { return local_dim_; }
    Index dim() const { return dim_; }
    std::size_t nnz() const { return vals_.size(); }

    std::vector<Entry> entries() const;
    // Matrix element <row|H|col>, zero when absent.
    cplx at(Index row, Index col) const;

    // y = H x. The serial variant is the reference for the OpenMP one.
    void apply(std::span<const cplx> x, std::span<cplx> y) const;
    void apply_serial(std::span<const cplx> x, std::span<cplx> y) const;

    // Exact entry-list symmetry: (r, c, v) present iff (c, r, conj(v)) present.
    bool is_hermitian(double tol = 0.0) const;
    bool is_real() const;
    // Largest absolute row sum.
    double max_row_norm() const;

    Eigen::MatrixXcd to_dense() const;

    std::span<const Index> row_ptr() const { return row_ptr_; }
    std::span<const Index> cols() const { return cols_; }
    std::span<const cplx> values() const { return vals_; }

private:
    int num_sites_;
    int local_dim_;
    Index dim_;
    std::vector<Index> row_ptr_;
    std::vector<Index> cols_;
    std::vector<cplx> vals_;
};

cplx expectation(const SparseOperator &op, const StateVector &state);

enum class Model { heisenberg, j1j2, itf, itf_infinite_range, aklt };
enum class Boundary { periodic, open };

Model parse_model(const std::string &name);
std::string model_name(Model model);
Boundary parse_boundary(const std::string &name);

struct HamiltonianSpec {
    Model model = Model::heisenberg;
    int num_sites = 2;
    Boundary boundary = Boundary::periodic;
    double j2 = 0.0;         // next-nearest coupling, j1j2 only (J1 = 1)
    double gamma = 0.0;      // transverse field, itf and itf_infinite_range
    double pair_scale = 1.0; // multiplies every sigma^z sigma^z pair of itf_infinite_range

    int local_dim() const { return model == Model::aklt ? 3 : 2; }
};

// Spin-1/2 chains use S = sigma/2 for the Heisenberg family and bare Pauli
// matrices for the Ising models. Qubit digit 0 is the sigma^z = +1 state.
// Spin-1 digits are 0 -> m=-1, 1 -> m=0, 2 -> m=+1.
SparseOperator build_hamiltonian(const HamiltonianSpec &spec);

// Adds `local` (a b^2 x b^2 matrix on the pair (site_a, site_b), row-major
// with site_a the high digit) for every listed bond. Exposed so tests can
// assemble reference operators the same way.
struct Bond {
    int a;
    int b;
    double coupling;
};
SparseOperator assemble_two_site(int num_sites, int local_dim, const Eigen::MatrixXcd &local,
                                 const std::vector<Bond> &bonds,
                                 const std::optional<Eigen::MatrixXcd> &on_site = std::nullopt,
                                 double on_site_coupling = 0.0);

// ---- named states ----------------------------------------------------------

StateVector ghz_state(int num_sites);
StateVector w_state(int num_sites);
StateVector dicke_state(int num_sites, int num_excitations);
// (alpha|0> + beta|1>)^{x N}, normalized.
StateVector product_state(int num_sites, cplx alpha, cplx beta);
// One seeded complex-normal coefficient per magnetization sector.
StateVector random_perm_invariant_state(int num_sites, std::uint64_t seed);
// Complex-normal amplitudes, normalized. Test and benchmarking helper.
StateVector random_state(int num_sites, int local_dim, std::uint64_t seed);

struct MarshallReport {
    double max_violation = 0.0;
    bool passes = true;
};

enum class Sublattice { odd, even };

// Checks the sign rule (-1)^{N_A}, N_A = number of up spins (digit 0) on the
// chosen sublattice, after fixing the global phase on the largest component.
MarshallReport marshall_check(const StateVector &state, Sublattice sublattice);

} // namespace qubism
