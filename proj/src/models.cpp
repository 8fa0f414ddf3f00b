#include "qubism/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "qubism/error.hpp"
#include "qubism/kernels.hpp"

namespace qubism {

// ---- SparseOperator ----------------------------------------------------------

SparseOperator::SparseOperator(int num_sites, int local_dim, std::vector<Entry> entries)
    : num_sites_(num_sites), local_dim_(local_dim), dim_(basis_dimension(num_sites, local_dim)) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry &a, const Entry &b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    row_ptr_.assign(dim_ + 1, 0);
    cols_.reserve(entries.size());
    vals_.reserve(entries.size());
    std::size_t i = 0;
    while (i < entries.size()) {
        const Index r = entries[i].row;
        const Index c = entries[i].col;
        if (r >= dim_ || c >= dim_) throw RangeError("operator entry outside the basis");
        cplx v = entries[i].value;
        std::size_t j = i + 1;
        for (; j < entries.size() && entries[j].row == r && entries[j].col == c; ++j) v += entries[j].value;
        if (v != cplx{0.0, 0.0}) {
            cols_.push_back(c);
            vals_.push_back(v);
            ++row_ptr_[r + 1];
        }
        i = j;
    }
    for (Index r = 0; r < dim_; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

std::vector<SparseOperator::Entry> SparseOperator::entries() const {
    std::vector<Entry> out;
    out.reserve(vals_.size());
    for (Index r = 0; r < dim_; ++r)
        for (Index k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out.push_back({r, cols_[k], vals_[k]});
    return out;
}

cplx SparseOperator::at(Index row, Index col) const {
    if (row >= dim_ || col >= dim_) throw RangeError("matrix element outside the basis");
    const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) return {0.0, 0.0};
    return vals_[static_cast<std::size_t>(it - cols_.begin())];
}

void SparseOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionError("operator/vector size mismatch");
    kernels::parallel::csr_matvec({dim_, row_ptr_, cols_, vals_}, x, y);
}

void SparseOperator::apply_serial(std::span<const cplx> x, std::span<cplx> y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionError("operator/vector size mismatch");
    kernels::serial::csr_matvec({dim_, row_ptr_, cols_, vals_}, x, y);
}

bool SparseOperator::is_hermitian(double tol) const {
    for (Index r = 0; r < dim_; ++r)
        for (Index k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const Index c = cols_[k];
            if (std::abs(at(c, r) - std::conj(vals_[k])) > tol) return false;
        }
    return true;
}

bool SparseOperator::is_real() const {
    return std::all_of(vals_.begin(), vals_.end(), [](const cplx &v) { return v.imag() == 0.0; });
}

double SparseOperator::max_row_norm() const {
    double best = 0.0;
    for (Index r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (Index k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(vals_[k]);
        best = std::max(best, s);
    }
    return best;
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (Index r = 0; r < dim_; ++r)
        for (Index k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[k])) = vals_[k];
    return m;
}

cplx expectation(const SparseOperator &op, const StateVector &state) {
    if (op.dim() != state.dim()) throw DimensionError("operator/state size mismatch");
    std::vector<cplx> hv(state.dim());
    op.apply(state.amplitudes(), hv);
    cplx acc{0.0, 0.0};
    for (Index i = 0; i < state.dim(); ++i) acc += std::conj(state[i]) * hv[i];
    return acc;
}

// ---- Hamiltonians ------------------------------------------------------------

Model parse_model(const std::string &name) {
    if (name == "heisenberg") return Model::heisenberg;
    if (name == "j1j2") return Model::j1j2;
    if (name == "itf") return Model::itf;
    if (name == "itf_infinite_range" || name == "itf-inf") return Model::itf_infinite_range;
    if (name == "aklt") return Model::aklt;
    throw UsageError("unknown model \"" + name + "\"");
}

std::string model_name(Model model) {
    switch (model) {
    case Model::heisenberg: return "heisenberg";
    case Model::j1j2: return "j1j2";
    case Model::itf: return "itf";
    case Model::itf_infinite_range: return "itf_infinite_range";
    case Model::aklt: return "aklt";
    }
    return "?";
}

Boundary parse_boundary(const std::string &name) {
    if (name == "pbc" || name == "periodic") return Boundary::periodic;
    if (name == "obc" || name == "open") return Boundary::open;
    throw UsageError("unknown boundary condition \"" + name + "\"");
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

struct SpinMatrices {
    Eigen::MatrixXcd x, y, z;
};

SpinMatrices pauli() {
    using namespace std::complex_literals;
    SpinMatrices p{Eigen::MatrixXcd(2, 2), Eigen::MatrixXcd(2, 2), Eigen::MatrixXcd(2, 2)};
    p.x << 0.0, 1.0, 1.0, 0.0;
    p.y << 0.0, -1i, 1i, 0.0;
    p.z << 1.0, 0.0, 0.0, -1.0;
    return p;
}

// Digit d carries m = d - 1.
SpinMatrices spin_one() {
    using namespace std::complex_literals;
    Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(3, 3);
    plus(1, 0) = std::sqrt(2.0);
    plus(2, 1) = std::sqrt(2.0);
    const Eigen::MatrixXcd minus = plus.adjoint();
    SpinMatrices s{(plus + minus) / 2.0, (plus - minus) / 2.0i, Eigen::MatrixXcd::Zero(3, 3)};
    s.z.diagonal() << -1.0, 0.0, 1.0;
    return s;
}

Eigen::MatrixXcd dot(const SpinMatrices &s) { return kron(s.x, s.x) + kron(s.y, s.y) + kron(s.z, s.z); }

// Real-valued matrices are cleaned of +-0 imaginary parts so operators built
// from them report is_real().
Eigen::MatrixXcd realify(Eigen::MatrixXcd m) {
    for (Eigen::Index i = 0; i < m.size(); ++i)
        if (std::abs(m.data()[i].imag()) < 1e-15) m.data()[i] = {m.data()[i].real(), 0.0};
    return m;
}

std::vector<Bond> chain_bonds(int n, int distance, Boundary bc, double coupling) {
    std::vector<Bond> bonds;
    const int last = bc == Boundary::periodic ? n : n - distance;
    for (int i = 0; i < last; ++i) {
        const int j = (i + distance) % n;
        if (j != i) bonds.push_back({i, j, coupling});
    }
    return bonds;
}

} // namespace

SparseOperator assemble_two_site(int num_sites, int local_dim, const Eigen::MatrixXcd &local,
                                 const std::vector<Bond> &bonds, const std::optional<Eigen::MatrixXcd> &on_site,
                                 double on_site_coupling) {
    const Index dim = basis_dimension(num_sites, local_dim);
    const auto b = static_cast<Index>(local_dim);
    if (local.rows() != local_dim * local_dim || local.cols() != local_dim * local_dim)
        throw DimensionError("two-site matrix has wrong size");
    for (const auto &bond : bonds)
        if (bond.a < 0 || bond.b < 0 || bond.a >= num_sites || bond.b >= num_sites || bond.a == bond.b)
            throw RangeError("invalid bond");

    std::vector<Index> stride(static_cast<std::size_t>(num_sites));
    for (int k = 0; k < num_sites; ++k) {
        Index s = 1;
        for (int j = k + 1; j < num_sites; ++j) s *= b;
        stride[static_cast<std::size_t>(k)] = s;
    }
    auto digit = [&](Index r, int site) { return (r / stride[static_cast<std::size_t>(site)]) % b; };

    std::vector<std::vector<SparseOperator::Entry>> rows(dim);
    const auto idim = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t ri = 0; ri < idim; ++ri) {
        const auto r = static_cast<Index>(ri);
        auto &row = rows[r];
        for (const auto &bond : bonds) {
            const Index da = digit(r, bond.a), db = digit(r, bond.b);
            const auto pr = static_cast<Eigen::Index>(da * b + db);
            for (Index p = 0; p < b * b; ++p) {
                const cplx v = local(pr, static_cast<Eigen::Index>(p));
                if (v == cplx{0.0, 0.0}) continue;
                const Index col = r - da * stride[static_cast<std::size_t>(bond.a)] -
                                  db * stride[static_cast<std::size_t>(bond.b)] +
                                  (p / b) * stride[static_cast<std::size_t>(bond.a)] +
                                  (p % b) * stride[static_cast<std::size_t>(bond.b)];
                row.push_back({r, col, bond.coupling * v});
            }
        }
        if (on_site && on_site_coupling != 0.0) {
            for (int site = 0; site < num_sites; ++site) {
                const Index d = digit(r, site);
                for (Index p = 0; p < b; ++p) {
                    const cplx v = (*on_site)(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(p));
                    if (v == cplx{0.0, 0.0}) continue;
                    const Index col = r + (p - d) * stride[static_cast<std::size_t>(site)];
                    row.push_back({r, col, on_site_coupling * v});
                }
            }
        }
    }
    std::size_t total = 0;
    for (const auto &row : rows) total += row.size();
    std::vector<SparseOperator::Entry> entries;
    entries.reserve(total);
    for (auto &row : rows) {
        entries.insert(entries.end(), row.begin(), row.end());
        std::vector<SparseOperator::Entry>().swap(row);
    }
    return SparseOperator(num_sites, local_dim, std::move(entries));
}

SparseOperator build_hamiltonian(const HamiltonianSpec &spec) {
    const int n = spec.num_sites;
    if (n < 2) throw RangeError("Hamiltonians need at least 2 sites");
    switch (spec.model) {
    case Model::heisenberg:
    case Model::j1j2: {
        if (spec.model == Model::j1j2 && !(spec.j2 >= 0.0 && std::isfinite(spec.j2)))
            throw RangeError("j1j2 requires J2 >= 0");
        const Eigen::MatrixXcd bond = realify(dot(pauli()) / 4.0);
        auto bonds = chain_bonds(n, 1, spec.boundary, 1.0);
        if (spec.model == Model::j1j2 && spec.j2 != 0.0) {
            const auto nnn = chain_bonds(n, 2, spec.boundary, spec.j2);
            bonds.insert(bonds.end(), nnn.begin(), nnn.end());
        }
        return assemble_two_site(n, 2, bond, bonds);
    }
    case Model::itf:
    case Model::itf_infinite_range: {
        if (!(spec.gamma >= 0.0 && std::isfinite(spec.gamma))) throw RangeError("itf requires Gamma >= 0");
        if (!std::isfinite(spec.pair_scale)) throw RangeError("pair scale must be finite");
        const auto p = pauli();
        const Eigen::MatrixXcd zz = realify(kron(p.z, p.z));
        std::vector<Bond> bonds;
        if (spec.model == Model::itf) {
            bonds = chain_bonds(n, 1, spec.boundary, 1.0);
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) bonds.push_back({i, j, spec.pair_scale});
        }
        return assemble_two_site(n, 2, zz, bonds, realify(p.x), -spec.gamma);
    }
    case Model::aklt: {
        const Eigen::MatrixXcd ss = dot(spin_one());
        const Eigen::MatrixXcd bond = realify(ss + ss * ss / 3.0);
        return assemble_two_site(n, 3, bond, chain_bonds(n, 1, spec.boundary, 1.0));
    }
    }
    throw UsageError("unknown model");
}

// ---- named states -------------------------------------------------------------

namespace {

StateVector from_weights(int n, std::vector<cplx> amps) {
    StateVector s(n, 2, std::move(amps));
    return s.normalized();
}

} // namespace

StateVector ghz_state(int num_sites) {
    std::vector<cplx> amps(basis_dimension(num_sites, 2));
    amps.front() = 1.0;
    amps.back() = 1.0;
    return from_weights(num_sites, std::move(amps));
}

StateVector w_state(int num_sites) { return dicke_state(num_sites, 1); }

StateVector dicke_state(int num_sites, int num_excitations) {
    if (num_excitations < 0 || num_excitations > num_sites)
        throw RangeError("Dicke excitation number must lie in [0, N]");
    std::vector<cplx> amps(basis_dimension(num_sites, 2));
    for (Index s = 0; s < amps.size(); ++s)
        if (std::popcount(s) == num_excitations) amps[s] = 1.0;
    return from_weights(num_sites, std::move(amps));
}

StateVector product_state(int num_sites, cplx alpha, cplx beta) {
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (n == 0.0) throw RangeError("product state needs alpha or beta nonzero");
    alpha /= n;
    beta /= n;
    std::vector<cplx> amps(basis_dimension(num_sites, 2));
    for (Index s = 0; s < amps.size(); ++s) {
        cplx a{1.0, 0.0};
        for (int k = 0; k < num_sites; ++k) a *= ((s >> k) & 1U) ? beta : alpha;
        amps[s] = a;
    }
    return StateVector(num_sites, 2, std::move(amps));
}

StateVector random_perm_invariant_state(int num_sites, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> sector(static_cast<std::size_t>(num_sites + 1));
    for (auto &c : sector) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
    }
    std::vector<cplx> amps(basis_dimension(num_sites, 2));
    for (Index s = 0; s < amps.size(); ++s) amps[s] = sector[static_cast<std::size_t>(std::popcount(s))];
    return from_weights(num_sites, std::move(amps));
}

StateVector random_state(int num_sites, int local_dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> amps(basis_dimension(num_sites, local_dim));
    for (auto &a : amps) {
        const double re = normal(rng);
        const double im = normal(rng);
        a = {re, im};
    }
    return StateVector(num_sites, local_dim, std::move(amps)).normalized();
}

// ---- Marshall sign rule ---------------------------------------------------------

MarshallReport marshall_check(const StateVector &state, Sublattice sublattice) {
    if (state.local_dim() != 2) throw DimensionError("Marshall check needs qubits");
    const auto amps = state.amplitudes();
    const int n = state.num_sites();

    double max_mod = 0.0;
    for (const auto &a : amps) max_mod = std::max(max_mod, std::abs(a));
    if (max_mod == 0.0) throw NumericalError("Marshall check on the zero vector");
    Index pivot = 0;
    for (Index s = 0; s < amps.size(); ++s)
        if (std::abs(amps[s]) >= max_mod * (1.0 - 1e-12)) {
            pivot = s;
            break;
        }
    const cplx unphase = std::conj(amps[pivot]) / std::abs(amps[pivot]);
    for (const auto &a : amps)
        if (std::abs((a * unphase).imag()) > 1e-9 * max_mod)
            throw NumericalError("state is not real up to a global phase");

    // Sublattice A: odd sites (1, 3, ...) are 0-based positions 0, 2, ...
    Index mask = 0;
    for (int k = (sublattice == Sublattice::odd ? 0 : 1); k < n; k += 2) mask |= Index{1} << (n - 1 - k);
    auto rule = [&](Index s) {
        const int up_on_a = std::popcount(~s & mask);
        return (up_on_a & 1) ? -1.0 : 1.0;
    };
    auto sign = [](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); };

    const double flip = sign((amps[pivot] * unphase).real()) == rule(pivot) ? 1.0 : -1.0;
    const double cutoff = 1e-12 * state.norm();
    MarshallReport report;
    for (Index s = 0; s < amps.size(); ++s) {
        if (std::abs(amps[s]) < cutoff) continue;
        const double v = flip * (amps[s] * unphase).real();
        report.max_violation = std::max(report.max_violation, std::abs(sign(v) - rule(s)));
    }
    report.passes = report.max_violation == 0.0;
    return report;
}

} // namespace qubism
