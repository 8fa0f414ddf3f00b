#include "qubism/frame.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qubism/error.hpp"
#include "qubism/kernels.hpp"

namespace qubism {

namespace {

constexpr int kMaxQubits = 15;

void require_qubits(int n) {
    if (n < 1 || n > kMaxQubits) throw RangeError("frame needs 1 <= n <= " + std::to_string(kMaxQubits));
}

cplx ipow_i(int k) {
    switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

} // namespace

FrameTable::FrameTable(int num_qubits, std::vector<double> vals) : n(num_qubits), values(std::move(vals)) {
    require_qubits(n);
    if (values.size() != side() * side()) throw DimensionError("frame table needs 4^n values");
}

Index parse_bits(const std::string &bits) {
    if (bits.empty() || bits.size() > 62) throw UsageError("bit string length must be 1..62");
    Index v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw UsageError("invalid bit string \"" + bits + "\"");
        v = (v << 1) | static_cast<Index>(c - '0');
    }
    return v;
}

std::string format_bits(Index value, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((value >> (n - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

SparseOperator pauli_string(Index x, Index y, int n) {
    require_qubits(n);
    const Index dim = Index{1} << n;
    if (x >= dim || y >= dim) throw RangeError("Pauli string bits exceed n");
    const Index flip = x ^ y;
    const cplx base = ipow_i(std::popcount(~x & y & (dim - 1)));
    std::vector<SparseOperator::Entry> entries;
    entries.reserve(dim);
    for (Index s = 0; s < dim; ++s) {
        const double sign = (std::popcount(s & y) & 1) ? -1.0 : 1.0;
        entries.push_back({s ^ flip, s, base * sign});
    }
    return SparseOperator(n, 2, std::move(entries));
}

SparseOperator pauli_string(const std::string &x_bits, const std::string &y_bits) {
    if (x_bits.size() != y_bits.size()) throw DimensionError("X and Y bit strings differ in length");
    return pauli_string(parse_bits(x_bits), parse_bits(y_bits), static_cast<int>(x_bits.size()));
}

FrameTable frame_of_state(const StateVector &state) {
    if (state.local_dim() != 2) throw DimensionError("frame representation needs qubits");
    const int n = state.num_sites();
    require_qubits(n);
    const auto raw = kernels::parallel::frame_table(state.amplitudes(), n);
    const double n2 = state.norm() * state.norm();
    std::vector<double> vals(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (std::abs(raw[i].imag()) > 1e-10 * std::max(n2, 1e-300))
            throw NumericalError("Pauli expectation has imaginary part " + std::to_string(raw[i].imag()));
        vals[i] = raw[i].real();
    }
    return FrameTable(n, std::move(vals));
}

Eigen::MatrixXcd state_from_frame(const FrameTable &table) {
    const int n = table.n;
    require_qubits(n);
    const Index dim = table.side();
    const double scale = 1.0 / static_cast<double>(dim);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const auto sdim = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < sdim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            const Index flip = static_cast<Index>(r) ^ c;
            cplx acc = 0.0;
            for (Index y = 0; y < dim; ++y) {
                const Index x = flip ^ y;
                const double f = table.at(x, y);
                if (f == 0.0) continue;
                const double sign = (std::popcount(c & y) & 1) ? -1.0 : 1.0;
                acc += f * sign * ipow_i(std::popcount(~x & y & (dim - 1)));
            }
            rho(r, static_cast<Eigen::Index>(c)) = acc * scale;
        }
    }
    return rho;
}

double frame_purity(const FrameTable &table) {
    double s = 0.0;
    for (double f : table.values) s += f * f;
    return s / static_cast<double>(table.side());
}

Cell frame_cell_position(Index x, Index y, int n) {
    require_qubits(n);
    const Index side = Index{1} << n;
    if (x >= side || y >= side) throw RangeError("Pauli string bits exceed n");
    return {side - 1 - y, x};
}

void write_frame_tsv(const FrameTable &table, std::ostream &out) {
    out << "X\tY\tf\n";
    char buf[64];
    for (Index y = 0; y < table.side(); ++y)
        for (Index x = 0; x < table.side(); ++x) {
            double f = table.at(x, y);
            if (f == 0.0) f = 0.0;
            std::snprintf(buf, sizeof buf, "%.17g", f);
            out << format_bits(x, table.n) << '\t' << format_bits(y, table.n) << '\t' << buf << '\n';
        }
}

RasterImage render_frame(const FrameTable &table, int px_per_cell, bool exclude_identity) {
    if (px_per_cell < 1) throw RangeError("px_per_cell must be >= 1");
    const Index side = table.side();
    double mx = 0.0;
    for (Index i = 0; i < table.values.size(); ++i)
        if (!(exclude_identity && i == 0)) mx = std::max(mx, std::abs(table.values[i]));
    if (mx == 0.0) mx = 1.0;
    std::vector<Rgb> cells(side * side);
    const ColorSpec spec;
    for (Index x = 0; x < side; ++x)
        for (Index y = 0; y < side; ++y) {
            const Cell c = frame_cell_position(x, y, table.n);
            cells[c.row * side + c.col] = amplitude_to_rgb(table.at(x, y), mx, spec);
        }
    const auto px = static_cast<std::size_t>(px_per_cell);
    RasterImage out(side * px, side * px);
    kernels::parallel::expand_cells(cells, side, side, px_per_cell, out.pixels);
    return out;
}

} // namespace qubism
