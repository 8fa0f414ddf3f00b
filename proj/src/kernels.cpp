#include "qubism/kernels.hpp"

#include <bit>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qubism::kernels {

namespace {

int g_threads = 0;

// i^k for k mod 4.
cplx ipow(int k) {
    switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

inline double parity_sign(Index v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

Index ipow_index(Index base, int exp) {
    Index r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// One-site transform on `site` (0-based from the most significant digit).
template <bool Parallel>
void apply_one_site(std::span<const cplx> in, std::span<cplx> out, int num_sites, int b,
                    std::span<const cplx> u, int site) {
    const Index stride = ipow_index(static_cast<Index>(b), num_sites - 1 - site);
    const auto dim = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto idx = static_cast<Index>(i);
        const int digit = static_cast<int>((idx / stride) % static_cast<Index>(b));
        const Index base = idx - static_cast<Index>(digit) * stride;
        cplx acc{0.0, 0.0};
        for (int d = 0; d < b; ++d) acc += u[digit * b + d] * in[base + static_cast<Index>(d) * stride];
        out[idx] = acc;
    }
}

template <bool Parallel>
void apply_uniform_local_impl(std::span<const cplx> in, std::span<cplx> out, int num_sites, int b,
                              std::span<const cplx> u) {
    std::vector<cplx> scratch(in.begin(), in.end());
    std::vector<cplx> next(in.size());
    for (int site = 0; site < num_sites; ++site) {
        apply_one_site<Parallel>(scratch, next, num_sites, b, u, site);
        scratch.swap(next);
    }
    std::copy(scratch.begin(), scratch.end(), out.begin());
}

} // namespace

void set_num_threads(int n) {
    g_threads = n < 0 ? 0 : n;
#ifdef _OPENMP
    if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
}

int num_threads() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

namespace serial {

void csr_matvec(const CsrView &a, std::span<const cplx> x, std::span<cplx> y) {
    for (Index r = 0; r < a.rows; ++r) {
        cplx acc{0.0, 0.0};
        for (Index k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.vals[k] * x[a.cols[k]];
        y[r] = acc;
    }
}

void apply_uniform_local(std::span<const cplx> in, std::span<cplx> out, int num_sites, int local_dim,
                         std::span<const cplx> u) {
    apply_uniform_local_impl<false>(in, out, num_sites, local_dim, u);
}

cplx pauli_expectation(std::span<const cplx> psi, Index flip, Index zmask, int ny) {
    cplx acc{0.0, 0.0};
    for (Index s = 0; s < psi.size(); ++s) acc += std::conj(psi[s ^ flip]) * psi[s] * parity_sign(s & zmask);
    return acc * ipow(ny);
}

std::vector<cplx> frame_table(std::span<const cplx> psi, int n) {
    const Index side = Index{1} << n;
    const Index all = side - 1;
    std::vector<cplx> table(side * side);
    for (Index x = 0; x < side; ++x)
        for (Index y = 0; y < side; ++y) {
            const int ny = std::popcount(~x & y & all);
            table[x * side + y] = pauli_expectation(psi, x ^ y, y, ny);
        }
    return table;
}

void scatter(std::span<const cplx> src, std::span<const Index> cell_of, std::span<cplx> dst) {
    for (Index i = 0; i < src.size(); ++i) dst[cell_of[i]] = src[i];
}

std::vector<cplx> gram(std::span<const cplx> blocks, Index count, Index len) {
    std::vector<cplx> r(count * count);
    for (Index x = 0; x < count; ++x)
        for (Index xp = 0; xp < count; ++xp) {
            cplx acc{0.0, 0.0};
            for (Index j = 0; j < len; ++j) acc += blocks[x * len + j] * std::conj(blocks[xp * len + j]);
            r[x * count + xp] = acc;
        }
    return r;
}

void expand_cells(std::span<const Rgb> cells, Index rows, Index cols, int px, std::span<Rgb> out) {
    const Index width = cols * static_cast<Index>(px);
    for (Index y = 0; y < rows * static_cast<Index>(px); ++y)
        for (Index x = 0; x < width; ++x)
            out[y * width + x] = cells[(y / static_cast<Index>(px)) * cols + x / static_cast<Index>(px)];
}

} // namespace serial

namespace parallel {

void csr_matvec(const CsrView &a, std::span<const cplx> x, std::span<cplx> y) {
    const auto rows = static_cast<std::int64_t>(a.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t ri = 0; ri < rows; ++ri) {
        const auto r = static_cast<Index>(ri);
        cplx acc{0.0, 0.0};
        for (Index k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.vals[k] * x[a.cols[k]];
        y[r] = acc;
    }
}

void apply_uniform_local(std::span<const cplx> in, std::span<cplx> out, int num_sites, int local_dim,
                         std::span<const cplx> u) {
    apply_uniform_local_impl<true>(in, out, num_sites, local_dim, u);
}

cplx pauli_expectation(std::span<const cplx> psi, Index flip, Index zmask, int ny) {
    const auto dim = static_cast<std::int64_t>(psi.size());
    double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto s = static_cast<Index>(i);
        const cplx t = std::conj(psi[s ^ flip]) * psi[s] * parity_sign(s & zmask);
        re += t.real();
        im += t.imag();
    }
    return cplx{re, im} * ipow(ny);
}

std::vector<cplx> frame_table(std::span<const cplx> psi, int n) {
    const Index side = Index{1} << n;
    const Index all = side - 1;
    std::vector<cplx> table(side * side);
    const auto cells = static_cast<std::int64_t>(side * side);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t c = 0; c < cells; ++c) {
        const Index x = static_cast<Index>(c) / side;
        const Index y = static_cast<Index>(c) % side;
        const int ny = std::popcount(~x & y & all);
        table[static_cast<Index>(c)] = serial::pauli_expectation(psi, x ^ y, y, ny);
    }
    return table;
}

void scatter(std::span<const cplx> src, std::span<const Index> cell_of, std::span<cplx> dst) {
    const auto dim = static_cast<std::int64_t>(src.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) dst[cell_of[static_cast<Index>(i)]] = src[static_cast<Index>(i)];
}

std::vector<cplx> gram(std::span<const cplx> blocks, Index count, Index len) {
    std::vector<cplx> r(count * count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t xi = 0; xi < n; ++xi) {
        const auto x = static_cast<Index>(xi);
        for (Index xp = x; xp < count; ++xp) {
            cplx acc{0.0, 0.0};
            for (Index j = 0; j < len; ++j) acc += blocks[x * len + j] * std::conj(blocks[xp * len + j]);
            r[x * count + xp] = acc;
            r[xp * count + x] = std::conj(acc);
        }
    }
    return r;
}

void expand_cells(std::span<const Rgb> cells, Index rows, Index cols, int px, std::span<Rgb> out) {
    const Index width = cols * static_cast<Index>(px);
    const auto height = static_cast<std::int64_t>(rows * static_cast<Index>(px));
#pragma omp parallel for schedule(static)
    for (std::int64_t yi = 0; yi < height; ++yi) {
        const auto y = static_cast<Index>(yi);
        const Rgb *row = cells.data() + (y / static_cast<Index>(px)) * cols;
        for (Index x = 0; x < width; ++x) out[y * width + x] = row[x / static_cast<Index>(px)];
    }
}

} // namespace parallel

} // namespace qubism::kernels
