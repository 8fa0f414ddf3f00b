#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial::` is the
// straightforward reference used by the tests, `parallel::` is the OpenMP
// version the library calls. Both must agree to rounding.

#include <cstdint>
#include <span>
#include <vector>

#include "qubism/state.hpp"

namespace qubism::kernels {

struct CsrView {
    Index rows = 0;
    std::span<const Index> row_ptr; // rows + 1 entries
    std::span<const Index> cols;
    std::span<const cplx> vals;
};

// 8-bit RGB triple.
struct Rgb {
    std::uint8_t r = 255, g = 255, b = 255;
    bool operator==(const Rgb &) const = default;
};

// Worker count honoured by parallel kernels. 0 means "OpenMP default".
void set_num_threads(int n);
int num_threads();

namespace serial {

// y = A x
void csr_matvec(const CsrView &a, std::span<const cplx> x, std::span<cplx> y);

// out = (U x ... x U) in, with U a row-major b*b matrix.
void apply_uniform_local(std::span<const cplx> in, std::span<cplx> out, int num_sites,
                         int local_dim, std::span<const cplx> u);

// <psi| P |psi> for the Pauli string with per-site flip mask `flip` and
// phase mask `zmask`; `ny` is the number of sigma^y factors. Masks use the
// flat-index bit layout (site 1 = most significant bit).
cplx pauli_expectation(std::span<const cplx> psi, Index flip, Index zmask, int ny);

// f(X, Y) for all 4^n strings, stored at X * 2^n + Y.
std::vector<cplx> frame_table(std::span<const cplx> psi, int n);

// dst[cell_of[i]] = src[i]
void scatter(std::span<const cplx> src, std::span<const Index> cell_of, std::span<cplx> dst);

// R(x, x') = sum_j blocks[x][j] * conj(blocks[x'][j]) for `count` blocks of
// length `len` stored contiguously. Output is count*count row-major.
std::vector<cplx> gram(std::span<const cplx> blocks, Index count, Index len);

// Expands a rows*cols grid of cell colours into a (rows*px)*(cols*px) image.
void expand_cells(std::span<const Rgb> cells, Index rows, Index cols, int px, std::span<Rgb> out);

} // namespace serial

namespace parallel {

void csr_matvec(const CsrView &a, std::span<const cplx> x, std::span<cplx> y);
void apply_uniform_local(std::span<const cplx> in, std::span<cplx> out, int num_sites,
                         int local_dim, std::span<const cplx> u);
cplx pauli_expectation(std::span<const cplx> psi, Index flip, Index zmask, int ny);
std::vector<cplx> frame_table(std::span<const cplx> psi, int n);
void scatter(std::span<const cplx> src, std::span<const Index> cell_of, std::span<cplx> dst);
std::vector<cplx> gram(std::span<const cplx> blocks, Index count, Index len);
void expand_cells(std::span<const Rgb> cells, Index rows, Index cols, int px, std::span<Rgb> out);

} // namespace parallel

} // namespace qubism::kernels
