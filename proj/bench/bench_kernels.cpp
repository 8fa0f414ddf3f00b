// Serial reference kernels against their OpenMP counterparts.
//
//   bench_kernels --benchmark_filter=matvec

#include <benchmark/benchmark.h>

#include <vector>

#include "qubism/kernels.hpp"
#include "qubism/models.hpp"
#include "qubism/state.hpp"

using namespace qubism;
namespace kn = qubism::kernels;

namespace {

std::vector<cplx> amplitudes(int n) {
    const auto s = random_state(n, 2, 42);
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

SparseOperator heisenberg(int n) {
    HamiltonianSpec spec;
    spec.num_sites = n;
    return build_hamiltonian(spec);
}

template <auto Kernel>
void matvec(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    const auto h = heisenberg(n);
    const kn::CsrView view{h.dim(), h.row_ptr(), h.cols(), h.values()};
    const auto x = amplitudes(n);
    std::vector<cplx> y(x.size());
    for (auto _ : st) {
        Kernel(view, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(h.nnz()));
}

template <auto Kernel>
void local_rotation(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    const auto x = amplitudes(n);
    const auto h = LocalUnitary::hadamard().matrix();
    const std::vector<cplx> u{h(0, 0), h(0, 1), h(1, 0), h(1, 1)};
    std::vector<cplx> y(x.size());
    for (auto _ : st) {
        Kernel(x, y, n, 2, u);
        benchmark::DoNotOptimize(y.data());
    }
}

template <auto Kernel>
void frame(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    const auto x = amplitudes(n);
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(x, n));
}

template <auto Kernel>
void gram(benchmark::State &st) {
    const int n = static_cast<int>(st.range(0));
    const auto x = amplitudes(n);
    const Index count = Index{1} << (n / 2);
    for (auto _ : st) benchmark::DoNotOptimize(Kernel(x, count, x.size() / count));
}

} // namespace

BENCHMARK(matvec<kn::serial::csr_matvec>)->Name("matvec/serial")->Arg(14)->Arg(18);
BENCHMARK(matvec<kn::parallel::csr_matvec>)->Name("matvec/parallel")->Arg(14)->Arg(18);
BENCHMARK(local_rotation<kn::serial::apply_uniform_local>)->Name("local_rotation/serial")->Arg(16)->Arg(20);
BENCHMARK(local_rotation<kn::parallel::apply_uniform_local>)->Name("local_rotation/parallel")->Arg(16)->Arg(20);
BENCHMARK(frame<kn::serial::frame_table>)->Name("frame_table/serial")->Arg(5)->Arg(7);
BENCHMARK(frame<kn::parallel::frame_table>)->Name("frame_table/parallel")->Arg(5)->Arg(7);
BENCHMARK(gram<kn::serial::gram>)->Name("gram/serial")->Arg(12)->Arg(16);
BENCHMARK(gram<kn::parallel::gram>)->Name("gram/parallel")->Arg(12)->Arg(16);

BENCHMARK_MAIN();
