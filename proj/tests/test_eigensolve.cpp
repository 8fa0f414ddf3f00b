#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qubism/eigensolve.hpp"
#include "qubism/error.hpp"
#include "qubism/models.hpp"

using namespace qubism;

namespace {

void check_contract(const SparseOperator &op, const EigenResult &r) {
    const double bound = 1e-9 * op.max_row_norm();
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        CHECK(r.residuals[i] <= bound);
        const auto amps = r.eigenvectors[i].amplitudes();
        std::size_t big = 0;
        for (std::size_t j = 0; j < amps.size(); ++j)
            if (std::abs(amps[j]) > std::abs(amps[big]) * (1.0 + 1e-12)) big = j;
        CHECK(amps[big].real() > 0.0);
        CHECK(std::abs(amps[big].imag()) < 1e-12);
        for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) {
            const cplx ov = inner_product(r.eigenvectors[i], r.eigenvectors[j]);
            CHECK(std::abs(ov - (i == j ? 1.0 : 0.0)) < 1e-9);
        }
        if (i > 0) CHECK(r.eigenvalues[i] >= r.eigenvalues[i - 1]);
    }
}

} // namespace

TEST_CASE("two-site Heisenberg singlet and triplet") {
    const auto op = build_hamiltonian({Model::heisenberg, 2, Boundary::open});
    const auto r = solve_lowest(op, 2);
    CHECK(r.eigenvalues[0] == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(r.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-14));
    check_contract(op, r);
}

TEST_CASE("Heisenberg N=4 ring ground energy matches dense brute force") {
    const auto op = build_hamiltonian({Model::heisenberg, 4, Boundary::periodic});
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(op.to_dense());
    const auto r = solve_lowest(op, 1);
    CHECK(r.eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(es.eigenvalues()(0) == doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("Heisenberg N=12 ring: triplet above the ground state via Lanczos") {
    const auto op = build_hamiltonian({Model::heisenberg, 12, Boundary::periodic});
    const auto r = solve_lowest(op, 4);
    CHECK(r.method_used == EigenMethod::lanczos);
    CHECK(std::abs(r.eigenvalues[1] - r.eigenvalues[2]) < 1e-9);
    CHECK(std::abs(r.eigenvalues[2] - r.eigenvalues[3]) < 1e-9);
    CHECK(r.eigenvalues[1] - r.eigenvalues[0] > 0.1);
    CHECK_FALSE(r.degenerate[0]);
    CHECK(r.degenerate[1]);
    CHECK(r.degenerate[3]);
    check_contract(op, r);
}

TEST_CASE("dense and Lanczos agree for every model at N=8") {
    const std::vector<HamiltonianSpec> specs{
        {Model::heisenberg, 8, Boundary::periodic},   {Model::heisenberg, 8, Boundary::open},
        {Model::j1j2, 8, Boundary::periodic, 0.3},     {Model::itf, 8, Boundary::periodic, 0.0, 0.7},
        {Model::itf_infinite_range, 8, Boundary::open, 0.0, 1.5, 0.125}, {Model::aklt, 6, Boundary::periodic},
    };
    for (const auto &spec : specs) {
        CAPTURE(model_name(spec.model));
        const auto op = build_hamiltonian(spec);
        EigenOptions dense, lanczos;
        dense.method = EigenMethod::dense;
        lanczos.method = EigenMethod::lanczos;
        const auto a = solve_lowest(op, 2, dense);
        const auto b = solve_lowest(op, 2, lanczos);
        CHECK(std::abs(a.eigenvalues[0] - b.eigenvalues[0]) < 1e-8);
        CHECK(std::abs(a.eigenvalues[1] - b.eigenvalues[1]) < 1e-8);
        check_contract(op, a);
        check_contract(op, b);
    }
}

TEST_CASE("variational bound on random vectors") {
    const auto op = build_hamiltonian({Model::j1j2, 8, Boundary::periodic, 0.45});
    const double e0 = solve_lowest(op, 1).eigenvalues[0];
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto v = random_state(8, 2, seed);
        CHECK(expectation(op, v).real() >= e0 - 1e-9);
    }
}

TEST_CASE("site relabeling by translation leaves the spectrum unchanged") {
    for (int n : {5, 6, 7}) {
        const auto op = build_hamiltonian({Model::itf, n, Boundary::periodic, 0.0, 0.6});
        std::vector<SparseOperator::Entry> shifted;
        auto shift = [n](Index s) { return ((s & 1U) << (n - 1)) | (s >> 1); };
        for (const auto &e : op.entries()) shifted.push_back({shift(e.row), shift(e.col), e.value});
        const SparseOperator op2(n, 2, shifted);
        const auto a = solve_lowest(op, 3), b = solve_lowest(op2, 3);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(a.eigenvalues[static_cast<std::size_t>(i)] - b.eigenvalues[static_cast<std::size_t>(i)]) < 1e-12);
    }
}

TEST_CASE("degenerate ITF ground space at zero field is flagged") {
    const auto r = solve_lowest(build_hamiltonian({Model::itf, 6, Boundary::periodic, 0.0, 0.0}), 2);
    CHECK(r.degenerate[0]);
    CHECK(r.degenerate[1]);
    CHECK(r.eigenvalues[0] == doctest::Approx(-6.0));
}

TEST_CASE("argument and input validation") {
    const auto op = build_hamiltonian({Model::heisenberg, 2, Boundary::open});
    CHECK_THROWS_AS(solve_lowest(op, 0), RangeError);
    CHECK_THROWS_AS(solve_lowest(op, 4), RangeError);
    const SparseOperator skew(1, 2, {{0, 1, 1.0}, {1, 0, -1.0}});
    CHECK_THROWS_AS(solve_lowest(skew, 1), UsageError);
}

TEST_CASE("a tiny iteration budget raises a convergence error with the best residual") {
    EigenOptions opts;
    opts.method = EigenMethod::lanczos;
    opts.max_iterations = 5;
    opts.krylov_dim = 4;
    const auto op = build_hamiltonian({Model::heisenberg, 10, Boundary::periodic});
    try {
        solve_lowest(op, 1, opts);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError &e) {
        CHECK(e.best_residual() > 0.0);
    }
}

TEST_CASE("canonicalize_phase") {
    const auto v = canonicalize_phase({cplx(0, 0.6), cplx(0, -0.8)});
    CHECK(std::abs(v[1] - 0.8) < 1e-15);
    CHECK(std::abs(v[0] - (-0.6)) < 1e-15);
    const auto tie = canonicalize_phase({cplx(0, 1), cplx(1, 0)});
    CHECK(std::abs(tie[0] - 1.0) < 1e-15);
}
