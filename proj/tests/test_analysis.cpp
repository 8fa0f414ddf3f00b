#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qubism/analysis.hpp"
#include "qubism/eigensolve.hpp"
#include "qubism/error.hpp"
#include "qubism/models.hpp"

using namespace qubism;

namespace {

ProbDist uniform(std::size_t n) { return ProbDist(std::vector<double>(n, 1.0 / static_cast<double>(n))); }

StateVector fig_e_state() {
    std::vector<cplx> a(16);
    a[0b0000] = a[0b1111] = 0.5;
    a[0b1010] = a[0b0101] = -0.5;
    return StateVector(4, 2, a);
}

} // namespace

TEST_CASE("Renyi entropy") {
    for (double q : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        CHECK(renyi_entropy(uniform(16), q) == doctest::Approx(4.0).epsilon(1e-14));
        std::vector<double> point(8, 0.0);
        point[3] = 1.0;
        CHECK(std::abs(renyi_entropy(ProbDist(point), q)) < 1e-15);
    }
    std::vector<double> half(6, 0.0);
    half[0] = half[1] = 0.5;
    CHECK(renyi_entropy(ProbDist(half), 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(renyi_entropy(uniform(4), -1.0), RangeError);
    CHECK_THROWS_AS(ProbDist({0.5, 0.4}), NumericalError);
    CHECK_THROWS_AS(ProbDist({1.5, -0.5}), NumericalError);
}

TEST_CASE("Renyi entropy is non-increasing in q") {
    std::mt19937_64 rng(5);
    std::exponential_distribution<double> ex;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> p(32);
        double s = 0.0;
        for (auto &v : p) s += (v = std::pow(ex(rng), 3.0));
        for (auto &v : p) v /= s;
        const ProbDist d(p);
        double last = renyi_entropy(d, 0.0);
        for (double q = 0.25; q <= 6.0; q += 0.25) {
            const double h = renyi_entropy(d, q);
            REQUIRE(h <= last + 1e-12);
            last = h;
        }
    }
}

TEST_CASE("Renyi dimensions") {
    const auto scheme = PlotScheme::make(SchemeKind::standard2d, 10);
    const auto flat = product_state(10, 1.0, 1.0);
    for (double q : {0.0, 1.0, 2.0, 3.0}) CHECK(renyi_dimension(flat, scheme, q) == doctest::Approx(2.0).epsilon(1e-12));
    for (int n : {6, 10, 14}) {
        std::vector<cplx> a(Index{1} << n);
        Index neel = 0;
        for (int i = 0; i < n; i += 2) neel |= Index{1} << i;
        a[neel] = a[(a.size() - 1) ^ neel] = 1.0 / std::sqrt(2.0);
        const StateVector s(n, 2, a);
        const auto sch = PlotScheme::make(SchemeKind::standard2d, n);
        CHECK(renyi_dimension(s, sch, 2.0) == doctest::Approx(2.0 / n).epsilon(1e-12));
    }
    CHECK_THROWS_AS(renyi_dimension(flat, PlotScheme::make(SchemeKind::triangular, 10), 1.0), UsageError);
}

TEST_CASE("Fourier spectrum of the 1D plot") {
    SUBCASE("constant sequence") {
        const auto spec = fourier_1d(product_state(6, 1.0, 1.0));
        CHECK(spec.size() == 32);
        for (const auto &p : spec) CHECK(p.magnitude < 1e-14);
        CHECK(spec.front().momentum == 1);
        CHECK(spec.back().momentum == 32);
        CHECK(spec[3].log2_momentum == doctest::Approx(2.0));
    }
    SUBCASE("alternating sequence peaks at Nyquist") {
        std::vector<cplx> a(64);
        for (std::size_t i = 0; i < 64; ++i) a[i] = (i % 2 ? -1.0 : 1.0) / 8.0;
        const auto spec = fourier_1d(StateVector(6, 2, a));
        for (const auto &p : spec) CHECK(p.magnitude == doctest::Approx(p.momentum == 32 ? 1.0 : 0.0));
    }
    SUBCASE("matches a naive DFT") {
        const auto s = random_state(7, 2, 17);
        const auto ref = oracle::naive_dft({s.amplitudes().begin(), s.amplitudes().end()});
        for (const auto &p : fourier_1d(s)) CHECK(p.magnitude == doctest::Approx(std::abs(ref[p.momentum])).epsilon(1e-12));
    }
}

TEST_CASE("translation decimation check") {
    const auto gs = solve_lowest(build_hamiltonian({Model::heisenberg, 8, Boundary::periodic}), 1).eigenvectors[0];
    CHECK(translation_decimation_check(gs, 1) <= 1e-9);
    CHECK(translation_decimation_check(gs, 2) <= 1e-9);
    CHECK(translation_decimation_check(StateVector::basis(4, 2, 0b0100), 1) > 0.5);
    CHECK(translation_decimation_check(product_state(8, 0.3, cplx(0.2, 0.9)), 1) <= 1e-12);
    CHECK_THROWS_AS(translation_decimation_check(gs, 4), RangeError);
}

TEST_CASE("Schmidt decomposition of the four-qubit table states") {
    struct Row {
        StateVector state;
        int rank;
        double entropy;
    };
    const std::vector<Row> rows{
        {StateVector::basis(4, 2, 0), 1, 0.0},
        {ghz_state(4), 2, 1.0},
        {w_state(4), 2, 1.0},
        {dicke_state(4, 2), 3, std::log2(3.0) - 1.0 / 3.0},
        {fig_e_state(), 4, 2.0},
    };
    for (const auto &r : rows) {
        const auto s = schmidt(r.state, 2);
        CHECK(s.rank() == r.rank);
        CHECK(std::abs(s.entropy() - r.entropy) < 1e-9);
        CHECK(std::abs(s.entropy() - oracle::entropy_of(oracle::partial_trace_left(r.state, 2))) < 1e-9);
    }
    CHECK(schmidt(dicke_state(4, 2), 2).entropy() == doctest::Approx(1.2516).epsilon(1e-4));
}

TEST_CASE("Schmidt vectors rebuild the state") {
    const auto psi = random_state(7, 2, 8);
    const auto s = schmidt(psi, 3);
    double total = 0.0;
    for (double l : s.coefficients) total += l * l;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    oracle::Mat m = oracle::Mat::Zero(8, 16);
    for (std::size_t i = 0; i < s.coefficients.size(); ++i)
        m += s.coefficients[i] * s.left_states.col(static_cast<Eigen::Index>(i)) *
             s.right_states.col(static_cast<Eigen::Index>(i)).transpose();
    for (Index a = 0; a < 8; ++a)
        for (Index b = 0; b < 16; ++b) CHECK(std::abs(m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - psi[a * 16 + b]) < 1e-12);
    CHECK_THROWS_AS(schmidt(psi, 0), RangeError);
    CHECK_THROWS_AS(schmidt(psi, 7), RangeError);
}

TEST_CASE("Schmidt entropy is invariant under local rotations") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto psi = random_perm_invariant_state(8, seed);
        const auto rotated = rotate_local_basis(psi, LocalUnitary::hadamard());
        for (int cut = 1; cut < 8; ++cut) CHECK(std::abs(schmidt(psi, cut).entropy() - schmidt(rotated, cut).entropy()) < 1e-9);
    }
}

TEST_CASE("cross-correlation equals the partial trace") {
    std::vector<StateVector> states{product_state(6, 1.0, 1.3), ghz_state(4), w_state(5), dicke_state(7, 3),
                                    random_state(6, 3, 2).normalized()};
    for (std::uint64_t seed = 0; seed < 5; ++seed) states.push_back(random_state(7, 2, seed));
    for (const auto &s : states) {
        for (int k = 1; 2 * k < s.num_sites(); ++k) {
            const auto r = cross_correlation(s, k);
            const auto ref = oracle::partial_trace_left(s, 2 * k);
            CHECK((r.matrix - ref).cwiseAbs().maxCoeff() < 1e-10);
            CHECK(std::abs(r.matrix.trace() - 1.0) < 1e-10);
            const auto spectrum = r.spectrum();
            const auto sch = schmidt(s, 2 * k);
            for (std::size_t i = 0; i < spectrum.size(); ++i) {
                const double l = i < sch.coefficients.size() ? sch.coefficients[i] : 0.0;
                CHECK(std::abs(spectrum[i] - l * l) < 1e-9);
            }
        }
    }
    const auto ghz = cross_correlation(ghz_state(4), 1).spectrum();
    CHECK(ghz[0] == doctest::Approx(0.5));
    CHECK(ghz[1] == doctest::Approx(0.5));
    CHECK(std::abs(ghz[2]) < 1e-15);
    const auto prod = cross_correlation(product_state(8, 1.0, 1.3), 2).spectrum();
    CHECK(prod[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < prod.size(); ++i) CHECK(std::abs(prod[i]) < 1e-10);
    CHECK_THROWS_AS(cross_correlation(ghz_state(4), 2), RangeError);
}

TEST_CASE("distinct quadrants") {
    SUBCASE("product states collapse to one class") {
        for (int k = 1; k <= 3; ++k) {
            const auto r = distinct_quadrants(product_state(8, 1.0, 1.3), k, 1e-8);
            CHECK(r.classes == 1);
            CHECK(r.entropy_bound == 0.0);
            CHECK(r.span_dim == 1);
        }
    }
    SUBCASE("half-filled Dicke gives 2k+1") {
        for (int k = 1; 4 * k <= 10; ++k) CHECK(distinct_quadrants(dicke_state(10, 5), k, 1e-8).classes == 2 * k + 1);
    }
    SUBCASE("W state in both bases") {
        const auto w = w_state(4);
        const auto z = distinct_quadrants(w, 1, 1e-8);
        CHECK(z.classes == 2);
        CHECK(z.span_dim == 2);
        const auto x = distinct_quadrants(rotate_local_basis(w, LocalUnitary::hadamard()), 1, 1e-8);
        CHECK(x.classes == 3);
        CHECK(x.span_dim == 2);
    }
    SUBCASE("entropy bound holds whenever the clustering is exact") {
        for (const auto &s : {product_state(6, 1.0, 0.4), ghz_state(6), dicke_state(6, 3), w_state(6)}) {
            const auto r = distinct_quadrants(s, 1, 1e-8);
            CHECK(schmidt(s, 2).entropy() <= r.entropy_bound + 1e-9);
            CHECK(schmidt(s, 2).entropy() <= std::log2(static_cast<double>(r.span_dim)) + 1e-9);
        }
    }
    SUBCASE("zero quadrants are excluded") {
        const auto r = distinct_quadrants(ghz_state(6), 1, 1e-8);
        CHECK(r.class_of[1] == -1);
        CHECK(r.class_of[0] == 0);
        CHECK(r.class_of[3] == 1);
        CHECK(r.classes == 2);
    }
    CHECK_THROWS_AS(distinct_quadrants(ghz_state(6), 1, 1.0), RangeError);
}

TEST_CASE("Dicke entanglement stays below log2(l+1)") {
    for (int n : {10, 12, 14}) {
        const auto d = dicke_state(n, n / 2);
        for (int l = 1; l <= n / 2; ++l) CHECK(schmidt(d, l).entropy() <= std::log2(l + 1.0) + 1e-12);
    }
}

TEST_CASE("Renyi scan over the transverse field") {
    HamiltonianSpec spec{Model::itf, 6, Boundary::periodic};
    const auto rows = renyi_scan(spec, {0.5, 2.0}, {1.0, 2.0});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].dims.size() == 2);
    CHECK(rows[1].dims[0] > rows[0].dims[0]);
    CHECK_THROWS_AS(renyi_scan({Model::heisenberg, 6}, {0.5}, {1.0}), UsageError);
}
