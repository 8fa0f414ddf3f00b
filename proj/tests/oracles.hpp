#pragma once

// Independent brute-force references for the tests. Nothing here calls the
// code under test except StateVector accessors.

#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qubism/state.hpp"

namespace oracle {

using qubism::cplx;
using qubism::Index;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Mat sigma(int which) {
    Mat m(2, 2);
    switch (which) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
    }
    return m;
}

// Operator `op` on site `site` (0-based, site 0 leftmost) of an n-site chain.
inline Mat embed(const Mat &op, int site, int n) {
    const auto b = op.rows();
    Mat out = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k) out = kron(out, k == site ? op : Mat::Identity(b, b));
    return out;
}

inline Vec to_vec(const qubism::StateVector &s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (Index i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

// rho_A of the first `left` sites, from the full projector |psi><psi|.
inline Mat partial_trace_left(const qubism::StateVector &s, int left) {
    const Vec psi = to_vec(s);
    const Mat full = psi * psi.adjoint();
    Index da = 1;
    for (int i = 0; i < left; ++i) da *= static_cast<Index>(s.local_dim());
    const Index db = s.dim() / da;
    Mat rho = Mat::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
    for (Index a = 0; a < da; ++a)
        for (Index a2 = 0; a2 < da; ++a2)
            for (Index r = 0; r < db; ++r)
                rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a2)) +=
                    full(static_cast<Eigen::Index>(a * db + r), static_cast<Eigen::Index>(a2 * db + r));
    return rho;
}

inline double entropy_of(const Mat &rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-15) s -= p * std::log2(p);
    }
    return s;
}

// Plain O(M^2) unitary DFT.
inline std::vector<cplx> naive_dft(const std::vector<cplx> &x) {
    const auto m = x.size();
    std::vector<cplx> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            acc += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k % m) / static_cast<double>(m));
        out[k] = acc / std::sqrt(static_cast<double>(m));
    }
    return out;
}

struct Ppm {
    std::size_t width = 0, height = 0;
    std::vector<unsigned char> rgb;
};

// Minimal P6 reader (maxval 255, comments not supported).
inline Ppm read_ppm(std::istream &in) {
    std::string magic;
    Ppm p;
    int maxval = 0;
    in >> magic >> p.width >> p.height >> maxval;
    if (magic != "P6" || maxval != 255) throw std::runtime_error("not a P6/255 file");
    in.get();
    p.rgb.resize(p.width * p.height * 3);
    in.read(reinterpret_cast<char *>(p.rgb.data()), static_cast<std::streamsize>(p.rgb.size()));
    if (in.gcount() != static_cast<std::streamsize>(p.rgb.size())) throw std::runtime_error("short PPM");
    return p;
}

// Pauli string as a dense matrix, sigma^(X_k + 2 Y_k) per site, X_1 = MSB.
inline Mat pauli_dense(Index x, Index y, int n) {
    Mat out = Mat::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        const int xb = static_cast<int>((x >> (n - 1 - k)) & 1U);
        const int yb = static_cast<int>((y >> (n - 1 - k)) & 1U);
        out = kron(out, sigma(xb + 2 * yb));
    }
    return out;
}

inline std::vector<cplx> random_amplitudes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    double nn = 0.0;
    for (auto &a : v) {
        a = {g(rng), g(rng)};
        nn += std::norm(a);
    }
    for (auto &a : v) a /= std::sqrt(nn);
    return v;
}

} // namespace oracle
