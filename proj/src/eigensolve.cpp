#include "qubism/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "qubism/error.hpp"

namespace qubism {

namespace {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

constexpr double kResidualBound = 1e-9;  // relative to max_row_norm, contract
constexpr double kResidualTarget = 1e-13; // what Lanczos aims for before stopping

VecC matvec(const SparseOperator &op, const VecC &x) {
    VecC y(x.size());
    op.apply(std::span<const cplx>(x.data(), static_cast<std::size_t>(x.size())),
             std::span<cplx>(y.data(), static_cast<std::size_t>(y.size())));
    return y;
}

double residual_of(const SparseOperator &op, const VecC &v, double lambda) {
    return (matvec(op, v) - lambda * v).norm();
}

std::vector<cplx> to_std(const VecC &v) { return {v.data(), v.data() + v.size()}; }

struct Pair {
    double value;
    VecC vector;
};

std::vector<Pair> dense_lowest(const SparseOperator &op, int k) {
    std::vector<Pair> out;
    if (op.is_real()) {
        const Eigen::MatrixXd m = op.to_dense().real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
        for (int i = 0; i < k; ++i) out.push_back({es.eigenvalues()(i), es.eigenvectors().col(i).cast<cplx>()});
    } else {
        Eigen::SelfAdjointEigenSolver<MatC> es(op.to_dense());
        if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
        for (int i = 0; i < k; ++i) out.push_back({es.eigenvalues()(i), es.eigenvectors().col(i)});
    }
    return out;
}

// Two passes of classical Gram-Schmidt against the columns of `basis`.
void orthogonalize(VecC &w, const MatC &basis, Eigen::Index cols) {
    if (cols == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
        const VecC h = basis.leftCols(cols).adjoint() * w;
        w.noalias() -= basis.leftCols(cols) * h;
    }
}

// Restarted Lanczos with full reorthogonalization. Each level is found in
// the orthogonal complement of the previously locked vectors, so degenerate
// multiplets come out one vector at a time.
std::vector<Pair> lanczos_lowest(const SparseOperator &op, int k, const EigenOptions &opt) {
    const auto dim = static_cast<Eigen::Index>(op.dim());
    const double norm_h = op.max_row_norm();
    const double scale = norm_h > 0.0 ? norm_h : 1.0;
    const double accept = kResidualBound * scale;
    const double target = kResidualTarget * scale;
    const double breakdown = 1e-13 * scale;

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    MatC locked(dim, k);
    std::vector<Pair> found;
    long budget = opt.max_iterations;

    for (int level = 0; level < k; ++level) {
        const Eigen::Index nlocked = level;
        VecC v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
        orthogonalize(v, locked, nlocked);
        v.normalize();

        const Eigen::Index m_max = std::min<Eigen::Index>(opt.krylov_dim, dim - nlocked);
        double best_res = std::numeric_limits<double>::infinity();
        double best_val = 0.0;
        VecC best_vec;
        int stagnant = 0;

        while (true) {
            MatC basis(dim, m_max + 1);
            std::vector<double> alpha, beta;
            basis.col(0) = v;
            bool invariant = false;
            Eigen::Index m = 0;
            for (Eigen::Index j = 0; j < m_max; ++j) {
                if (budget-- <= 0) break;
                VecC w = matvec(op, basis.col(j));
                const double a = basis.col(j).dot(w).real();
                w -= a * basis.col(j);
                if (j > 0) w -= beta.back() * basis.col(j - 1);
                orthogonalize(w, locked, nlocked);
                orthogonalize(w, basis, j + 1);
                alpha.push_back(a);
                m = j + 1;
                const double b = w.norm();
                if (b < breakdown) {
                    invariant = true;
                    break;
                }
                beta.push_back(b);
                basis.col(j + 1) = w / b;
            }
            if (m == 0) break;

            Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
            Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
            for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            VecC x = basis.leftCols(m) * tri.eigenvectors().col(0).cast<cplx>();
            orthogonalize(x, locked, nlocked);
            x.normalize();
            // Rayleigh quotient of the cleaned Ritz vector.
            const VecC hx = matvec(op, x);
            --budget;
            const double rq = x.dot(hx).real();
            const double res = (hx - rq * x).norm();

            if (res < best_res) {
                stagnant = res > 0.5 * best_res ? stagnant + 1 : 0;
                best_res = res;
                best_val = rq;
                best_vec = x;
            } else {
                ++stagnant;
            }
            if (best_res <= target || invariant) break;
            if (best_res <= accept && stagnant >= 2) break;
            if (budget <= 0) break;
            v = x;
        }

        if (!(best_res <= accept))
            throw ConvergenceError("Lanczos did not converge for level " + std::to_string(level) +
                                       " within " + std::to_string(opt.max_iterations) +
                                       " iterations (best residual " + std::to_string(best_res) + ")",
                                   best_res);
        locked.col(nlocked) = best_vec;
        found.push_back({best_val, best_vec});
    }
    return found;
}

} // namespace

std::vector<cplx> canonicalize_phase(std::vector<cplx> v) {
    double max_mod = 0.0;
    for (const auto &a : v) max_mod = std::max(max_mod, std::abs(a));
    if (max_mod == 0.0) return v;
    for (const auto &a : v)
        if (std::abs(a) >= max_mod * (1.0 - 1e-12)) {
            const cplx phase = std::conj(a) / std::abs(a);
            for (auto &b : v) b *= phase;
            break;
        }
    return v;
}

EigenResult solve_lowest(const SparseOperator &op, int k, const EigenOptions &options) {
    const Index dim = op.dim();
    if (dim < 2) throw RangeError("eigensolver needs dimension >= 2");
    if (k < 1 || static_cast<Index>(k) >= dim) throw RangeError("need 1 <= k < dim");
    if (!op.is_hermitian(1e-14 * std::max(1.0, op.max_row_norm())))
        throw UsageError("operator is not Hermitian");

    EigenMethod method = options.method;
    if (method == EigenMethod::automatic) method = dim <= options.dense_max_dim ? EigenMethod::dense : EigenMethod::lanczos;

    auto pairs = method == EigenMethod::dense ? dense_lowest(op, k) : lanczos_lowest(op, k, options);
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair &a, const Pair &b) { return a.value < b.value; });

    EigenResult result;
    result.method_used = method;
    const double norm_h = op.max_row_norm();
    const double bound = kResidualBound * (norm_h > 0.0 ? norm_h : 1.0);
    for (auto &p : pairs) {
        const double res = residual_of(op, p.vector, p.value);
        if (res > bound) throw ConvergenceError("eigenpair residual " + std::to_string(res) + " exceeds bound", res);
        result.eigenvalues.push_back(p.value);
        result.residuals.push_back(res);
        result.eigenvectors.emplace_back(op.num_sites(), op.local_dim(), canonicalize_phase(to_std(p.vector)));
    }
    const auto n = result.eigenvalues.size();
    result.degenerate.assign(n, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = result.eigenvalues[i], b = result.eigenvalues[i + 1];
        if (std::abs(a - b) < 1e-9 * (1.0 + std::abs(a))) result.degenerate[i] = result.degenerate[i + 1] = true;
    }
    return result;
}

} // namespace qubism
