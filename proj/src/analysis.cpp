#include "qubism/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fftw3.h>

#include "qubism/eigensolve.hpp"
#include "qubism/error.hpp"
#include "qubism/kernels.hpp"

namespace qubism {

namespace {

constexpr double kSupportThreshold = 1e-14;
constexpr double kZeroQuadrant = 1e-12;

Index ipow(Index base, int e) {
    Index r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

void require_level(const StateVector &state, int k) {
    if (k < 1 || 2 * k >= state.num_sites())
        throw RangeError("level k=" + std::to_string(k) + " needs 1 <= 2k < N (N=" +
                         std::to_string(state.num_sites()) + ")");
}

// Level-k quadrant images cut out of the square plot, stored contiguously in
// flat order of the first 2k sites; each quadrant is read row-major.
struct Quadrants {
    Index count = 0;
    Index len = 0;
    std::vector<cplx> data;

    std::span<const cplx> block(Index x) const { return std::span<const cplx>(data).subspan(x * len, len); }
};

Quadrants level_quadrants(const StateVector &state, int k) {
    require_level(state, k);
    const int b = state.local_dim();
    const auto scheme = PlotScheme::make(b == 3 ? SchemeKind::spin1square : SchemeKind::standard2d, state.num_sites());
    const PlotImage img = apply_scheme(state, scheme);

    const Index side = ipow(static_cast<Index>(b), k);
    const Index bh = img.rows / side, bw = img.cols / side;
    Quadrants q;
    q.count = side * side;
    q.len = bh * bw;
    q.data.resize(q.count * q.len);
    for (Index x = 0; x < q.count; ++x) {
        const QuantumIndex digits = flat_to_index(x, 2 * k, b);
        Index br = 0, bc = 0;
        for (int l = 0; l < k; ++l) {
            br = br * static_cast<Index>(b) + static_cast<Index>(digits.digits[2 * l]);
            bc = bc * static_cast<Index>(b) + static_cast<Index>(digits.digits[2 * l + 1]);
        }
        cplx *dst = q.data.data() + x * q.len;
        for (Index i = 0; i < bh; ++i)
            for (Index j = 0; j < bw; ++j) *dst++ = img.at(br * bh + i, bc * bw + j);
    }
    return q;
}

double block_norm(std::span<const cplx> v) {
    double acc = 0.0;
    for (const auto &a : v) acc += std::norm(a);
    return std::sqrt(acc);
}

std::mutex &fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

// ---- Renyi ----------------------------------------------------------------------

ProbDist::ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw NumericalError("probabilities must be finite and non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10) throw NumericalError("probabilities sum to " + std::to_string(sum) + ", not 1");
}

ProbDist ProbDist::of(const StateVector &state) {
    const double n2 = state.norm() * state.norm();
    if (n2 == 0.0) throw NumericalError("zero state has no probability field");
    std::vector<double> p(state.dim());
    for (Index i = 0; i < state.dim(); ++i) p[i] = std::norm(state[i]) / n2;
    return ProbDist(std::move(p));
}

double renyi_entropy(const ProbDist &p, double q) {
    if (!(q >= 0.0) || !std::isfinite(q)) throw RangeError("Renyi order q must be finite and >= 0");
    const auto probs = p.probs();
    if (q == 0.0) {
        const double mx = *std::max_element(probs.begin(), probs.end());
        const auto support = std::count_if(probs.begin(), probs.end(), [&](double v) { return v > kSupportThreshold * mx; });
        return std::log2(static_cast<double>(support));
    }
    if (q == 1.0) {
        double h = 0.0;
        for (double v : probs)
            if (v > 0.0) h -= v * std::log2(v);
        return h;
    }
    double s = 0.0;
    for (double v : probs)
        if (v > 0.0) s += std::pow(v, q);
    return std::log2(s) / (1.0 - q);
}

double renyi_dimension(const StateVector &state, const PlotScheme &scheme, double q) {
    if (!scheme.is_grid() || scheme.kind() == SchemeKind::linear1d)
        throw UsageError("Renyi dimension needs a square grid scheme");
    const PlotImage img = apply_scheme(state, scheme);
    const double n2 = img.norm_squared();
    if (n2 == 0.0) throw NumericalError("zero state has no probability field");
    std::vector<double> p(img.values.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(img.values[i]) / n2;
    const double side_bits = 0.5 * state.num_sites() * std::log2(static_cast<double>(state.local_dim()));
    return renyi_entropy(ProbDist(std::move(p)), q) / side_bits;
}

// ---- Fourier --------------------------------------------------------------------

std::vector<FourierPoint> fourier_1d(const StateVector &state) {
    if (state.local_dim() != 2) throw DimensionError("fourier_1d needs qubits");
    const auto n = static_cast<int>(state.dim());
    std::vector<cplx> in(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<cplx> out(in.size());
    auto *pin = reinterpret_cast<fftw_complex *>(in.data());
    auto *pout = reinterpret_cast<fftw_complex *>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, pin, pout, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw NumericalError("FFTW planning failed");
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<FourierPoint> spectrum;
    for (Index k = 1; k <= state.dim() / 2; ++k)
        spectrum.push_back({k, std::log2(static_cast<double>(k)), std::abs(out[k]) * scale});
    return spectrum;
}

// ---- decimation -----------------------------------------------------------------

double translation_decimation_check(const StateVector &state, int k) {
    if (state.local_dim() != 2) throw DimensionError("decimation check needs qubits");
    require_level(state, k);
    const int n = state.num_sites();
    const Index outcomes = Index{1} << (2 * k);
    const Index rest = Index{1} << (n - 2 * k);
    double worst = 0.0;
    std::vector<cplx> u(rest), v(rest);
    for (Index o = 0; o < outcomes; ++o) {
        for (Index r = 0; r < rest; ++r) {
            u[r] = state[o * rest + r];     // first 2k sites measured
            v[r] = state[r * outcomes + o]; // last 2k sites measured
        }
        const double nu = block_norm(u), nv = block_norm(v);
        if (nu < kZeroQuadrant && nv < kZeroQuadrant) continue;
        if (nu < kZeroQuadrant || nv < kZeroQuadrant) {
            worst = std::max(worst, 1.0);
            continue;
        }
        cplx ov = 0.0;
        for (Index r = 0; r < rest; ++r) ov += std::conj(v[r]) * u[r];
        const cplx phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx(1.0);
        double d2 = 0.0;
        for (Index r = 0; r < rest; ++r) d2 += std::norm(u[r] / nu - phase * v[r] / nv);
        worst = std::max(worst, std::sqrt(d2));
    }
    return worst;
}

// ---- Schmidt --------------------------------------------------------------------

int SchmidtResult::rank(double eps) const {
    return static_cast<int>(std::count_if(coefficients.begin(), coefficients.end(), [&](double l) { return l > eps; }));
}

double SchmidtResult::entropy() const {
    double s = 0.0;
    for (double l : coefficients) {
        const double p = l * l;
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

SchmidtResult schmidt(const StateVector &state, int cut) {
    const int n = state.num_sites();
    if (cut < 1 || cut >= n) throw RangeError("cut must satisfy 1 <= cut < N (N=" + std::to_string(n) + ")");
    const Index rows = ipow(static_cast<Index>(state.local_dim()), cut);
    const Index cols = state.dim() / rows;
    using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMat> m(state.amplitudes().data(), static_cast<Eigen::Index>(rows),
                                     static_cast<Eigen::Index>(cols));
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtResult r;
    r.cut = cut;
    const auto &sv = svd.singularValues();
    r.coefficients.assign(sv.data(), sv.data() + sv.size());
    r.left_states = svd.matrixU();
    r.right_states = svd.matrixV().conjugate();
    return r;
}

// ---- cross-correlation ----------------------------------------------------------

std::vector<double> CrossCorrMatrix::spectrum() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

CrossCorrMatrix cross_correlation(const StateVector &state, int k) {
    const Quadrants q = level_quadrants(state, k);
    const auto g = kernels::parallel::gram(q.data, q.count, q.len);
    CrossCorrMatrix r;
    r.level = k;
    const auto c = static_cast<Eigen::Index>(q.count);
    r.matrix.resize(c, c);
    for (Eigen::Index i = 0; i < c; ++i)
        for (Eigen::Index j = 0; j < c; ++j) r.matrix(i, j) = g[static_cast<std::size_t>(i * c + j)];
    return r;
}

QuadrantReport distinct_quadrants(const StateVector &state, int k, double tol) {
    if (!(tol >= 0.0) || tol >= 1.0) throw RangeError("tolerance must lie in [0, 1)");
    const Quadrants q = level_quadrants(state, k);
    QuadrantReport rep;
    rep.class_of.assign(q.count, -1);

    std::vector<std::vector<cplx>> unit; // normalized nonzero quadrants
    std::vector<std::size_t> reps;       // index into `unit` of each class representative
    for (Index x = 0; x < q.count; ++x) {
        const auto blk = q.block(x);
        const double nb = block_norm(blk);
        if (nb < kZeroQuadrant) continue;
        std::vector<cplx> u(blk.begin(), blk.end());
        for (auto &a : u) a /= nb;
        int cls = -1;
        for (std::size_t c = 0; c < reps.size(); ++c) {
            const auto &r = unit[reps[c]];
            cplx ov = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) ov += std::conj(r[i]) * u[i];
            if (std::abs(ov) >= 1.0 - tol) {
                cls = static_cast<int>(c);
                break;
            }
        }
        if (cls < 0) {
            cls = static_cast<int>(reps.size());
            reps.push_back(unit.size());
        }
        rep.class_of[x] = cls;
        unit.push_back(std::move(u));
    }
    rep.classes = static_cast<int>(reps.size());
    rep.entropy_bound = rep.classes > 0 ? std::log2(static_cast<double>(rep.classes)) : 0.0;

    if (!unit.empty()) {
        const auto m = static_cast<Eigen::Index>(unit.size());
        Eigen::MatrixXcd gram(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i; j < m; ++j) {
                cplx s = 0.0;
                const auto &a = unit[static_cast<std::size_t>(i)], &b = unit[static_cast<std::size_t>(j)];
                for (std::size_t t = 0; t < a.size(); ++t) s += std::conj(a[t]) * b[t];
                gram(i, j) = s;
                gram(j, i) = std::conj(s);
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
        const double mx = es.eigenvalues().maxCoeff();
        rep.span_dim = static_cast<int>((es.eigenvalues().array() > 1e-8 * mx).count());
    }
    return rep;
}

std::vector<RenyiScanRow> renyi_scan(HamiltonianSpec spec, const std::vector<double> &gammas,
                                     const std::vector<double> &qs, SchemeKind scheme) {
    if (spec.model != Model::itf && spec.model != Model::itf_infinite_range)
        throw UsageError("Renyi scan runs over the transverse field of an Ising model");
    const auto plot = PlotScheme::make(scheme, spec.num_sites);
    std::vector<RenyiScanRow> rows;
    for (double g : gammas) {
        spec.gamma = g;
        const auto res = solve_lowest(build_hamiltonian(spec), 1);
        RenyiScanRow row{g, {}};
        for (double q : qs) row.dims.push_back(renyi_dimension(res.eigenvectors.front(), plot, q));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace qubism
