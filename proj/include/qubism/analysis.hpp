#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qubism/models.hpp"
#include "qubism/qmap.hpp"
#include "qubism/state.hpp"

namespace qubism {

/// Probability field of a plot: |amplitude|^2 per cell, summing to one.
class ProbDist {
public:
    // Throws NumericalError unless the entries are non-negative and sum to 1
    // within 1e-10.
    explicit ProbDist(std::vector<double> probs);
    static ProbDist of(const StateVector &state);

    std::span<const double> probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

private:
    std::vector<double> probs_;
};

// Base-2 Renyi entropy. q = 1 is the Shannon limit; q = 0 counts the cells
// above 1e-14 times the largest probability.
double renyi_entropy(const ProbDist &p, double q);

// Renyi entropy of the plot divided by log2 of the side length, (N/2) log2 b.
double renyi_dimension(const StateVector &state, const PlotScheme &scheme, double q);

struct FourierPoint {
    Index momentum;
    double log2_momentum;
    double magnitude;
};

// Unitary DFT of the amplitudes in linear1d order, reported for momenta
// 1 .. 2^(N-1).
std::vector<FourierPoint> fourier_1d(const StateVector &state);

// Largest discrepancy, over outcomes of the first 2k sites, between the
// normalized image left after measuring the first 2k sites and the one left
// after measuring the last 2k sites with the same outcome. Outcomes with zero
// probability on both sides are skipped; one-sided zeros count as distance 1.
double translation_decimation_check(const StateVector &state, int k = 1);

struct SchmidtResult {
    int cut = 0;
    std::vector<double> coefficients; // non-increasing
    Eigen::MatrixXcd left_states;     // columns, b^cut rows
    Eigen::MatrixXcd right_states;    // columns, b^(N-cut) rows

    int rank(double eps = 1e-10) const;
    // -sum lambda^2 log2 lambda^2
    double entropy() const;
};

// Left block is sites 1..cut.
SchmidtResult schmidt(const StateVector &state, int cut);

struct CrossCorrMatrix {
    int level = 0;
    Eigen::MatrixXcd matrix; // R(x, x'), quadrants in flat order of the first 2k sites

    // Eigenvalues in decreasing order.
    std::vector<double> spectrum() const;
};

// Gram matrix of the level-k quadrant images of the square plot,
// R(x, x') = sum over cells of C_x * conj(C_x'). Needs 1 <= 2k < N.
CrossCorrMatrix cross_correlation(const StateVector &state, int k);

struct QuadrantReport {
    int classes = 0;           // p, distinct nonzero quadrants
    double entropy_bound = 0;  // log2 p
    int span_dim = 0;          // numerical rank of the normalized quadrant Gram matrix
    std::vector<int> class_of; // per quadrant, -1 for a zero quadrant
};

// Greedy first-fit clustering of normalized level-k quadrants: a quadrant
// joins the first class whose representative overlaps it with modulus at
// least 1 - tol.
QuadrantReport distinct_quadrants(const StateVector &state, int k, double tol);

struct RenyiScanRow {
    double gamma;
    std::vector<double> dims; // one per requested q
};

// Ground state Renyi dimensions along a transverse-field grid for an Ising
// model; `spec.gamma` is overwritten per row.
std::vector<RenyiScanRow> renyi_scan(HamiltonianSpec spec, const std::vector<double> &gammas,
                                     const std::vector<double> &qs, SchemeKind scheme = SchemeKind::standard2d);

} // namespace qubism
