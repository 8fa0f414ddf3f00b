#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qubism/state.hpp"

namespace qubism {

// Recursive plotting schemes. A scheme fixes a domain, m similar
// sub-domains per level and a bijection from quantum indices to geometric
// indices (one sub-domain choice per level).
//
// Grid convention: the first digit of each pair (X) selects the row, counted
// downwards from the top; the second (Y) selects the column, counted
// rightwards. This reproduces the 2-qubit table 00 upper-left, 01 upper-right,
// 10 lower-left, 11 lower-right. With an odd number of sites the unpaired last
// digit makes a final row split, giving a rectangle twice (or three times) as
// tall as it is wide.
enum class SchemeKind { standard2d, alternative2d, linear1d, triangular, spin1square };

SchemeKind parse_scheme(const std::string &name);
std::string scheme_name(SchemeKind kind);

struct Cell {
    Index row = 0;
    Index col = 0;
    bool operator==(const Cell &) const = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Vertices are the images of the root vertices (-1,0), (1,0), (0,1), in that
// order; the last one is the right-angle vertex.
struct Triangle {
    std::array<Point, 3> v;
    double area() const;
    Point centroid() const;
    bool contains(Point p, double eps = 1e-12) const;
};

Triangle root_triangle();

class PlotScheme {
public:
    static PlotScheme make(SchemeKind kind, int num_sites);

    SchemeKind kind() const { return kind_; }
    int local_dim() const { return kind_ == SchemeKind::spin1square ? 3 : 2; }
    int num_sites() const { return num_sites_; }
    // Sub-domains per level (m) and number of levels (n).
    int cells_per_level() const;
    int levels() const;
    bool is_grid() const { return kind_ != SchemeKind::triangular; }
    Index rows() const;
    Index cols() const;

    // The index map from quantum digits to geometric digits in [0, m).
    std::vector<int> geometric_index(const QuantumIndex &index) const;
    Cell cell_of(const QuantumIndex &index) const;
    Triangle triangle_of(const QuantumIndex &index) const;

private:
    PlotScheme(SchemeKind kind, int num_sites) : kind_(kind), num_sites_(num_sites) {}
    SchemeKind kind_;
    int num_sites_;
};

// Individual maps. Each validates its local dimension / parity precondition.
Cell map_standard2d(const QuantumIndex &index); // even N
Cell map_rect(const QuantumIndex &index);       // odd N
Cell map_alternative2d(const QuantumIndex &index);
Index map_linear1d(const QuantumIndex &index);
Triangle map_triangular(const QuantumIndex &index);
Cell map_spin1(const QuantumIndex &index);

// Triangle cell containing `p`, as a flat index of `num_sites` digits, or
// nullopt outside the root triangle.
std::optional<Index> locate_triangular(Point p, int num_sites);

// Cyclic right shift of the sites: s_1 ... s_N -> s_N s_1 ... s_{N-1}.
QuantumIndex right_shift(const QuantumIndex &index);

/// Complex field obtained by pulling a state back onto a scheme's cells.
struct PlotImage {
    PlotScheme scheme;
    Index rows = 0; // grid schemes; triangular images use rows = 1, cols = #cells
    Index cols = 0;
    std::vector<cplx> values;        // grid row-major, or one per triangle
    std::vector<Triangle> triangles; // triangular scheme only, flat-index order

    const cplx &at(Index row, Index col) const { return values[row * cols + col]; }
    double norm_squared() const;
};

// For every flat index the linear cell number (row * cols + col, or the flat
// index itself for the triangular scheme).
std::vector<Index> cell_permutation(const PlotScheme &scheme);

PlotImage apply_scheme(const StateVector &state, const PlotScheme &scheme);

} // namespace qubism
