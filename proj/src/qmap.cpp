#include "qubism/qmap.hpp"

#include <cmath>

#include "qubism/error.hpp"
#include "qubism/kernels.hpp"

namespace qubism {

SchemeKind parse_scheme(const std::string &name) {
    if (name == "standard" || name == "standard2d") return SchemeKind::standard2d;
    if (name == "alternative" || name == "alternative2d") return SchemeKind::alternative2d;
    if (name == "linear" || name == "linear1d" || name == "1d") return SchemeKind::linear1d;
    if (name == "triangular" || name == "triangle") return SchemeKind::triangular;
    if (name == "spin1" || name == "spin1square") return SchemeKind::spin1square;
    throw UsageError("unknown scheme \"" + name + "\"");
}

std::string scheme_name(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::standard2d: return "standard2d";
    case SchemeKind::alternative2d: return "alternative2d";
    case SchemeKind::linear1d: return "linear1d";
    case SchemeKind::triangular: return "triangular";
    case SchemeKind::spin1square: return "spin1square";
    }
    return "?";
}

// ---- triangles ------------------------------------------------------------------

double Triangle::area() const {
    const auto &[a, b, c] = v;
    return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Point Triangle::centroid() const {
    return {(v[0].x + v[1].x + v[2].x) / 3.0, (v[0].y + v[1].y + v[2].y) / 3.0};
}

bool Triangle::contains(Point p, double eps) const {
    auto cross = [](Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
    const double d1 = cross(v[0], v[1], p), d2 = cross(v[1], v[2], p), d3 = cross(v[2], v[0], p);
    const bool has_neg = d1 < -eps || d2 < -eps || d3 < -eps;
    const bool has_pos = d1 > eps || d2 > eps || d3 > eps;
    return !(has_neg && has_pos);
}

Triangle root_triangle() { return {{Point{-1.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}}}; }

namespace {

struct Affine {
    double a = 1, b = 0, c = 0, d = 1; // [[a, b], [c, d]]
    double tx = 0, ty = 0;

    Point operator()(Point p) const { return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty}; }
    // (*this) o other
    Affine then_inner(const Affine &o) const {
        Affine r;
        r.a = a * o.a + b * o.c;
        r.b = a * o.b + b * o.d;
        r.c = c * o.a + d * o.c;
        r.d = c * o.b + d * o.d;
        r.tx = a * o.tx + b * o.ty + tx;
        r.ty = c * o.tx + d * o.ty + ty;
        return r;
    }
};

// S0: (-1,0) -> (0,1), (1,0) -> (-1,0), (0,1) -> (0,0). S1 is its mirror image.
constexpr Affine kLeft{-0.5, 0.5, -0.5, -0.5, -0.5, 0.5};
constexpr Affine kRight{-0.5, -0.5, 0.5, -0.5, 0.5, 0.5};

Point left_inverse(Point p) {
    const double x = p.x + 0.5, y = p.y - 0.5;
    return {-x - y, x - y};
}

Point right_inverse(Point p) {
    const double x = p.x - 0.5, y = p.y - 0.5;
    return {-x + y, -x - y};
}

void require_dim(const QuantumIndex &index, int b, const char *what) {
    if (index.local_dim != b)
        throw DimensionError(std::string(what) + " requires local dimension " + std::to_string(b));
    if (index.digits.empty()) throw RangeError("empty quantum index");
}

// Generic square recursion; `subcell` maps a pair of digits to (row, col)
// inside a side x side block.
template <typename F>
Cell square_cell(const QuantumIndex &index, Index side, F subcell) {
    const auto &d = index.digits;
    Cell cell;
    std::size_t i = 0;
    for (; i + 1 < d.size(); i += 2) {
        const auto [r, c] = subcell(d[i], d[i + 1]);
        cell.row = cell.row * side + r;
        cell.col = cell.col * side + c;
    }
    if (i < d.size()) cell.row = cell.row * side + static_cast<Index>(d[i]);
    return cell;
}

std::pair<Index, Index> direct(int x, int y) { return {static_cast<Index>(x), static_cast<Index>(y)}; }

std::pair<Index, Index> alternative(int x, int y) {
    // 00 UL, 01 UR, 11 LL, 10 LR
    if (x == 0) return {0, static_cast<Index>(y)};
    return {1, y == 1 ? 0U : 1U};
}

Index ipow(Index base, int e) {
    Index r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

Cell map_standard2d(const QuantumIndex &index) {
    require_dim(index, 2, "standard2d");
    if (index.digits.size() % 2 != 0) throw UsageError("standard2d square map needs an even number of sites");
    return square_cell(index, 2, direct);
}

Cell map_rect(const QuantumIndex &index) {
    require_dim(index, 2, "rectangular standard2d");
    if (index.digits.size() % 2 == 0) throw UsageError("rectangular map needs an odd number of sites");
    return square_cell(index, 2, direct);
}

Cell map_alternative2d(const QuantumIndex &index) {
    require_dim(index, 2, "alternative2d");
    return square_cell(index, 2, alternative);
}

Index map_linear1d(const QuantumIndex &index) {
    require_dim(index, 2, "linear1d");
    return index_to_flat(index);
}

Triangle map_triangular(const QuantumIndex &index) {
    require_dim(index, 2, "triangular");
    Affine a;
    for (int d : index.digits) a = a.then_inner(d == 0 ? kLeft : kRight);
    const Triangle root = root_triangle();
    return {{a(root.v[0]), a(root.v[1]), a(root.v[2])}};
}

Cell map_spin1(const QuantumIndex &index) {
    require_dim(index, 3, "spin1square");
    return square_cell(index, 3, direct);
}

std::optional<Index> locate_triangular(Point p, int num_sites) {
    const double eps = 1e-12;
    if (p.y < -eps || p.y > 1.0 - std::abs(p.x) + eps) return std::nullopt;
    Index flat = 0;
    for (int k = 0; k < num_sites; ++k) {
        const bool right = p.x > 0.0;
        flat = (flat << 1) | (right ? 1U : 0U);
        p = right ? right_inverse(p) : left_inverse(p);
    }
    return flat;
}

QuantumIndex right_shift(const QuantumIndex &index) {
    QuantumIndex out = index;
    const auto n = index.digits.size();
    for (std::size_t i = 0; i < n; ++i) out.digits[(i + 1) % n] = index.digits[i];
    return out;
}

// ---- PlotScheme -------------------------------------------------------------------

PlotScheme PlotScheme::make(SchemeKind kind, int num_sites) {
    if (num_sites < 1) throw RangeError("scheme needs at least one site");
    PlotScheme s(kind, num_sites);
    basis_dimension(num_sites, s.local_dim());
    return s;
}

int PlotScheme::cells_per_level() const {
    switch (kind_) {
    case SchemeKind::standard2d:
    case SchemeKind::alternative2d: return 4;
    case SchemeKind::spin1square: return 9;
    default: return 2;
    }
}

int PlotScheme::levels() const {
    switch (kind_) {
    case SchemeKind::standard2d:
    case SchemeKind::alternative2d:
    case SchemeKind::spin1square: return (num_sites_ + 1) / 2;
    default: return num_sites_;
    }
}

Index PlotScheme::rows() const {
    const auto b = static_cast<Index>(local_dim());
    switch (kind_) {
    case SchemeKind::linear1d: return 1;
    case SchemeKind::triangular: return 1;
    default: return ipow(b, (num_sites_ + 1) / 2);
    }
}

Index PlotScheme::cols() const {
    const auto b = static_cast<Index>(local_dim());
    switch (kind_) {
    case SchemeKind::linear1d:
    case SchemeKind::triangular: return ipow(2, num_sites_);
    default: return ipow(b, num_sites_ / 2);
    }
}

std::vector<int> PlotScheme::geometric_index(const QuantumIndex &index) const {
    if (index.local_dim != local_dim() || index.num_sites() != num_sites_)
        throw DimensionError("quantum index does not match scheme");
    const auto &d = index.digits;
    std::vector<int> g;
    switch (kind_) {
    case SchemeKind::linear1d:
    case SchemeKind::triangular: return d;
    case SchemeKind::standard2d:
    case SchemeKind::alternative2d:
    case SchemeKind::spin1square: {
        const int b = local_dim();
        std::size_t i = 0;
        for (; i + 1 < d.size(); i += 2) {
            if (kind_ == SchemeKind::alternative2d) {
                const auto [r, c] = alternative(d[i], d[i + 1]);
                g.push_back(static_cast<int>(2 * r + c));
            } else {
                g.push_back(b * d[i] + d[i + 1]);
            }
        }
        // Final row split for odd N: the sub-domain in the left column.
        if (i < d.size()) g.push_back(b * d[i]);
        return g;
    }
    }
    return g;
}

Cell PlotScheme::cell_of(const QuantumIndex &index) const {
    if (index.num_sites() != num_sites_) throw DimensionError("quantum index does not match scheme");
    switch (kind_) {
    case SchemeKind::standard2d: return num_sites_ % 2 == 0 ? map_standard2d(index) : map_rect(index);
    case SchemeKind::alternative2d: return map_alternative2d(index);
    case SchemeKind::spin1square: return map_spin1(index);
    case SchemeKind::linear1d: return {0, map_linear1d(index)};
    case SchemeKind::triangular: throw UsageError("triangular scheme has no grid cells");
    }
    return {};
}

Triangle PlotScheme::triangle_of(const QuantumIndex &index) const {
    if (kind_ != SchemeKind::triangular) throw UsageError("scheme is not triangular");
    if (index.num_sites() != num_sites_) throw DimensionError("quantum index does not match scheme");
    return map_triangular(index);
}

std::vector<Index> cell_permutation(const PlotScheme &scheme) {
    const Index dim = basis_dimension(scheme.num_sites(), scheme.local_dim());
    std::vector<Index> perm(dim);
    if (!scheme.is_grid()) {
        for (Index i = 0; i < dim; ++i) perm[i] = i;
        return perm;
    }
    const Index cols = scheme.cols();
    for (Index i = 0; i < dim; ++i) {
        const Cell c = scheme.cell_of(flat_to_index(i, scheme.num_sites(), scheme.local_dim()));
        perm[i] = c.row * cols + c.col;
    }
    return perm;
}

double PlotImage::norm_squared() const {
    double acc = 0.0;
    for (const auto &v : values) acc += std::norm(v);
    return acc;
}

PlotImage apply_scheme(const StateVector &state, const PlotScheme &scheme) {
    if (state.local_dim() != scheme.local_dim())
        throw DimensionError("scheme " + scheme_name(scheme.kind()) + " needs local dimension " +
                             std::to_string(scheme.local_dim()));
    if (state.num_sites() != scheme.num_sites()) throw DimensionError("scheme built for a different number of sites");

    PlotImage img{scheme, scheme.rows(), scheme.cols(), std::vector<cplx>(state.dim()), {}};
    const auto perm = cell_permutation(scheme);
    kernels::parallel::scatter(state.amplitudes(), perm, img.values);
    if (scheme.kind() == SchemeKind::triangular) {
        img.triangles.reserve(state.dim());
        for (Index i = 0; i < state.dim(); ++i)
            img.triangles.push_back(map_triangular(flat_to_index(i, state.num_sites(), 2)));
    }
    return img;
}

} // namespace qubism
