#include "qubism/state.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qubism/error.hpp"
#include "qubism/kernels.hpp"

namespace qubism {

Index basis_dimension(int num_sites, int local_dim) {
    if (num_sites < 1) throw RangeError("number of sites must be >= 1");
    if (local_dim != 2 && local_dim != 3) throw RangeError("local dimension must be 2 or 3");
    Index dim = 1;
    for (int i = 0; i < num_sites; ++i) {
        if (dim > std::numeric_limits<Index>::max() / static_cast<Index>(local_dim))
            throw RangeError("basis dimension overflows");
        dim *= static_cast<Index>(local_dim);
    }
    return dim;
}

QuantumIndex flat_to_index(Index flat, int num_sites, int local_dim) {
    const Index dim = basis_dimension(num_sites, local_dim);
    if (flat >= dim)
        throw RangeError("flat index " + std::to_string(flat) + " out of range [0, " + std::to_string(dim) + ")");
    QuantumIndex index;
    index.local_dim = local_dim;
    index.digits.assign(static_cast<std::size_t>(num_sites), 0);
    for (int k = num_sites - 1; k >= 0; --k) {
        index.digits[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<Index>(local_dim));
        flat /= static_cast<Index>(local_dim);
    }
    return index;
}

Index index_to_flat(const QuantumIndex &index) {
    Index flat = 0;
    for (int d : index.digits) {
        if (d < 0 || d >= index.local_dim) throw RangeError("digit out of range for local dimension");
        flat = flat * static_cast<Index>(index.local_dim) + static_cast<Index>(d);
    }
    return flat;
}

QuantumIndex parse_index(const std::string &text, int local_dim) {
    QuantumIndex index;
    index.local_dim = local_dim;
    for (char c : text) {
        int d = -1;
        if (local_dim == 2 && (c == '0' || c == '1')) d = c - '0';
        if (local_dim == 3) {
            if (c == '-') d = 0;
            else if (c == '0') d = 1;
            else if (c == '+') d = 2;
        }
        if (d < 0) throw UsageError(std::string("invalid digit '") + c + "' in index \"" + text + "\"");
        index.digits.push_back(d);
    }
    if (index.digits.empty()) throw UsageError("empty index string");
    return index;
}

std::string format_index(const QuantumIndex &index) {
    static constexpr char spin1[] = {'-', '0', '+'};
    std::string out;
    out.reserve(index.digits.size());
    for (int d : index.digits) out.push_back(index.local_dim == 3 ? spin1[d] : static_cast<char>('0' + d));
    return out;
}

LocalUnitary::LocalUnitary(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) throw DimensionError("local unitary must be square");
    const Eigen::MatrixXcd check = matrix_.adjoint() * matrix_;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
    if ((check - id).cwiseAbs().maxCoeff() > 1e-12) throw UsageError("matrix is not unitary to 1e-12");
}

LocalUnitary LocalUnitary::identity(int local_dim) {
    return LocalUnitary(Eigen::MatrixXcd::Identity(local_dim, local_dim));
}

LocalUnitary LocalUnitary::hadamard() {
    Eigen::MatrixXcd h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return LocalUnitary(h);
}

StateVector::StateVector(int num_sites, int local_dim, std::vector<cplx> amplitudes)
    : num_sites_(num_sites), local_dim_(local_dim), amplitudes_(std::move(amplitudes)) {
    const Index dim = basis_dimension(num_sites, local_dim);
    if (amplitudes_.size() != dim)
        throw DimensionError("expected " + std::to_string(dim) + " amplitudes, got " +
                             std::to_string(amplitudes_.size()));
}

StateVector StateVector::basis(int num_sites, int local_dim, Index flat) {
    std::vector<cplx> amps(basis_dimension(num_sites, local_dim));
    if (flat >= amps.size()) throw RangeError("basis index out of range");
    amps[flat] = 1.0;
    return StateVector(num_sites, local_dim, std::move(amps));
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto &a : amplitudes_) acc += std::norm(a);
    return std::sqrt(acc);
}

bool StateVector::is_normalized(double tol) const {
    double acc = 0.0;
    for (const auto &a : amplitudes_) acc += std::norm(a);
    return std::abs(acc - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
    std::vector<cplx> amps(amplitudes_);
    for (auto &a : amps) a /= n;
    return StateVector(num_sites_, local_dim_, std::move(amps));
}

double norm(const StateVector &state) { return state.norm(); }

StateVector rotate_local_basis(const StateVector &state, const LocalUnitary &u) {
    if (u.dim() != state.local_dim())
        throw DimensionError("unitary dimension " + std::to_string(u.dim()) + " does not match local dimension " +
                             std::to_string(state.local_dim()));
    const int b = state.local_dim();
    std::vector<cplx> umat(static_cast<std::size_t>(b * b));
    for (int r = 0; r < b; ++r)
        for (int c = 0; c < b; ++c) umat[static_cast<std::size_t>(r * b + c)] = u.matrix()(r, c);
    std::vector<cplx> out(state.dim());
    kernels::parallel::apply_uniform_local(state.amplitudes(), out, state.num_sites(), b, umat);
    return StateVector(state.num_sites(), b, std::move(out));
}

cplx inner_product(const StateVector &bra, const StateVector &ket) {
    if (bra.dim() != ket.dim() || bra.local_dim() != ket.local_dim())
        throw DimensionError("inner product of states with different shapes");
    cplx acc{0.0, 0.0};
    for (Index i = 0; i < bra.dim(); ++i) acc += std::conj(bra[i]) * ket[i];
    return acc;
}

void write_state(const StateVector &state, std::ostream &out) {
    out << "QSV1\n" << state.local_dim() << ' ' << state.num_sites() << '\n';
    char buf[96];
    for (const auto &a : state.amplitudes()) {
        std::snprintf(buf, sizeof buf, "%.16e %.16e\n", a.real(), a.imag());
        out << buf;
    }
}

void save_state(const StateVector &state, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open " + path.string() + " for writing");
    write_state(state, out);
    if (!out) throw UsageError("failed writing " + path.string());
}

namespace {

bool parse_double(std::string_view tok, double &value) {
    const char *first = tok.data();
    const char *last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

} // namespace

StateVector read_state(std::istream &in) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next() || line != "QSV1") throw ParseError(1, "expected magic \"QSV1\"");
    if (!next()) throw ParseError(2, "missing \"<b> <N>\" header");
    const auto hdr = split_ws(line);
    int b = 0, n = 0;
    if (hdr.size() != 2 || std::from_chars(hdr[0].data(), hdr[0].data() + hdr[0].size(), b).ec != std::errc{} ||
        std::from_chars(hdr[1].data(), hdr[1].data() + hdr[1].size(), n).ec != std::errc{})
        throw ParseError(2, "malformed header, expected \"<b> <N>\"");
    if (b != 2 && b != 3) throw ParseError(2, "local dimension must be 2 or 3");
    if (n < 1 || n > 30) throw ParseError(2, "number of sites must be in [1, 30]");
    const Index dim = basis_dimension(n, b);

    std::vector<cplx> amps;
    amps.reserve(dim);
    while (next()) {
        const auto toks = split_ws(line);
        if (toks.empty()) throw ParseError(lineno, "blank line inside amplitude block");
        if (amps.size() == dim)
            throw ParseError(lineno, "expected " + std::to_string(dim) + " amplitude lines, found more");
        double re = 0.0, im = 0.0;
        if (toks.size() != 2 || !parse_double(toks[0], re) || !parse_double(toks[1], im))
            throw ParseError(lineno, "expected \"<re> <im>\"");
        if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError(lineno, "non-finite amplitude");
        amps.emplace_back(re, im);
    }
    if (amps.size() != dim)
        throw ParseError(lineno + 1, "expected " + std::to_string(dim) + " amplitude lines, found " +
                                         std::to_string(amps.size()));
    return StateVector(n, b, std::move(amps));
}

StateVector load_state(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path.string());
    return read_state(in);
}

} // namespace qubism
