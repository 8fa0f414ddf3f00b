// qubism command-line front end.
//
//   qubism gen      --model heisenberg --n 12 --bc pbc --out gs.qsv
//   qubism render   --in gs.qsv --scheme standard2d --mode phase --out gs.ppm
//   qubism analyze  schmidt --in gs.qsv --cut 6
//   qubism frame    --in s.qsv --out-table f.tsv --out-image f.ppm
//
// Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qubism/analysis.hpp"
#include "qubism/eigensolve.hpp"
#include "qubism/error.hpp"
#include "qubism/frame.hpp"
#include "qubism/kernels.hpp"
#include "qubism/models.hpp"
#include "qubism/qmap.hpp"
#include "qubism/render.hpp"
#include "qubism/state.hpp"

using namespace qubism;

namespace {

std::string num(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// Destination for tabular output: a file or stdout.
class Sink {
public:
    explicit Sink(const std::string &path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw Error("cannot open " + path + " for writing");
        }
    }
    std::ostream &out() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct Table {
    std::ostream &os;
    void header(std::initializer_list<std::string> cols) { row(std::vector<std::string>(cols)); }
    void row(const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "\t" : "") << cells[i];
        os << '\n';
    }
};

void metric_table(std::ostream &os, const std::vector<std::pair<std::string, std::string>> &rows) {
    Table t{os};
    t.header({"metric", "value"});
    for (const auto &[k, v] : rows) t.row({k, v});
}

StateVector load_input(const std::string &path, const std::string &basis) {
    StateVector s = path == "-" ? read_state(std::cin) : load_state(path);
    if (basis == "z") return s;
    if (basis == "x") {
        if (s.local_dim() != 2) throw UsageError("--basis x needs a qubit state");
        return rotate_local_basis(s, LocalUnitary::hadamard());
    }
    throw UsageError("unknown basis \"" + basis + "\" (expected z or x)");
}

EigenMethod parse_method(const std::string &m) {
    if (m == "auto") return EigenMethod::automatic;
    if (m == "dense") return EigenMethod::dense;
    if (m == "lanczos") return EigenMethod::lanczos;
    throw UsageError("unknown method \"" + m + "\"");
}

// ---- gen ------------------------------------------------------------------------

struct GenArgs {
    std::string model, state, bc = "pbc", method = "auto", out = "-", index;
    int n = 0, ne = -1, level = 0, max_iterations = 5000;
    double j2 = 0.0, gamma = 0.0, pair_scale = 1.0, alpha = 1.0, beta = 0.0;
    std::uint64_t seed = 1;
};

StateVector named_state(const GenArgs &a) {
    if (a.state == "ghz") return ghz_state(a.n);
    if (a.state == "w") return w_state(a.n);
    if (a.state == "dicke") return dicke_state(a.n, a.ne < 0 ? a.n / 2 : a.ne);
    if (a.state == "product") return product_state(a.n, a.alpha, a.beta);
    if (a.state == "random") return random_state(a.n, 2, a.seed);
    if (a.state == "random-symmetric") return random_perm_invariant_state(a.n, a.seed);
    if (a.state == "uniform") return product_state(a.n, 1.0, 1.0);
    if (a.state == "basis") {
        const QuantumIndex idx = parse_index(a.index, a.index.find_first_of("+-") == std::string::npos ? 2 : 3);
        return StateVector::basis(idx.num_sites(), idx.local_dim, index_to_flat(idx));
    }
    throw UsageError("unknown state \"" + a.state + "\"");
}

int run_gen(const GenArgs &a) {
    if (a.model.empty() == a.state.empty()) throw UsageError("give exactly one of --model or --state");
    if (!a.state.empty()) {
        if (a.state != "basis" && a.n < 1) throw UsageError("--n is required");
        const StateVector s = named_state(a);
        if (a.out == "-") write_state(s, std::cout);
        else save_state(s, a.out);
        return 0;
    }
    HamiltonianSpec spec;
    spec.model = parse_model(a.model);
    spec.num_sites = a.n;
    spec.boundary = parse_boundary(a.bc);
    spec.j2 = a.j2;
    spec.gamma = a.gamma;
    spec.pair_scale = a.pair_scale;
    if (a.level < 0) throw RangeError("--level must be >= 0");
    EigenOptions opts;
    opts.method = parse_method(a.method);
    opts.seed = a.seed;
    opts.max_iterations = a.max_iterations;
    const auto res = solve_lowest(build_hamiltonian(spec), a.level + 1, opts);
    const auto &s = res.eigenvectors[static_cast<std::size_t>(a.level)];
    if (a.out == "-") write_state(s, std::cout);
    else save_state(s, a.out);
    std::fprintf(stderr, "energy %.15g residual %.3e\n", res.eigenvalues[static_cast<std::size_t>(a.level)],
                 res.residuals[static_cast<std::size_t>(a.level)]);
    return 0;
}

// ---- render ---------------------------------------------------------------------

struct RenderArgs {
    std::string in, scheme = "standard2d", mode = "full", basis = "z", out;
    int px = 8, resolution = 512;
    double gamma = 1.0;
};

int run_render(const RenderArgs &a) {
    const SchemeKind kind = parse_scheme(a.scheme);
    ColorSpec spec;
    spec.mode = parse_color_mode(a.mode);
    spec.gamma = a.gamma;
    spec.validate();
    const StateVector s = load_input(a.in, a.basis);
    const PlotImage img = apply_scheme(s, PlotScheme::make(kind, s.num_sites()));
    const RasterImage raster =
        kind == SchemeKind::triangular ? render_triangular(img, a.resolution, spec) : render_grid(img, a.px, spec);
    if (a.out == "-") write_ppm(raster, std::cout);
    else write_ppm(raster, a.out);
    return 0;
}

// ---- analyze --------------------------------------------------------------------

struct AnalyzeArgs {
    std::string in, basis = "z", out = "-", scheme = "standard2d", sublattice = "odd";
    std::vector<double> q{0.0, 1.0, 2.0};
    int cut = 1, level = 1, k = 1;
    double tol = 1e-8;
    bool matrix = false;
    // renyi-scan
    std::string model = "itf", bc = "pbc";
    int n = 10;
    std::vector<double> gamma_grid{0.2, 0.6, 1.0, 1.4, 1.8};
};

int run_renyi(const AnalyzeArgs &a) {
    const StateVector s = load_input(a.in, a.basis);
    const auto scheme = PlotScheme::make(parse_scheme(a.scheme), s.num_sites());
    const ProbDist p = ProbDist::of(s);
    Sink sink(a.out);
    Table t{sink.out()};
    t.header({"q", "entropy", "dimension"});
    for (double q : a.q) t.row({num(q), num(renyi_entropy(p, q)), num(renyi_dimension(s, scheme, q))});
    return 0;
}

int run_renyi_scan(const AnalyzeArgs &a) {
    HamiltonianSpec spec;
    spec.model = parse_model(a.model);
    spec.num_sites = a.n;
    spec.boundary = parse_boundary(a.bc);
    const auto rows = renyi_scan(spec, a.gamma_grid, a.q, parse_scheme(a.scheme));
    Sink sink(a.out);
    Table t{sink.out()};
    std::vector<std::string> head{"gamma"};
    for (double q : a.q) head.push_back("d" + num(q));
    for (double q : a.q) head.push_back("slope_d" + num(q));
    t.row(head);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::string> cells{num(rows[i].gamma)};
        for (double d : rows[i].dims) cells.push_back(num(d));
        const std::size_t lo = i == 0 ? 0 : i - 1, hi = i + 1 < rows.size() ? i + 1 : i;
        for (std::size_t j = 0; j < a.q.size(); ++j) {
            if (hi == lo) {
                cells.emplace_back("nan");
                continue;
            }
            cells.push_back(num((rows[hi].dims[j] - rows[lo].dims[j]) / (rows[hi].gamma - rows[lo].gamma)));
        }
        t.row(cells);
    }
    return 0;
}

int run_fourier(const AnalyzeArgs &a) {
    const StateVector s = load_input(a.in, a.basis);
    Sink sink(a.out);
    Table t{sink.out()};
    t.header({"momentum", "log2_momentum", "magnitude"});
    for (const auto &p : fourier_1d(s)) t.row({std::to_string(p.momentum), num(p.log2_momentum), num(p.magnitude)});
    return 0;
}

int run_schmidt(const AnalyzeArgs &a) {
    const StateVector s = load_input(a.in, a.basis);
    const auto r = schmidt(s, a.cut);
    std::vector<std::pair<std::string, std::string>> rows{
        {"cut", std::to_string(r.cut)}, {"rank", std::to_string(r.rank())}, {"entropy", num(r.entropy())}};
    for (std::size_t i = 0; i < r.coefficients.size(); ++i)
        if (r.coefficients[i] > 1e-10) rows.emplace_back("lambda_" + std::to_string(i), num(r.coefficients[i]));
    Sink sink(a.out);
    metric_table(sink.out(), rows);
    return 0;
}

int run_crosscorr(const AnalyzeArgs &a) {
    const StateVector s = load_input(a.in, a.basis);
    const auto r = cross_correlation(s, a.level);
    Sink sink(a.out);
    Table t{sink.out()};
    if (a.matrix) {
        t.header({"x", "x_prime", "re", "im"});
        for (Eigen::Index i = 0; i < r.matrix.rows(); ++i)
            for (Eigen::Index j = 0; j < r.matrix.cols(); ++j)
                t.row({std::to_string(i), std::to_string(j), num(r.matrix(i, j).real()), num(r.matrix(i, j).imag())});
        return 0;
    }
    t.header({"index", "eigenvalue"});
    const auto spec = r.spectrum();
    for (std::size_t i = 0; i < spec.size(); ++i) t.row({std::to_string(i), num(spec[i])});
    return 0;
}

int run_quadrants(const AnalyzeArgs &a) {
    const StateVector s = load_input(a.in, a.basis);
    const auto r = distinct_quadrants(s, a.level, a.tol);
    Sink sink(a.out);
    metric_table(sink.out(), {{"level", std::to_string(a.level)},
                              {"tol", num(a.tol)},
                              {"classes", std::to_string(r.classes)},
                              {"entropy_bound", num(r.entropy_bound)},
                              {"span_dim", std::to_string(r.span_dim)}});
    return 0;
}

int run_marshall(const AnalyzeArgs &a) {
    const StateVector s = load_input(a.in, a.basis);
    Sublattice sub;
    if (a.sublattice == "odd") sub = Sublattice::odd;
    else if (a.sublattice == "even") sub = Sublattice::even;
    else throw UsageError("unknown sublattice \"" + a.sublattice + "\"");
    const auto r = marshall_check(s, sub);
    Sink sink(a.out);
    metric_table(sink.out(), {{"passes", r.passes ? "true" : "false"}, {"max_violation", num(r.max_violation)}});
    return 0;
}

int run_decimation(const AnalyzeArgs &a) {
    const StateVector s = load_input(a.in, a.basis);
    Sink sink(a.out);
    metric_table(sink.out(), {{"k", std::to_string(a.k)}, {"max_deviation", num(translation_decimation_check(s, a.k))}});
    return 0;
}

// ---- frame ----------------------------------------------------------------------

struct FrameArgs {
    std::string in, basis = "z", out_table, out_image, out = "-";
    int px = 8;
    bool include_identity = false;
};

int run_frame(const FrameArgs &a) {
    const StateVector s = load_input(a.in, a.basis);
    const FrameTable table = frame_of_state(s);
    if (!a.out_table.empty()) {
        Sink sink(a.out_table);
        write_frame_tsv(table, sink.out());
    }
    if (!a.out_image.empty()) write_ppm(render_frame(table, a.px, !a.include_identity), a.out_image);

    std::vector<std::pair<std::string, std::string>> rows{{"n", std::to_string(table.n)},
                                                          {"purity", num(frame_purity(table))}};
    if (table.n <= 8) {
        const Eigen::MatrixXcd rho = state_from_frame(table);
        const StateVector unit = s.normalized();
        const auto amp = unit.amplitudes();
        const Eigen::Map<const Eigen::VectorXcd> psi(amp.data(), static_cast<Eigen::Index>(amp.size()));
        const double err = (rho - psi * psi.adjoint()).cwiseAbs().maxCoeff();
        rows.emplace_back("roundtrip_max_error", num(err));
    }
    Sink sink(a.out);
    metric_table(sink.out(), rows);
    return 0;
}

void apply_thread_env(int cli_threads) {
    int threads = 0;
    if (const char *env = std::getenv("QUBISM_THREADS")) {
        try {
            threads = std::stoi(env);
        } catch (const std::exception &) {
            throw UsageError("QUBISM_THREADS must be an integer");
        }
    }
    if (cli_threads >= 0) threads = cli_threads;
    if (threads < 0) throw UsageError("thread count must be >= 0");
    kernels::set_num_threads(threads);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Qubistic plots and diagnostics of many-body wavefunctions"};
    app.require_subcommand(1);
    int threads = -1;
    app.add_option("--threads", threads, "Worker threads (0 = auto); overrides QUBISM_THREADS");

    GenArgs gen;
    auto *g = app.add_subcommand("gen", "Generate a state file from a model ground state or a named state");
    g->add_option("--model", gen.model, "heisenberg | j1j2 | itf | itf-inf | aklt");
    g->add_option("--state", gen.state, "ghz | w | dicke | product | uniform | random | random-symmetric | basis");
    g->add_option("--n", gen.n, "Number of sites");
    g->add_option("--bc", gen.bc, "pbc | obc")->capture_default_str();
    g->add_option("--j2", gen.j2, "Next-nearest coupling (j1j2)");
    g->add_option("--gamma", gen.gamma, "Transverse field (itf, itf-inf)");
    g->add_option("--pair-scale", gen.pair_scale, "Pair coupling scale (itf-inf)")->capture_default_str();
    g->add_option("--ne", gen.ne, "Excitations of the Dicke state (default N/2)");
    g->add_option("--alpha", gen.alpha, "Product state |0> weight")->capture_default_str();
    g->add_option("--beta", gen.beta, "Product state |1> weight")->capture_default_str();
    g->add_option("--index", gen.index, "Basis state digits, e.g. 0101 or +0-");
    g->add_option("--level", gen.level, "Eigenstate index, 0 = ground state")->capture_default_str();
    g->add_option("--method", gen.method, "auto | dense | lanczos")->capture_default_str();
    g->add_option("--max-iterations", gen.max_iterations, "Lanczos budget of operator applications")
        ->capture_default_str();
    g->add_option("--seed", gen.seed, "Seed for random states and the Lanczos start vector")->capture_default_str();
    g->add_option("--out", gen.out, "Output QSV1 file ('-' for stdout)")->capture_default_str();

    RenderArgs ren;
    auto *r = app.add_subcommand("render", "Render a state file as a PPM image");
    r->add_option("--in", ren.in, "Input QSV1 file")->required();
    r->add_option("--scheme", ren.scheme, "standard2d | alternative2d | linear1d | triangular | spin1")
        ->capture_default_str();
    r->add_option("--mode", ren.mode, "full | phase")->capture_default_str();
    r->add_option("--px", ren.px, "Pixels per cell (grid schemes)")->capture_default_str();
    r->add_option("--resolution", ren.resolution, "Image width (triangular scheme)")->capture_default_str();
    r->add_option("--gamma", ren.gamma, "Intensity exponent")->capture_default_str();
    r->add_option("--basis", ren.basis, "z | x (x applies a Hadamard on every site)")->capture_default_str();
    r->add_option("--out", ren.out, "Output PPM file ('-' for stdout)")->required();

    AnalyzeArgs an;
    auto *a = app.add_subcommand("analyze", "Quantitative diagnostics, printed as TSV");
    a->require_subcommand(1);
    auto common = [&](CLI::App *sub, bool needs_input = true) {
        if (needs_input) {
            sub->add_option("--in", an.in, "Input QSV1 file ('-' for stdin)")->required();
            sub->add_option("--basis", an.basis, "z | x")->capture_default_str();
        }
        sub->add_option("--out", an.out, "Output TSV ('-' for stdout)")->capture_default_str();
    };
    auto *a_renyi = a->add_subcommand("renyi", "Renyi entropies and dimensions of the plot");
    common(a_renyi);
    a_renyi->add_option("--q", an.q, "Orders")->delimiter(',');
    a_renyi->add_option("--scheme", an.scheme, "Grid scheme")->capture_default_str();
    auto *a_scan = a->add_subcommand("renyi-scan", "Ground state Renyi dimensions along a field grid");
    common(a_scan, false);
    a_scan->add_option("--model", an.model, "itf | itf-inf")->capture_default_str();
    a_scan->add_option("--n", an.n, "Number of sites")->capture_default_str();
    a_scan->add_option("--bc", an.bc, "pbc | obc")->capture_default_str();
    a_scan->add_option("--gamma-grid", an.gamma_grid, "Field values")->delimiter(',');
    a_scan->add_option("--q", an.q, "Orders")->delimiter(',');
    a_scan->add_option("--scheme", an.scheme, "Grid scheme")->capture_default_str();
    auto *a_fourier = a->add_subcommand("fourier", "Spectrum of the 1D plot");
    common(a_fourier);
    auto *a_schmidt = a->add_subcommand("schmidt", "Schmidt decomposition at a cut");
    common(a_schmidt);
    a_schmidt->add_option("--cut", an.cut, "Left block = sites 1..cut")->required();
    auto *a_cc = a->add_subcommand("crosscorr", "Cross-correlation matrix of level-k quadrants");
    common(a_cc);
    a_cc->add_option("--level", an.level, "Quadrant level k")->required();
    a_cc->add_flag("--matrix", an.matrix, "Print matrix entries instead of the spectrum");
    auto *a_quad = a->add_subcommand("quadrants", "Distinct level-k quadrant count");
    common(a_quad);
    a_quad->add_option("--level", an.level, "Quadrant level k")->required();
    a_quad->add_option("--tol", an.tol, "Overlap tolerance")->capture_default_str();
    auto *a_marshall = a->add_subcommand("marshall", "Marshall sign rule check");
    common(a_marshall);
    a_marshall->add_option("--sublattice", an.sublattice, "odd | even")->capture_default_str();
    auto *a_dec = a->add_subcommand("decimation", "Translation-invariance decimation check");
    common(a_dec);
    a_dec->add_option("--k", an.k, "Number of site pairs")->capture_default_str();

    FrameArgs fr;
    auto *f = app.add_subcommand("frame", "Pauli-string frame table and image");
    f->add_option("--in", fr.in, "Input QSV1 file")->required();
    f->add_option("--basis", fr.basis, "z | x")->capture_default_str();
    f->add_option("--out-table", fr.out_table, "Frame TSV (X, Y, f)");
    f->add_option("--out-image", fr.out_image, "Frame PPM image");
    f->add_option("--px", fr.px, "Pixels per cell")->capture_default_str();
    f->add_flag("--include-identity", fr.include_identity, "Let the identity cell set the colour scale");
    f->add_option("--out", fr.out, "Summary TSV ('-' for stdout)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        apply_thread_env(threads);
        if (g->parsed()) return run_gen(gen);
        if (r->parsed()) return run_render(ren);
        if (f->parsed()) return run_frame(fr);
        if (a_renyi->parsed()) return run_renyi(an);
        if (a_scan->parsed()) return run_renyi_scan(an);
        if (a_fourier->parsed()) return run_fourier(an);
        if (a_schmidt->parsed()) return run_schmidt(an);
        if (a_cc->parsed()) return run_crosscorr(an);
        if (a_quad->parsed()) return run_quadrants(an);
        if (a_marshall->parsed()) return run_marshall(an);
        if (a_dec->parsed()) return run_decimation(an);
    } catch (const ConvergenceError &e) {
        std::cerr << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
        return 3;
    } catch (const NumericalError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
