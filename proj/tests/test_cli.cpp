#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "qubism/state.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(QUBISM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Value of `metric` in a two-column metric/value table.
std::string metric(const std::string &table, const std::string &name) {
    std::istringstream in(table);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(name + "\t", 0) == 0) return line.substr(name.size() + 1);
    return {};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "qubism_cli_test") { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string &name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("gen writes named states") {
    TempDir dir;
    REQUIRE(run("gen --state ghz --n 4 --out " + dir / "ghz.qsv").code == 0);
    const auto ghz = qubism::load_state(dir / "ghz.qsv");
    int nonzero = 0;
    for (const auto &a : ghz.amplitudes()) nonzero += a != 0.0;
    CHECK(nonzero == 2);

    REQUIRE(run("gen --state dicke --n 14 --ne 7 --out " + dir / "d.qsv").code == 0);
    const auto d = qubism::load_state(dir / "d.qsv");
    nonzero = 0;
    for (const auto &a : d.amplitudes()) nonzero += a != 0.0;
    CHECK(nonzero == 3432);

    REQUIRE(run("gen --state basis --index +0- --out " + dir / "s1.qsv").code == 0);
    CHECK(qubism::load_state(dir / "s1.qsv").local_dim() == 3);
}

TEST_CASE("gen solves model ground states") {
    TempDir dir;
    REQUIRE(run("gen --model heisenberg --n 12 --bc pbc --out " + dir / "gs.qsv").code == 0);
    const auto gs = qubism::load_state(dir / "gs.qsv");
    CHECK(gs.dim() == 4096);
    CHECK(gs.is_normalized(1e-12));
    const auto r = run("analyze marshall --in " + dir / "gs.qsv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("metric\tvalue\n", 0) == 0);
    CHECK(metric(r.out, "passes") == "true");
}

TEST_CASE("analyze subcommands") {
    TempDir dir;
    REQUIRE(run("gen --state dicke --n 4 --ne 2 --out " + dir / "d4.qsv").code == 0);
    const auto s = run("analyze schmidt --in " + dir / "d4.qsv --cut 2");
    CHECK(s.code == 0);
    CHECK(metric(s.out, "rank") == "3");
    CHECK(std::stod(metric(s.out, "entropy")) == doctest::Approx(1.2516).epsilon(1e-4));

    REQUIRE(run("gen --state uniform --n 6 --out " + dir / "u.qsv").code == 0);
    const auto r = run("analyze renyi --in " + dir / "u.qsv --q 0");
    CHECK(r.code == 0);
    CHECK(r.out == "q\tentropy\tdimension\n0\t6\t2\n");

    const auto f = run("analyze fourier --in " + dir / "u.qsv");
    CHECK(f.out.rfind("momentum\tlog2_momentum\tmagnitude\n", 0) == 0);

    const auto q = run("analyze quadrants --in " + dir / "d4.qsv --level 1");
    CHECK(metric(q.out, "classes") == "3");

    const auto c = run("analyze crosscorr --in " + dir / "d4.qsv --level 1");
    CHECK(c.out.rfind("index\teigenvalue\n", 0) == 0);

    const auto dec = run("analyze decimation --in " + dir / "u.qsv");
    CHECK(std::stod(metric(dec.out, "max_deviation")) < 1e-12);

    CHECK(run("analyze schmidt --in " + dir / "d4.qsv --cut 4").code == 2);
    CHECK(run("analyze crosscorr --in " + dir / "d4.qsv --level 2").code == 2);
}

TEST_CASE("renyi-scan prints one row per field value") {
    const auto r = run("analyze renyi-scan --model itf --n 6 --gamma-grid 0.5,1.5 --q 1,2");
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "gamma\td1\td2\tslope_d1\tslope_d2");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("render is deterministic and validates its scheme") {
    TempDir dir;
    REQUIRE(run("gen --state random --n 6 --seed 9 --out " + dir / "a.qsv").code == 0);
    REQUIRE(run("gen --state random --n 6 --seed 9 --out " + dir / "b.qsv").code == 0);
    CHECK(slurp(dir / "a.qsv") == slurp(dir / "b.qsv"));
    REQUIRE(run("render --in " + dir / "a.qsv --px 3 --out " + dir / "a.ppm").code == 0);
    REQUIRE(run("render --in " + dir / "a.qsv --px 3 --out " + dir / "b.ppm").code == 0);
    CHECK(slurp(dir / "a.ppm") == slurp(dir / "b.ppm"));
    CHECK(slurp(dir / "a.ppm").rfind("P6\n24 24\n255\n", 0) == 0);
    CHECK(run("render --in " + dir / "a.qsv --scheme triangular --resolution 64 --out " + dir / "t.ppm").code == 0);
    CHECK(run("render --in " + dir / "a.qsv --mode phase --basis x --out " + dir / "p.ppm").code == 0);

    CHECK(run("render --in " + dir / "a.qsv --scheme hexagonal --out " + dir / "x.ppm").code == 2);
    CHECK(run("render --in " + dir / "a.qsv --scheme spin1 --out " + dir / "x.ppm").code == 2);
    CHECK(run("render --in " + dir / "missing.qsv --out " + dir / "x.ppm").code == 2);
    CHECK(run("render --in " + dir / "a.qsv").code == 2);
}

TEST_CASE("frame command") {
    TempDir dir;
    REQUIRE(run("gen --state basis --index 0 --out " + dir / "up.qsv").code == 0);
    const auto r = run("frame --in " + dir / "up.qsv --out-table " + dir / "f.tsv --out-image " + dir / "f.ppm");
    CHECK(r.code == 0);
    CHECK(slurp(dir / "f.tsv") == "X\tY\tf\n0\t0\t1\n1\t0\t0\n0\t1\t0\n1\t1\t1\n");
    CHECK(slurp(dir / "f.ppm").rfind("P6\n16 16\n255\n", 0) == 0);
    CHECK(std::stod(metric(r.out, "purity")) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::stod(metric(r.out, "roundtrip_max_error")) < 1e-10);

    REQUIRE(run("gen --model aklt --n 4 --out " + dir / "aklt.qsv").code == 0);
    CHECK(run("frame --in " + dir / "aklt.qsv").code == 2);
}

TEST_CASE("exit codes") {
    TempDir dir;
    CHECK(run("").code == 2);
    CHECK(run("gen --state nonsense --n 3").code == 2);
    CHECK(run("gen --model itf --n 6 --gamma -1").code == 2);
    CHECK(run("gen --model heisenberg --n 14 --method lanczos --max-iterations 4 --out " + dir / "x.qsv").code == 3);
    CHECK(run("--help").code == 0);
    {
        std::ofstream bad(dir / "bad.qsv");
        bad << "QSV1\n2 2\n1 0\n";
    }
    CHECK(run("analyze marshall --in " + dir / "bad.qsv").code == 2);
}

TEST_CASE("thread cap from the environment") {
    TempDir dir;
    CHECK(run("--threads 1 gen --state ghz --n 3 --out " + dir / "g.qsv").code == 0);
    const std::string cmd = "QUBISM_THREADS=1 " + std::string(QUBISM_CLI_PATH) + " gen --state ghz --n 3 --out " + dir / "h.qsv";
    CHECK(std::system(cmd.c_str()) == 0);
    const std::string bad = "QUBISM_THREADS=abc " + std::string(QUBISM_CLI_PATH) + " gen --state ghz --n 3 --out " + dir / "h.qsv 2>/dev/null";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
