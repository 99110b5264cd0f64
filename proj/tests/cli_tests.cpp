// End-to-end runs of the command-line tool.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string data(const std::string& name) { return std::string(BDREP_SOURCE_DIR) + "/data/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args) {
    const std::string err_path = "cli_test_stderr.txt";
    const std::string cmd = std::string(BDREP_CLI) + " " + args + " 2>" + err_path;
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    std::remove(err_path.c_str());
    return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
    CHECK(run("").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("normalize").code == 1);
    CHECK(run("normalize " + data("spherical.json") + " --cap 5").code == 1);
    const Run missing = run("normalize " + data("missing.json"));
    CHECK(missing.code == 1);
    CHECK(missing.err.find("missing.json") != std::string::npos);
}

TEST_CASE("normalize") {
    const Run r = run("normalize " + data("spherical-unscaled.json"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["form_convention"] == "trace");
    CHECK(j.contains("forms"));
    CHECK(r.err.find("3") != std::string::npos);  // report on stderr names rho

    // the output normalizes to itself
    const std::string path = "cli_normalized.json";
    REQUIRE(run("normalize " + data("spherical-unscaled.json") + " --output " + path).code == 0);
    const Run again = run("normalize " + path + " --output " + path + ".2");
    CHECK(again.code == 0);
    CHECK(again.out.find("rho 1") != std::string::npos);
    std::remove(path.c_str());
    std::remove((path + ".2").c_str());

    CHECK(run("normalize " + data("zero-maps.json")).code == 2);
}

TEST_CASE("coefficients") {
    const Run r = run("coefficients " + data("spherical.json") + " " + data("spherical-vector.json") + " e a b aa ab Ab");
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == std::vector<std::string>{"word", "re", "im", "backend", "depth"});
    const double expect[] = {1.0, 1 / std::sqrt(3.0), 0.0, 1 / 3.0, 1 / 3.0, 0.0};
    for (int i = 0; i < 6; ++i) CHECK(std::abs(std::stod(rows[static_cast<std::size_t>(i + 1)][1]) - expect[i]) <= 1e-12);

    const Run both = run("coefficients " + data("random-rank2.json") + " " + data("random-vector.json") +
                         " abAB aabb --backend both");
    REQUIRE(both.code == 0);
    for (const auto& row : csv_rows(both.out))
        if (row[0] != "word") CHECK(std::stod(row[5]) <= 1e-10);

    const Run exact = run("coefficients " + data("spherical.json") + " " + data("spherical-vector.json") + " a --backend exact");
    CHECK(exact.code == 0);
    CHECK(exact.out.find("1/3*sqrt(3)") != std::string::npos);

    const Run empty = run("coefficients " + data("spherical.json") + " " + data("spherical-vector.json"));
    CHECK(empty.code == 0);
    CHECK(csv_rows(empty.out).size() == 1);

    const Run cap = run("coefficients " + data("spherical.json") + " " + data("spherical-vector.json") +
                        " abababab --backend brute --cap 1000");
    CHECK(cap.code == 3);
    CHECK(cap.err.find("abababab") != std::string::npos);

    CHECK(run("coefficients " + data("spherical.json") + " " + data("spherical-vector.json") + " xyz").code == 1);
}

TEST_CASE("decompose") {
    const Run r = run("decompose " + data("two-component.json"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["components"].size() == 2);
    const Run one = run("decompose " + data("spherical.json"));
    CHECK(nlohmann::json::parse(one.out)["components"].size() == 1);
}

TEST_CASE("induce writes a system that loads again") {
    const std::string path = "cli_induced.json", layout = "cli_layout.json";
    const Run r = run("induce " + data("rank3-spherical.json") + " " + data("index2.json") + " --trials 3 --output " + path +
                      " --layout " + layout);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["dims"]["a"] == 4);
    CHECK(j["dims"]["b"] == 2);
    CHECK(nlohmann::json::parse(slurp(layout)).is_object());
    const Run d = run("decompose " + path);
    CHECK(d.code == 0);

    // index 1 reproduces the input system
    const Run id = run("induce " + data("spherical.json") + " " + data("index1.json") + " --trials 2");
    REQUIRE(id.code == 0);
    const auto a = nlohmann::json::parse(id.out), b = nlohmann::json::parse(slurp(data("spherical.json")));
    CHECK(a["maps"] == b["maps"]);
    std::remove(path.c_str());
    std::remove(layout.c_str());

    CHECK(run("induce " + data("spherical.json") + " " + data("index2.json")).code == 1);  // wrong subgroup alphabet
}

TEST_CASE("outputs are deterministic") {
    const std::string args = "induce " + data("rank3-spherical-b.json") + " " + data("index2-b.json") + " --trials 2";
    const Run x = run(args), y = run(args);
    CHECK(x.code == 0);
    CHECK(x.out == y.out);
    CHECK(x.err == y.err);
    const std::string h = "herz " + data("random-rank2.json") + " " + data("random-vector.json") + " --radius 2";
    CHECK(run(h).out == run(h + " --threads 3").out);
    const std::string c = "coefficients " + data("random-rank2.json") + " " + data("random-vector.json") + " abAB --backend brute";
    CHECK(run(c).out == run(c + " --threads 4").out);
}

TEST_CASE("virtually free induction") {
    const Run r = run("vf-induce " + data("spherical.json") + " --trials 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(run("vf-induce " + data("spherical.json") + " --trials 3 --datum " + data("psl2z-table.json")).code == 0);
    const Run bad = run("vf-induce " + data("spherical.json") + " --datum " + data("infinite-dihedral.json"));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("rank") != std::string::npos);
}

TEST_CASE("herz and the power demo") {
    const Run h = run("herz " + data("spherical.json") + " " + data("spherical-vector.json") + " --radius 2");
    REQUIRE(h.code == 0);
    CHECK(h.out.find("all pass") != std::string::npos);
    CHECK(csv_rows(h.out).size() == 1 + 17);
    const Run d = run("demo-no-hc " + data("spherical.json") + " " + data("spherical-vector.json") + " --word a --max-power 4");
    REQUIRE(d.code == 0);
    const auto rows = csv_rows(d.out);
    REQUIRE(rows.size() == 5);
    CHECK(std::abs(std::stod(rows[1][2]) - 1 / std::sqrt(3.0)) <= 1e-12);
    CHECK(d.out.find("strictly decreasing: yes") != std::string::npos);
}

TEST_CASE("selftest") {
    const Run r = run("selftest");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
