#include "eulera/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "test_helpers.hpp"

using namespace eulera;
using namespace eulera::testing;

TEST_CASE("EAF1 round trip is bit exact") {
    const Grid g = make_grid(2.0 * M_PI, 8, 12);
    const ScalarField f = random_smooth_field(g, 5u);
    const std::string path = std::filesystem::temp_directory_path() / "eulera_io_test.eaf1";
    write_eaf1(path, f);
    const RawField raw = read_eaf1(path);
    CHECK(raw.n1 == g.n1);
    CHECK(raw.n2 == g.n2);
    CHECK(raw.L == g.L);
    const ScalarField back = attach(g, raw);
    CHECK((back.v - f.v).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("EAF1 rejects garbage") {
    const std::string path = std::filesystem::temp_directory_path() / "eulera_io_bad.eaf1";
    {
        std::ofstream os(path, std::ios::binary);
        os << "not a field file";
    }
    CHECK_THROWS_AS(read_eaf1(path), ValidationError);
    CHECK_THROWS_AS(read_eaf1("/nonexistent/nowhere.eaf1"), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("attach validates the grid") {
    const Grid g = make_grid(2.0 * M_PI, 8, 12);
    const Grid other = make_grid(2.0 * M_PI, 8, 16);
    const std::string path = std::filesystem::temp_directory_path() / "eulera_io_grid.eaf1";
    write_eaf1(path, ScalarField(g));
    CHECK_THROWS_AS(attach(other, read_eaf1(path)), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("CSV output is deterministic") {
    const auto tmp = std::filesystem::temp_directory_path();
    const std::string p1 = tmp / "eulera_csv_a.csv", p2 = tmp / "eulera_csv_b.csv";
    for (const std::string& p : {p1, p2}) {
        CsvWriter w(p, {"a", "b"});
        w.row({1.0 / 3.0, 2.0e-17});
        w.row({-0.0, 1e300});
        w.close();
    }
    std::ifstream f1(p1), f2(p2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(s1.find("0.33333333333333331") != std::string::npos);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}
