#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mfdcca/csv.hpp"
#include "mfdcca/errors.hpp"
#include "mfdcca/rng.hpp"

using namespace mfdcca;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }

    void write(const std::string& content) const {
        std::ofstream out(path);
        out << content;
    }
};

}  // namespace

TEST_CASE("17-digit serialization round-trips doubles") {
    GaussianRng rng(2);
    for (int i = 0; i < 200; ++i) {
        const double v = rng.gaussian() * std::pow(10.0, (i % 13) - 6);
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("load pair with header and named columns") {
    TempFile f("mfdcca_test_pair.csv");
    f.write("x,y\n1,2\n3,4\n5,6\n");
    const SeriesPair a = load_series_csv(f.path);
    CHECK(a.x == std::vector<double>{1, 3, 5});
    CHECK(a.y == std::vector<double>{2, 4, 6});
    const SeriesPair b = load_series_csv(f.path, "y", "x");
    CHECK(b.x == std::vector<double>{2, 4, 6});
    const SeriesPair c = load_series_csv(f.path, "1", "0");
    CHECK(c.x == std::vector<double>{2, 4, 6});
    CHECK_THROWS_AS(load_series_csv(f.path, "z", "x"), DataError);
}

TEST_CASE("headerless files parse from the first row") {
    TempFile f("mfdcca_test_nohdr.csv");
    f.write("1.5,2.5\n3.5,4.5\n");
    const SeriesPair a = load_series_csv(f.path);
    CHECK(a.x == std::vector<double>{1.5, 3.5});
}

TEST_CASE("blank or non-numeric cells are named by row") {
    TempFile f("mfdcca_test_blank.csv");
    std::string content = "x,y\n";
    for (int i = 0; i < 30; ++i) {
        content += i == 15 ? "1.0,\n" : "1.0,2.0\n";  // blank cell on file line 17
    }
    f.write(content);
    CHECK_THROWS_WITH_AS(load_series_csv(f.path),
                         doctest::Contains("row 17"), DataError);
}

TEST_CASE("ragged rows are rejected") {
    TempFile f("mfdcca_test_ragged.csv");
    f.write("x,y\n1,2\n1,2,3\n");
    CHECK_THROWS_WITH_AS(load_series_csv(f.path), doctest::Contains("ragged"), DataError);
}

TEST_CASE("missing file and empty file") {
    CHECK_THROWS_AS(load_series_csv("/nonexistent/of/course.csv"), DataError);
    TempFile f("mfdcca_test_empty.csv");
    f.write("");
    CHECK_THROWS_AS(load_series_csv(f.path), DataError);
}

TEST_CASE("series round trip through write and load") {
    TempFile f("mfdcca_test_roundtrip.csv");
    GaussianRng rng(31);
    SeriesPair pair;
    for (int i = 0; i < 100; ++i) {
        pair.x.push_back(rng.gaussian() * 1e-3);
        pair.y.push_back(rng.gaussian() * 1e6);
    }
    write_series_csv(f.path, pair);
    const SeriesPair back = load_series_csv(f.path);
    CHECK(back.x == pair.x);
    CHECK(back.y == pair.y);
}

TEST_CASE("field loader requires rectangles") {
    TempFile f("mfdcca_test_field.csv");
    f.write("1,2,3\n4,5,6\n");
    const Field2D field = load_field_csv(f.path);
    CHECK(field.n1 == 2);
    CHECK(field.n2 == 3);
    CHECK(field.at(1, 2) == 6.0);

    TempFile g("mfdcca_test_field_bad.csv");
    g.write("1,2,3\n4,5\n");
    CHECK_THROWS_AS(load_field_csv(g.path), DataError);
}
