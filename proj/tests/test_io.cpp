#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lowrank/io.hpp"
#include "lowrank/rng.hpp"

using namespace lowrank;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("lowrank_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("array files are read in column-major order") {
    TempDir dir;
    const std::string path = dir.file("a.mtx");
    write_text(path,
               "%%MatrixMarket matrix array real general\n"
               "2 2\n1\n2\n3\n4\n");
    const MatrixX<double> a = read_matrix_market(path);
    CHECK(a(0, 0) == 1.0);
    CHECK(a(1, 0) == 2.0);
    CHECK(a(0, 1) == 3.0);
    CHECK(a(1, 1) == 4.0);
}

TEST_CASE("coordinate files populate sparse entries") {
    TempDir dir;
    const std::string path = dir.file("c.mtx");
    write_text(path,
               "%%MatrixMarket matrix coordinate real general\n"
               "% a comment line\n"
               "3 3 1\n"
               "1 1 5.0\n");
    const MatrixX<double> a = read_matrix_market(path);
    CHECK(a(0, 0) == 5.0);
    CHECK(a.cwiseAbs().sum() == 5.0);
}

TEST_CASE("array round-trip is entrywise exact") {
    TempDir dir;
    const std::string path = dir.file("rt.mtx");
    const MatrixX<double> a = gaussian_matrix(20, 20, 12);
    write_matrix_market(path, a, MarketFormat::Array);
    const MatrixX<double> b = read_matrix_market(path);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coordinate round-trip is entrywise exact") {
    TempDir dir;
    const std::string path = dir.file("rt_coord.mtx");
    MatrixX<double> a = MatrixX<double>::Zero(9, 7);
    a(0, 0) = 1.25;
    a(8, 6) = -3.5e-9;
    a(4, 3) = 0.1;  // not exactly representable, still must round-trip
    write_matrix_market(path, a, MarketFormat::Coordinate);
    const MatrixX<double> b = read_matrix_market(path);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("binary round-trip is exact") {
    TempDir dir;
    const std::string path = dir.file("m.bin");
    const MatrixX<double> a = gaussian_matrix(13, 7, 99);
    write_matrix_binary(path, a);
    const MatrixX<double> b = read_matrix_binary(path);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed inputs report the offending line") {
    TempDir dir;
    SUBCASE("bad banner") {
        const std::string path = dir.file("bad1.mtx");
        write_text(path, "%%NotMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
        CHECK_THROWS_AS(read_matrix_market(path), ParseError);
    }
    SUBCASE("complex field rejected") {
        const std::string path = dir.file("bad2.mtx");
        write_text(path, "%%MatrixMarket matrix array complex general\n1 1\n1 0\n");
        CHECK_THROWS_WITH_AS(read_matrix_market(path),
                             doctest::Contains("unsupported field"), ParseError);
    }
    SUBCASE("out-of-bounds coordinate") {
        const std::string path = dir.file("bad3.mtx");
        write_text(path,
                   "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
        CHECK_THROWS_WITH_AS(read_matrix_market(path), doctest::Contains(":3:"),
                             ParseError);
    }
    SUBCASE("non-real value") {
        const std::string path = dir.file("bad4.mtx");
        write_text(path, "%%MatrixMarket matrix array real general\n1 1\nabc\n");
        CHECK_THROWS_WITH_AS(read_matrix_market(path),
                             doctest::Contains("invalid real value"), ParseError);
    }
    SUBCASE("truncated array payload") {
        const std::string path = dir.file("bad5.mtx");
        write_text(path, "%%MatrixMarket matrix array real general\n2 2\n1\n2\n");
        CHECK_THROWS_AS(read_matrix_market(path), ParseError);
    }
}

TEST_CASE("empty record lists produce a header-only csv") {
    TempDir dir;
    const std::string path = dir.file("empty.csv");
    write_results_csv(path, {});
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == kResultsCsvHeader);
    CHECK(!std::getline(in, line));
    CHECK(read_results_csv(path).empty());
}

TEST_CASE("single record round-trip") {
    TempDir dir;
    const std::string path = dir.file("one.csv");
    ResultRecord r;
    r.matrix_id = "set1";
    r.method = "cur-id";
    r.k = 10;
    r.trial_seed = 42;
    r.rel_spectral = 1.25e-3;
    r.rel_frob = 2.5e-3;
    r.elapsed_ms = 17.25;
    r.storage_units = 40100;
    write_results_csv(path, {r});
    const auto records = read_results_csv(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].matrix_id == r.matrix_id);
    CHECK(records[0].method == r.method);
    CHECK(records[0].k == r.k);
    CHECK(records[0].trial_seed == r.trial_seed);
    CHECK(records[0].rel_spectral == r.rel_spectral);
    CHECK(records[0].rel_frob == r.rel_frob);
    CHECK(records[0].elapsed_ms == r.elapsed_ms);
    CHECK(records[0].storage_units == r.storage_units);
}

TEST_CASE("a hundred records survive bitwise") {
    TempDir dir;
    const std::string path = dir.file("many.csv");
    CounterRng rng(6);
    std::vector<ResultRecord> records;
    for (int i = 0; i < 100; ++i) {
        ResultRecord r;
        r.matrix_id = "m" + std::to_string(i % 7);
        r.method = i % 2 == 0 ? "id" : "rsvd";
        r.k = 1 + i % 30;
        r.trial_seed = rng.next_u64();
        r.rel_spectral = rng.next_unit();
        r.rel_frob = rng.next_unit();
        r.elapsed_ms = 1000.0 * rng.next_unit();
        r.storage_units = static_cast<std::int64_t>(rng.next_index(1 << 20));
        records.push_back(std::move(r));
    }
    write_results_csv(path, records);
    const auto readback = read_results_csv(path);
    REQUIRE(readback.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(readback[i].rel_spectral == records[i].rel_spectral);
        CHECK(readback[i].rel_frob == records[i].rel_frob);
        CHECK(readback[i].elapsed_ms == records[i].elapsed_ms);
        CHECK(readback[i].trial_seed == records[i].trial_seed);
    }
}

TEST_CASE("csv schema violations are rejected") {
    TempDir dir;
    const std::string path = dir.file("bad.csv");
    write_text(path, "wrong,header\n");
    CHECK_THROWS_AS(read_results_csv(path), ParseError);
    write_text(path, std::string(kResultsCsvHeader) + "\nid,svd,0,1,0.1,0.1,1,100\n");
    CHECK_THROWS_AS(read_results_csv(path), ParseError);  // k < 1
}
