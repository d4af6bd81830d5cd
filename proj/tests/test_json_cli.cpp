#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "flatscan/error.hpp"
#include "flatscan/grassmann.hpp"
#include "flatscan/json_io.hpp"
#include "flatscan/shape.hpp"
#include "flatscan/transform.hpp"

using namespace flatscan;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

DphtResult small_scan(bool with_euler) {
    const Shape ring = make_ring_grid(24, 10, 4);
    const auto flats = sample_flats(1, 2, 4, ring.bounding_radius, 11);
    ScanOptions options;
    options.euler_curves = with_euler;
    options.slice_chi = with_euler;
    return dpht_scan(ring, 1, flats, options, "ring24");
}

}  // namespace

TEST_CASE("diagram JSON renders inf and sorts points") {
    PersistenceDiagram d;
    d.degree = 1;
    d.points = {{1.5, kInfiniteDeath}, {0.25, 2.0}};
    d.normalize();
    const std::string text = diagram_to_json(d);
    CHECK(text == R"({"degree":1,"points":[[0.25,2],[1.5,"inf"]]})");
    const PersistenceDiagram back = diagram_from_json(text);
    CHECK(back.degree == 1);
    CHECK(back.points == d.points);
}

TEST_CASE("scan results round-trip byte-identically") {
    for (bool with_euler : {false, true}) {
        const DphtResult r = small_scan(with_euler);
        const std::string text = dpht_result_to_json(r);
        const DphtResult back = dpht_result_from_json(text);
        CHECK(dpht_result_to_json(back) == text);
        CHECK(same_flat_lists(r, back));
        CHECK(back.shape_id == "ring24");
        REQUIRE(back.diagrams.size() == r.diagrams.size());
        for (std::size_t i = 0; i < r.diagrams.size(); ++i) {
            CHECK(back.diagrams[i][0].points == r.diagrams[i][0].points);
        }
        if (with_euler) {
            CHECK(back.euler_curves == r.euler_curves);
            CHECK(back.slice_chi == r.slice_chi);
        }
    }
}

TEST_CASE("scan emission is deterministic") {
    CHECK(dpht_result_to_json(small_scan(true)) == dpht_result_to_json(small_scan(true)));
}

TEST_CASE("flat-list comparison detects mismatches") {
    DphtResult a = small_scan(false);
    DphtResult b = a;
    CHECK(same_flat_lists(a, b));
    b.flats[0].displacement(0) += 1e-12;
    CHECK_FALSE(same_flat_lists(a, b));
}

TEST_CASE("malformed result JSON raises") {
    CHECK_THROWS_AS(dpht_result_from_json("{"), error);
    CHECK_THROWS_AS(dpht_result_from_json(R"({"m":1})"), error);
    CHECK_THROWS_AS(diagram_from_json(R"({"degree":0,"points":[[0,"nan"]]})"), error);
}

#ifdef FLATSCAN_CLI_BIN

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FLATSCAN_CLI_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string capture_cli(const std::string& args) {
    const std::string path = "/tmp/flatscan_cli_capture.txt";
    const std::string cmd =
        std::string(FLATSCAN_CLI_BIN) + " " + args + " >" + path + " 2>&1";
    std::system(cmd.c_str());
    return slurp(path);
}

void write_tmp(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("cli exit-code contract") {
    write_tmp("/tmp/flatscan_ring.grid", serialize_grid(make_ring_grid(24, 10, 4)));

    SUBCASE("scan writes JSON and exits zero") {
        CHECK(run_cli("scan --input /tmp/flatscan_ring.grid --m 1 --num-flats 4 --seed 3 "
                      "--out /tmp/flatscan_a.json") == 0);
        const DphtResult r = dpht_result_from_json(slurp("/tmp/flatscan_a.json"));
        CHECK(r.flats.size() == 4);
        CHECK(r.diagrams[0].size() == 1);  // degree 0 only for m = 1
    }

    SUBCASE("scan with max-degree emits two diagrams per flat") {
        CHECK(run_cli("scan --input /tmp/flatscan_ring.grid --m 1 --num-flats 2 --seed 3 "
                      "--max-degree 1 --out /tmp/flatscan_b.json") == 0);
        const DphtResult r = dpht_result_from_json(slurp("/tmp/flatscan_b.json"));
        CHECK(r.diagrams[0].size() == 2);
    }

    SUBCASE("missing input file exits 2 and names the path") {
        const std::string out = capture_cli("scan --input /tmp/no_such_file.grid --m 1 "
                                            "--out /tmp/x.json");
        CHECK(run_cli("scan --input /tmp/no_such_file.grid --m 1 --out /tmp/x.json") == 2);
        CHECK(out.find("/tmp/no_such_file.grid") != std::string::npos);
    }

    SUBCASE("identical scans compare to zero; mismatched flats exit 3") {
        run_cli("scan --input /tmp/flatscan_ring.grid --m 1 --num-flats 4 --seed 3 "
                "--out /tmp/flatscan_c.json");
        const std::string out = capture_cli("compare --a /tmp/flatscan_c.json "
                                            "--b /tmp/flatscan_c.json");
        CHECK(out.find("degree 0") != std::string::npos);
        CHECK(out.find("max = 0 ") != std::string::npos);
        CHECK(run_cli("scan --input /tmp/flatscan_ring.grid --m 1 --num-flats 4 --seed 4 "
                      "--out /tmp/flatscan_d.json") == 0);
        CHECK(run_cli("compare --a /tmp/flatscan_c.json --b /tmp/flatscan_d.json") == 3);
    }

    SUBCASE("instability renders inf through compare") {
        write_tmp("/tmp/flatscan_filled.grid", serialize_grid(make_filled_ring_grid(24, 10)));
        run_cli("scan --input /tmp/flatscan_ring.grid --m 1 --num-flats 3 --seed 5 "
                "--max-degree 1 --out /tmp/flatscan_e.json");
        run_cli("scan --input /tmp/flatscan_filled.grid --m 1 --num-flats 3 --seed 5 "
                "--max-degree 1 --out /tmp/flatscan_f.json");
        const std::string out =
            capture_cli("compare --a /tmp/flatscan_e.json --b /tmp/flatscan_f.json");
        CHECK(out.find("degree 1: bottleneck max = inf") != std::string::npos);
    }

    SUBCASE("plot accepts scan output and is byte-deterministic") {
        run_cli("euler --input /tmp/flatscan_ring.grid --m 1 --num-flats 2 --seed 3 "
                "--out /tmp/flatscan_g.json");
        CHECK(run_cli("plot --input /tmp/flatscan_g.json --out /tmp/flatscan_g.svg") == 0);
        CHECK(run_cli("plot --input /tmp/flatscan_g.json --out /tmp/flatscan_h.svg") == 0);
        CHECK(slurp("/tmp/flatscan_g.svg") == slurp("/tmp/flatscan_h.svg"));
        CHECK(slurp("/tmp/flatscan_g.svg").find("<svg") == 0);

        write_tmp("/tmp/flatscan_d0.json", R"({"degree":0,"points":[[0,"inf"]]})");
        CHECK(run_cli("plot --input /tmp/flatscan_d0.json --out /tmp/flatscan_d0.svg") == 0);
        write_tmp("/tmp/flatscan_empty.json", R"({"degree":0,"points":[]})");
        CHECK(run_cli("plot --input /tmp/flatscan_empty.json --out /tmp/flatscan_empty.svg") == 0);
        CHECK(slurp("/tmp/flatscan_empty.svg").find("line") != std::string::npos);

        write_tmp("/tmp/flatscan_bad.json", "{nope");
        CHECK(run_cli("plot --input /tmp/flatscan_bad.json --out /tmp/flatscan_bad.svg") == 2);
    }

    SUBCASE("demos pass") {
        CHECK(run_cli("demo chi-table") == 0);
        CHECK(run_cli("demo annulus") == 0);
    }

    SUBCASE("scan determinism is byte-level") {
        run_cli("scan --input /tmp/flatscan_ring.grid --m 1 --num-flats 4 --seed 9 "
                "--out /tmp/flatscan_i.json");
        run_cli("scan --input /tmp/flatscan_ring.grid --m 1 --num-flats 4 --seed 9 "
                "--out /tmp/flatscan_j.json");
        CHECK(slurp("/tmp/flatscan_i.json") == slurp("/tmp/flatscan_j.json"));
    }
}

#endif  // FLATSCAN_CLI_BIN
