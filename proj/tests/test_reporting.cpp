#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "minpart/report.hpp"
#include "minpart/svg.hpp"

using namespace minpart;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "minpart_report_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunConfig demo_config() {
    RunConfig cfg;
    cfg.command = "spectrum";
    cfg.params = {{"a", "3.14"}, {"count", "4"}};
    return cfg;
}

}  // namespace

TEST_CASE("fnv-1a test vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(hash_hex(0xcbf29ce484222325ULL) == "cbf29ce484222325");
    CHECK(hash_hex(0x1ULL) == "0000000000000001");
}

TEST_CASE("config serialization carries every reproduction field") {
    const auto j = config_json(demo_config());
    CHECK(j.at("command") == "spectrum");
    CHECK(j.at("params").at("a") == "3.14");
    CHECK(j.at("params").at("count") == "4");
    CHECK(j.at("seed").get<std::uint64_t>() == 0x5EEDULL);
    CHECK(j.at("tol").get<double>() == 1e-8);
    CHECK(j.at("threads").get<int>() == 0);
}

TEST_CASE("artifacts are self-checking") {
    nlohmann::json body;
    body["levels"] = {2.0, 5.0, 5.0};
    auto artifact = finalize_artifact(body, demo_config());
    REQUIRE(artifact.contains("content_hash"));
    REQUIRE(artifact.contains("config"));
    CHECK(validate_artifact(artifact));

    auto tampered = artifact;
    tampered["levels"][0] = 2.0001;
    CHECK_FALSE(validate_artifact(tampered));

    auto stripped = artifact;
    stripped.erase("content_hash");
    CHECK_FALSE(validate_artifact(stripped));
    CHECK_FALSE(validate_artifact(nlohmann::json::array()));
}

TEST_CASE("json artifacts round-trip through disk and stay deterministic") {
    const auto dir = scratch_dir();
    nlohmann::json body;
    body["value"] = 35.0 / 3.0;
    const auto artifact = finalize_artifact(body, demo_config());

    const auto p1 = dir / "roundtrip1.json";
    const auto p2 = dir / "roundtrip2.json";
    write_json_artifact(p1, artifact);
    write_json_artifact(p2, artifact);

    const std::string bytes = slurp(p1);
    CHECK(bytes == slurp(p2));
    CHECK(bytes.back() == '\n');
    CHECK(validate_artifact(nlohmann::json::parse(bytes)));

    // the temp file from the atomic write must be gone
    for (const auto& entry : fs::directory_iterator(dir))
        CHECK(entry.path().string().find(".tmp~") == std::string::npos);
}

TEST_CASE("csv artifacts use a fixed header and defensive quoting") {
    const auto dir = scratch_dir();
    const auto path = dir / "table.csv";
    write_csv_artifact(path, {"name", "note"},
                       {{"row1", "x,y"}, {"row2", "say \"hi\""}});
    CHECK(slurp(path) ==
          "name,note\n"
          "row1,\"x,y\"\n"
          "row2,\"say \"\"hi\"\"\"\n");

    CHECK_THROWS_AS(write_csv_artifact(path, {"one", "two"}, {{"lonely"}}),
                    std::invalid_argument);
}

TEST_CASE("svg figures are self-contained and deterministic") {
    const auto set = nodal_contours({1.0, 0.0}, std::sqrt(3.0 / 8.0), 64);
    const std::string svg = nodal_family_svg({1.0, 0.0}, std::sqrt(3.0 / 8.0), set);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<path") != std::string::npos);
    CHECK(svg == nodal_family_svg({1.0, 0.0}, std::sqrt(3.0 / 8.0), set));

    const auto dir = scratch_dir();
    const auto path = dir / "figure.svg";
    write_svg_atomic(path, svg);
    CHECK(slurp(path) == svg);
}

TEST_CASE("partition figure renders labels and caption") {
    const auto sq = RectGeometry::from_sides(3.14159265358979323846,
                                             3.14159265358979323846);
    const Grid g = Grid::node_lattice(sq, 19, 19);
    std::vector<int> labels(g.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            labels[g.id(i, j)] = i == 9 ? 0 : (i < 9 ? 1 : 2);
    const auto part = evaluate_partition(g, labels);
    const std::string svg = partition_svg(part);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("rect") != std::string::npos);
    CHECK(svg == partition_svg(part));
}
