#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pgq/family.hpp"
#include "pgq/report.hpp"

using nlohmann::json;

namespace {

std::string bin() {
    const char* b = std::getenv("PGQ_BIN");
    REQUIRE(b != nullptr);
    return b;
}

std::string tmpdir() {
    const char* t = std::getenv("PGQ_TMP");
    return t ? t : ".";
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

json load(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

} // namespace

TEST_CASE("exit code contract") {
    CHECK(run("census --n 2 --q 2 --sign +") == 0);
    CHECK(run("census --n 2 --q 3 --sign +") == 2);        // odd q
    CHECK(run("census --n 2 --q 6 --sign +") == 2);        // not a prime power
    CHECK(run("census --n 2 --q 2 --sign x") == 2);        // bad sign
    CHECK(run("census --q 2 --sign +") == 2);              // missing --n
    CHECK(run("census --n 2 --q 2 --bogus-flag 1") == 2);  // unknown flag
    CHECK(run("odd-spectrum --n 2 --q 4 --sign +") == 2);  // even q
    CHECK(run("switch-search --n 2 --q 4") == 2);          // outside PG(4,2)
    CHECK(run("nonsense") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("census golden values and byte stability") {
    const std::string out1 = tmpdir() + "/census1.json";
    const std::string out2 = tmpdir() + "/census2.json";
    REQUIRE(run("census --n 2 --q 2 --sign + --emit-json " + out1) == 0);
    REQUIRE(run("census --n 2 --q 2 --sign + --emit-json " + out2) == 0);

    const json r = load(out1);
    CHECK(r.at("schema") == 1);
    CHECK(r.at("config").at("subcommand") == "census");
    CHECK(r.at("census").at("hyperbolic") == 10);
    CHECK(r.at("census").at("elliptic") == 6);
    CHECK(r.at("census").at("singular") == 15);
    CHECK(r.at("family").at("size") == 10);
    CHECK(r.at("colouring").at("histogram") == json::parse("[[0,1],[4,15],[6,15]]"));
    CHECK(r.at("colouring").at("h_norm") == 5);
    CHECK(r.at("quadric").at("size") == 15);
    CHECK(r.at("verdicts").at("condition_I") == true);

    // reports are byte-identical once the timings are stripped
    CHECK(pgq::strip_volatile(load(out1)).dump() == pgq::strip_volatile(load(out2)).dump());
}

TEST_CASE("check-theorem accepts a family file and normalizes rows") {
    using namespace pgq;
    const ProjectiveSpace space(4, Field::make(2, 1));
    const QuadraticForm form = QuadraticForm::parabolic(2, space.field());
    const QuadricPartition part = classify_family(zero_set(form, space), space, 2, +1);

    const std::string path = tmpdir() + "/family_h_plus.txt";
    {
        std::ofstream out(path);
        out << "# hyperplanes meeting the quadric in 9 points, one dual vector per row\n";
        part.selected.bits.for_each_set([&](std::size_t h) {
            auto v = space.hyperplane(h);
            for (std::size_t c = 0; c < v.size(); ++c) out << (c ? " " : "") << v[c];
            out << "\n";
        });
    }
    const std::string report_path = tmpdir() + "/check_file.json";
    CHECK(run("check-theorem --n 2 --q 2 --sign + --family " + path + " --emit-json " +
              report_path) == 0);
    const json r = load(report_path);
    CHECK(r.at("family").at("size") == 10);
    CHECK(r.at("conclusion").at("branch") == "quadric");

    // sampling the flat scan still passes and marks the report as sampled
    const std::string sampled_path = tmpdir() + "/check_sampled.json";
    CHECK(run("check-theorem --n 2 --q 4 --sign + --sample 500 --seed 3 --emit-json " +
              sampled_path) == 0);
    CHECK(load(sampled_path).at("condition_II").at("sampled") == true);

    // round-trip through the reader agrees with the classified family
    const HyperplaneFamily reread = read_family_file(path, space, "H+");
    CHECK(reread.bits == part.selected.bits);

    // a damaged family file must fail the verdicts (exit 1)
    std::size_t first = 0;
    part.selected.bits.for_each_set([&](std::size_t h) { first = h; });
    const std::string damaged = tmpdir() + "/family_damaged.txt";
    {
        std::ofstream out(damaged);
        part.selected.bits.for_each_set([&](std::size_t h) {
            if (h == first) return;
            auto v = space.hyperplane(h);
            for (std::size_t c = 0; c < v.size(); ++c) out << (c ? " " : "") << v[c];
            out << "\n";
        });
    }
    CHECK(run("check-theorem --n 2 --q 2 --sign + --family " + damaged) == 1);

    // malformed files are configuration errors
    const std::string bad = tmpdir() + "/family_bad.txt";
    {
        std::ofstream out(bad);
        out << "1 0 0\n";
    }
    CHECK(run("check-theorem --n 2 --q 2 --sign + --family " + bad) == 2);
    CHECK(run("check-theorem --n 2 --q 2 --sign + --family /nonexistent/file") == 2);
}

TEST_CASE("family reader applies normalization") {
    using namespace pgq;
    const ProjectiveSpace space(4, Field::make(2, 2));
    const std::string path = tmpdir() + "/family_scaled.txt";
    {
        std::ofstream out(path);
        out << "# scalar multiples of one hyperplane\n";
        out << "2 0 0 2 3\n";
        out << "3 0 0 3 1   # same row rescaled by g\n";
    }
    const HyperplaneFamily fam = read_family_file(path, space, "X");
    CHECK(fam.bits.count() == 1); // both rows name the same hyperplane
}

TEST_CASE("hyperoval subcommand verdicts and CSV emission") {
    const std::string jpath = tmpdir() + "/oval.json";
    const std::string cpath = tmpdir() + "/oval.csv";
    REQUIRE(run("hyperoval --q 4 --emit-json " + jpath + " --emit-csv " + cpath) == 0);
    const json r = load(jpath);
    CHECK(r.at("family").at("size") == 96);
    CHECK(r.at("colouring").at("red") == 6);
    CHECK(r.at("colouring").at("white") == 15);
    CHECK(r.at("colouring").at("black") == 320);
    CHECK(r.at("verdicts").at("conclusion_hyperoval_branch") == true);

    std::ifstream csv(cpath);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "context,value,multiplicity");
    std::size_t rows = 0;
    for (std::string line; std::getline(csv, line);)
        if (!line.empty()) ++rows;
    CHECK(rows >= 3); // at least the pencil spectrum values {0, 2, 4}

    CHECK(run("hyperoval --q 8 --variant translation --k 2") == 0);
    CHECK(run("hyperoval --q 8 --variant translation --k 3") == 2); // gcd(3,3) != 1
    CHECK(run("hyperoval --q 3") == 2);
}

TEST_CASE("switch-search emits one JSON line per candidate") {
    const std::string jpath = tmpdir() + "/search.json";
    const std::string lpath = tmpdir() + "/search.jsonl";
    REQUIRE(run("switch-search --emit-json " + jpath + " --emit-jsonl " + lpath) == 0);
    const json r = load(jpath);
    CHECK(r.at("switch_search").at("candidates") == 32768);
    CHECK(r.at("switch_search").at("spectrum_pass") ==
          r.at("switch_search").at("quadric_pass").get<std::uint64_t>() +
              r.at("switch_search").at("nonquadric_pass").get<std::uint64_t>());
    CHECK(r.at("verdicts").at("standard_selection_passes") == true);

    std::ifstream in(lpath);
    REQUIRE(in.good());
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        ++lines;
        const json row = json::parse(line);
        CHECK(row.contains("candidate"));
        CHECK(row.contains("passes_spectrum"));
        CHECK(row.contains("is_quadric"));
    }
    CHECK(lines == 32768);
}

TEST_CASE("identities and odd-spectrum subcommands") {
    const std::string jpath = tmpdir() + "/ids.json";
    REQUIRE(run("identities --n 2 --q 4 --emit-json " + jpath) == 0);
    const json r = load(jpath);
    CHECK(r.at("H+").at("identities").at("h_norm") == 17);
    CHECK(r.at("H-").at("identities").at("h_norm") == 15);
    CHECK(r.at("verdicts").at("identities_H+") == true);
    CHECK(r.at("verdicts").at("identities_H-") == true);

    const std::string opath = tmpdir() + "/odd.json";
    REQUIRE(run("odd-spectrum --n 2 --q 3 --sign - --emit-json " + opath) == 0);
    const json o = load(opath);
    CHECK(o.at("verdicts").at("spectrum_support") == true);
    CHECK(o.at("verdicts").at("perp_cross_tab") == true);
    for (const auto& row : o.at("odd_spectrum").at("spectrum").at("values")) {
        const std::uint64_t v = row[0].get<std::uint64_t>();
        CHECK((v == 0 || v == 1 || v == 2 || v == 3));
    }
}
