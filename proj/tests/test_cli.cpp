#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "deephole/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "deephole");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = dh::runCli(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("phi prints an exact rational") {
    auto r = run({"phi", "--frameshape", "1^8 2^8"});
    CHECK(r.code == 0);
    CHECK(r.out == "1/2\n");
    auto j = nlohmann::json::parse(run({"phi", "--frameshape", "2^12", "--json"}).out);
    CHECK(j["phi"] == "3/4");
    CHECK(j["fixedRank"] == 12);
    CHECK(run({"phi", "--frameshape", "1^24"}).out == "0\n");
}

TEST_CASE("niemeier build feeds lattice info") {
    auto built = run({"niemeier", "build", "D24"});
    REQUIRE(built.code == 0);
    auto info = run({"lattice", "info", "-", "--json"}, built.out);
    REQUIRE(info.code == 0);
    auto j = nlohmann::json::parse(info.out);
    CHECK(j["det"] == "1");
    CHECK(j["even"] == true);
    CHECK(j["roots"] == 1104);
    CHECK(j["rootSystem"] == "D_24");
    CHECK(j["discriminant"] == "1");
}

TEST_CASE("exit codes") {
    CHECK(run({"phi", "--frameshape", "1^8 2^8", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"phi", "--frameshape", "1^8 x"}).code == 2);
    CHECK(run({"niemeier", "build", "B7"}).code == 2);
    CHECK(run({"phi", "--frameshape", "1^8 2^8", "--json", "--table"}).code == 2);
    CHECK(run({"tables"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"lattice", "info", "-"}, "2\n2 1\n").code == 3);
    CHECK(run({"lattice", "info", "/nonexistent/file"}).code == 3);
    // wrong class for the glue codeword
    CHECK(run({"classify", "--niemeier", "D24", "--code", "1", "--class", "7B"}).code == 1);
}

TEST_CASE("frameshape of a stored Leech isometry") {
    auto leech = run({"leech"});
    REQUIRE(leech.code == 0);
    std::string path = "test_cli_leech.lat";
    std::ofstream(path) << leech.out;
    auto r = run({"frameshape", DEEPHOLE_DATA_DIR "/leech_isometries/3B.isom", path, "--json"});
    std::remove(path.c_str());
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["frameShape"] == "1^6 3^6");
    CHECK(j["class"] == "3B");
    CHECK(j["fixedRank"] == 12);
    CHECK(j["phi"] == "2/3");
    // an identity-sized matrix that is not an isometry of a rank-2 lattice
    CHECK(run({"frameshape", DEEPHOLE_DATA_DIR "/leech_isometries/3B.isom", "-"}, "2\n2 1\n1 2\n").code == 3);
}

TEST_CASE("construction commands") {
    auto j = nlohmann::json::parse(
        run({"construct-b", "--moduli", "2^8", "--code", "11111111", "--info", "--json"}).out);
    CHECK(j["rank"] == 8);
    CHECK(j["det"] == "256");
    CHECK(j["discriminant"] == "2^8");
    auto a = run({"construct-a", "--moduli", "2^8", "--code", "11111111"});
    REQUIRE(a.code == 0);
    auto info = nlohmann::json::parse(run({"lattice", "info", "-", "--json"}, a.out).out);
    CHECK(info["det"] == "64");  // det(R) / |C|^2 = 256 / 4
    CHECK(run({"construct-a", "--code", "11"}).code == 2);
    auto file = run({"construct-b", "--code-file", "-", "--info", "--json"}, "MODULI 2 2 2 2 2 2 2 2\nGEN 1 1 1 1 1 1 1 1\n");
    REQUIRE(file.code == 0);
    CHECK(nlohmann::json::parse(file.out)["det"] == "256");
}

TEST_CASE("deephole and niemeier list") {
    auto r = run({"deephole", "--niemeier", "D24", "--verify", "--json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["h"] == 46);
    CHECK(j["index"] == "46");
    CHECK(j["verify"]["deep"] == true);
    CHECK(j["verify"]["nodes"] == 25);
    auto list = nlohmann::json::parse(run({"niemeier", "list", "--json"}).out);
    CHECK(list.size() == 23);
    for (const auto& e : list)
        if (e["name"] == "D24") CHECK(e["roots"] == 1104);
}

TEST_CASE("classify output modes") {
    auto r = run({"classify", "--niemeier", "E_7^2D_{10}", "--code", "11|2", "--class", "2A", "--json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["v1"] == "C_{8,1}F_{4,1}^2");
    CHECK(j["v1Dim"] == 240);
    CHECK(j["admissible"] == true);
    auto csv = lines(run({"classify", "--niemeier", "A9^2D6", "--code", "79|2", "--class", "10F", "--csv"}).out);
    REQUIRE(csv.size() == 2);
    CHECK(csv[0] == "Class,Type,Codeword,Embedding,FixedRoots,V1\r");
    CHECK(csv[1].find("\"C_{4,10}\"") != std::string::npos);  // commas force quoting
}

TEST_CASE("tables") {
    CHECK(run({"tables", "--class", "9Z"}).code == 2);
    auto all = run({"tables", "--all", "--csv", "--threads", "2"});
    REQUIRE(all.code == 0);
    auto l = lines(all.out);
    REQUIRE(l.size() == 47);
    CHECK(l[0] == "Class,Type,Codeword,Embedding,FixedRoots,V1\r");
    for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i].back() == '\r');
    CHECK(l[1].rfind("2A,A_1^{24},\"(1^8,0^8)\",", 0) == 0);

    auto some = run({"tables", "--class", "5B", "--csv"});
    REQUIRE(some.code == 0);
    auto s = lines(some.out);
    std::vector<std::string> expected{l[0]};
    for (const auto& line : l)
        if (line.rfind("5B,", 0) == 0) expected.push_back(line);
    CHECK(s == expected);  // same bytes as in the full run
}
