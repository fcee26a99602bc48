#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "tdilp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using tdilp::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    args.insert(args.begin(), "tdilp");
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir()
    {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("tdilp_cli_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string file(const std::string& name, const std::string& content = {}) const
    {
        const fs::path p = path_ / name;
        if (!content.empty())
            std::ofstream(p) << content;
        return p.string();
    }

private:
    fs::path path_;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("solve prints the outcome")
{
    TempDir dir;
    auto r = call({"solve", dir.file("a.ilp", "max: x + y\nx <= 2\ny <= 3\n-x <= 0\n-y <= 0\n")});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "optimal");
    CHECK(j["value"] == 5);
    CHECK(j["assignment"]["x"] == 2);
    CHECK(j["assignment"]["y"] == 3);
}

TEST_CASE("solve exit codes")
{
    TempDir dir;
    CHECK(call({"solve", dir.file("i.ilp", "max: 0\nx <= 0\n-x <= -1\n")}).code == 1);
    auto u = call({"solve", dir.file("u.ilp", "max: x\n-x <= 0\n")});
    CHECK(u.code == 0);
    CHECK(nlohmann::json::parse(u.out)["status"] == "unbounded");
    auto b = call({"solve", dir.file("b.ilp", "max: 0\n-x <= -5\n"), "--bound", "2"});
    CHECK(b.code == 3);
    CHECK(nlohmann::json::parse(b.out)["status"] == "bound_exhausted");
    CHECK(call({"solve", dir.file("bad.ilp", "max: 0\nx <=\n")}).code == 2);
    CHECK(call({"solve", dir.file("missing.ilp")}).code == 2);
    CHECK(call({"solve"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({}).code == 2);
}

TEST_CASE("subset sum pipeline through the command line")
{
    TempDir dir;
    const std::string inst = dir.file("ss.ilp"), wit = dir.file("ss.json");
    CHECK(call({"generate", "subsetsum", "--values", "1,2,3", "--target", "6", "-o", inst, "--witness", wit}).code == 0);
    auto s = call({"solve", inst});
    CHECK(s.code == 0);
    CHECK(nlohmann::json::parse(s.out)["status"] == "optimal");
    auto v = call({"verify", inst, "--witness", wit, "--max-width", "2"});
    CHECK(v.code == 0);
    CHECK(contains(v.out, "width <= 2"));
    CHECK(call({"oracle", "subsetsum", "--values", "2,4", "--target", "5"}).code == 1);
}

TEST_CASE("three-coloring witness verifies with height at most 8")
{
    TempDir dir;
    const std::string graph = dir.file("k3.g", "3\n1 2\n2 3\n1 3\n");
    const std::string inst = dir.file("k3.ilp"), wit = dir.file("k3.json");
    CHECK(call({"generate", "3col", "--graph", graph, "-o", inst, "--witness", wit}).code == 0);
    auto v = call({"verify", inst, "--witness", wit, "--max-height", "8"});
    CHECK(v.code == 0);
    CHECK(contains(v.out, "height <= 8"));
    auto s = call({"solve", inst, "--td", wit, "--propagate"});
    CHECK(s.code == 0);
    CHECK(call({"oracle", "3col", "--graph", graph}).code == 0);

    const std::string k4 = dir.file("k4.g", "4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    CHECK(call({"oracle", "3col", "--graph", k4}).code == 1);
}

TEST_CASE("verify rejects a bad witness")
{
    TempDir dir;
    const std::string inst = dir.file("t.ilp", "max: 0\nx + y <= 1\n");
    const std::string wit = dir.file("w.json", R"({"kind":"treedepth","parent":[-1,-1],"bags":[]})");
    CHECK(call({"verify", inst, "--witness", wit}).code == 1);
    const std::string junk = dir.file("j.json", "{not json");
    CHECK(call({"verify", inst, "--witness", junk}).code == 2);
}

TEST_CASE("kernelize then lift")
{
    TempDir dir;
    std::string text = "max: 0\n-z <= 0\nz <= 1\n";
    for (int i = 0; i < 5; ++i) {
        const std::string a = "a" + std::to_string(i);
        text += a + " + z <= 1\n-" + a + " <= 0\n";
    }
    const std::string inst = dir.file("k.ilp", text);
    const std::string kern = dir.file("kern.ilp"), trace = dir.file("trace.json");
    auto k = call({"kernelize", inst, "-o", kern, "--trace", trace});
    REQUIRE(k.code == 0);
    CHECK(contains(k.out, "variables: 6 -> 2"));

    auto s = call({"solve", kern, "--no-kernel"});
    REQUIRE(s.code == 0);
    const std::string sol = dir.file("sol.json", s.out);
    auto l = call({"lift", "--trace", trace, "--solution", sol});
    REQUIRE(l.code == 0);
    auto lifted = nlohmann::json::parse(l.out);
    CHECK(lifted.size() == 6);
    CHECK(lifted["a4"] == lifted["a0"]);

    const std::string wrong = dir.file("wrong.json", R"({"z": 0})");
    CHECK(call({"lift", "--trace", trace, "--solution", wrong}).code == 2);
}

TEST_CASE("analyze reports statistics")
{
    TempDir dir;
    const std::string wit = dir.file("td.json");
    auto r = call({"analyze", dir.file("p.ilp", "max: 0\na + b <= 1\nb + c <= 1\nc + d <= 1\n"), "-o", wit});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "variables: 4"));
    CHECK(contains(r.out, "treedepth: 3 (exact)"));
    CHECK(nlohmann::json::parse(slurp(wit))["kind"] == "treedepth");
}

TEST_CASE("bounds prints the recurrence")
{
    auto r = call({"bounds", "--ell", "1", "--k", "2"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "e_1 = 134217730 (2^27+2)"));
    auto one = call({"bounds", "--ell", "0", "--k", "1"});
    CHECK(contains(one.out, "e_1 = 1"));
    CHECK(call({"bounds", "--ell", "1", "--k", "0"}).code == 2);
}

TEST_CASE("oracle commands")
{
    TempDir dir;
    auto ilp = call({"oracle", "ilp", dir.file("o.ilp", "max: x\nx <= 5\n"), "--box", "10"});
    CHECK(ilp.code == 0);
    CHECK(nlohmann::json::parse(ilp.out)["value"] == 5);
    const std::string tri = dir.file("tri.g", "3\n1 2\n2 3\n1 3\n");
    CHECK(call({"oracle", "vc", "--graph", tri, "--k", "2"}).code == 0);
    CHECK(call({"oracle", "vc", "--graph", tri, "--k", "1"}).code == 1);
    auto td = call({"oracle", "td", "--graph", tri});
    CHECK(td.code == 0);
    CHECK(td.out == "3\n");
    std::string big = "max: 0\n";
    for (int i = 0; i < 20; ++i)
        big += "x" + std::to_string(i) + " <= 1\n";
    CHECK(call({"oracle", "ilp", dir.file("big.ilp", big), "--box", "5"}).code == 3);
}

TEST_CASE("vertex cover generator")
{
    TempDir dir;
    const std::string tri = dir.file("tri.g", "3\n1 2\n2 3\n1 3\n");
    const std::string inst = dir.file("vc.ilp");
    CHECK(call({"generate", "vc", "--graph", tri, "--k", "1", "-o", inst}).code == 0);
    CHECK(call({"solve", inst}).code == 1);
    auto printed = call({"generate", "vc", "--graph", tri, "--k", "2"});
    CHECK(printed.code == 0);
    CHECK(contains(printed.out, "max: 0"));
}
