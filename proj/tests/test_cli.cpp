#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli() { return ZASTAVA_CLI_PATH; }

int run(const std::string& args, std::string* output = nullptr) {
    std::string cmd = cli() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    int status = pclose(pipe);
    if (output) *output = out;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("generate, check, rotate pipeline") {
    std::string dir = "/tmp/zv_cli_scratch1";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
    std::string mod = dir + "/m.json";

    std::string out;
    CHECK(run("--seed 7 gen --shape chainsaw --N 2 --dims 1,1 --out " + mod, &out) == 0);
    CHECK(run("check " + mod, &out) == 0);
    CHECK(out.find("\"residuals_zero\": true") != std::string::npos);
    CHECK(out.find("\"gen_stable\"") != std::string::npos);

    // rotating N times reproduces the module byte for byte
    std::string r1 = dir + "/r1.json", r2 = dir + "/r2.json";
    CHECK(run("map --name rotate --in " + mod + " --out " + r1) == 0);
    CHECK(run("map --name rotate --in " + r1 + " --out " + r2) == 0);
    CHECK(slurp(mod) == slurp(r2));
    CHECK(slurp(mod) != slurp(r1));

    // determinism: the same seed gives identical bytes
    std::string mod2 = dir + "/m2.json";
    CHECK(run("--seed 7 gen --shape chainsaw --N 2 --dims 1,1 --out " + mod2) == 0);
    CHECK(slurp(mod) == slurp(mod2));
    CHECK(slurp(mod + ".manifest.json") != "");
}

TEST_CASE("error classes map to exit codes") {
    std::string dir = "/tmp/zv_cli_scratch2";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
    // usage error
    CHECK(run("gen --shape chainsaw") == 2);
    // data error: truncated file
    std::string bad = dir + "/bad.json";
    std::ofstream(bad) << "{ \"shape\": ";
    CHECK(run("check " + bad) == 3);
    // map with wrong shape: blowdown expects a dented module
    std::string mod = dir + "/m.json";
    CHECK(run("--seed 3 gen --shape chainsaw --N 2 --dims 1,1 --out " + mod) == 0);
    CHECK(run("map --name blowdown --in " + mod + " --out " + dir + "/x.json") == 3);
}

TEST_CASE("monad and stability subcommands run end to end") {
    std::string dir = "/tmp/zv_cli_scratch3";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
    std::string dent = dir + "/dent.json";
    CHECK(run("--seed 11 gen --shape dented_chainsaw --N 2 --dims 1,1,1 --out " + dent) == 0);

    std::string out;
    CHECK(run("monad --builder blowup --in " + dent, &out) == 0);
    CHECK(out.find("middle_in_image: 1") != std::string::npos);

    CHECK(run("stability --in " + dent + " --flavor minus", &out) == 0);
    CHECK(out.find("\"verdict\"") != std::string::npos);

    std::string cs = dir + "/cs.json";
    CHECK(run("--seed 12 gen --shape chainsaw --N 2 --dims 2,1 --out " + cs) == 0);
    CHECK(run("monad --builder stack --in " + cs, &out) == 0);
    CHECK(out.find("complex_zero: true") != std::string::npos);
    CHECK(run("monad --builder weighted --in " + cs, &out) == 0);
    CHECK(out.find("complex_zero: true") != std::string::npos);
}

TEST_CASE("parallel check merges results in input order") {
    std::string dir = "/tmp/zv_cli_scratch4";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
    std::string a = dir + "/a.json", b = dir + "/b.json";
    CHECK(run("--seed 1 gen --shape chainsaw --N 1 --dims 2 --out " + a) == 0);
    CHECK(run("--seed 2 gen --shape chainsaw --N 2 --dims 1,1 --out " + b) == 0);
    std::string out;
    CHECK(run("check " + a + " " + b + " --jobs 2", &out) == 0);
    auto pa = out.find(a), pb = out.find(b);
    CHECK(pa != std::string::npos);
    CHECK(pb != std::string::npos);
    CHECK(pa < pb);
}

TEST_CASE("weight subcommands") {
    std::string out;
    CHECK(run("nakajima --v 2,1,1 --N 2 --k 3", &out) == 0);
    CHECK(out.find("\"dominant\": true") != std::string::npos);
    CHECK(run("predict --v 0,0 --N 2 --k 2 --a 0", &out) == 0);
    CHECK(out.find("m=1") != std::string::npos);
    // degenerate cyclic rank: the vacuum table is the single unit row
    CHECK(run("predict --v 0 --N 2 --k 1 --a 0", &out) == 0);
    CHECK(out.find("beta=(0,0)  m=1") != std::string::npos);
    CHECK(run("mult --rank 2 --level 1 --lambda 0 --lambda-energy 0 --nu 0 --nu-energy=-1 --depth 5", &out) == 0);
    CHECK(out.find("multiplicity: 1") != std::string::npos);
}
