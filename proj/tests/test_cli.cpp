#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

#include "weilres/io/descriptor.hpp"
#include "weilres/io/json.hpp"

using namespace weilres;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(WEILRES_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string desc(const std::string& file) { return std::string("--descriptor ") + WEILRES_DESCRIPTOR_DIR + "/" + file; }

} // namespace

TEST(Cli, DescribeGL2) {
    auto r = cli("describe --format text " + desc("gl2.toml"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("relative type A1, pi1 = Z, Omega = Z"), std::string::npos) << r.out;
}

TEST(Cli, DescribeRamifiedTorus) {
    auto r = cli("describe --format text " + desc("torus_res2.toml"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pi1 = Z,"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("acts on X_* by [[0,1], [1,0]]"), std::string::npos) << r.out;
    auto j = Json::parse(cli("describe " + desc("torus_res2.toml")).out);
    EXPECT_EQ(j["pi1_coinvariants"], "Z");
    EXPECT_EQ(j["inertia_order"], 2);
}

TEST(Cli, MalformedDescriptorIsValidationError) {
    char path[] = "/tmp/weilres_badXXXXXX";
    int fd = mkstemp(path);
    ASSERT_GE(fd, 0);
    std::string text = "[root_datum]\nrank = 2\nsimple_roots = [[1, -1]]\nsimple_coroots = [[1, -1]]\npairing = [[2, 0], [0, 1]]\n";
    ASSERT_EQ(write(fd, text.data(), text.size()), static_cast<ssize_t>(text.size()));
    close(fd);
    auto r = cli(std::string("describe --descriptor ") + path);
    std::remove(path);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("pairing"), std::string::npos) << r.out;
}

TEST(Cli, AdmissibleSetGL2) {
    auto r = cli("adm --mu 1,0 " + desc("gl2.toml"));
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j.size(), 3u);
    auto W = load_descriptor(std::string(WEILRES_DESCRIPTOR_DIR) + "/gl2.toml").iwahori_weyl();
    std::set<WElement> got;
    for (const auto& e : j) got.insert(element_from_json(*W, e));
    auto adm = W->admissible_iwahori({1, 0});
    EXPECT_EQ(got, adm);
}

TEST(Cli, TestFunctionJsonRoundTrip) {
    auto gd = load_descriptor(std::string(WEILRES_DESCRIPTOR_DIR) + "/gl2.toml");
    auto W = gd.iwahori_weyl();
    auto expect = z_ss(W, LGroupRep::irreducible(gd.group, {1, 0}), Facet{});
    for (std::string basis : {"bernstein", "iwahori_matsumoto"}) {
        auto r = cli("testfn --mu 1,0 --lift ss --basis " + basis + " " + desc("gl2.toml"));
        ASSERT_EQ(r.code, 0) << r.out;
        auto j = Json::parse(r.out);
        EXPECT_EQ(j["basis"], basis);
        EXPECT_EQ(j["integrality_report"]["status"], "pass");
        EXPECT_EQ(j["admissible_check"]["status"], "pass");
        EXPECT_EQ(testfn_element_from_json(W, j), expect.element);
    }
}

TEST(Cli, OutputIsDeterministic) {
    std::string args = "testfn --facet special --basis iwahori_matsumoto " + desc("res2_gl2.toml");
    auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BernsteinElementReingests) {
    auto r = cli("bernstein --lambda 1,1 " + desc("sl3.toml"));
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = Json::parse(r.out);
    auto W = load_descriptor(std::string(WEILRES_DESCRIPTOR_DIR) + "/sl3.toml").iwahori_weyl();
    EXPECT_EQ(hecke_from_json(W, j["element"]), cyc_bernstein_z(W, {1, 1}));
    EXPECT_EQ(j["orbit"].size(), 6u);
}

TEST(Cli, CsvAndText) {
    auto r = cli("adm --mu 1,0,0 --format csv " + desc("gl3.toml"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 8); // header + 7
    auto t = cli("testfn --format csv " + desc("torus_res2.toml"));
    EXPECT_EQ(t.code, 0);
    EXPECT_EQ(t.out.rfind("lambda,exponent,coefficient\n", 0), 0u) << t.out;
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("testfn --mu 1,0,0,0 " + desc("ures2_gl2.toml")).code, 1);
    EXPECT_EQ(cli("adm --mu 1,x " + desc("gl2.toml")).code, 2);
    EXPECT_EQ(cli("adm --mu 1,0,0 " + desc("gl2.toml")).code, 2);
    EXPECT_EQ(cli("adm --mu 1,0 --facet 0,1 " + desc("gl2.toml")).code, 2);
    EXPECT_EQ(cli("testfn --lift 5 " + desc("gl2.toml")).code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("describe").code, 2);
}

TEST(Cli, VerifySubset) {
    auto r = cli("verify --criteria 3,7");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("PASS  criterion 3"), std::string::npos);
    EXPECT_NE(r.out.find("PASS  criterion 7"), std::string::npos);
    EXPECT_EQ(r.out.find("criterion 1 "), std::string::npos);
}
