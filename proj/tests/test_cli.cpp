#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef PRICED_SORT_CLI
#error "PRICED_SORT_CLI must name the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string("\"") + PRICED_SORT_CLI + "\" " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    for (std::size_t got; (got = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("priced_sort_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, TwoKeyRow) {
    write("n2.txt", "2 2 2\nR 0\nB 1\n");
    auto r = cli("run " + path("n2.txt"));
    ASSERT_EQ(r.code, 0);
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], "algo,N,n,m,alpha,beta,pattern,seed,total,pivot,search,cert,stripe,hamiltonian,ratio,rounds,height");
    EXPECT_EQ(l[1].substr(0, l[1].find(",file")), "inversion_sort,2,1,1,2,2");
    EXPECT_NE(l[1].find(",file,0,1,"), std::string::npos);
    EXPECT_NE(l[1].find(",1,1.000000,"), std::string::npos);
}

TEST_F(Cli, GenerateIsDeterministic) {
    const std::string args = " generate --pattern few-long --n 40 --m 30 --alpha 5/2 --beta 3 --seed 7 -o ";
    ASSERT_EQ(cli(args + path("a.txt")).code, 0);
    ASSERT_EQ(cli(args + path("b.txt")).code, 0);
    EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
    EXPECT_EQ(lines(slurp(path("a.txt"))).front(), "70 2.5 3");
}

TEST_F(Cli, RunEachAlgorithm) {
    ASSERT_EQ(cli("generate --n 50 --m 50 --alpha 1/2 --beta 1/2 --seed 2 -o " + path("cheap.txt")).code, 0);
    ASSERT_EQ(cli("generate --n 50 --m 50 --alpha 1/2 --beta 4 --seed 2 -o " + path("mid.txt")).code, 0);
    ASSERT_EQ(cli("generate --n 60 --m 0 --gammas 2,3,4 --seed 2 -o " + path("multi.txt")).code, 0);
    EXPECT_EQ(cli("run --algo sort_both_then_merge " + path("cheap.txt")).code, 0);
    EXPECT_EQ(cli("run --algo sort_middle_regime " + path("mid.txt")).code, 0);
    auto m = cli("run --algo multichromatic --no-header " + path("multi.txt"));
    EXPECT_EQ(m.code, 0);
    EXPECT_EQ(lines(m.out).size(), 1u);
    EXPECT_EQ(m.out.rfind("multichromatic,60,", 0), 0u);
}

TEST_F(Cli, TraceLines) {
    ASSERT_EQ(cli("generate --n 64 --m 64 --seed 3 -o " + path("i.txt")).code, 0);
    auto r = cli("run --seed 5 --trace " + path("t.log") + " " + path("i.txt"));
    ASSERT_EQ(r.code, 0);
    auto trace = lines(slurp(path("t.log")));
    ASSERT_FALSE(trace.empty());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::istringstream in(trace[i]);
        long long round, active, unaffected, inversions, pivots;
        ASSERT_TRUE(in >> round >> active >> unaffected >> inversions >> pivots) << trace[i];
        EXPECT_EQ(round, static_cast<long long>(i + 1));
        EXPECT_GE(unaffected, 0);
        EXPECT_LE(unaffected, active);
    }
    auto row = lines(r.out).back();
    EXPECT_NE(row.find("," + std::to_string(trace.size()) + ","), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    write("n2.txt", "2 2 2\nR 0\nB 1\n");
    write("bad.txt", "2 2 2\nR 0\nB 0\n");
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("run").code, 2);
    EXPECT_EQ(cli("run " + path("missing.txt")).code, 2);
    EXPECT_EQ(cli("run " + path("bad.txt")).code, 2);
    EXPECT_EQ(cli("run --algo nope " + path("n2.txt")).code, 2);
    EXPECT_EQ(cli("generate --n 3 --m 3 --pattern stripes --red-stripes 2 --blue-stripes 3").code, 2);
    EXPECT_EQ(cli("sweep --sizes 16 --prices 2").code, 2);
    EXPECT_EQ(cli("verify --max-n 13").code, 2);
    EXPECT_EQ(cli("run --algo sort_middle_regime " + path("n2.txt")).code, 3);
    EXPECT_EQ(cli("run --algo sort_both_then_merge " + path("n2.txt")).code, 3);
    EXPECT_EQ(cli("sweep --sizes 16 --prices 2:2 --algo sort_both_then_merge").code, 3);
}

TEST_F(Cli, Verify) {
    auto ok = cli("verify --max-n 5 --checks ledger,backbone,sorted,tree,certificate");
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(lines(ok.out).back().rfind("PASS", 0), 0u);
    auto variant = cli("verify --max-n 5 --algo sort_middle_regime --checks sorted,ledger");
    EXPECT_EQ(variant.code, 0);
    auto fault = cli("verify --max-n 6 --inject-fault --checks certificate");
    EXPECT_EQ(fault.code, 4);
    EXPECT_NE(fault.out.find("certificate finished subproblem"), std::string::npos);
    EXPECT_EQ(cli("verify --max-n 4 --checks nonsense").code, 2);
}

TEST_F(Cli, SweepSummaries) {
    auto r = cli("sweep --sizes 16,32 --prices 2:2,N:N --patterns uniform,few-long --seeds 3");
    ASSERT_EQ(r.code, 0);
    auto l = lines(r.out);
    std::size_t rows = 0, headers = 0, cells = 0, chat = 0;
    for (const auto& s : l) {
        if (s.rfind("inversion_sort,", 0) == 0) ++rows;
        else if (s.rfind("# cell,", 0) == 0) ++headers;
        else if (s.rfind("# c_hat=", 0) == 0) ++chat;
        else if (s.rfind("# ", 0) == 0) ++cells;
    }
    EXPECT_EQ(rows, 2u * 2u * 2u * 3u);
    EXPECT_EQ(headers, 1u);
    EXPECT_EQ(cells, 8u);
    EXPECT_EQ(chat, 1u);
    EXPECT_EQ(r.out, cli("sweep --sizes 16,32 --prices 2:2,N:N --patterns uniform,few-long --seeds 3").out);
}
