#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "tlab/io.hpp"

using namespace tlab;

TEST_CASE("atomic writes") {
    SUBCASE("content lands intact") {
        std::string path = "/tmp/tlab_io_test.txt";
        write_file_atomic(path, "hello\n");
        std::ifstream in(path);
        std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK(s == "hello\n");
        std::remove(path.c_str());
    }
    SUBCASE("failure leaves no partial artifact at the final path") {
        std::string path = "/tmp/no_such_dir_tlab/x.txt";
        CHECK_THROWS(write_file_atomic(path, "data"));
        std::ifstream in(path);
        CHECK_FALSE(in.good());
    }
}

TEST_CASE("formatting") {
    CHECK(fmt_g15(0.5) == "0.5");
    CHECK(fmt_g15(1.0 / 3.0).substr(0, 10) == "0.33333333");
    CHECK(fmt_g15(1.0 / 3.0).size() <= 17);

    RunConfig cfg;
    cfg.command = "demo";
    cfg.seed = 42;
    auto csv = make_csv(cfg, {"a", "b"}, {{"1", "2"}, {"3", "4"}});
    CHECK(csv.find("# tlab op=demo seed=42") == 0);
    CHECK(csv.find("a,b\r\n") != std::string::npos);
    CHECK(csv.find("3,4\r\n") != std::string::npos);
}

TEST_CASE("output dir resolution") {
    RunConfig cfg;
    cfg.output_dir = "/tmp";
    CHECK(cfg.resolve("f.csv") == "/tmp/f.csv");
    CHECK(cfg.resolve("/abs/f.csv") == "/abs/f.csv");
    cfg.output_dir.clear();
    CHECK(cfg.resolve("f.csv") == "f.csv");
}
