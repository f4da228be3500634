#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"

using namespace tla;
using tlatest::L;
using tlatest::fmt;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> argv) {
    std::ostringstream out;
    std::ostringstream err;
    int status = cli::run_command(argv, out, err);
    return {status, out.str(), err.str()};
}

} // namespace

TEST_CASE("cli eval") {
    CHECK(run({"eval", "(4,8):(1,4)", "22"}).out == "22\n");
    CHECK(run({"eval", "(4,8):(1,4)", "(1,2)"}).out == "9\n");
    CHECK(run({"eval", "(8,8):(f1,f9)", "(1,1)"}).out == "8\n");
    CHECK(run({"eval", "(4,8):(e0,e1)", "(1,2)"}).out == "(1,2)\n");
}

TEST_CASE("cli print round-trips") {
    for (const char* s : {"(4,8):(1,4)", "((3,2),((2,3),2)):((4,1),((2,15),100))",
                          "(8,8):(f1,f9)", "(4,(4,2)):(e1,(e0,6*e1))", "1:0"}) {
        Run r = run({"print", s});
        CHECK(r.status == cli::exit_ok);
        CHECK(r.out == std::string(s) + "\n");
    }
}

TEST_CASE("cli algebra commands") {
    CHECK(run({"coalesce", "(4,(1,3)):(1,(9,5))"}).out == "(4,3):(1,5)\n");
    CHECK(run({"compose", "(4,6,8,10):(2,3,5,7)", "6:12"}).out == "(2,3):(9,5)\n");
    CHECK(run({"complement", "(4,8):(1,8)", "64"}).out == "(2,1):(4,64)\n");
    CHECK(run({"complement", "(4,8):(1,8)"}).out == "(2,1):(4,64)\n");
    CHECK(run({"rinv", "(4,8):(8,1)"}).out == "(8,4):(4,1)\n");
    CHECK(run({"linv", "(4,8):(1,5)"}).out == "(5,8):(1,4)\n");
    CHECK(run({"divide", "24:3", "8:3"}).out == "(8,3):(9,3)\n");
    CHECK(run({"divide", "(8,16):(20,1)", "[4:1,8:2]"}).out == "((4,8),(2,2)):((20,2),(80,1))\n");
    CHECK(run({"zipped-divide", "(8,16):(20,1)", "[4:1,8:2]"}).out ==
          "((4,8),(2,2)):((20,2),(80,1))\n");
    CHECK(run({"product", "(3,4):(4,1)", "(2,5):(1,2)"}).out == "((3,4),(2,5)):((4,1),(12,24))\n");
    CHECK(run({"blocked-product", "(3,4):(4,1)", "(2,5):(1,2)"}).out ==
          "((3,2),(4,5)):((4,12),(1,24))\n");
    CHECK(run({"raked-product", "(3,4):(4,1)", "(2,5):(1,2)"}).out ==
          "((2,3),(5,4)):((12,4),(24,1))\n");
    CHECK(run({"vectorize", "(4,4):(1,4)", "((2,2),4):((1,8),2)"}).out == "2\n");
    CHECK(run({"locate", "(128,512):(16384,1)", "(1,128):(1,16384)"}).out == "(1,128):(0,1)\n");
}

TEST_CASE("cli linear-form and chain") {
    CHECK(run({"linear-form", "((2,2),(4,2)):((1,8),(2,16))"}).out == "[1 8 2 16]\n");
    CHECK(run({"linear-form", "(4,(4,2)):(e1,(e0,6*e1))"}).out == "[0 1 0]\n[1 0 6]\n");
    CHECK(run({"chain", "0,7,3,5"}).out == "(2,2,2):(7,3,5)\n(3,1):(1,4)\n");
    CHECK(run({"chain", "0,7,3,5", "2"}).out == "3\n");
}

TEST_CASE("cli flags") {
    Run strict = run({"complement", "(4,8):(20,2)", "75"});
    CHECK(strict.status == cli::exit_domain);
    CHECK(strict.err.find("error:") == 0);
    Run relaxed = run({"complement", "(4,8):(20,2)", "75", "--relaxed-complement"});
    CHECK(relaxed.status == cli::exit_ok);
    CHECK(relaxed.out == "(2,1):(1,80)\n");
}

TEST_CASE("cli render") {
    Run r = run({"print", "(2,3):(3,1)", "--render"});
    CHECK(r.status == cli::exit_ok);
    std::istringstream rows(r.out);
    std::string l0, l1;
    std::getline(rows, l0);
    std::getline(rows, l1);
    std::istringstream a(l0), b(l1);
    std::vector<Int> top, bot;
    Int v;
    while (a >> v) top.push_back(v);
    while (b >> v) bot.push_back(v);
    CHECK(top == std::vector<Int>{0, 1, 2});
    CHECK(bot == std::vector<Int>{3, 4, 5});
}

TEST_CASE("cli exit codes") {
    CHECK(run({"print", "(4,8):(1,4)"}).status == cli::exit_ok);
    Run domain = run({"compose", "(4,6,8):(2,3,5)", "6:3"});
    CHECK(domain.status == cli::exit_domain);
    CHECK(domain.err.find("stride divisibility condition") != std::string::npos);
    Run syntax = run({"print", "(4,8:(1,4)"});
    CHECK(syntax.status == cli::exit_usage);
    CHECK(run({"print"}).status == cli::exit_usage);
    CHECK(run({"frobnicate", "1:1"}).status == cli::exit_usage);
    CHECK(run({"print", "4:1", "--bogus"}).status == cli::exit_usage);
    CHECK(run({}).status == cli::exit_usage);
    CHECK(run({"help"}).status == cli::exit_ok);
}

TEST_CASE("parse errors carry an offset") {
    try {
        parse_layout("(4,x):(1,4)");
        FAIL("expected parse error");
    } catch (const parse_error& e) {
        CHECK(e.offset() == 3);
    }
}

TEST_CASE("text round-trips through parse and format") {
    for (const char* s : {"4:1", "(4,8):(1,4)", "((2,2),(4,2)):((1,8),(2,16))", "(8,8):(f1,f9)",
                          "(4,(4,2)):(e1,(e0,6*e1))", "(2,2):(0,0)", "1:0"}) {
        CHECK(fmt(L(s)) == s);
    }
    CHECK(format_int_tuple(parse_int_tuple("((1,2),3)")) == "((1,2),3)");
}
