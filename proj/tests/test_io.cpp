#include <sstream>

#include "doctest.h"
#include "psca/io.hpp"
#include "test_helpers.hpp"

using namespace psca;
using namespace psca::test;

TEST_CASE("permutation text parsing") {
    CHECK(parsePermText("4735621") == parsePermText("4 7 3 5 6 2 1"));
    CHECK_THROWS_AS(parsePermText("4135"), std::invalid_argument);   // missing 2
    CHECK_THROWS_AS(parsePermText("1123"), std::invalid_argument);
    CHECK_THROWS_AS(parsePermText(""), std::invalid_argument);
    CHECK_THROWS_AS(parsePermText("1 2 x"), std::invalid_argument);
    // n = 10 needs the spaced form
    std::string spaced = "10 1 2 3 4 5 6 7 8 9";
    CHECK(parsePermText(spaced).n() == 10);
    CHECK_THROWS_AS(parsePermText("1234567891"), std::invalid_argument);
}

TEST_CASE("sequence files: manifest, comments, blocks") {
    std::istringstream in(
        "# psca n=5 k=3 lambda=2\n"
        "# free-form comment\n"
        "12345\n"
        "54321\n"
        "\n"
        "# another block\n"
        "13254\n");
    SequenceFile f = readSequenceStream(in, "mem");
    CHECK(f.n == 5);
    CHECK(f.k == 3);
    CHECK(f.lambda == 2);
    REQUIRE(f.blocks.size() == 2);
    CHECK(f.blocks[0].size() == 2);
    CHECK(f.blocks[1].size() == 1);
    CHECK(f.totalSequences() == 3);
    CHECK(f.flat().size() == 3);
}

TEST_CASE("parse errors carry the line number") {
    std::istringstream in("12345\n11345\n");
    try {
        readSequenceStream(in, "mem");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.path == "mem");
        CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
    }
}

TEST_CASE("corpus files parse with their manifests") {
    SequenceFile f = readSequenceFile(corpusPath("psca_5_3_2.txt"));
    CHECK(f.n == 5);
    CHECK(f.k == 3);
    CHECK(f.lambda == 2);
    CHECK(f.totalSequences() == 12);
    CHECK(readPermsFlat(corpusPath("psca_7_5_4.gens.txt")).size() == 2);
}
