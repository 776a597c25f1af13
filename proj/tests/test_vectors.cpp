#include <doctest.h>

#include <algorithm>

#include "swapsim/vectors.hpp"

using namespace swapsim;

TEST_CASE("the vector file opens with the hand-checkable anchors") {
    std::vector<std::string> lines = generate_vectors(1);
    // Recomputable on paper in the 23-element group: x=5, m=03, k=7.
    REQUIRE(lines.size() >= 4);
    CHECK(lines[0] == "sign toy 05 03 07 07 12");
    CHECK(lines[1] == "presign toy 05 03 07 04 07 0e 04 08");
    CHECK(lines[2] == "complete toy 07 0e 04 12");
    CHECK(lines[3] == "extract toy 07 0e 12 04");
}

TEST_CASE("generated vectors replay cleanly and deterministically") {
    std::vector<std::string> lines = generate_vectors(42);
    CHECK(lines.size() == 84);  // 4 anchors + 8 rows x 5 kinds x 2 profiles
    CHECK(verify_vector_lines(lines).empty());
    CHECK(generate_vectors(42) == lines);
    CHECK(generate_vectors(43) != lines);
    // every kind is exercised
    for (const char* kind : {"sign ", "presign ", "complete ", "extract ", "tweak "}) {
        CHECK(std::count_if(lines.begin(), lines.end(), [&](const std::string& l) {
                  return l.rfind(kind, 0) == 0;
              }) > 0);
    }
}

TEST_CASE("verification pinpoints the corrupted line") {
    std::vector<std::string> lines = generate_vectors(7);
    lines[2][lines[2].size() - 1] ^= 1;  // flip the final hex digit
    std::vector<VectorFailure> failures = verify_vector_lines(lines);
    REQUIRE(failures.size() == 1);
    CHECK(failures[0].line == 3);  // 1-based
    CHECK_FALSE(failures[0].reason.empty());
}

TEST_CASE("comments and blank lines do not shift the numbering") {
    std::vector<std::string> lines = generate_vectors(7);
    lines.insert(lines.begin(), {"# header", ""});
    CHECK(verify_vector_lines(lines).empty());
    lines[5][lines[5].size() - 1] ^= 1;
    std::vector<VectorFailure> failures = verify_vector_lines(lines);
    REQUIRE(failures.size() == 1);
    CHECK(failures[0].line == 6);  // the physical line, comments included
}

TEST_CASE("malformed lines fail with a reason instead of throwing") {
    std::vector<VectorFailure> failures = verify_vector_lines({
        "sign toy 05 03",                    // too few fields
        "warp toy 05 03 07 07 12",           // unknown kind
        "sign hyperelliptic 05 03 07 07 12", // unknown profile
        "sign toy zz 03 07 07 12",           // not hex
        "sign toy 00 03 07 07 12",           // zero key cannot sign
    });
    CHECK(failures.size() == 5);
    CHECK(failures[1].reason == "unknown vector kind: warp");
    for (const VectorFailure& f : failures) CHECK_FALSE(f.reason.empty());
}

TEST_CASE("a handwritten line verifies if the arithmetic holds") {
    // complete: s_final = s* + delta mod 23 -> 0e + 05 = 13
    CHECK(verify_vector_lines({"complete toy 07 0e 05 13"}).empty());
    CHECK_FALSE(verify_vector_lines({"complete toy 07 0e 05 14"}).empty());
}
