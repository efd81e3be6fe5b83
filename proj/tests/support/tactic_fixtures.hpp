#pragma once

// Hand-constructed positions with exact expected detector output: true eyes,
// excluded false eyes, corner/edge eyes, atari chains, nets, and open-escape
// non-nets. Shared by the unit tests and the acceptance runner.

#include <string>
#include <vector>

#include "goising/board.hpp"
#include "goising/tactics.hpp"

namespace goising::testsupport {

struct ExpectedEye {
    Color color;
    Coord point;
    int acting = -1;  // expected owning chain id, -1 = don't check
};

struct ExpectedThreat {
    int target;       // chain id expected in the instance
    int acting = -1;  // expected acting chain id, -1 = don't check
};

struct PatternFixture {
    std::string name;
    Board board;
    std::vector<ExpectedEye> eyes;
    std::vector<ExpectedThreat> ladders;
    std::vector<ExpectedThreat> nets;
};

std::vector<PatternFixture> pattern_fixtures();

// Runs all three detectors on the fixture and compares against the expected
// sets exactly. Returns "" on success, otherwise a short failure description.
std::string check_pattern_fixture(const PatternFixture& f);

}  // namespace goising::testsupport
