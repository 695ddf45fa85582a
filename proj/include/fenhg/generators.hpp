#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "fenhg/core.hpp"

namespace fenhg {

// An exact-cover-by-three-sets instance: a list of elements (count divisible
// by three) and a list of triples over them, each element occurring in at
// most three triples.
class X3CInstance {
public:
    // Throws std::invalid_argument on any violated constraint.
    X3CInstance(std::vector<std::string> elements,
                std::vector<std::array<std::string, 3>> sets);

    const std::vector<std::string>& elements() const { return elements_; }
    const std::vector<std::array<std::string, 3>>& sets() const { return sets_; }

private:
    std::vector<std::string> elements_;
    std::vector<std::array<std::string, 3>> sets_;
};

// Text format: a line "elements: x1 x2 x3 ..." followed by one line
// "set: xa xb xc" per triple. '#' starts a comment. Throws ParseError
// (see fenhg/io.hpp) with a line/column position on malformed input.
X3CInstance parse_x3c(std::istream& in);
X3CInstance parse_x3c(const std::string& text);

struct RandomGameSpec {
    std::size_t players = 0;
    std::size_t degree = 0;            // max known players per ballot
    double friend_probability = 0.5;   // else the neighbour is an enemy
    double tie_probability = 0.0;      // chance of joining the previous tier
    std::uint64_t seed = 0;
};

// Seeded bounded-degree game; identical specs produce identical games on any
// platform. Throws std::invalid_argument on an out-of-range spec.
Game random_game(const RandomGameSpec& spec);

// The hardness gadget: 2n + 4m players (a_i, b_i per element; s_j and a
// t-triple per set) whose game has a Nash-stable structure exactly when the
// instance has an exact cover. Degree is at most 6 and the game carries that
// bound.
Game x3c_to_game(const X3CInstance& inst);

// The stable structure witnessing a given exact cover (1-based set indices):
// a_i players alone, each covering set grouped with its elements' b players,
// its t-triple left together, and each unused set grouped with its t-triple.
// Throws std::invalid_argument if the cover is not exact.
CoalitionStructure cover_to_partition(const X3CInstance& inst, const std::set<std::size_t>& cover);

// Backtracking exact-cover decision, used as the oracle against Nash-stable
// existence on the reduced game.
bool x3c_solve(const X3CInstance& inst);

// Player naming used by the reduction, exposed for tests and the witness
// command: elements are numbered by their position in the instance.
std::string x3c_a_player(std::size_t element_index);      // 1-based
std::string x3c_b_player(std::size_t element_index);
std::string x3c_s_player(std::size_t set_index);
std::string x3c_t_player(std::size_t set_index, std::size_t slot);  // slot in 1..3

}  // namespace fenhg
