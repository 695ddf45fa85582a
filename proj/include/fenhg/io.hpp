#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "fenhg/core.hpp"

namespace fenhg {

// Syntax error with a 1-based position in the input text.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Game documents, one ballot line per player:
//
//   # optional comment
//   norm: two
//   degree_bound: 5
//   player i: friends a > b ~ c ; enemies d > e
//   player a: friends none ; enemies none
//
// '>' separates tiers, '~' ties players within one, and either side may be
// "none". Ids referenced in a chain must have their own player line.
Game parse_game(std::istream& in);
Game parse_game(const std::string& text);

// Canonical text form; parse_game(serialize_game(g)) == g.
std::string serialize_game(const Game& g);

// Partitions as blocks of ids: "{i,a,b,e} | {c,d}". Must cover the game's
// players exactly.
CoalitionStructure parse_partition(const std::string& text, const Game& g);
std::string serialize_partition(const CoalitionStructure& gamma);

// A single block "{i,a,b}" over the game's players.
Coalition parse_coalition(const std::string& text, const Game& g);
std::string serialize_coalition(const Coalition& c);

}  // namespace fenhg
