#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fenhg/core.hpp"
#include "fenhg/distance.hpp"

namespace fenhg {

enum class StabilityNotion { Perfect, Nash, IndividuallyStable, ContractuallyIndividuallyStable };

// Whether follower (incoming-edge) lists may be treated as constant-size.
// Both modes return identical verdicts; they differ only in how the welcome
// and unbound tests are evaluated.
enum class InDegreeMode { Bounded, Unbounded };

struct Deviation {
    PlayerId player;
    Coalition target;  // the coalition after the move, deviator included

    bool operator==(const Deviation&) const = default;
};

struct StabilityReport {
    bool stable = false;
    std::optional<Deviation> witness;              // set when unstable
    std::map<PlayerId, DistancePair> distances;    // per-player distance when stable
};

// Candidate-set verification: each player is tested against the blocks of
// their friends plus the singleton. Throws std::invalid_argument when gamma
// does not partition the game's players.
StabilityReport verify(const Game& g, const CoalitionStructure& gamma, StabilityNotion notion,
                       InDegreeMode mode = InDegreeMode::Bounded);

// Oracle verification straight from the definitions: every player against
// every block plus the singleton, welcome/unbound tests by explicit
// preference comparisons. No candidate pruning.
StabilityReport brute_force_verify(const Game& g, const CoalitionStructure& gamma,
                                   StabilityNotion notion);

// Closure construction: components of the "must play together" relation
// induced by friendship, rejected if any component traps a member's enemy.
// The returned structure gives every player distance zero.
std::optional<CoalitionStructure> solve_perfect(const Game& g);

// Potential descent from the all-singletons structure: repeatedly applies the
// valid contractually-individually-stable deviation chosen by lowest deviator
// id, then largest drop of the summed distances, then lowest target block.
// Always terminates with a structure passing CIS verification.
CoalitionStructure solve_cis(const Game& g);

struct ExhaustiveOptions {
    bool enumerate_all = false;
    std::size_t guard = 12;
    // Skips partition subtrees in which some player provably keeps a valid
    // strict deviation in every completion. Sound for every notion; exposed
    // so tests can compare pruned and unpruned runs.
    bool prune = true;
};

// Iterates all partitions of the player set in restricted-growth order and
// returns the stable ones (the first, or all when enumerate_all is set; an
// empty result means no stable structure exists). Throws std::invalid_argument
// when the player count exceeds the guard.
std::vector<CoalitionStructure> solve_exhaustive(const Game& g, StabilityNotion notion,
                                                 ExhaustiveOptions options = {});

// Enumerates every partition of `players` via restricted growth strings, in a
// fixed order; used by exhaustive checks and test oracles.
void for_each_partition(const PlayerSet& players,
                        const std::function<void(const CoalitionStructure&)>& fn);

}  // namespace fenhg
