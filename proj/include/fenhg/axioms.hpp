#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fenhg/core.hpp"
#include "fenhg/distance.hpp"

namespace fenhg {

// The injections certifying that one coalition responsively dominates another
// from the ballot owner's point of view: every friend in the dominated
// coalition maps to a weakly better friend in the dominating one, and every
// enemy in the dominating coalition maps to a weakly worse enemy in the
// dominated one.
struct ResponsiveWitness {
    std::map<PlayerId, PlayerId> friend_injection;  // B friends -> A friends, weakly better
    std::map<PlayerId, PlayerId> enemy_injection;   // A enemies -> B enemies, weakly worse
};

// Decides whether coalition `a` dominates coalition `b` under the polarized
// responsive extension of the ballot, by greedy rank matching. Returns the
// witness injections when it does. Throws if the owner is missing from
// either coalition.
std::optional<ResponsiveWitness> responsive_dominates(const Ballot& b, const Coalition& a,
                                                      const Coalition& c);

// The ballot that makes `target` one of the owner's favourite coalitions:
// everyone in target (except the owner) tied as friends, the rest of the
// neighbourhood tied as enemies. delta of the result on target is zero.
Ballot nonimposition_witness(const Coalition& target, const PlayerSet& neighbourhood,
                             const PlayerId& owner);

// Returns a copy of the ballot where player j is moved into a new tier
// immediately above x's tier, on whichever side (friends or enemies) both
// live. Requires x to be ranked weakly better than j beforehand.
Ballot shift_player(const Ballot& b, const PlayerId& j, const PlayerId& x);

struct AxiomCounterexample {
    PlayerId player;
    std::optional<Coalition> first;
    std::optional<Coalition> second;
    std::string detail;
    std::uint64_t trial = 0;
};

struct AxiomReport {
    std::string axiom;
    std::uint64_t trials = 0;
    std::vector<AxiomCounterexample> counterexamples;

    bool ok() const { return counterexamples.empty(); }
};

using DeltaFn = std::function<DistancePair(const Ballot&, const Coalition&, Norm)>;

// Randomized/exhaustive checks of the model's axioms on a concrete game:
//   indifference            tied players are interchangeable in any coalition
//   friend-monotonicity     adding a friend strictly improves a coalition
//   enemy-monotonicity      adding an enemy strictly worsens a coalition
//   responsive-compatibility  responsive dominance implies weak preference
//   shift-bound             after improving j's rank, a coalition without j
//                           falls behind one with j by at most the Hausdorff
//                           tau between the old and new side orders
// Players with at most 5 neighbours are checked exhaustively; larger
// neighbourhoods are sampled `trials` times per axiom. Every counterexample
// records the trial index so (seed, trial) replays it.
std::vector<AxiomReport> run_axiom_suite(const Game& g, std::uint64_t trials, std::uint64_t seed);

// Same, but with all distance evaluations routed through `dist`; test
// fixtures use this seam to prove the detectors catch a corrupted distance.
std::vector<AxiomReport> run_axiom_suite(const Game& g, std::uint64_t trials, std::uint64_t seed,
                                         const DeltaFn& dist);

}  // namespace fenhg
