#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fenhg/core.hpp"

namespace fenhg {

// Joint rank counts of two weak orders over the same ground set: counts(p, q)
// is the number of players ranked p in the first order and q in the second.
class RankContingencyTable {
public:
    // Throws std::invalid_argument ("incomparable orders") on a ground-set mismatch.
    RankContingencyTable(const WeakOrder& pi, const WeakOrder& sigma);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t at(std::size_t p, std::size_t q) const;  // 1-based

    // Sum of counts(p,q) * counts(p',q') over p < p', q >= q': the number of
    // inversions forced by the worst tie resolution of the second order
    // against the best resolution of the first.
    std::int64_t discordance() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> counts_;
};

// Directed Kendall-tau distance between weak orders on a common ground set:
// the swap count from the most favourable resolution of `pi` to the least
// favourable resolution of `sigma`. Asymmetric; zero on identical orders.
std::int64_t directed_tau(const WeakOrder& pi, const WeakOrder& sigma);

// max(directed_tau(pi, sigma), directed_tau(sigma, pi)).
std::int64_t hausdorff_tau(const WeakOrder& pi, const WeakOrder& sigma);

// A coalition viewed from one player's perspective, as two weak orders
// comparable against the player's own friend and enemy rankings: present
// friends and absent enemies keep the player's ordering, missing friends and
// present enemies appear reversed below/above the owner marker.
struct CoalitionEncoding {
    WeakOrder plus_order;   // ground: friends + owner
    WeakOrder minus_order;  // ground: enemies + owner

    bool operator==(const CoalitionEncoding&) const = default;
};

// Throws std::invalid_argument if the ballot's owner is not in the coalition.
CoalitionEncoding encode_coalition(const Ballot& b, const Coalition& c);

// The owner's ranking of friends (enemies) with the owner appended as a final
// (leading) tier, matching the ground sets of a CoalitionEncoding.
WeakOrder friend_reference_order(const Ballot& b);
WeakOrder enemy_reference_order(const Ballot& b);

// Friend-side and enemy-side swap counts for one (ballot, coalition) pair,
// with the norm used to aggregate and compare them.
struct DistancePair {
    std::int64_t plus = 0;
    std::int64_t minus = 0;
    Norm norm = Norm::One;

    // Exact integer comparison key: plus + minus under the 1-norm,
    // plus^2 + minus^2 under the 2-norm.
    std::int64_t key() const;
    double aggregate() const;
};

// Dissatisfaction of the ballot's owner with a coalition containing them,
// computed by rank arithmetic: each missing friend f costs 1 plus the number
// of friends f is strictly preferred to; each present enemy e costs 1 plus
// the number of enemies strictly preferred to e. Equals the directed tau
// between the ballot sides and the coalition encoding.
DistancePair delta(const Ballot& b, const Coalition& c, Norm norm = Norm::One);

// Same distance over an arbitrary membership predicate (the owner is assumed
// to be a member); lets callers avoid materializing large coalitions.
template <typename MemberOf>
DistancePair delta_over(const Ballot& b, MemberOf&& member, Norm norm);

enum class Ordering { PrefersFirst, PrefersSecond, Indifferent };

// Smaller distance wins; throws if the owner is missing from either coalition.
Ordering compare_coalitions(const Ballot& b, const Coalition& a, const Coalition& c,
                            Norm norm = Norm::One);

// Additive encoding of the same preferences under the 1-norm: every friend
// gets a positive utility, every enemy a negative one, neutrals zero, and
// delta(b, C) == offset - sum of utilities over C minus the owner.
struct AdditiveUtilities {
    std::map<PlayerId, std::int64_t> utility;
    std::int64_t offset = 0;  // sum of all friend utilities

    std::int64_t coalition_value(const Coalition& c, const PlayerId& owner) const;
};

AdditiveUtilities to_additive_utilities(const Ballot& b);

// --- implementation ---

template <typename MemberOf>
DistancePair delta_over(const Ballot& b, MemberOf&& member, Norm norm) {
    DistancePair d;
    d.norm = norm;
    std::int64_t better = 0;  // friends ranked strictly above the current tier
    for (const auto& tier : b.friends.tiers()) {
        std::int64_t below =
            static_cast<std::int64_t>(b.friends.size()) - better - static_cast<std::int64_t>(tier.size());
        for (const auto& f : tier) {
            if (!member(f)) d.plus += 1 + below;
        }
        better += static_cast<std::int64_t>(tier.size());
    }
    better = 0;
    for (const auto& tier : b.enemies.tiers()) {
        for (const auto& e : tier) {
            if (member(e)) d.minus += 1 + better;
        }
        better += static_cast<std::int64_t>(tier.size());
    }
    return d;
}

}  // namespace fenhg
