#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fenhg {

using PlayerId = std::string;
using PlayerSet = std::set<PlayerId>;

// Aggregation norm for the two swap counts of a distance pair.
enum class Norm { One, Two };

// A ranking with ties: an ordered sequence of disjoint, non-empty tiers of
// player ids. Tier 1 is the most preferred; rank(j) is the 1-based index of
// j's tier, so the tier count equals the maximal rank.
class WeakOrder {
public:
    WeakOrder() = default;
    // Throws std::invalid_argument on an empty tier or a player appearing twice.
    explicit WeakOrder(std::vector<PlayerSet> tiers);

    const std::vector<PlayerSet>& tiers() const { return tiers_; }
    const PlayerSet& ground() const { return ground_; }
    bool contains(const PlayerId& p) const { return ground_.count(p) > 0; }

    // 1-based tier index; throws std::out_of_range if p is not ranked.
    int rank_of(const PlayerId& p) const;

    std::size_t tier_count() const { return tiers_.size(); }
    std::size_t size() const { return ground_.size(); }
    bool empty() const { return ground_.empty(); }

    bool operator==(const WeakOrder&) const = default;

private:
    std::vector<PlayerSet> tiers_;
    PlayerSet ground_;
    std::map<PlayerId, int> rank_;
};

// Single-tier order over a set (everything tied); empty set gives the empty order.
WeakOrder tied_order(const PlayerSet& members);

// Restriction of `o` to the players in `keep` (empty tiers dropped); when
// `reversed`, the surviving tier sequence is inverted.
WeakOrder project_order(const WeakOrder& o, const PlayerSet& keep, bool reversed = false);

// A player's polarized opinion: a ranking of accepted co-players (friends)
// and a ranking of unaccepted ones (enemies). Everyone else is neutral and
// stored implicitly.
struct Ballot {
    PlayerId owner;
    WeakOrder friends;
    WeakOrder enemies;

    bool is_friend(const PlayerId& p) const { return friends.contains(p); }
    bool is_enemy(const PlayerId& p) const { return enemies.contains(p); }
    // N_i = friends.ground() union enemies.ground()
    PlayerSet neighbourhood() const;

    bool operator==(const Ballot&) const = default;
};

struct Game {
    PlayerSet players;
    std::map<PlayerId, Ballot> ballots;  // keyed by owner
    std::optional<int> degree_bound;
    Norm norm = Norm::One;

    bool operator==(const Game&) const = default;
};

// Non-empty set of players.
class Coalition {
public:
    explicit Coalition(PlayerSet members);

    const PlayerSet& members() const { return members_; }
    bool contains(const PlayerId& p) const { return members_.count(p) > 0; }
    std::size_t size() const { return members_.size(); }

    Coalition with(const PlayerId& p) const;
    // Throws std::invalid_argument if removing p would leave the coalition empty.
    Coalition without(const PlayerId& p) const;

    bool operator==(const Coalition&) const = default;
    auto operator<=>(const Coalition&) const = default;

private:
    PlayerSet members_;
};

// A list of disjoint coalitions, canonically ordered by smallest member.
// Whether the blocks cover a given player set is checked via is_partition_of.
class CoalitionStructure {
public:
    CoalitionStructure() = default;
    // Throws std::invalid_argument if two blocks share a player.
    explicit CoalitionStructure(std::vector<Coalition> blocks);

    const std::vector<Coalition>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }

    std::optional<std::size_t> block_index_of(const PlayerId& p) const;
    // Throws std::out_of_range if p is in no block.
    const Coalition& block_of(const PlayerId& p) const;

    bool is_partition_of(const PlayerSet& players) const;

    bool operator==(const CoalitionStructure&) const = default;

private:
    std::vector<Coalition> blocks_;
    std::map<PlayerId, std::size_t> index_;
};

struct Violation {
    PlayerId player;
    std::string kind;    // e.g. "self-reference", "friend/enemy overlap"
    std::string detail;

    bool operator==(const Violation&) const = default;
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Structural validation of a game. Violations are data, not failures: the
// result lists every breached invariant with the offending player id.
ValidationResult validate_game(const Game& g);

}  // namespace fenhg
