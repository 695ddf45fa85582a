#include "fenhg/core.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace fenhg {

WeakOrder::WeakOrder(std::vector<PlayerSet> tiers) : tiers_(std::move(tiers)) {
    int rank = 0;
    for (const auto& tier : tiers_) {
        ++rank;
        if (tier.empty()) {
            throw std::invalid_argument("weak order: empty tier at rank " + std::to_string(rank));
        }
        for (const auto& p : tier) {
            if (!ground_.insert(p).second) {
                throw std::invalid_argument("weak order: player '" + p + "' appears in two tiers");
            }
            rank_.emplace(p, rank);
        }
    }
}

int WeakOrder::rank_of(const PlayerId& p) const {
    auto it = rank_.find(p);
    if (it == rank_.end()) {
        throw std::out_of_range("weak order: player '" + p + "' is not ranked");
    }
    return it->second;
}

WeakOrder tied_order(const PlayerSet& members) {
    if (members.empty()) return WeakOrder{};
    return WeakOrder{{members}};
}

WeakOrder project_order(const WeakOrder& o, const PlayerSet& keep, bool reversed) {
    std::vector<PlayerSet> tiers;
    for (const auto& tier : o.tiers()) {
        PlayerSet kept;
        std::ranges::set_intersection(tier, keep, std::inserter(kept, kept.end()));
        if (!kept.empty()) tiers.push_back(std::move(kept));
    }
    if (reversed) std::ranges::reverse(tiers);
    return WeakOrder{std::move(tiers)};
}

PlayerSet Ballot::neighbourhood() const {
    PlayerSet all = friends.ground();
    all.insert(enemies.ground().begin(), enemies.ground().end());
    return all;
}

Coalition::Coalition(PlayerSet members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("coalition must be non-empty");
    }
}

Coalition Coalition::with(const PlayerId& p) const {
    PlayerSet m = members_;
    m.insert(p);
    return Coalition{std::move(m)};
}

Coalition Coalition::without(const PlayerId& p) const {
    PlayerSet m = members_;
    m.erase(p);
    return Coalition{std::move(m)};
}

CoalitionStructure::CoalitionStructure(std::vector<Coalition> blocks) : blocks_(std::move(blocks)) {
    std::ranges::sort(blocks_, [](const Coalition& a, const Coalition& b) {
        return *a.members().begin() < *b.members().begin();
    });
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        for (const auto& p : blocks_[i].members()) {
            if (!index_.emplace(p, i).second) {
                throw std::invalid_argument("coalition structure: player '" + p +
                                            "' appears in two blocks");
            }
        }
    }
}

std::optional<std::size_t> CoalitionStructure::block_index_of(const PlayerId& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Coalition& CoalitionStructure::block_of(const PlayerId& p) const {
    auto idx = block_index_of(p);
    if (!idx) {
        throw std::out_of_range("coalition structure: player '" + p + "' is in no block");
    }
    return blocks_[*idx];
}

bool CoalitionStructure::is_partition_of(const PlayerSet& players) const {
    if (index_.size() != players.size()) return false;
    return std::ranges::all_of(players, [&](const PlayerId& p) { return index_.count(p) > 0; });
}

ValidationResult validate_game(const Game& g) {
    ValidationResult result;
    auto report = [&](const PlayerId& p, std::string kind, std::string detail) {
        result.violations.push_back({p, std::move(kind), std::move(detail)});
    };

    for (const auto& p : g.players) {
        if (g.ballots.count(p) == 0) report(p, "missing ballot", "player has no ballot");
    }
    for (const auto& [key, ballot] : g.ballots) {
        if (key != ballot.owner) {
            report(key, "owner mismatch", "ballot stored under '" + key + "' is owned by '" +
                                              ballot.owner + "'");
        }
        if (g.players.count(key) == 0) {
            report(key, "unknown player", "ballot owner is not in the player set");
        }
        if (ballot.friends.contains(ballot.owner) || ballot.enemies.contains(ballot.owner)) {
            report(key, "self-reference", "owner appears in their own ranking");
        }
        PlayerSet overlap;
        std::ranges::set_intersection(ballot.friends.ground(), ballot.enemies.ground(),
                                      std::inserter(overlap, overlap.end()));
        for (const auto& p : overlap) {
            report(key, "friend/enemy overlap", "'" + p + "' is ranked as both friend and enemy");
        }
        for (const auto& p : ballot.neighbourhood()) {
            if (g.players.count(p) == 0) {
                report(key, "unknown id", "ballot mentions '" + p + "' which is not a player");
            }
        }
        if (g.degree_bound) {
            auto degree = ballot.neighbourhood().size();
            if (degree > static_cast<std::size_t>(*g.degree_bound)) {
                report(key, "degree bound exceeded",
                       "ballot ranks " + std::to_string(degree) + " players, bound is " +
                           std::to_string(*g.degree_bound));
            }
        }
    }
    return result;
}

}  // namespace fenhg
