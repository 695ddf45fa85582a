#pragma once

#include <map>

#include "fenhg/core.hpp"

namespace fixtures {

inline fenhg::WeakOrder wo(std::vector<fenhg::PlayerSet> tiers) {
    return fenhg::WeakOrder{std::move(tiers)};
}

inline fenhg::Coalition co(fenhg::PlayerSet members) {
    return fenhg::Coalition{std::move(members)};
}

// The six-player running example: i ranks a > b ~ c as friends and d > e as
// enemies; everyone else is indifferent.
inline fenhg::Ballot running_example_ballot() {
    return fenhg::Ballot{"i", wo({{"a"}, {"b", "c"}}), wo({{"d"}, {"e"}})};
}

inline fenhg::Game running_example_game() {
    fenhg::Game g;
    g.players = {"i", "a", "b", "c", "d", "e"};
    g.ballots.emplace("i", running_example_ballot());
    for (const auto& p : {"a", "b", "c", "d", "e"}) {
        g.ballots.emplace(p, fenhg::Ballot{p, {}, {}});
    }
    return g;
}

// Five players in a ring: each likes their successor and dislikes the two
// players after that. No Nash-stable or individually stable structure exists.
inline fenhg::Game ring_game() {
    fenhg::Game g;
    std::vector<fenhg::PlayerId> ring{"a", "b", "c", "d", "e"};
    for (std::size_t k = 0; k < ring.size(); ++k) {
        auto at = [&](std::size_t offset) { return ring[(k + offset) % ring.size()]; };
        g.players.insert(ring[k]);
        g.ballots.emplace(ring[k], fenhg::Ballot{ring[k], wo({{at(1)}}), wo({{at(2), at(3)}})});
    }
    return g;
}

inline fenhg::Game mutual_friends_game() {
    fenhg::Game g;
    g.players = {"1", "2"};
    g.ballots.emplace("1", fenhg::Ballot{"1", wo({{"2"}}), {}});
    g.ballots.emplace("2", fenhg::Ballot{"2", wo({{"1"}}), {}});
    return g;
}

inline fenhg::Game all_neutral_game(std::size_t n) {
    fenhg::Game g;
    for (std::size_t k = 0; k < n; ++k) {
        fenhg::PlayerId id(1, static_cast<char>('a' + k));
        g.players.insert(id);
        g.ballots.emplace(id, fenhg::Ballot{id, {}, {}});
    }
    return g;
}

// Applies a player-id bijection to every structure in the game.
inline fenhg::Game rename_game(const fenhg::Game& g,
                               const std::map<fenhg::PlayerId, fenhg::PlayerId>& map) {
    auto rename = [&](const fenhg::PlayerId& p) {
        auto it = map.find(p);
        return it == map.end() ? p : it->second;
    };
    auto rename_order = [&](const fenhg::WeakOrder& o) {
        std::vector<fenhg::PlayerSet> tiers;
        for (const auto& tier : o.tiers()) {
            fenhg::PlayerSet renamed;
            for (const auto& p : tier) renamed.insert(rename(p));
            tiers.push_back(std::move(renamed));
        }
        return fenhg::WeakOrder{std::move(tiers)};
    };
    fenhg::Game out;
    out.norm = g.norm;
    out.degree_bound = g.degree_bound;
    for (const auto& p : g.players) out.players.insert(rename(p));
    for (const auto& [id, ballot] : g.ballots) {
        out.ballots.emplace(rename(id), fenhg::Ballot{rename(ballot.owner),
                                                      rename_order(ballot.friends),
                                                      rename_order(ballot.enemies)});
    }
    return out;
}

inline fenhg::Coalition rename_coalition(const fenhg::Coalition& c,
                                         const std::map<fenhg::PlayerId, fenhg::PlayerId>& map) {
    fenhg::PlayerSet members;
    for (const auto& p : c.members()) {
        auto it = map.find(p);
        members.insert(it == map.end() ? p : it->second);
    }
    return fenhg::Coalition{std::move(members)};
}

}  // namespace fixtures
