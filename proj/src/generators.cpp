#include "fenhg/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fenhg/io.hpp"
#include "fenhg/rng.hpp"

namespace fenhg {

X3CInstance::X3CInstance(std::vector<std::string> elements,
                         std::vector<std::array<std::string, 3>> sets)
    : elements_(std::move(elements)), sets_(std::move(sets)) {
    if (elements_.size() % 3 != 0) {
        throw std::invalid_argument("element count " + std::to_string(elements_.size()) +
                                    " is not divisible by 3");
    }
    std::map<std::string, int> occurrences;
    for (const auto& e : elements_) {
        if (!occurrences.emplace(e, 0).second) {
            throw std::invalid_argument("element '" + e + "' declared twice");
        }
    }
    for (std::size_t j = 0; j < sets_.size(); ++j) {
        const auto& set = sets_[j];
        for (const auto& e : set) {
            auto it = occurrences.find(e);
            if (it == occurrences.end()) {
                throw std::invalid_argument("set " + std::to_string(j + 1) +
                                            " mentions unknown element '" + e + "'");
            }
            if (++it->second > 3) {
                throw std::invalid_argument("element '" + e + "' occurs in more than 3 sets");
            }
        }
        if (set[0] == set[1] || set[0] == set[2] || set[1] == set[2]) {
            throw std::invalid_argument("set " + std::to_string(j + 1) +
                                        " contains a repeated element");
        }
    }
}

X3CInstance parse_x3c(std::istream& in) {
    std::vector<std::string> elements;
    std::vector<std::array<std::string, 3>> sets;
    bool elements_seen = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = line.substr(0, line.find('#'));
        std::istringstream words(body);
        std::string head;
        if (!(words >> head)) continue;
        if (head == "elements:") {
            if (elements_seen) throw ParseError(line_no, 1, "duplicate 'elements:' line");
            elements_seen = true;
            std::string e;
            while (words >> e) elements.push_back(e);
            if (elements.empty()) {
                throw ParseError(line_no, 1, "expected at least one element");
            }
        } else if (head == "set:") {
            if (!elements_seen) {
                throw ParseError(line_no, 1, "'set:' line before 'elements:' line");
            }
            std::array<std::string, 3> set;
            for (auto& slot : set) {
                if (!(words >> slot)) {
                    throw ParseError(line_no, static_cast<int>(body.size()) + 1,
                                     "a set needs exactly 3 elements");
                }
            }
            std::string extra;
            if (words >> extra) {
                throw ParseError(line_no, static_cast<int>(body.find(extra)) + 1,
                                 "a set needs exactly 3 elements, got more");
            }
            sets.push_back(std::move(set));
        } else {
            throw ParseError(line_no, static_cast<int>(body.find(head)) + 1,
                             "expected 'elements:' or 'set:', got '" + head + "'");
        }
    }
    if (!elements_seen) throw ParseError(std::max(line_no, 1), 1, "missing 'elements:' line");
    return X3CInstance{std::move(elements), std::move(sets)};
}

X3CInstance parse_x3c(const std::string& text) {
    std::istringstream in(text);
    return parse_x3c(in);
}

Game random_game(const RandomGameSpec& spec) {
    if (spec.players == 0) throw std::invalid_argument("player count must be at least 1");
    if (spec.friend_probability < 0.0 || spec.friend_probability > 1.0 ||
        spec.tie_probability < 0.0 || spec.tie_probability > 1.0) {
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    }

    int width = 1;
    for (std::size_t v = spec.players; v >= 10; v /= 10) ++width;
    auto name = [&](std::size_t k) {
        std::string digits = std::to_string(k + 1);
        return "p" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
    };

    Game game;
    game.degree_bound = static_cast<int>(spec.degree);
    std::vector<PlayerId> ids(spec.players);
    for (std::size_t k = 0; k < spec.players; ++k) {
        ids[k] = name(k);
        game.players.insert(ids[k]);
    }

    for (std::size_t k = 0; k < spec.players; ++k) {
        SplitMix64 rng = SplitMix64::split(spec.seed, k);
        std::size_t max_degree = std::min(spec.degree, spec.players - 1);
        std::size_t degree = max_degree == 0 ? 0 : rng.below(max_degree + 1);

        // Sample `degree` distinct co-players.
        std::set<std::size_t> chosen;
        while (chosen.size() < degree) {
            std::size_t pick = rng.below(spec.players);
            if (pick != k) chosen.insert(pick);
        }

        // Sequential tier insertion: a neighbour either joins the previous
        // tier or opens a new one.
        std::vector<PlayerSet> friend_tiers;
        std::vector<PlayerSet> enemy_tiers;
        for (std::size_t pick : chosen) {
            auto& tiers = rng.chance(spec.friend_probability) ? friend_tiers : enemy_tiers;
            if (tiers.empty() || !rng.chance(spec.tie_probability)) {
                tiers.push_back({ids[pick]});
            } else {
                tiers.back().insert(ids[pick]);
            }
        }
        game.ballots.emplace(
            ids[k], Ballot{ids[k], WeakOrder{std::move(friend_tiers)},
                           WeakOrder{std::move(enemy_tiers)}});
    }
    return game;
}

std::string x3c_a_player(std::size_t element_index) { return "a" + std::to_string(element_index); }
std::string x3c_b_player(std::size_t element_index) { return "b" + std::to_string(element_index); }
std::string x3c_s_player(std::size_t set_index) { return "s" + std::to_string(set_index); }
std::string x3c_t_player(std::size_t set_index, std::size_t slot) {
    return "t" + std::to_string(set_index) + "_" + std::to_string(slot);
}

Game x3c_to_game(const X3CInstance& inst) {
    const auto& elements = inst.elements();
    const auto& sets = inst.sets();
    std::map<std::string, std::size_t> element_index;  // 1-based
    for (std::size_t i = 0; i < elements.size(); ++i) element_index[elements[i]] = i + 1;

    Game game;
    game.degree_bound = 6;
    auto add = [&](const PlayerId& id, WeakOrder friends, WeakOrder enemies) {
        game.players.insert(id);
        game.ballots.emplace(id, Ballot{id, std::move(friends), std::move(enemies)});
    };

    // Per element: the sets it appears in and its slot within each.
    std::vector<PlayerSet> a_enemies(elements.size() + 1);
    std::vector<PlayerSet> b_enemies(elements.size() + 1);
    for (std::size_t i = 1; i <= elements.size(); ++i) {
        b_enemies[i].insert(x3c_a_player(i));
    }
    for (std::size_t j = 1; j <= sets.size(); ++j) {
        for (std::size_t slot = 1; slot <= 3; ++slot) {
            std::size_t i = element_index.at(sets[j - 1][slot - 1]);
            a_enemies[i].insert(x3c_s_player(j));
            b_enemies[i].insert(x3c_t_player(j, slot));
        }
    }
    for (std::size_t i = 1; i <= elements.size(); ++i) {
        add(x3c_a_player(i), tied_order({x3c_b_player(i)}), tied_order(a_enemies[i]));
        add(x3c_b_player(i), WeakOrder{}, tied_order(b_enemies[i]));
    }
    for (std::size_t j = 1; j <= sets.size(); ++j) {
        PlayerSet s_friends;
        for (const auto& e : sets[j - 1]) s_friends.insert(x3c_b_player(element_index.at(e)));
        for (std::size_t slot = 1; slot <= 3; ++slot) s_friends.insert(x3c_t_player(j, slot));
        add(x3c_s_player(j), tied_order(s_friends), WeakOrder{});
        for (std::size_t slot = 1; slot <= 3; ++slot) {
            PlayerSet peers;
            for (std::size_t other = 1; other <= 3; ++other) {
                if (other != slot) peers.insert(x3c_t_player(j, other));
            }
            add(x3c_t_player(j, slot), tied_order(peers), WeakOrder{});
        }
    }
    return game;
}

CoalitionStructure cover_to_partition(const X3CInstance& inst,
                                      const std::set<std::size_t>& cover) {
    const auto& elements = inst.elements();
    const auto& sets = inst.sets();
    std::map<std::string, std::size_t> element_index;
    for (std::size_t i = 0; i < elements.size(); ++i) element_index[elements[i]] = i + 1;

    std::map<std::string, int> covered;
    for (const auto& e : elements) covered[e] = 0;
    for (std::size_t j : cover) {
        if (j < 1 || j > sets.size()) {
            throw std::invalid_argument("cover not exact: no set with index " + std::to_string(j));
        }
        for (const auto& e : sets[j - 1]) ++covered[e];
    }
    for (const auto& [e, count] : covered) {
        if (count != 1) {
            throw std::invalid_argument("cover not exact: element '" + e + "' covered " +
                                        std::to_string(count) + " times");
        }
    }

    std::vector<Coalition> blocks;
    for (std::size_t i = 1; i <= elements.size(); ++i) {
        blocks.emplace_back(PlayerSet{x3c_a_player(i)});
    }
    for (std::size_t j = 1; j <= sets.size(); ++j) {
        PlayerSet triple{x3c_t_player(j, 1), x3c_t_player(j, 2), x3c_t_player(j, 3)};
        if (cover.count(j) > 0) {
            PlayerSet with_bs{x3c_s_player(j)};
            for (const auto& e : sets[j - 1]) with_bs.insert(x3c_b_player(element_index.at(e)));
            blocks.emplace_back(std::move(with_bs));
            blocks.emplace_back(std::move(triple));
        } else {
            triple.insert(x3c_s_player(j));
            blocks.emplace_back(std::move(triple));
        }
    }
    return CoalitionStructure{std::move(blocks)};
}

bool x3c_solve(const X3CInstance& inst) {
    const auto& elements = inst.elements();
    const auto& sets = inst.sets();
    std::map<std::string, std::vector<std::size_t>> containing;
    for (const auto& e : elements) containing[e];
    for (std::size_t j = 0; j < sets.size(); ++j) {
        for (const auto& e : sets[j]) containing[e].push_back(j);
    }

    std::set<std::string> uncovered(elements.begin(), elements.end());
    std::function<bool()> search = [&]() {
        if (uncovered.empty()) return true;
        std::string pivot = *uncovered.begin();
        for (std::size_t j : containing[pivot]) {
            const auto& set = sets[j];
            if (std::ranges::any_of(set, [&](const std::string& e) {
                    return uncovered.count(e) == 0;
                })) {
                continue;
            }
            for (const auto& e : set) uncovered.erase(e);
            if (search()) return true;
            for (const auto& e : set) uncovered.insert(e);
        }
        return false;
    };
    return search();
}

}  // namespace fenhg
