#include "fenhg/stability.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace fenhg {

namespace {

struct PlayerView {
    std::vector<std::pair<int, std::int64_t>> friends;  // (index, cost when absent), rank order
    std::vector<std::pair<int, std::int64_t>> enemies;  // (index, cost when present), rank order
    std::vector<int> friend_sorted;  // indices, ascending, for membership tests
    std::vector<int> enemy_sorted;
    std::vector<int> fans;    // players ranking this one as friend
    std::vector<int> haters;  // players ranking this one as enemy
    std::int64_t singleton_plus = 0;  // delta of the singleton coalition
};

struct IndexedGame {
    std::vector<PlayerId> ids;
    std::map<PlayerId, int> index;
    std::vector<PlayerView> view;
    Norm norm = Norm::One;

    int at(const PlayerId& p) const {
        auto it = index.find(p);
        if (it == index.end()) {
            throw std::invalid_argument("ballot mentions unknown player '" + p + "'");
        }
        return it->second;
    }
};

std::int64_t norm_key(Norm n, std::int64_t plus, std::int64_t minus) {
    return n == Norm::One ? plus + minus : plus * plus + minus * minus;
}

IndexedGame build_indexed(const Game& g, const std::vector<PlayerId>& order) {
    IndexedGame ig;
    ig.norm = g.norm;
    ig.ids = order;
    for (std::size_t i = 0; i < order.size(); ++i) {
        ig.index.emplace(order[i], static_cast<int>(i));
    }
    ig.view.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto bit = g.ballots.find(order[i]);
        if (bit == g.ballots.end()) continue;
        const Ballot& b = bit->second;
        PlayerView& v = ig.view[i];
        std::int64_t total = static_cast<std::int64_t>(b.friends.size());
        std::int64_t seen = 0;
        for (const auto& tier : b.friends.tiers()) {
            std::int64_t below = total - seen - static_cast<std::int64_t>(tier.size());
            for (const auto& f : tier) v.friends.emplace_back(ig.at(f), 1 + below);
            seen += static_cast<std::int64_t>(tier.size());
        }
        seen = 0;
        for (const auto& tier : b.enemies.tiers()) {
            for (const auto& e : tier) v.enemies.emplace_back(ig.at(e), 1 + seen);
            seen += static_cast<std::int64_t>(tier.size());
        }
        for (const auto& [f, cost] : v.friends) v.singleton_plus += cost;
        for (const auto& [f, cost] : v.friends) v.friend_sorted.push_back(f);
        for (const auto& [e, cost] : v.enemies) v.enemy_sorted.push_back(e);
        std::ranges::sort(v.friend_sorted);
        std::ranges::sort(v.enemy_sorted);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& [f, cost] : ig.view[i].friends) ig.view[f].fans.push_back(static_cast<int>(i));
        for (const auto& [e, cost] : ig.view[i].enemies) ig.view[e].haters.push_back(static_cast<int>(i));
    }
    return ig;
}

std::vector<PlayerId> sorted_order(const Game& g) { return {g.players.begin(), g.players.end()}; }

// Deterministic elimination order over the undirected closure of the
// dependency graph: always take the player with the fewest still-unordered
// closure neighbours. Each player's neighbourhood then completes as early as
// possible, which is what lets the search prune whole subtrees.
std::vector<PlayerId> clustered_order(const Game& g) {
    std::map<PlayerId, PlayerSet> adjacent;
    for (const auto& p : g.players) adjacent[p];
    for (const auto& [owner, ballot] : g.ballots) {
        for (const auto& p : ballot.neighbourhood()) {
            adjacent[owner].insert(p);
            adjacent[p].insert(owner);
        }
    }
    std::map<PlayerId, std::size_t> remaining;
    for (const auto& p : g.players) {
        std::size_t count = 0;
        for (const auto& q : adjacent[p]) {
            if (g.players.count(q) > 0) ++count;
        }
        remaining[p] = count;
    }
    std::vector<PlayerId> order;
    PlayerSet done;
    while (order.size() < g.players.size()) {
        const PlayerId* best = nullptr;
        for (const auto& [p, count] : remaining) {
            if (done.count(p) > 0) continue;
            if (best == nullptr || count < remaining[*best]) best = &p;
        }
        order.push_back(*best);
        done.insert(*best);
        for (const auto& q : adjacent[*best]) {
            auto it = remaining.find(q);
            if (it != remaining.end() && it->second > 0) --it->second;
        }
    }
    return order;
}

// Assignment of every player to a block index, with fast distance arithmetic.
struct Assignment {
    const IndexedGame& ig;
    std::vector<int> block_of;
    std::vector<std::vector<int>> blocks;

    Assignment(const IndexedGame& game, const CoalitionStructure& gamma)
        : ig(game), block_of(game.ids.size(), -1) {
        blocks.resize(gamma.blocks().size());
        for (std::size_t b = 0; b < gamma.blocks().size(); ++b) {
            for (const auto& p : gamma.blocks()[b].members()) {
                int idx = ig.at(p);
                block_of[idx] = static_cast<int>(b);
                blocks[b].push_back(idx);
            }
        }
    }

    // Distance of player w sitting in block `target`, optionally pretending
    // that `joiner` is also a member and that `leaver` is not.
    DistancePair pair_in(int w, int target, int joiner = -1, int leaver = -1) const {
        const PlayerView& v = ig.view[w];
        DistancePair d;
        d.norm = ig.norm;
        d.plus = v.singleton_plus;
        for (const auto& [f, cost] : v.friends) {
            bool in = (block_of[f] == target && f != leaver) || f == joiner;
            if (in) d.plus -= cost;
        }
        for (const auto& [e, cost] : v.enemies) {
            bool in = (block_of[e] == target && e != leaver) || e == joiner;
            if (in) d.minus += cost;
        }
        return d;
    }

    bool welcome(int i, int target, InDegreeMode mode) const {
        if (mode == InDegreeMode::Bounded) {
            for (int j : ig.view[i].haters) {
                if (block_of[j] == target) return false;
            }
            return true;
        }
        for (int j : blocks[target]) {
            if (std::ranges::binary_search(ig.view[j].enemy_sorted, i)) return false;
        }
        return true;
    }

    bool unbound(int i, InDegreeMode mode) const {
        int mine = block_of[i];
        if (mode == InDegreeMode::Bounded) {
            for (int j : ig.view[i].fans) {
                if (block_of[j] == mine) return false;
            }
            return true;
        }
        for (int j : blocks[mine]) {
            if (j != i && std::ranges::binary_search(ig.view[j].friend_sorted, i)) return false;
        }
        return true;
    }
};

Coalition favourite_coalition(const IndexedGame& ig, int i) {
    PlayerSet members{ig.ids[i]};
    for (const auto& [f, cost] : ig.view[i].friends) members.insert(ig.ids[f]);
    return Coalition{std::move(members)};
}

Coalition block_with(const IndexedGame& ig, const std::vector<int>& block, int extra) {
    PlayerSet members{ig.ids[extra]};
    for (int j : block) members.insert(ig.ids[j]);
    return Coalition{std::move(members)};
}

void require_partition(const Game& g, const CoalitionStructure& gamma) {
    if (!gamma.is_partition_of(g.players)) {
        throw std::invalid_argument("coalition structure is not a partition of the player set");
    }
}

}  // namespace

StabilityReport verify(const Game& g, const CoalitionStructure& gamma, StabilityNotion notion,
                       InDegreeMode mode) {
    require_partition(g, gamma);
    IndexedGame ig = build_indexed(g, sorted_order(g));
    Assignment state(ig, gamma);
    const int n = static_cast<int>(ig.ids.size());

    StabilityReport report;
    for (int i = 0; i < n; ++i) {
        int mine = state.block_of[i];
        DistancePair current = state.pair_in(i, mine);
        if (notion == StabilityNotion::Perfect) {
            if (current.key() != 0) {
                report.stable = false;
                report.witness = Deviation{ig.ids[i], favourite_coalition(ig, i)};
                return report;
            }
            report.distances.emplace(ig.ids[i], current);
            continue;
        }

        if (notion == StabilityNotion::ContractuallyIndividuallyStable &&
            !state.unbound(i, mode)) {
            report.distances.emplace(ig.ids[i], current);
            continue;
        }

        bool needs_welcome = notion != StabilityNotion::Nash;
        std::vector<int> candidate_blocks;
        for (const auto& [f, cost] : ig.view[i].friends) {
            int b = state.block_of[f];
            if (b == mine) continue;
            if (std::ranges::find(candidate_blocks, b) == candidate_blocks.end()) {
                candidate_blocks.push_back(b);
            }
        }
        std::optional<Deviation> found;
        for (int b : candidate_blocks) {
            if (state.pair_in(i, b, /*joiner=*/i).key() >= current.key()) continue;
            if (needs_welcome && !state.welcome(i, b, mode)) continue;
            found = Deviation{ig.ids[i], block_with(ig, state.blocks[b], i)};
            break;
        }
        if (!found && state.blocks[mine].size() > 1) {
            DistancePair alone{ig.view[i].singleton_plus, 0, ig.norm};
            if (alone.key() < current.key()) {
                found = Deviation{ig.ids[i], Coalition{PlayerSet{ig.ids[i]}}};
            }
        }
        if (found) {
            report.stable = false;
            report.witness = std::move(found);
            return report;
        }
        report.distances.emplace(ig.ids[i], current);
    }
    report.stable = true;
    return report;
}

StabilityReport brute_force_verify(const Game& g, const CoalitionStructure& gamma,
                                   StabilityNotion notion) {
    require_partition(g, gamma);
    StabilityReport report;
    for (const auto& id : g.players) {
        const Ballot& ballot = g.ballots.at(id);
        const Coalition& home = gamma.block_of(id);
        auto current = delta(ballot, home, g.norm).key();

        if (notion == StabilityNotion::Perfect) {
            if (current != 0) {
                PlayerSet fav = ballot.friends.ground();
                fav.insert(id);
                report.stable = false;
                report.witness = Deviation{id, Coalition{std::move(fav)}};
                return report;
            }
            report.distances.emplace(id, delta(ballot, home, g.norm));
            continue;
        }

        bool unbound = true;
        if (notion == StabilityNotion::ContractuallyIndividuallyStable && home.size() > 1) {
            Coalition reduced = home.without(id);
            for (const auto& j : home.members()) {
                if (j == id) continue;
                const Ballot& other = g.ballots.at(j);
                if (delta(other, reduced, g.norm).key() > delta(other, home, g.norm).key()) {
                    unbound = false;
                    break;
                }
            }
        }
        if (notion == StabilityNotion::ContractuallyIndividuallyStable && !unbound) {
            report.distances.emplace(id, delta(ballot, home, g.norm));
            continue;
        }

        auto welcome_in = [&](const Coalition& target_before) {
            Coalition joined = target_before.with(id);
            for (const auto& j : target_before.members()) {
                const Ballot& other = g.ballots.at(j);
                if (delta(other, joined, g.norm).key() > delta(other, target_before, g.norm).key()) {
                    return false;
                }
            }
            return true;
        };

        std::optional<Deviation> found;
        for (const auto& block : gamma.blocks()) {
            if (block.contains(id)) continue;
            Coalition joined = block.with(id);
            if (delta(ballot, joined, g.norm).key() >= current) continue;
            if (notion != StabilityNotion::Nash && !welcome_in(block)) continue;
            found = Deviation{id, joined};
            break;
        }
        if (!found && home.size() > 1) {
            Coalition alone{PlayerSet{id}};
            if (delta(ballot, alone, g.norm).key() < current) {
                found = Deviation{id, alone};
            }
        }
        if (found) {
            report.stable = false;
            report.witness = std::move(found);
            return report;
        }
        report.distances.emplace(id, delta(ballot, home, g.norm));
    }
    report.stable = true;
    return report;
}

std::optional<CoalitionStructure> solve_perfect(const Game& g) {
    IndexedGame ig = build_indexed(g, sorted_order(g));
    const int n = static_cast<int>(ig.ids.size());

    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (const auto& [f, cost] : ig.view[i].friends) parent[find(i)] = find(f);
    }
    for (int i = 0; i < n; ++i) {
        for (const auto& [e, cost] : ig.view[i].enemies) {
            if (find(i) == find(e)) return std::nullopt;
        }
    }
    std::map<int, PlayerSet> components;
    for (int i = 0; i < n; ++i) components[find(i)].insert(ig.ids[i]);
    std::vector<Coalition> blocks;
    for (auto& [root, members] : components) blocks.emplace_back(std::move(members));
    return CoalitionStructure{std::move(blocks)};
}

CoalitionStructure solve_cis(const Game& g) {
    IndexedGame ig = build_indexed(g, sorted_order(g));
    const int n = static_cast<int>(ig.ids.size());

    std::vector<std::vector<int>> blocks(n);
    std::vector<int> block_of(n);
    for (int i = 0; i < n; ++i) {
        blocks[i] = {i};
        block_of[i] = i;
    }

    auto pair_in = [&](int w, int target, int joiner, int leaver) {
        const PlayerView& v = ig.view[w];
        DistancePair d{v.singleton_plus, 0, ig.norm};
        for (const auto& [f, cost] : v.friends) {
            if ((block_of[f] == target && f != leaver) || f == joiner) d.plus -= cost;
        }
        for (const auto& [e, cost] : v.enemies) {
            if ((block_of[e] == target && e != leaver) || e == joiner) d.minus += cost;
        }
        return d;
    };

    // Drop of the summed distance keys caused by moving i to `target`
    // (target < 0 means a fresh singleton block).
    auto potential_drop = [&](int i, int target) {
        int mine = block_of[i];
        std::int64_t drop = pair_in(i, mine, -1, -1).key() -
                            (target < 0 ? DistancePair{ig.view[i].singleton_plus, 0, ig.norm}.key()
                                        : pair_in(i, target, i, -1).key());
        if (target >= 0) {
            for (int j : blocks[target]) {
                drop += pair_in(j, target, -1, -1).key() - pair_in(j, target, i, -1).key();
            }
        }
        for (int j : blocks[mine]) {
            if (j == i) continue;
            drop += pair_in(j, mine, -1, -1).key() - pair_in(j, mine, -1, i).key();
        }
        return drop;
    };

    auto welcome = [&](int i, int target) {
        for (int j : ig.view[i].haters) {
            if (block_of[j] == target) return false;
        }
        return true;
    };
    auto unbound = [&](int i) {
        for (int j : ig.view[i].fans) {
            if (block_of[j] == block_of[i]) return false;
        }
        return true;
    };

    // The summed distance keys drop by at least one per applied move, so the
    // initial all-singletons potential bounds the move count.
    std::int64_t budget = 0;
    for (int i = 0; i < n; ++i) {
        budget += DistancePair{ig.view[i].singleton_plus, 0, ig.norm}.key();
    }
    std::int64_t moves = 0;

    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i < n && !moved; ++i) {
            if (!unbound(i)) continue;
            int mine = block_of[i];
            std::int64_t current = pair_in(i, mine, -1, -1).key();

            // Existing blocks ordered by smallest member, singleton last.
            std::vector<int> targets;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                if (!blocks[b].empty() && static_cast<int>(b) != mine) {
                    targets.push_back(static_cast<int>(b));
                }
            }
            std::ranges::sort(targets, [&](int a, int b) {
                return *std::ranges::min_element(blocks[a]) < *std::ranges::min_element(blocks[b]);
            });

            int best_target = -2;
            std::int64_t best_drop = 0;
            for (int b : targets) {
                if (pair_in(i, b, i, -1).key() >= current) continue;
                if (!welcome(i, b)) continue;
                std::int64_t drop = potential_drop(i, b);
                if (drop > best_drop) {
                    best_drop = drop;
                    best_target = b;
                }
            }
            if (blocks[mine].size() > 1 &&
                DistancePair{ig.view[i].singleton_plus, 0, ig.norm}.key() < current) {
                std::int64_t drop = potential_drop(i, -1);
                if (drop > best_drop) {
                    best_drop = drop;
                    best_target = -1;
                }
            }
            if (best_target == -2) continue;

            auto& source = blocks[mine];
            source.erase(std::ranges::find(source, i));
            if (best_target == -1) {
                blocks.push_back({i});
                block_of[i] = static_cast<int>(blocks.size()) - 1;
            } else {
                blocks[best_target].push_back(i);
                block_of[i] = best_target;
            }
            moved = true;
            if (++moves > budget) {
                throw std::logic_error("descent exceeded its potential budget");
            }
        }
    }

    std::vector<Coalition> out;
    for (const auto& block : blocks) {
        if (block.empty()) continue;
        PlayerSet members;
        for (int j : block) members.insert(ig.ids[j]);
        out.emplace_back(std::move(members));
    }
    return CoalitionStructure{std::move(out)};
}

void for_each_partition(const PlayerSet& players,
                        const std::function<void(const CoalitionStructure&)>& fn) {
    std::vector<PlayerId> ids(players.begin(), players.end());
    const std::size_t n = ids.size();
    if (n == 0) {
        fn(CoalitionStructure{});
        return;
    }
    std::vector<int> assign(n, 0);
    auto emit = [&]() {
        int block_count = 1 + *std::ranges::max_element(assign);
        std::vector<PlayerSet> groups(static_cast<std::size_t>(block_count));
        for (std::size_t i = 0; i < n; ++i) groups[static_cast<std::size_t>(assign[i])].insert(ids[i]);
        std::vector<Coalition> blocks;
        blocks.reserve(groups.size());
        for (auto& group : groups) blocks.emplace_back(std::move(group));
        fn(CoalitionStructure{std::move(blocks)});
    };
    std::function<void(std::size_t, int)> recurse = [&](std::size_t pos, int used) {
        if (pos == n) {
            emit();
            return;
        }
        for (int b = 0; b <= used; ++b) {
            assign[pos] = b;
            recurse(pos + 1, used + (b == used ? 1 : 0));
        }
    };
    recurse(1, 1);
}

namespace {

// Depth-first enumeration of partitions in restricted-growth order with
// incrementally maintained distance bounds. A subtree is skipped only when
// some assigned player provably has a valid strict deviation in every
// completion of the current partial partition.
class ExhaustiveSearch {
public:
    ExhaustiveSearch(const Game& g, StabilityNotion notion, ExhaustiveOptions options)
        : ig_(build_indexed(g, clustered_order(g))),
          notion_(notion),
          options_(options),
          n_(static_cast<int>(ig_.ids.size())) {
        block_of_.assign(static_cast<std::size_t>(n_), -1);
        lb_plus_.assign(static_cast<std::size_t>(n_), 0);
        lb_minus_.assign(static_cast<std::size_t>(n_), 0);
        un_nbrs_.resize(static_cast<std::size_t>(n_));
        un_haters_.resize(static_cast<std::size_t>(n_));
        un_fans_.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            un_nbrs_[i] = static_cast<int>(ig_.view[i].friends.size() + ig_.view[i].enemies.size());
            un_haters_[i] = static_cast<int>(ig_.view[i].haters.size());
            un_fans_[i] = static_cast<int>(ig_.view[i].fans.size());
        }
    }

    std::vector<CoalitionStructure> run() {
        if (n_ == 0) return {CoalitionStructure{}};
        descend(0);
        return std::move(results_);
    }

private:
    IndexedGame ig_;
    StabilityNotion notion_;
    ExhaustiveOptions options_;
    int n_;
    std::vector<int> block_of_;
    std::vector<std::vector<int>> blocks_;
    std::vector<std::int64_t> lb_plus_, lb_minus_;
    std::vector<int> un_nbrs_, un_haters_, un_fans_;
    std::vector<CoalitionStructure> results_;
    bool done_ = false;

    std::int64_t singleton_key(int w) const {
        return norm_key(ig_.norm, ig_.view[w].singleton_plus, 0);
    }

    // Candidate (plus, minus) of w inside block b, with w as an extra member.
    std::int64_t join_key(int w, int b) const {
        const PlayerView& v = ig_.view[w];
        std::int64_t plus = v.singleton_plus;
        std::int64_t minus = 0;
        for (const auto& [f, cost] : v.friends) {
            if (block_of_[f] == b) plus -= cost;
        }
        for (const auto& [e, cost] : v.enemies) {
            if (block_of_[e] == b) minus += cost;
        }
        return norm_key(ig_.norm, plus, minus);
    }

    bool exact_ready(int w) const {
        if (block_of_[w] < 0 || un_nbrs_[w] != 0) return false;
        bool needs_haters = notion_ == StabilityNotion::IndividuallyStable ||
                            notion_ == StabilityNotion::ContractuallyIndividuallyStable;
        bool needs_fans = notion_ == StabilityNotion::ContractuallyIndividuallyStable;
        if (needs_haters && un_haters_[w] != 0) return false;
        if (needs_fans && un_fans_[w] != 0) return false;
        return true;
    }

    bool hater_in(int w, int b) const {
        for (int j : ig_.view[w].haters) {
            if (block_of_[j] == b) return true;
        }
        return false;
    }

    bool bound(int w) const {
        for (int j : ig_.view[w].fans) {
            if (j != w && block_of_[j] == block_of_[w]) return true;
        }
        return false;
    }

    // Requires exact_ready(w): the distances of w against its own block and
    // all candidate targets can no longer change.
    bool guaranteed_deviation(int w) const {
        int mine = block_of_[w];
        std::int64_t current = norm_key(ig_.norm, lb_plus_[w], lb_minus_[w]);
        if (notion_ == StabilityNotion::Perfect) return current != 0;
        if (notion_ == StabilityNotion::ContractuallyIndividuallyStable && bound(w)) return false;
        bool needs_welcome = notion_ != StabilityNotion::Nash;

        for (const auto& [f, cost] : ig_.view[w].friends) {
            int b = block_of_[f];
            if (b == mine || b < 0) continue;
            if (join_key(w, b) >= current) continue;
            if (needs_welcome && hater_in(w, b)) continue;
            return true;
        }
        if (blocks_[mine].size() > 1 && singleton_key(w) < current) return true;
        return false;
    }

    bool lb_pruned(int w) const {
        if (notion_ == StabilityNotion::Perfect) return lb_plus_[w] + lb_minus_[w] > 0;
        if (notion_ == StabilityNotion::ContractuallyIndividuallyStable) return false;
        return norm_key(ig_.norm, lb_plus_[w], lb_minus_[w]) > singleton_key(w);
    }

    // Nash-only forecast: a friend's block already beats w's own block even if
    // every unassigned enemy of w piles into it and no further friend joins.
    // Unassigned players can only improve w's block or worsen the candidate,
    // so such a deviation survives every completion.
    bool forecast_deviation(int w) const {
        if (notion_ != StabilityNotion::Nash) return false;
        const PlayerView& v = ig_.view[w];
        std::int64_t current_lb = norm_key(ig_.norm, lb_plus_[w], lb_minus_[w]);
        std::int64_t pending_minus = 0;
        for (const auto& [e, cost] : v.enemies) {
            if (block_of_[e] < 0) pending_minus += cost;
        }
        int mine = block_of_[w];
        for (const auto& [f, fcost] : v.friends) {
            int b = block_of_[f];
            if (b < 0 || b == mine) continue;
            std::int64_t plus_ub = v.singleton_plus;
            std::int64_t minus_ub = pending_minus;
            for (const auto& [f2, cost] : v.friends) {
                if (block_of_[f2] == b) plus_ub -= cost;
            }
            for (const auto& [e, cost] : v.enemies) {
                if (block_of_[e] == b) minus_ub += cost;
            }
            if (norm_key(ig_.norm, plus_ub, minus_ub) < current_lb) return true;
        }
        return false;
    }

    // Places k into block b (b == blocks_.size() opens a new block), updates
    // bounds, and reports whether the subtree can be skipped.
    bool assign(int k, int b) {
        if (b == static_cast<int>(blocks_.size())) blocks_.emplace_back();
        blocks_[b].push_back(k);
        block_of_[k] = b;
        const PlayerView& v = ig_.view[k];

        for (const auto& [f, cost] : v.friends) {
            if (block_of_[f] >= 0 && block_of_[f] != b) lb_plus_[k] += cost;
            --un_fans_[f];
        }
        for (const auto& [e, cost] : v.enemies) {
            if (block_of_[e] == b) lb_minus_[k] += cost;
            --un_haters_[e];
        }
        for (int w : v.fans) {
            --un_nbrs_[w];
            if (block_of_[w] >= 0 && block_of_[w] != b) {
                for (const auto& [f, cost] : ig_.view[w].friends) {
                    if (f == k) {
                        lb_plus_[w] += cost;
                        break;
                    }
                }
            }
        }
        for (int w : v.haters) {
            --un_nbrs_[w];
            if (block_of_[w] == b) {
                for (const auto& [e, cost] : ig_.view[w].enemies) {
                    if (e == k) {
                        lb_minus_[w] += cost;
                        break;
                    }
                }
            }
        }

        if (!options_.prune) return false;
        auto doomed = [&](int w) {
            if (block_of_[w] < 0) return false;
            if (lb_pruned(w)) return true;
            if (exact_ready(w)) return guaranteed_deviation(w);
            return forecast_deviation(w);
        };
        if (doomed(k)) return true;
        for (int w : v.fans) {
            if (doomed(w)) return true;
        }
        for (int w : v.haters) {
            if (doomed(w)) return true;
        }
        for (const auto& [f, cost] : v.friends) {
            if (doomed(f)) return true;
        }
        for (const auto& [e, cost] : v.enemies) {
            if (doomed(e)) return true;
        }
        return false;
    }

    void unassign(int k, int b) {
        const PlayerView& v = ig_.view[k];
        for (int w : v.haters) {
            ++un_nbrs_[w];
            if (block_of_[w] == b) {
                for (const auto& [e, cost] : ig_.view[w].enemies) {
                    if (e == k) {
                        lb_minus_[w] -= cost;
                        break;
                    }
                }
            }
        }
        for (int w : v.fans) {
            ++un_nbrs_[w];
            if (block_of_[w] >= 0 && block_of_[w] != b) {
                for (const auto& [f, cost] : ig_.view[w].friends) {
                    if (f == k) {
                        lb_plus_[w] -= cost;
                        break;
                    }
                }
            }
        }
        for (const auto& [e, cost] : v.enemies) ++un_haters_[e];
        for (const auto& [f, cost] : v.friends) ++un_fans_[f];
        lb_plus_[k] = 0;
        lb_minus_[k] = 0;
        block_of_[k] = -1;
        blocks_[b].pop_back();
        if (blocks_[b].empty()) blocks_.pop_back();
    }

    bool leaf_stable() const {
        for (int w = 0; w < n_; ++w) {
            int mine = block_of_[w];
            std::int64_t current = norm_key(ig_.norm, lb_plus_[w], lb_minus_[w]);
            if (notion_ == StabilityNotion::Perfect) {
                if (current != 0) return false;
                continue;
            }
            if (notion_ == StabilityNotion::ContractuallyIndividuallyStable && bound(w)) continue;
            bool needs_welcome = notion_ != StabilityNotion::Nash;
            bool deviates = false;
            for (const auto& [f, cost] : ig_.view[w].friends) {
                int b = block_of_[f];
                if (b == mine) continue;
                if (join_key(w, b) >= current) continue;
                if (needs_welcome && hater_in(w, b)) continue;
                deviates = true;
                break;
            }
            if (!deviates && blocks_[mine].size() > 1 && singleton_key(w) < current) {
                deviates = true;
            }
            if (deviates) return false;
        }
        return true;
    }

    void record() {
        std::vector<Coalition> out;
        out.reserve(blocks_.size());
        for (const auto& block : blocks_) {
            PlayerSet members;
            for (int j : block) members.insert(ig_.ids[j]);
            out.emplace_back(std::move(members));
        }
        results_.emplace_back(std::move(out));
        if (!options_.enumerate_all) done_ = true;
    }

    void descend(int k) {
        if (done_) return;
        if (k == n_) {
            if (leaf_stable()) record();
            return;
        }
        int limit = static_cast<int>(blocks_.size());
        for (int b = 0; b <= limit && !done_; ++b) {
            bool pruned = assign(k, b);
            if (!pruned) descend(k + 1);
            unassign(k, b);
        }
    }
};

}  // namespace

std::vector<CoalitionStructure> solve_exhaustive(const Game& g, StabilityNotion notion,
                                                 ExhaustiveOptions options) {
    if (g.players.size() > options.guard) {
        throw std::invalid_argument(
            "player count " + std::to_string(g.players.size()) + " exceeds the exhaustive guard " +
            std::to_string(options.guard) +
            "; raise the guard or use the descent solver for a contractually stable structure");
    }
    ExhaustiveSearch search(g, notion, options);
    auto results = search.run();
    std::ranges::sort(results, [](const CoalitionStructure& a, const CoalitionStructure& b) {
        return a.blocks() < b.blocks();
    });
    return results;
}

}  // namespace fenhg
