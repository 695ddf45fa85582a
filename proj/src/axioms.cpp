#include "fenhg/axioms.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include "fenhg/rng.hpp"

namespace fenhg {

namespace {

std::vector<PlayerId> sorted_by_rank(const WeakOrder& order, const PlayerSet& members,
                                     bool worst_first) {
    std::vector<PlayerId> out;
    for (const auto& p : members) {
        if (order.contains(p)) out.push_back(p);
    }
    std::ranges::sort(out, [&](const PlayerId& x, const PlayerId& y) {
        int rx = order.rank_of(x), ry = order.rank_of(y);
        if (rx != ry) return worst_first ? rx > ry : rx < ry;
        return x < y;
    });
    return out;
}

}  // namespace

std::optional<ResponsiveWitness> responsive_dominates(const Ballot& b, const Coalition& a,
                                                      const Coalition& c) {
    if (!a.contains(b.owner) || !c.contains(b.owner)) {
        throw std::invalid_argument("coalition does not contain the ballot owner '" + b.owner +
                                    "'");
    }
    ResponsiveWitness witness;

    // Friends of the dominated coalition, best rank first; each one must be
    // matched to an unused friend of `a` with a weakly better rank.
    auto b_friends = sorted_by_rank(b.friends, c.members(), /*worst_first=*/false);
    auto a_friends = sorted_by_rank(b.friends, a.members(), /*worst_first=*/false);
    std::vector<bool> used(a_friends.size(), false);
    for (const auto& j : b_friends) {
        bool matched = false;
        for (std::size_t t = 0; t < a_friends.size(); ++t) {
            if (used[t]) continue;
            if (b.friends.rank_of(a_friends[t]) > b.friends.rank_of(j)) break;
            used[t] = true;
            witness.friend_injection.emplace(j, a_friends[t]);
            matched = true;
            break;
        }
        if (!matched) return std::nullopt;
    }

    // Enemies of `a`, worst rank first; each must map to an unused enemy of
    // the dominated coalition with a weakly worse rank.
    auto a_enemies = sorted_by_rank(b.enemies, a.members(), /*worst_first=*/true);
    auto b_enemies = sorted_by_rank(b.enemies, c.members(), /*worst_first=*/true);
    used.assign(b_enemies.size(), false);
    for (const auto& k : a_enemies) {
        bool matched = false;
        for (std::size_t t = 0; t < b_enemies.size(); ++t) {
            if (used[t]) continue;
            if (b.enemies.rank_of(b_enemies[t]) < b.enemies.rank_of(k)) break;
            used[t] = true;
            witness.enemy_injection.emplace(k, b_enemies[t]);
            matched = true;
            break;
        }
        if (!matched) return std::nullopt;
    }
    return witness;
}

Ballot nonimposition_witness(const Coalition& target, const PlayerSet& neighbourhood,
                             const PlayerId& owner) {
    if (!target.contains(owner)) {
        throw std::invalid_argument("target coalition does not contain '" + owner + "'");
    }
    PlayerSet friends = target.members();
    friends.erase(owner);
    PlayerSet enemies;
    std::ranges::set_difference(neighbourhood, target.members(),
                                std::inserter(enemies, enemies.end()));
    enemies.erase(owner);
    return Ballot{owner, tied_order(friends), tied_order(enemies)};
}

namespace {

WeakOrder shift_within(const WeakOrder& order, const PlayerId& j, const PlayerId& x) {
    if (x == j) {
        throw std::invalid_argument("shift: players must be distinct");
    }
    if (order.rank_of(x) > order.rank_of(j)) {
        throw std::invalid_argument("shift: '" + x + "' is ranked below '" + j + "'");
    }
    std::vector<PlayerSet> tiers;
    std::size_t target = 0;
    for (const auto& tier : order.tiers()) {
        PlayerSet kept = tier;
        kept.erase(j);
        if (tier.count(x) > 0) target = tiers.size();
        if (!kept.empty()) tiers.push_back(std::move(kept));
    }
    tiers.insert(tiers.begin() + static_cast<std::ptrdiff_t>(target), PlayerSet{j});
    return WeakOrder{std::move(tiers)};
}

}  // namespace

Ballot shift_player(const Ballot& b, const PlayerId& j, const PlayerId& x) {
    if (b.friends.contains(j) && b.friends.contains(x)) {
        return Ballot{b.owner, shift_within(b.friends, j, x), b.enemies};
    }
    if (b.enemies.contains(j) && b.enemies.contains(x)) {
        return Ballot{b.owner, b.friends, shift_within(b.enemies, j, x)};
    }
    throw std::invalid_argument("shift: '" + j + "' and '" + x +
                                "' are not on the same side of the ballot");
}

namespace {

constexpr std::size_t kExhaustiveNeighbourhood = 5;

std::vector<PlayerId> as_vector(const PlayerSet& s) { return {s.begin(), s.end()}; }

Coalition with_owner(const PlayerId& owner, PlayerSet members) {
    members.insert(owner);
    return Coalition{std::move(members)};
}

PlayerSet random_subset(SplitMix64& rng, const std::vector<PlayerId>& pool) {
    PlayerSet out;
    for (const auto& p : pool) {
        if (rng.chance(0.5)) out.insert(p);
    }
    return out;
}

void for_each_subset(const std::vector<PlayerId>& pool,
                     const std::function<void(const PlayerSet&)>& fn) {
    const std::size_t n = pool.size();
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        PlayerSet s;
        for (std::size_t t = 0; t < n; ++t) {
            if (mask & (1ULL << t)) s.insert(pool[t]);
        }
        fn(s);
    }
}

struct SuiteContext {
    const Game& game;
    const DeltaFn& dist;
    std::uint64_t trials;
    std::uint64_t seed;

    std::int64_t key(const Ballot& b, const Coalition& c) const {
        return dist(b, c, game.norm).key();
    }
    SplitMix64 stream(std::uint64_t axiom, std::uint64_t player, std::uint64_t trial) const {
        return SplitMix64::split(seed, (axiom << 56) ^ (player << 28) ^ trial);
    }
};

// Tied pairs under the induced order: same friend tier, same enemy tier, or
// both neutral.
std::vector<std::pair<PlayerId, PlayerId>> tied_pairs(const Game& g, const Ballot& b,
                                                      bool include_neutral) {
    std::vector<std::pair<PlayerId, PlayerId>> pairs;
    auto collect = [&](const WeakOrder& side) {
        for (const auto& tier : side.tiers()) {
            auto members = as_vector(tier);
            for (std::size_t s = 0; s < members.size(); ++s) {
                for (std::size_t t = s + 1; t < members.size(); ++t) {
                    pairs.emplace_back(members[s], members[t]);
                }
            }
        }
    };
    collect(b.friends);
    collect(b.enemies);
    if (include_neutral) {
        std::vector<PlayerId> neutral;
        for (const auto& p : g.players) {
            if (p != b.owner && !b.is_friend(p) && !b.is_enemy(p)) neutral.push_back(p);
        }
        for (std::size_t s = 0; s + 1 < neutral.size() && s < 4; ++s) {
            pairs.emplace_back(neutral[s], neutral[s + 1]);
        }
    }
    return pairs;
}

void check_indifference(const SuiteContext& ctx, std::size_t pidx, const Ballot& b,
                        AxiomReport& report) {
    auto pairs = tied_pairs(ctx.game, b, /*include_neutral=*/true);
    if (pairs.empty()) return;
    auto neighbours = as_vector(b.neighbourhood());

    auto check = [&](const PlayerId& j, const PlayerId& k, const PlayerSet& base,
                     std::uint64_t trial) {
        auto with_j = with_owner(b.owner, base).with(j);
        auto with_k = with_owner(b.owner, base).with(k);
        ++report.trials;
        if (ctx.key(b, with_j) != ctx.key(b, with_k)) {
            report.counterexamples.push_back(
                {b.owner, with_j, with_k,
                 "tied players '" + j + "' and '" + k + "' give different distances", trial});
        }
    };

    if (neighbours.size() <= kExhaustiveNeighbourhood) {
        std::uint64_t trial = 0;
        for (const auto& [j, k] : pairs) {
            std::vector<PlayerId> pool;
            for (const auto& p : neighbours) {
                if (p != j && p != k) pool.push_back(p);
            }
            for_each_subset(pool, [&](const PlayerSet& base) { check(j, k, base, trial++); });
        }
        return;
    }
    for (std::uint64_t trial = 0; trial < ctx.trials; ++trial) {
        auto rng = ctx.stream(0, pidx, trial);
        const auto& [j, k] = pairs[rng.below(pairs.size())];
        std::vector<PlayerId> pool;
        for (const auto& p : neighbours) {
            if (p != j && p != k) pool.push_back(p);
        }
        check(j, k, random_subset(rng, pool), trial);
    }
}

void check_monotonicity(const SuiteContext& ctx, std::size_t pidx, const Ballot& b,
                        bool friend_side, AxiomReport& report) {
    const WeakOrder& side = friend_side ? b.friends : b.enemies;
    if (side.empty()) return;
    auto candidates = as_vector(side.ground());
    auto neighbours = as_vector(b.neighbourhood());

    auto check = [&](const PlayerId& added, const PlayerSet& base, std::uint64_t trial) {
        auto before = with_owner(b.owner, base);
        auto after = before.with(added);
        ++report.trials;
        auto kb = ctx.key(b, before);
        auto ka = ctx.key(b, after);
        bool ok = friend_side ? ka < kb : ka > kb;
        if (!ok) {
            report.counterexamples.push_back(
                {b.owner, before, after,
                 std::string("adding ") + (friend_side ? "friend '" : "enemy '") + added +
                     "' did not strictly " + (friend_side ? "improve" : "worsen") +
                     " the coalition",
                 trial});
        }
    };

    if (neighbours.size() <= kExhaustiveNeighbourhood) {
        std::uint64_t trial = 0;
        for (const auto& added : candidates) {
            std::vector<PlayerId> pool;
            for (const auto& p : neighbours) {
                if (p != added) pool.push_back(p);
            }
            for_each_subset(pool, [&](const PlayerSet& base) { check(added, base, trial++); });
        }
        return;
    }
    for (std::uint64_t trial = 0; trial < ctx.trials; ++trial) {
        auto rng = ctx.stream(friend_side ? 1 : 2, pidx, trial);
        const auto& added = candidates[rng.below(candidates.size())];
        std::vector<PlayerId> pool;
        for (const auto& p : neighbours) {
            if (p != added) pool.push_back(p);
        }
        check(added, random_subset(rng, pool), trial);
    }
}

void check_responsive(const SuiteContext& ctx, std::size_t pidx, const Ballot& b,
                      AxiomReport& report) {
    auto neighbours = as_vector(b.neighbourhood());
    if (neighbours.empty()) return;
    auto check = [&](const PlayerSet& first, const PlayerSet& second, std::uint64_t trial) {
        auto a = with_owner(b.owner, first);
        auto c = with_owner(b.owner, second);
        ++report.trials;
        if (responsive_dominates(b, a, c) && ctx.key(b, a) > ctx.key(b, c)) {
            report.counterexamples.push_back(
                {b.owner, a, c, "responsively dominating coalition has larger distance", trial});
        }
    };

    if (neighbours.size() <= kExhaustiveNeighbourhood) {
        std::uint64_t trial = 0;
        for_each_subset(neighbours, [&](const PlayerSet& first) {
            for_each_subset(neighbours,
                            [&](const PlayerSet& second) { check(first, second, trial++); });
        });
        return;
    }
    for (std::uint64_t trial = 0; trial < ctx.trials; ++trial) {
        auto rng = ctx.stream(3, pidx, trial);
        auto first = random_subset(rng, neighbours);
        auto second = random_subset(rng, neighbours);
        check(first, second, trial);
    }
}

void check_shift_bound(const SuiteContext& ctx, std::size_t pidx, const Ballot& b,
                       AxiomReport& report) {
    auto neighbours = as_vector(b.neighbourhood());
    if (neighbours.empty()) return;

    // Pairs (j, x) on one side with x ranked weakly better than j.
    std::vector<std::pair<PlayerId, PlayerId>> moves;
    for (const auto& side : {b.friends, b.enemies}) {
        for (const auto& j : side.ground()) {
            for (const auto& x : side.ground()) {
                if (x != j && side.rank_of(x) <= side.rank_of(j)) moves.emplace_back(j, x);
            }
        }
    }
    if (moves.empty()) return;

    // The bound is checked in its aggregate form: after the shift, the
    // coalition without j may fall behind the one with j by at most the
    // Hausdorff tau between the old and new orders. (The per-side variant is
    // false: a friend-side shift leaves the enemy distances untouched, and
    // nothing ties their gap to the shift.)
    auto check = [&](const PlayerId& j, const PlayerId& x, const PlayerSet& with_j_set,
                     const PlayerSet& without_j_set, std::uint64_t trial) {
        auto a = with_owner(b.owner, with_j_set).with(j);
        auto c = with_owner(b.owner, without_j_set);
        auto before_a = ctx.dist(b, a, ctx.game.norm);
        auto before_c = ctx.dist(b, c, ctx.game.norm);
        if (before_a.plus + before_a.minus > before_c.plus + before_c.minus) {
            return;  // needs A weakly preferred to B beforehand
        }
        Ballot shifted = shift_player(b, j, x);
        bool friend_side = b.friends.contains(j);
        std::int64_t tau = friend_side ? hausdorff_tau(friend_reference_order(b),
                                                       friend_reference_order(shifted))
                                       : hausdorff_tau(enemy_reference_order(b),
                                                       enemy_reference_order(shifted));
        auto da = ctx.dist(shifted, a, ctx.game.norm);
        auto dc = ctx.dist(shifted, c, ctx.game.norm);
        ++report.trials;
        if ((dc.plus + dc.minus) - (da.plus + da.minus) < -tau) {
            report.counterexamples.push_back(
                {b.owner, a, c,
                 "after shifting '" + j + "' above '" + x +
                     "' the losing coalition fell behind by more than the shift distance " +
                     std::to_string(tau),
                 trial});
        }
    };

    if (neighbours.size() <= kExhaustiveNeighbourhood) {
        std::uint64_t trial = 0;
        for (const auto& [j, x] : moves) {
            for_each_subset(neighbours, [&](const PlayerSet& first) {
                if (first.count(j) == 0) return;
                for_each_subset(neighbours, [&](const PlayerSet& second) {
                    if (second.count(j) > 0) return;
                    check(j, x, first, second, trial++);
                });
            });
        }
        return;
    }
    for (std::uint64_t trial = 0; trial < ctx.trials; ++trial) {
        auto rng = ctx.stream(4, pidx, trial);
        const auto& [j, x] = moves[rng.below(moves.size())];
        auto first = random_subset(rng, neighbours);
        first.insert(j);
        auto second = random_subset(rng, neighbours);
        second.erase(j);
        check(j, x, first, second, trial);
    }
}

}  // namespace

std::vector<AxiomReport> run_axiom_suite(const Game& g, std::uint64_t trials, std::uint64_t seed,
                                         const DeltaFn& dist) {
    if (trials == 0) {
        throw std::invalid_argument("axiom suite requires a positive trial count");
    }
    SuiteContext ctx{g, dist, trials, seed};
    std::vector<AxiomReport> reports(5);
    reports[0].axiom = "indifference";
    reports[1].axiom = "friend-monotonicity";
    reports[2].axiom = "enemy-monotonicity";
    reports[3].axiom = "responsive-compatibility";
    reports[4].axiom = "shift-bound";

    std::size_t pidx = 0;
    for (const auto& [id, ballot] : g.ballots) {
        check_indifference(ctx, pidx, ballot, reports[0]);
        check_monotonicity(ctx, pidx, ballot, /*friend_side=*/true, reports[1]);
        check_monotonicity(ctx, pidx, ballot, /*friend_side=*/false, reports[2]);
        check_responsive(ctx, pidx, ballot, reports[3]);
        check_shift_bound(ctx, pidx, ballot, reports[4]);
        ++pidx;
    }
    return reports;
}

std::vector<AxiomReport> run_axiom_suite(const Game& g, std::uint64_t trials, std::uint64_t seed) {
    return run_axiom_suite(g, trials, seed,
                           [](const Ballot& b, const Coalition& c, Norm norm) {
                               return delta(b, c, norm);
                           });
}

}  // namespace fenhg
