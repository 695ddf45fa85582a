#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "fenhg/generators.hpp"
#include "fenhg/rng.hpp"
#include "fenhg/stability.hpp"
#include "fixtures.hpp"

using namespace fenhg;
using fixtures::co;

namespace {

CoalitionStructure singletons(const Game& g) {
    std::vector<Coalition> blocks;
    for (const auto& p : g.players) blocks.emplace_back(PlayerSet{p});
    return CoalitionStructure{std::move(blocks)};
}

const StabilityNotion kAllNotions[] = {
    StabilityNotion::Perfect,
    StabilityNotion::Nash,
    StabilityNotion::IndividuallyStable,
    StabilityNotion::ContractuallyIndividuallyStable,
};

}  // namespace

TEST_CASE("partition enumeration counts Bell numbers") {
    const std::size_t expected[] = {1, 1, 2, 5, 15, 52};
    for (std::size_t n = 0; n <= 5; ++n) {
        PlayerSet players;
        for (std::size_t k = 0; k < n; ++k) players.insert(PlayerId(1, static_cast<char>('a' + k)));
        std::size_t count = 0;
        for_each_partition(players, [&](const CoalitionStructure& gamma) {
            ++count;
            CHECK(gamma.is_partition_of(players));
        });
        CHECK(count == expected[n]);
    }
}

TEST_CASE("verify flags the ring game's singleton structure") {
    Game g = fixtures::ring_game();
    auto report = verify(g, singletons(g), StabilityNotion::Nash);
    CHECK(!report.stable);
    REQUIRE(report.witness);
    CHECK(report.witness->player == "a");
    CHECK(report.witness->target == co({"a", "b"}));
}

TEST_CASE("mutual friends together are stable under every notion") {
    Game g = fixtures::mutual_friends_game();
    CoalitionStructure together({co({"1", "2"})});
    for (auto notion : kAllNotions) {
        CHECK(verify(g, together, notion).stable);
        CHECK(brute_force_verify(g, together, notion).stable);
    }
    auto apart = brute_force_verify(g, singletons(g), StabilityNotion::Nash);
    CHECK(!apart.stable);

    CHECK_THROWS_AS(verify(g, CoalitionStructure({co({"1"})}), StabilityNotion::Nash),
                    std::invalid_argument);
}

TEST_CASE("no partition of the ring game is Nash or individually stable") {
    Game g = fixtures::ring_game();
    int nash = 0, is = 0, cis = 0, total = 0;
    for_each_partition(g.players, [&](const CoalitionStructure& gamma) {
        ++total;
        for (auto notion : kAllNotions) {
            auto fast = verify(g, gamma, notion);
            auto slow = brute_force_verify(g, gamma, notion);
            CHECK(fast.stable == slow.stable);
            auto unbounded = verify(g, gamma, notion, InDegreeMode::Unbounded);
            CHECK(fast.stable == unbounded.stable);
        }
        if (verify(g, gamma, StabilityNotion::Nash).stable) ++nash;
        if (verify(g, gamma, StabilityNotion::IndividuallyStable).stable) ++is;
        if (verify(g, gamma, StabilityNotion::ContractuallyIndividuallyStable).stable) ++cis;
    });
    CHECK(total == 52);
    CHECK(nash == 0);
    CHECK(is == 0);
    CHECK(cis >= 1);
}

TEST_CASE("stability notions nest") {
    SplitMix64 rng(41);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Game g = random_game({6, 4, 0.6, 0.3, seed});
        for_each_partition(g.players, [&](const CoalitionStructure& gamma) {
            bool nash = verify(g, gamma, StabilityNotion::Nash).stable;
            bool is = verify(g, gamma, StabilityNotion::IndividuallyStable).stable;
            bool cis = verify(g, gamma, StabilityNotion::ContractuallyIndividuallyStable).stable;
            bool perfect = verify(g, gamma, StabilityNotion::Perfect).stable;
            if (perfect) CHECK(nash);
            if (nash) CHECK(is);
            if (is) CHECK(cis);
        });
    }
}

TEST_CASE("unstable witnesses replay as real deviations") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        Game g = random_game({7, 5, 0.5, 0.3, seed});
        SplitMix64 rng(seed);
        for (auto notion : {StabilityNotion::Nash, StabilityNotion::IndividuallyStable,
                            StabilityNotion::ContractuallyIndividuallyStable}) {
            // A random partition via restricted growth values.
            std::vector<Coalition> blocks;
            {
                std::map<int, PlayerSet> groups;
                int used = 0;
                for (const auto& p : g.players) {
                    int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(used + 1)));
                    groups[pick].insert(p);
                    if (pick == used) ++used;
                }
                for (auto& [k, members] : groups) blocks.emplace_back(std::move(members));
            }
            CoalitionStructure gamma{std::move(blocks)};
            auto report = verify(g, gamma, notion);
            if (report.stable) continue;
            REQUIRE(report.witness);
            const auto& w = *report.witness;
            const Ballot& ballot = g.ballots.at(w.player);
            auto old_key = delta(ballot, gamma.block_of(w.player), g.norm).key();
            CHECK(delta(ballot, w.target, g.norm).key() < old_key);
            if (notion != StabilityNotion::Nash) {
                for (const auto& member : w.target.members()) {
                    if (member == w.player) continue;
                    const Ballot& other = g.ballots.at(member);
                    Coalition before = w.target.without(w.player);
                    CHECK(delta(other, w.target, g.norm).key() <=
                          delta(other, before, g.norm).key());
                }
            }
            if (notion == StabilityNotion::ContractuallyIndividuallyStable) {
                const Coalition& source = gamma.block_of(w.player);
                if (source.size() > 1) {
                    Coalition reduced = source.without(w.player);
                    for (const auto& member : reduced.members()) {
                        const Ballot& other = g.ballots.at(member);
                        CHECK(delta(other, reduced, g.norm).key() <=
                              delta(other, source, g.norm).key());
                    }
                }
            }
        }
    }
}

TEST_CASE("solve_perfect builds friendship closures or reports none") {
    SUBCASE("two disjoint mutual-friend pairs") {
        Game g;
        for (const auto& p : {"1", "2", "3", "4"}) g.players.insert(p);
        auto like = [](PlayerId owner, PlayerId target) {
            return Ballot{owner, WeakOrder{{{target}}}, {}};
        };
        g.ballots.emplace("1", like("1", "2"));
        g.ballots.emplace("2", like("2", "1"));
        g.ballots.emplace("3", like("3", "4"));
        g.ballots.emplace("4", like("4", "3"));
        auto structure = solve_perfect(g);
        REQUIRE(structure);
        CHECK(structure->blocks() == std::vector<Coalition>{co({"1", "2"}), co({"3", "4"})});
        CHECK(verify(g, *structure, StabilityNotion::Perfect).stable);
        CHECK(verify(g, *structure, StabilityNotion::Nash).stable);
    }
    SUBCASE("the ring game closure traps enemies") {
        CHECK(!solve_perfect(fixtures::ring_game()));
    }
    SUBCASE("all neutral players stay alone") {
        Game g = fixtures::all_neutral_game(4);
        auto structure = solve_perfect(g);
        REQUIRE(structure);
        CHECK(structure->size() == 4);
        CHECK(verify(g, *structure, StabilityNotion::Perfect).stable);
    }
}

TEST_CASE("solve_cis descends to a contractually stable structure") {
    SUBCASE("ring game") {
        Game g = fixtures::ring_game();
        auto gamma = solve_cis(g);
        CHECK(gamma.is_partition_of(g.players));
        CHECK(verify(g, gamma, StabilityNotion::ContractuallyIndividuallyStable).stable);
        CHECK(brute_force_verify(g, gamma, StabilityNotion::ContractuallyIndividuallyStable)
                  .stable);
    }
    SUBCASE("all-neutral game stays at singletons") {
        Game g = fixtures::all_neutral_game(3);
        auto gamma = solve_cis(g);
        CHECK(gamma.size() == 3);
    }
    SUBCASE("mutual friends join") {
        auto gamma = solve_cis(fixtures::mutual_friends_game());
        CHECK(gamma.blocks() == std::vector<Coalition>{co({"1", "2"})});
    }
    SUBCASE("random games always land on a verified structure") {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            Game g = random_game({8, 5, 0.55, 0.3, seed});
            auto gamma = solve_cis(g);
            CHECK(verify(g, gamma, StabilityNotion::ContractuallyIndividuallyStable).stable);
        }
    }
    SUBCASE("two-norm games also terminate and verify") {
        for (std::uint64_t seed = 50; seed < 60; ++seed) {
            Game g = random_game({7, 4, 0.5, 0.4, seed});
            g.norm = Norm::Two;
            auto gamma = solve_cis(g);
            CHECK(verify(g, gamma, StabilityNotion::ContractuallyIndividuallyStable).stable);
        }
    }
}

TEST_CASE("exhaustive search matches notion by notion") {
    Game g = fixtures::ring_game();
    CHECK(solve_exhaustive(g, StabilityNotion::Nash, {.enumerate_all = true}).empty());
    CHECK(solve_exhaustive(g, StabilityNotion::IndividuallyStable, {.enumerate_all = true})
              .empty());
    auto cis = solve_exhaustive(g, StabilityNotion::ContractuallyIndividuallyStable,
                                {.enumerate_all = true});
    CHECK(!cis.empty());
    for (const auto& gamma : cis) {
        CHECK(verify(g, gamma, StabilityNotion::ContractuallyIndividuallyStable).stable);
    }
    CHECK(solve_exhaustive(g, StabilityNotion::Perfect).empty());

    Game big = random_game({13, 3, 0.5, 0.2, 1});
    CHECK_THROWS_AS(solve_exhaustive(big, StabilityNotion::Nash), std::invalid_argument);
    CHECK_NOTHROW(solve_exhaustive(big, StabilityNotion::Nash, {.guard = 13}));
}

TEST_CASE("pruning never changes the set of stable structures") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Game g = random_game({6, 4, 0.5, 0.35, seed});
        if (seed % 3 == 1) g.norm = Norm::Two;
        for (auto notion : kAllNotions) {
            auto pruned = solve_exhaustive(g, notion, {.enumerate_all = true, .prune = true});
            auto plain = solve_exhaustive(g, notion, {.enumerate_all = true, .prune = false});
            CHECK(pruned == plain);
            for (const auto& gamma : pruned) {
                CHECK(verify(g, gamma, notion).stable);
                CHECK(brute_force_verify(g, gamma, notion).stable);
            }
        }
    }
}

TEST_CASE("exhaustive results agree with partition-by-partition verification") {
    for (std::uint64_t seed = 200; seed < 210; ++seed) {
        Game g = random_game({5, 4, 0.5, 0.3, seed});
        for (auto notion : kAllNotions) {
            std::vector<CoalitionStructure> expected;
            for_each_partition(g.players, [&](const CoalitionStructure& gamma) {
                if (verify(g, gamma, notion).stable) expected.push_back(gamma);
            });
            std::ranges::sort(expected, [](const CoalitionStructure& a,
                                           const CoalitionStructure& b) {
                return a.blocks() < b.blocks();
            });
            auto found = solve_exhaustive(g, notion, {.enumerate_all = true});
            CHECK(found == expected);
        }
    }
}

TEST_CASE("verify and brute_force_verify agree on random triples") {
    SplitMix64 rng(77);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Game g = random_game({1 + seed % 9, 4, 0.5, 0.3, seed * 31 + 5});
        std::map<int, PlayerSet> groups;
        int used = 0;
        for (const auto& p : g.players) {
            int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(used + 1)));
            groups[pick].insert(p);
            if (pick == used) ++used;
        }
        std::vector<Coalition> blocks;
        for (auto& [k, members] : groups) blocks.emplace_back(std::move(members));
        CoalitionStructure gamma{std::move(blocks)};
        auto notion = kAllNotions[rng.below(4)];
        auto mode = rng.chance(0.5) ? InDegreeMode::Bounded : InDegreeMode::Unbounded;
        CHECK(verify(g, gamma, notion, mode).stable ==
              brute_force_verify(g, gamma, notion).stable);
    }
}
