#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "fenhg/distance.hpp"
#include "fenhg/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fenhg;
using fixtures::co;
using fixtures::wo;

TEST_CASE("directed tau on small orders") {
    CHECK(directed_tau(wo({{"a"}, {"b"}}), wo({{"b"}, {"a"}})) == 1);
    CHECK(directed_tau(wo({{"a", "b"}}), wo({{"a"}, {"b"}})) == 0);
    CHECK(directed_tau(wo({{"a"}, {"b"}}), wo({{"a", "b"}})) == 1);
    CHECK_THROWS_AS(directed_tau(wo({{"a"}}), wo({{"b"}})), std::invalid_argument);
}

TEST_CASE("hausdorff tau") {
    CHECK(hausdorff_tau(wo({{"a", "b"}}), wo({{"a"}, {"b"}})) == 1);
    CHECK(hausdorff_tau(wo({{"a"}, {"b"}, {"c"}}), wo({{"c"}, {"b"}, {"a"}})) == 3);
    SplitMix64 rng(3);
    std::vector<PlayerId> pool{"a", "b", "c", "d", "e"};
    for (int t = 0; t < 20; ++t) {
        auto order = oracles::random_weak_order(rng, pool, 0.4);
        CHECK(hausdorff_tau(order, order) == 0);
    }
}

TEST_CASE("rank contingency table marginals") {
    SplitMix64 rng(5);
    std::vector<PlayerId> pool{"a", "b", "c", "d", "e", "f"};
    for (int t = 0; t < 30; ++t) {
        auto pi = oracles::random_weak_order(rng, pool, 0.5);
        auto sigma = oracles::random_weak_order(rng, pool, 0.5);
        RankContingencyTable table(pi, sigma);
        std::int64_t total = 0;
        for (std::size_t p = 1; p <= table.rows(); ++p) {
            std::int64_t row = 0;
            for (std::size_t q = 1; q <= table.cols(); ++q) row += table.at(p, q);
            CHECK(row == static_cast<std::int64_t>(pi.tiers()[p - 1].size()));
            total += row;
        }
        for (std::size_t q = 1; q <= table.cols(); ++q) {
            std::int64_t col = 0;
            for (std::size_t p = 1; p <= table.rows(); ++p) col += table.at(p, q);
            CHECK(col == static_cast<std::int64_t>(sigma.tiers()[q - 1].size()));
        }
        CHECK(total == static_cast<std::int64_t>(pool.size()));
    }
}

TEST_CASE("directed tau equals the resolution-enumeration oracle") {
    SUBCASE("exhaustive up to three players") {
        std::vector<PlayerId> ground{"a", "b", "c"};
        auto orders = oracles::all_weak_orders(ground);
        for (const auto& pi : orders) {
            for (const auto& sigma : orders) {
                CHECK(directed_tau(pi, sigma) == oracles::directed_tau_oracle(pi, sigma));
            }
        }
    }
    SUBCASE("random pairs up to six players") {
        SplitMix64 rng(7);
        for (int t = 0; t < 300; ++t) {
            std::size_t n = 1 + rng.below(6);
            std::vector<PlayerId> ground;
            for (std::size_t k = 0; k < n; ++k) ground.emplace_back(1, static_cast<char>('a' + k));
            auto pi = oracles::random_weak_order(rng, ground, 0.5);
            auto sigma = oracles::random_weak_order(rng, ground, 0.5);
            CHECK(directed_tau(pi, sigma) == oracles::directed_tau_oracle(pi, sigma));
            CHECK(hausdorff_tau(pi, sigma) == oracles::hausdorff_tau_oracle(pi, sigma));
        }
    }
}

TEST_CASE("directed tau satisfies the triangle inequality and non-negativity") {
    SplitMix64 rng(9);
    std::vector<PlayerId> pool{"a", "b", "c", "d", "e"};
    for (int t = 0; t < 200; ++t) {
        auto x = oracles::random_weak_order(rng, pool, 0.5);
        auto y = oracles::random_weak_order(rng, pool, 0.5);
        auto z = oracles::random_weak_order(rng, pool, 0.5);
        CHECK(directed_tau(x, y) >= 0);
        CHECK(directed_tau(x, y) + directed_tau(y, z) >= directed_tau(x, z));
    }
}

TEST_CASE("coalition encodings of the running example") {
    Ballot b = fixtures::running_example_ballot();

    auto c = encode_coalition(b, co({"i", "a", "b", "e"}));
    CHECK(c.plus_order == wo({{"a"}, {"b"}, {"i"}, {"c"}}));
    CHECK(c.minus_order == wo({{"e"}, {"i"}, {"d"}}));

    auto d = encode_coalition(b, co({"i", "c", "d", "e"}));
    CHECK(d.plus_order == wo({{"c"}, {"i"}, {"b"}, {"a"}}));
    CHECK(d.minus_order == wo({{"e"}, {"d"}, {"i"}}));

    auto e = encode_coalition(b, co({"i", "a", "b", "c", "d", "e"}));
    CHECK(e.plus_order == wo({{"a"}, {"b", "c"}, {"i"}}));
    CHECK(e.minus_order == wo({{"e"}, {"d"}, {"i"}}));

    auto f = encode_coalition(b, co({"i", "a", "b", "c"}));
    CHECK(f.plus_order == wo({{"a"}, {"b", "c"}, {"i"}}));
    CHECK(f.minus_order == wo({{"i"}, {"d"}, {"e"}}));

    CHECK_THROWS_AS(encode_coalition(b, co({"a", "b"})), std::invalid_argument);
}

TEST_CASE("delta reproduces the running example distances") {
    Ballot b = fixtures::running_example_ballot();
    auto check = [&](PlayerSet members, std::int64_t plus, std::int64_t minus) {
        auto d = delta(b, co(std::move(members)));
        CHECK(d.plus == plus);
        CHECK(d.minus == minus);
        CHECK(d.key() == plus + minus);
    };
    check({"i", "a", "b", "e"}, 1, 2);
    check({"i", "c", "d", "e"}, 4, 3);
    check({"i", "a", "b", "c", "d", "e"}, 0, 3);
    check({"i", "a", "b", "c"}, 0, 0);
    check({"i"}, 5, 0);
    CHECK_THROWS_AS(delta(b, co({"a"})), std::invalid_argument);
}

TEST_CASE("delta equals directed tau over the coalition encodings") {
    SplitMix64 rng(13);
    std::vector<PlayerId> pool{"a", "b", "c", "d", "e", "f"};
    for (int t = 0; t < 60; ++t) {
        Ballot b = oracles::random_ballot(rng, "i", pool, 0.5, 0.4);
        auto reference_plus = friend_reference_order(b);
        auto reference_minus = enemy_reference_order(b);
        auto neighbours = b.neighbourhood();
        for (const auto& subset :
             oracles::all_subsets({neighbours.begin(), neighbours.end()})) {
            auto members = subset;
            members.insert("i");
            Coalition coalition{members};
            auto encoding = encode_coalition(b, coalition);
            auto d = delta(b, coalition);
            CHECK(d.plus == directed_tau(reference_plus, encoding.plus_order));
            CHECK(d.minus == directed_tau(reference_minus, encoding.minus_order));
            // The directed distance never exceeds its reverse.
            CHECK(d.plus <= directed_tau(encoding.plus_order, reference_plus));
            CHECK(d.minus <= directed_tau(encoding.minus_order, reference_minus));
            // Distance zero exactly when all friends are in and no enemy is.
            bool favourite = std::ranges::includes(members, b.friends.ground()) &&
                             std::ranges::none_of(b.enemies.ground(), [&](const PlayerId& p) {
                                 return members.count(p) > 0;
                             });
            CHECK((d.plus + d.minus == 0) == favourite);
        }
    }
}

TEST_CASE("compare_coalitions follows the running example") {
    Ballot b = fixtures::running_example_ballot();
    Coalition c = co({"i", "a", "b", "e"});
    Coalition d = co({"i", "c", "d", "e"});
    Coalition e = co({"i", "a", "b", "c", "d", "e"});
    Coalition f = co({"i", "a", "b", "c"});
    CHECK(compare_coalitions(b, c, d) == Ordering::PrefersFirst);
    CHECK(compare_coalitions(b, c, e) == Ordering::Indifferent);
    CHECK(compare_coalitions(b, c, c) == Ordering::Indifferent);
    CHECK(compare_coalitions(b, f, c) == Ordering::PrefersFirst);
    CHECK(compare_coalitions(b, d, f) == Ordering::PrefersSecond);
}

TEST_CASE("additive utilities decompose the one-norm distance") {
    Ballot b = fixtures::running_example_ballot();
    auto u = to_additive_utilities(b);
    CHECK(u.utility.at("a") == 3);
    CHECK(u.utility.at("b") == 1);
    CHECK(u.utility.at("c") == 1);
    CHECK(u.utility.at("d") == -1);
    CHECK(u.utility.at("e") == -2);
    CHECK(u.offset == 5);

    Coalition c = co({"i", "a", "b", "e"});
    CHECK(u.offset - u.coalition_value(c, "i") == delta(b, c).key());

    // Identity on every coalition over the full neighbourhood.
    std::vector<PlayerId> pool{"a", "b", "c", "d", "e"};
    for (const auto& subset : oracles::all_subsets(pool)) {
        auto members = subset;
        members.insert("i");
        Coalition coalition{members};
        CHECK(u.offset - u.coalition_value(coalition, "i") == delta(b, coalition).key());
    }

    auto empty = to_additive_utilities(Ballot{"i", {}, {}});
    CHECK(empty.utility.empty());
    CHECK(empty.offset == 0);
    CHECK(delta(Ballot{"i", {}, {}}, co({"i"})).key() == 0);

    auto single = to_additive_utilities(Ballot{"i", wo({{"f"}}), {}});
    CHECK(single.utility.at("f") == 1);
    CHECK(single.offset == 1);
}

TEST_CASE("rejected encodings' defects do not reproduce") {
    // For a > b > c > f (all friends), adding f must never hurt.
    Ballot b{"i", wo({{"a"}, {"b"}, {"c"}, {"f"}}), {}};
    auto leq = [&](PlayerSet first, PlayerSet second) {
        return delta(b, co(std::move(first))).key() <= delta(b, co(std::move(second))).key();
    };
    CHECK(leq({"b", "c", "i", "f"}, {"b", "c", "i"}));
    CHECK(leq({"a", "i", "f"}, {"a", "i"}));
    CHECK(leq({"i", "f"}, {"i"}));

    // All friends tied: the undirected distance would punish the extra friend.
    Ballot tied{"i", wo({{"a", "b", "c", "d", "f"}}), {}};
    CHECK(leq({"a", "i", "f"}, {"a", "i"}));
    CHECK(delta(tied, co({"a", "f", "i"})).key() <= delta(tied, co({"a", "i"})).key());
}

TEST_CASE("norm choice changes expressible comparisons") {
    Ballot b = fixtures::running_example_ballot();
    Coalition all_friends_one_enemy = co({"a", "b", "c", "d", "i"});
    Coalition one_friend = co({"a", "i"});
    Coalition friend_and_worst_enemy = co({"a", "e", "i"});
    Coalition everyone = co({"i", "a", "b", "c", "d", "e"});

    CHECK(compare_coalitions(b, all_friends_one_enemy, one_friend, Norm::Two) ==
          Ordering::PrefersFirst);
    CHECK(compare_coalitions(b, friend_and_worst_enemy, everyone, Norm::Two) ==
          Ordering::PrefersFirst);
    CHECK(compare_coalitions(b, friend_and_worst_enemy, everyone, Norm::One) ==
          Ordering::PrefersSecond);

    // A best-player comparison neither friend-count nor singleton encodings allow.
    Ballot polarized{"i", wo({{"a"}}), wo({{"b"}, {"c"}})};
    CHECK(compare_coalitions(polarized, co({"i", "b"}), co({"a", "b", "c", "i"})) ==
          Ordering::PrefersFirst);
}

TEST_CASE("two-norm comparisons are exact on squared integers") {
    Ballot b = fixtures::running_example_ballot();
    auto d = delta(b, co({"i", "a", "b", "e"}), Norm::Two);
    CHECK(d.plus == 1);
    CHECK(d.minus == 2);
    CHECK(d.key() == 5);
    CHECK(d.aggregate() == doctest::Approx(std::sqrt(5.0)));
}
