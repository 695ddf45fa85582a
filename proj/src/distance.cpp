#include "fenhg/distance.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace fenhg {

RankContingencyTable::RankContingencyTable(const WeakOrder& pi, const WeakOrder& sigma) {
    if (pi.ground() != sigma.ground()) {
        throw std::invalid_argument("incomparable orders: ground sets differ");
    }
    rows_ = pi.tier_count();
    cols_ = sigma.tier_count();
    counts_.assign(rows_ * cols_, 0);
    for (const auto& p : pi.ground()) {
        auto r = static_cast<std::size_t>(pi.rank_of(p)) - 1;
        auto c = static_cast<std::size_t>(sigma.rank_of(p)) - 1;
        ++counts_[r * cols_ + c];
    }
}

std::int64_t RankContingencyTable::at(std::size_t p, std::size_t q) const {
    if (p < 1 || p > rows_ || q < 1 || q > cols_) {
        throw std::out_of_range("rank table index out of range");
    }
    return counts_[(p - 1) * cols_ + (q - 1)];
}

std::int64_t RankContingencyTable::discordance() const {
    // above[q] = sum of counts(p, q') for p < current row, q' >= q.
    std::vector<std::int64_t> above(cols_ + 1, 0);
    std::int64_t total = 0;
    for (std::size_t p = 0; p < rows_; ++p) {
        for (std::size_t q = 0; q < cols_; ++q) {
            total += counts_[p * cols_ + q] * above[q];
        }
        std::int64_t suffix = 0;
        for (std::size_t q = cols_; q-- > 0;) {
            suffix += counts_[p * cols_ + q];
            above[q] += suffix;
        }
    }
    return total;
}

std::int64_t directed_tau(const WeakOrder& pi, const WeakOrder& sigma) {
    return RankContingencyTable(pi, sigma).discordance();
}

std::int64_t hausdorff_tau(const WeakOrder& pi, const WeakOrder& sigma) {
    return std::max(directed_tau(pi, sigma), directed_tau(sigma, pi));
}

namespace {

WeakOrder with_owner_tier(std::vector<PlayerSet> front, const PlayerId& owner,
                          std::vector<PlayerSet> back) {
    std::vector<PlayerSet> tiers = std::move(front);
    tiers.push_back(PlayerSet{owner});
    tiers.insert(tiers.end(), std::make_move_iterator(back.begin()),
                 std::make_move_iterator(back.end()));
    return WeakOrder{std::move(tiers)};
}

}  // namespace

CoalitionEncoding encode_coalition(const Ballot& b, const Coalition& c) {
    if (!c.contains(b.owner)) {
        throw std::invalid_argument("coalition does not contain the ballot owner '" + b.owner + "'");
    }
    const auto& members = c.members();
    WeakOrder present_friends = project_order(b.friends, members);
    PlayerSet absent;
    std::ranges::set_difference(b.friends.ground(), members, std::inserter(absent, absent.end()));
    WeakOrder missing_friends = project_order(b.friends, absent, /*reversed=*/true);

    WeakOrder present_enemies = project_order(b.enemies, members, /*reversed=*/true);
    PlayerSet spared;
    std::ranges::set_difference(b.enemies.ground(), members, std::inserter(spared, spared.end()));
    WeakOrder absent_enemies = project_order(b.enemies, spared);

    return CoalitionEncoding{
        with_owner_tier(present_friends.tiers(), b.owner, missing_friends.tiers()),
        with_owner_tier(present_enemies.tiers(), b.owner, absent_enemies.tiers()),
    };
}

WeakOrder friend_reference_order(const Ballot& b) {
    return with_owner_tier(b.friends.tiers(), b.owner, {});
}

WeakOrder enemy_reference_order(const Ballot& b) {
    return with_owner_tier({}, b.owner, b.enemies.tiers());
}

std::int64_t DistancePair::key() const {
    return norm == Norm::One ? plus + minus : plus * plus + minus * minus;
}

double DistancePair::aggregate() const {
    if (norm == Norm::One) return static_cast<double>(plus + minus);
    return std::sqrt(static_cast<double>(plus * plus + minus * minus));
}

DistancePair delta(const Ballot& b, const Coalition& c, Norm norm) {
    if (!c.contains(b.owner)) {
        throw std::invalid_argument("coalition does not contain the ballot owner '" + b.owner + "'");
    }
    return delta_over(b, [&](const PlayerId& p) { return c.contains(p); }, norm);
}

Ordering compare_coalitions(const Ballot& b, const Coalition& a, const Coalition& c, Norm norm) {
    auto da = delta(b, a, norm).key();
    auto dc = delta(b, c, norm).key();
    if (da < dc) return Ordering::PrefersFirst;
    if (dc < da) return Ordering::PrefersSecond;
    return Ordering::Indifferent;
}

std::int64_t AdditiveUtilities::coalition_value(const Coalition& c, const PlayerId& owner) const {
    std::int64_t sum = 0;
    for (const auto& p : c.members()) {
        if (p == owner) continue;
        auto it = utility.find(p);
        if (it != utility.end()) sum += it->second;
    }
    return sum;
}

AdditiveUtilities to_additive_utilities(const Ballot& b) {
    AdditiveUtilities out;
    std::int64_t better = 0;
    for (const auto& tier : b.friends.tiers()) {
        std::int64_t below =
            static_cast<std::int64_t>(b.friends.size()) - better - static_cast<std::int64_t>(tier.size());
        for (const auto& f : tier) {
            out.utility[f] = 1 + below;
            out.offset += 1 + below;
        }
        better += static_cast<std::int64_t>(tier.size());
    }
    better = 0;
    for (const auto& tier : b.enemies.tiers()) {
        for (const auto& e : tier) {
            out.utility[e] = -(1 + better);
        }
        better += static_cast<std::int64_t>(tier.size());
    }
    return out;
}

}  // namespace fenhg
