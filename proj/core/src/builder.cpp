// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "lilygrow/builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "lilygrow/errors.hpp"
#include "spatial_grid.hpp"

namespace lily {

namespace {
constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}  // namespace

const char* to_string(Membership m)
{
    switch (m) {
    case Membership::in_h: return "in-H";
    case Membership::leftover_unstoppable: return "leftover-unstoppable";
    case Membership::tie_degenerate: return "tie-degenerate";
    }
    return "?";
}

const char* to_string(Rule r)
{
    switch (r) {
    case Rule::doublet: return "doublet";
    case Rule::coverage: return "coverage";
    case Rule::frozen_stop: return "frozen-stop";
    case Rule::pair_meet: return "pair-meet";
    case Rule::hit_frozen: return "hit-frozen";
    case Rule::cover_germ: return "cover-germ";
    case Rule::leftover: return "leftover";
    case Rule::cap: return "cap";
    }
    return "?";
}

std::size_t HardCoreResult::index_of(GrainId id) const
{
    for (std::size_t i = 0; i < grains.size(); ++i)
        if (grains[i].grain.id == id)
            return i;
    throw InvalidArgument("unknown grain id " + std::to_string(id));
}

const GrownGrain& HardCoreResult::find(GrainId id) const
{
    return grains[index_of(id)];
}

std::vector<MutualPair> mutual_nearest_pairs(std::span<const Grain> active, bool* tie)
{
    const std::size_t n = active.size();
    std::vector<std::size_t> nearest(n, kNone);
    std::vector<double> best(n, kInfinity);
    for (std::size_t i = 0; i < n; ++i) {
        double second = kInfinity;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            const double d = first_contact_time(active[i], active[j]);
            const bool better = d < best[i] || (d == best[i] && active[j].id < active[nearest[i]].id);
            if (better) {
                second = std::min(second, best[i]);
                best[i] = d;
                nearest[i] = j;
            } else {
                second = std::min(second, d);
            }
        }
        if (tie && second - best[i] <= kTieTolerance)
            *tie = true;
    }
    std::vector<MutualPair> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = nearest[i];
        if (j != kNone && nearest[j] == i && active[i].id < active[j].id)
            out.push_back({active[i].id, active[j].id, best[i]});
    }
    std::sort(out.begin(), out.end(), [](const MutualPair& a, const MutualPair& b) {
        return std::tie(a.time, a.first, a.second) < std::tie(b.time, b.first, b.second);
    });
    return out;
}

double nearest_frozen_time(const Grain& u, const RoundState& state)
{
    double best = kInfinity;
    for (const GrownGrain& v : state.frozen)
        if (v.R > 0.0)
            best = std::min(best, stop_time_against_frozen(u, v));
    return best;
}

namespace {

/// Working state of one construction. Grain indices refer to the input
/// configuration order.
class Construction {
  public:
    explicit Construction(const Configuration& config)
        : config_(config), n_(config.grains.size()), grid_(positions(config), config.dimension),
          all_grid_(positions(config), config.dimension)
    {
        result_.engine = "builder";
        result_.window = config.window;
        result_.dimension = config.dimension;
        result_.diagnostics = config.diagnostics;
        result_.grains.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            result_.grains[i].grain = config.grains[i];
            if (!config.grains[i].shape.strictly_convex())
                result_.diagnostics.non_strictly_convex = true;
        }
        frozen_.assign(n_, 0);
        nearest_.assign(n_, kNone);
        nearest_time_.assign(n_, kInfinity);
        stop_.assign(n_, kInfinity);
        stop_witness_.assign(n_, kNone);
        frozen_order_.assign(n_, kNone);
        active_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            active_[i] = i;
        std::sort(active_.begin(), active_.end(), [&](std::size_t a, std::size_t b) { return id(a) < id(b); });

        min_birth_ = kInfinity;
        for (const Grain& g : config.grains) {
            min_birth_ = std::min(min_birth_, g.t);
            max_circumradius_ = std::max(max_circumradius_, g.shape.circumradius());
        }
    }

    HardCoreResult run()
    {
        int round = 0;
        while (active_.size() >= 2) {
            ++round;
            for (std::size_t i : active_)
                if (nearest_[i] == kNone)
                    find_nearest(i);
            auto pairs = collect_pairs();
            const std::size_t snapshot = positive_frozen_.size();
            std::vector<Freeze> freezes;
            for (const auto& [u, v] : pairs)
                decide_pair(u, v, snapshot, round, freezes);
            apply(freezes);
        }
        if (active_.size() == 1)
            finish_leftover(active_.front());
        if (tie_)
            result_.diagnostics.tie_detected = true;
        if (result_.diagnostics.tie_detected)
            result_.membership = Membership::tie_degenerate;
        else if (result_.cap_radius)
            result_.membership = Membership::leftover_unstoppable;
        return std::move(result_);
    }

  private:
    struct Freeze {
        std::size_t grain;
        double R;
        int round;
        Rule rule;
        std::vector<GrainId> witnesses;
        double time;
    };

    static std::vector<Vec> positions(const Configuration& c)
    {
        std::vector<Vec> out;
        out.reserve(c.grains.size());
        for (const Grain& g : c.grains)
            out.push_back(g.x);
        return out;
    }

    GrainId id(std::size_t i) const { return config_.grains[i].id; }
    const Grain& grain(std::size_t i) const { return config_.grains[i]; }

    const FirstContact& contact(std::size_t i, std::size_t j)
    {
        const auto key = i < j ? (static_cast<std::uint64_t>(i) << 32 | j) : (static_cast<std::uint64_t>(j) << 32 | i);
        auto it = contact_cache_.find(key);
        if (it == contact_cache_.end()) {
            FirstContact fc = i < j ? first_contact(grain(i), grain(j)) : first_contact(grain(j), grain(i));
            it = contact_cache_.emplace(key, fc).first;
        }
        return it->second;
    }

    /// Lower bound on d(u, v) for any v whose germ is at least `dist` away:
    /// the grains' circumscribed balls must bridge the gap.
    double contact_lower_bound(std::size_t u, double dist) const
    {
        const double s = grain(u).t;
        const double rho = grain(u).shape.circumradius();
        const double rho_max = max_circumradius_;
        const double t0 = min_birth_;
        if (s <= t0) {
            const double reach = (t0 - s) * rho;
            return dist <= reach ? s + dist / rho : t0 + (dist - reach) / (rho + rho_max);
        }
        const double reach = (s - t0) * rho_max;
        return dist <= reach ? t0 + dist / rho_max : s + (dist - reach) / (rho + rho_max);
    }

    void find_nearest(std::size_t u)
    {
        std::size_t best = kNone;
        double best_d = kInfinity;
        double second = kInfinity;
        grid_.ring_search(
            grain(u).x,
            [&](std::size_t v) {
                if (v == u)
                    return;
                const double d = contact(u, v).time;
                if (d < best_d || (d == best_d && id(v) < id(best))) {
                    second = std::min(second, best_d);
                    best_d = d;
                    best = v;
                } else {
                    second = std::min(second, d);
                }
            },
            [&](double dist) { return !(contact_lower_bound(u, dist) > second); });
        if (second - best_d <= kTieTolerance)
            tie_ = true;
        nearest_[u] = best;
        nearest_time_[u] = best_d;
    }

    std::vector<std::pair<std::size_t, std::size_t>> collect_pairs()
    {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t u : active_) {
            const std::size_t v = nearest_[u];
            if (v != kNone && nearest_[v] == u && id(u) < id(v))
                pairs.emplace_back(u, v);
        }
        if (pairs.empty()) {
            // Only reachable when equal contact times defeat the id order;
            // fall back to the globally smallest pair.
            tie_ = true;
            std::tuple<double, GrainId, GrainId> best{kInfinity, 0, 0};
            std::pair<std::size_t, std::size_t> arg{kNone, kNone};
            for (std::size_t u : active_) {
                for (std::size_t v : active_) {
                    if (id(u) >= id(v))
                        continue;
                    const std::tuple<double, GrainId, GrainId> key{contact(u, v).time, id(u), id(v)};
                    if (key < best) {
                        best = key;
                        arg = {u, v};
                    }
                }
            }
            pairs.push_back(arg);
        }
        std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
            return std::make_tuple(contact(a.first, a.second).time, id(a.first), id(a.second)) <
                   std::make_tuple(contact(b.first, b.second).time, id(b.first), id(b.second));
        });
        return pairs;
    }

    /// Earliest stop time of u against the first `limit` positive frozen
    /// grains (the snapshot at the start of the round). Exact whenever the
    /// answer is at most `horizon`; otherwise only known to exceed it.
    double frozen_stop(std::size_t u, std::size_t limit, double horizon = kInfinity)
    {
        stop_[u] = kInfinity;
        stop_witness_[u] = kNone;
        if (limit == 0)
            return kInfinity;
        const Grain& gu = grain(u);
        const double rho = gu.shape.circumradius();
        auto visit = [&](std::size_t v) {
            if (frozen_order_[v] >= limit)
                return;
            const GrownGrain& gv = result_.grains[v];
            // Cheap reject: the frozen body lies in a ball of radius R * rho.
            const double gap = norm(gu.x - gv.grain.x) - gv.R * gv.grain.shape.circumradius();
            if (gap > 0.0 && gu.t + gap / rho > stop_[u])
                return;
            const double f = stop_time_against_frozen(gu, gv.grain, gv.R);
            if (f < stop_[u] || (f == stop_[u] && id(v) < id(stop_witness_[u]))) {
                stop_[u] = f;
                stop_witness_[u] = v;
            }
        };
        all_grid_.ring_search(gu.x, visit, [&](double dist) {
            const double bound = gu.t + std::max(0.0, dist - max_reach_) / rho;
            return !(bound > std::min(stop_[u], horizon));
        });
        return stop_[u];
    }

    void decide_pair(std::size_t a, std::size_t b, std::size_t snapshot, int round, std::vector<Freeze>& out)
    {
        const FirstContact& fc = contact(a, b);  // arguments in index order
        const double s_meet = fc.time;
        // Frozen stops beyond the meeting time (plus the tie band) never
        // decide the pair, so the searches may stop there.
        const double horizon = s_meet + 2.0 * kTieTolerance;
        const double du = frozen_stop(a, snapshot, horizon);
        const double dv = frozen_stop(b, snapshot, horizon);
        const double s_frozen = std::min(du, dv);

        if (std::isfinite(s_frozen) && std::abs(s_meet - s_frozen) <= kTieTolerance)
            tie_ = true;
        if (std::abs(fc.coverage_margin) <= kTieTolerance)
            tie_ = true;

        if (s_meet <= s_frozen) {
            const std::size_t lo = a < b ? a : b;
            const std::size_t hi = a < b ? b : a;
            if (fc.kind == ContactKind::first_covers_second) {
                out.push_back({hi, 0.0, round, Rule::coverage, {id(lo)}, s_meet});
            } else if (fc.kind == ContactKind::second_covers_first) {
                out.push_back({lo, 0.0, round, Rule::coverage, {id(hi)}, s_meet});
            } else {
                out.push_back({a, s_meet - grain(a).t, round, Rule::doublet, {id(b)}, s_meet});
                out.push_back({b, s_meet - grain(b).t, round, Rule::doublet, {id(a)}, s_meet});
            }
            return;
        }
        if (std::isfinite(du) && std::isfinite(dv) && du != dv && std::abs(du - dv) <= kTieTolerance)
            tie_ = true;
        for (std::size_t w : {a, b}) {
            if (stop_[w] == s_frozen) {
                const double R = s_frozen - grain(w).t;
                out.push_back({w, R, round, Rule::frozen_stop, {id(stop_witness_[w])}, s_frozen});
            }
        }
    }

    void apply(const std::vector<Freeze>& freezes)
    {
        for (const Freeze& f : freezes) {
            GrownGrain& g = result_.grains[f.grain];
            g.R = std::max(0.0, f.R);
            g.status = g.R > 0.0 ? GrainStatus::stopped : GrainStatus::covered;
            g.round = f.round;
            g.earlier_neighbour_ids = f.witnesses;
            result_.log.push_back({f.round, f.rule, id(f.grain), f.time});
            frozen_[f.grain] = 1;
            grid_.remove(f.grain);
            if (g.R > 0.0) {
                frozen_order_[f.grain] = positive_frozen_.size();
                positive_frozen_.push_back(f.grain);
                max_reach_ = std::max(max_reach_, g.R * g.grain.shape.circumradius());
            }
        }
        std::erase_if(active_, [&](std::size_t i) { return frozen_[i] != 0; });
        for (std::size_t i : active_)
            if (nearest_[i] != kNone && frozen_[nearest_[i]])
                nearest_[i] = kNone;
    }

    void finish_leftover(std::size_t u)
    {
        GrownGrain& g = result_.grains[u];
        g.round = -1;
        const double f = frozen_stop(u, positive_frozen_.size());
        if (std::isfinite(f)) {
            g.R = std::max(0.0, f - grain(u).t);
            g.status = g.R > 0.0 ? GrainStatus::stopped : GrainStatus::covered;
            g.earlier_neighbour_ids = {id(stop_witness_[u])};
            result_.log.push_back({-1, Rule::leftover, id(u), f});
        } else {
            const double cap = cap_radius(grain(u), config_.window, config_.dimension);
            g.R = cap;
            g.status = GrainStatus::capped;
            result_.cap_radius = cap;
            result_.log.push_back({-1, Rule::cap, id(u), grain(u).t + cap});
        }
        frozen_[u] = 1;
        active_.clear();
    }

    const Configuration& config_;
    std::size_t n_;
    detail::SpatialGrid grid_;      // active grains
    detail::SpatialGrid all_grid_;  // every grain, never thinned
    HardCoreResult result_;
    std::vector<std::size_t> active_;
    std::vector<char> frozen_;
    std::vector<std::size_t> nearest_;
    std::vector<double> nearest_time_;
    std::vector<double> stop_;
    std::vector<std::size_t> stop_witness_;
    std::vector<std::size_t> frozen_order_;
    std::vector<std::size_t> positive_frozen_;
    std::unordered_map<std::uint64_t, FirstContact> contact_cache_;
    double min_birth_ = 0.0;
    double max_circumradius_ = 0.0;
    double max_reach_ = 0.0;
    bool tie_ = false;
};

}  // namespace

HardCoreResult build(const Configuration& config)
{
    if (config.grains.size() < 2)
        throw InvalidConfiguration("build needs at least two grains");
    validate(config);
    return Construction(config).run();
}

}  // namespace lily
