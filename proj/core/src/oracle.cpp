// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "lilygrow/oracle.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "lilygrow/errors.hpp"

namespace lily {

namespace {

constexpr double kTieTolerance = 1e-12;

enum class State { live, frozen, covered };

enum class EventKind { pair_meet, hit_frozen, cover_germ };

struct Event {
    double time;
    std::uint64_t seq;  // insertion order, makes extraction deterministic
    EventKind kind;
    std::size_t a;      // pair_meet: either; hit_frozen: mover; cover_germ: coverer
    std::size_t b;      // pair_meet: either; hit_frozen: frozen; cover_germ: covered
    std::uint32_t version_a;
    std::uint32_t version_b;
};

struct Later {
    bool operator()(const Event& x, const Event& y) const
    {
        if (x.time != y.time)
            return x.time > y.time;
        return x.seq > y.seq;
    }
};

class Simulation {
  public:
    explicit Simulation(const Configuration& config) : config_(config), n_(config.grains.size())
    {
        state_.assign(n_, State::live);
        version_.assign(n_, 0);
        result_.engine = "oracle";
        result_.window = config.window;
        result_.dimension = config.dimension;
        result_.diagnostics = config.diagnostics;
        result_.grains.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            result_.grains[i].grain = config.grains[i];
            if (!config.grains[i].shape.strictly_convex())
                result_.diagnostics.non_strictly_convex = true;
        }
    }

    HardCoreResult run(OracleStats& stats)
    {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                push_pair(i, j);

        double last = -kInfinity;
        while (auto next = pop_valid(stats)) {
            const Event e = *next;
            if (e.time < last - 1e-9)
                stats.monotone = false;
            last = std::max(last, e.time);
            if (auto peek = top_valid(stats); peek && peek->time - e.time <= kTieTolerance)
                tie_ = true;
            ++stats.events_processed;
            ++round_;
            switch (e.kind) {
            case EventKind::pair_meet:
                freeze(e.a, e.time, Rule::pair_meet, config_.grains[e.b].id);
                freeze(e.b, e.time, Rule::pair_meet, config_.grains[e.a].id);
                break;
            case EventKind::hit_frozen:
                freeze(e.a, e.time, Rule::hit_frozen, config_.grains[e.b].id);
                break;
            case EventKind::cover_germ: {
                GrownGrain& g = result_.grains[e.b];
                g.R = 0.0;
                g.status = GrainStatus::covered;
                g.round = round_;
                g.earlier_neighbour_ids = {config_.grains[e.a].id};
                state_[e.b] = State::covered;
                ++version_[e.b];
                result_.log.push_back({round_, Rule::cover_germ, config_.grains[e.b].id, e.time});
                break;
            }
            }
        }

        std::vector<std::size_t> leftover;
        bool positive = false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (state_[i] == State::live)
                leftover.push_back(i);
            if (state_[i] == State::frozen && result_.grains[i].R > 0.0)
                positive = true;
        }
        if (leftover.size() > 1 || (leftover.size() == 1 && positive))
            throw std::logic_error("oracle: event queue drained with unresolved grains");
        if (leftover.size() == 1) {
            const std::size_t u = leftover.front();
            GrownGrain& g = result_.grains[u];
            const double cap = cap_radius(config_.grains[u], config_.window, config_.dimension);
            g.R = cap;
            g.status = GrainStatus::capped;
            g.round = -1;
            result_.cap_radius = cap;
            result_.log.push_back({-1, Rule::cap, config_.grains[u].id, config_.grains[u].t + cap});
        }
        if (tie_)
            result_.diagnostics.tie_detected = true;
        if (result_.diagnostics.tie_detected)
            result_.membership = Membership::tie_degenerate;
        else if (result_.cap_radius)
            result_.membership = Membership::leftover_unstoppable;
        return std::move(result_);
    }

  private:
    void push(double time, EventKind kind, std::size_t a, std::size_t b)
    {
        queue_.push({time, seq_++, kind, a, b, version_[a], version_[b]});
    }

    void push_pair(std::size_t i, std::size_t j)
    {
        const FirstContact fc = first_contact(config_.grains[i], config_.grains[j]);
        if (std::abs(fc.coverage_margin) <= kTieTolerance)
            tie_ = true;
        switch (fc.kind) {
        case ContactKind::meet: push(fc.time, EventKind::pair_meet, i, j); break;
        case ContactKind::first_covers_second: push(fc.time, EventKind::cover_germ, i, j); break;
        case ContactKind::second_covers_first: push(fc.time, EventKind::cover_germ, j, i); break;
        }
    }

    bool valid(const Event& e) const
    {
        if (version_[e.a] != e.version_a || version_[e.b] != e.version_b)
            return false;
        if (state_[e.a] != State::live)
            return false;
        return e.kind == EventKind::hit_frozen ? state_[e.b] == State::frozen : state_[e.b] == State::live;
    }

    std::optional<Event> top_valid(OracleStats& stats)
    {
        while (!queue_.empty() && !valid(queue_.top())) {
            queue_.pop();
            ++stats.stale_discarded;
        }
        if (queue_.empty())
            return std::nullopt;
        return queue_.top();
    }

    std::optional<Event> pop_valid(OracleStats& stats)
    {
        auto e = top_valid(stats);
        if (e)
            queue_.pop();
        return e;
    }

    void freeze(std::size_t i, double time, Rule rule, GrainId witness)
    {
        GrownGrain& g = result_.grains[i];
        g.R = std::max(0.0, time - config_.grains[i].t);
        g.status = g.R > 0.0 ? GrainStatus::stopped : GrainStatus::covered;
        g.round = round_;
        g.earlier_neighbour_ids = {witness};
        state_[i] = State::frozen;
        ++version_[i];
        result_.log.push_back({round_, rule, config_.grains[i].id, time});
        if (g.R <= 0.0)
            return;
        for (std::size_t w = 0; w < n_; ++w) {
            if (state_[w] != State::live)
                continue;
            const double f = stop_time_against_frozen(config_.grains[w], config_.grains[i], g.R);
            push(f, EventKind::hit_frozen, w, i);
        }
    }

    const Configuration& config_;
    std::size_t n_;
    std::vector<State> state_;
    std::vector<std::uint32_t> version_;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::uint64_t seq_ = 0;
    int round_ = 0;
    bool tie_ = false;
    HardCoreResult result_;
};

}  // namespace

HardCoreResult simulate_growth(const Configuration& config, OracleStats* stats)
{
    if (config.grains.size() < 2)
        throw InvalidConfiguration("simulate_growth needs at least two grains");
    validate(config);
    OracleStats local;
    auto result = Simulation(config).run(stats ? *stats : local);
    if (stats)
        stats->events_pushed = stats->events_processed + stats->stale_discarded;
    return result;
}

}  // namespace lily
