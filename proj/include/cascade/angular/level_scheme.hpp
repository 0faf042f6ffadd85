#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cascade/angular/half_integer.hpp"

namespace cascade {

struct HyperfineLevel {
    HalfInteger F;
    double energy = 0.0;  // angular frequency
};

struct Manifold {
    std::string label;
    HalfInteger J;
    std::vector<HyperfineLevel> levels;  // ascending F
    double linewidth = 0.0;              // total decay rate out of the manifold
};

struct AtomicState {
    int manifold = 0;
    HalfInteger F;
    HalfInteger mF;
};

/// Atomic basis enumerated as (manifold, F, m_F) in declaration order, F and
/// m_F ascending.
class LevelScheme {
public:
    LevelScheme(HalfInteger nuclear_spin, std::vector<Manifold> manifolds);

    HalfInteger nuclear_spin() const { return I_; }
    const std::vector<Manifold>& manifolds() const { return manifolds_; }
    const Manifold& manifold(int k) const { return manifolds_.at(k); }
    int manifold_index(std::string_view label) const;

    int dim() const { return static_cast<int>(states_.size()); }
    const std::vector<AtomicState>& states() const { return states_; }
    const AtomicState& state(int index) const { return states_.at(index); }
    int index(int manifold, HalfInteger F, HalfInteger mF) const;
    int index(std::string_view manifold, int F, int mF) const;

    const HyperfineLevel& level(int manifold, HalfInteger F) const;
    double energy(int index) const;

    /// 2 m_F for every basis state.
    std::vector<int> charges() const;

private:
    HalfInteger I_;
    std::vector<Manifold> manifolds_;
    std::vector<AtomicState> states_;
    std::vector<int> offsets_;  // first basis index of each (manifold, level)
    std::vector<int> level_start_;
};

} // namespace cascade
