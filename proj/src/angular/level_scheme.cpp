#include "cascade/angular/level_scheme.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace cascade {

LevelScheme::LevelScheme(HalfInteger nuclear_spin, std::vector<Manifold> manifolds)
    : I_(nuclear_spin), manifolds_(std::move(manifolds)) {
    if (I_.twice() < 0) throw MalformedAngularMomentum("negative nuclear spin");
    for (std::size_t k = 0; k < manifolds_.size(); ++k) {
        auto& m = manifolds_[k];
        for (std::size_t l = 0; l < k; ++l)
            if (manifolds_[l].label == m.label) throw std::invalid_argument("duplicate manifold '" + m.label + "'");
        std::sort(m.levels.begin(), m.levels.end(), [](const auto& a, const auto& b) { return a.F < b.F; });
        const int lo = std::abs(m.J.twice() - I_.twice()), hi = m.J.twice() + I_.twice();
        std::vector<int> expect;
        for (int tf = lo; tf <= hi; tf += 2) expect.push_back(tf);
        std::vector<int> got;
        for (const auto& lv : m.levels) got.push_back(lv.F.twice());
        if (got != expect)
            throw std::invalid_argument("manifold '" + m.label + "' must list F = |J-I| .. J+I exactly");

        level_start_.push_back(static_cast<int>(offsets_.size()));
        for (const auto& lv : m.levels) {
            offsets_.push_back(static_cast<int>(states_.size()));
            for (int tm = -lv.F.twice(); tm <= lv.F.twice(); tm += 2)
                states_.push_back({static_cast<int>(k), lv.F, HalfInteger::from_twice(tm)});
        }
    }
}

int LevelScheme::manifold_index(std::string_view label) const {
    for (std::size_t k = 0; k < manifolds_.size(); ++k)
        if (manifolds_[k].label == label) return static_cast<int>(k);
    throw std::out_of_range("unknown manifold '" + std::string(label) + "'");
}

const HyperfineLevel& LevelScheme::level(int manifold, HalfInteger F) const {
    const auto& m = manifolds_.at(manifold);
    for (const auto& lv : m.levels)
        if (lv.F == F) return lv;
    throw std::out_of_range("manifold '" + m.label + "' has no F = " + F.str());
}

int LevelScheme::index(int manifold, HalfInteger F, HalfInteger mF) const {
    const auto& m = manifolds_.at(manifold);
    for (std::size_t l = 0; l < m.levels.size(); ++l)
        if (m.levels[l].F == F) {
            if (std::abs(mF.twice()) > F.twice() || !same_parity(F, mF))
                throw std::out_of_range("m_F = " + mF.str() + " invalid for F = " + F.str());
            return offsets_[level_start_[manifold] + l] + (mF.twice() + F.twice()) / 2;
        }
    throw std::out_of_range("manifold '" + m.label + "' has no F = " + F.str());
}

int LevelScheme::index(std::string_view manifold, int F, int mF) const {
    return index(manifold_index(manifold), HalfInteger::from_int(F), HalfInteger::from_int(mF));
}

double LevelScheme::energy(int idx) const {
    const auto& s = state(idx);
    return level(s.manifold, s.F).energy;
}

std::vector<int> LevelScheme::charges() const {
    std::vector<int> q;
    q.reserve(states_.size());
    for (const auto& s : states_) q.push_back(s.mF.twice());
    return q;
}

} // namespace cascade
