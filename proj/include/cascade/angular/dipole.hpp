#pragma once

#include <string_view>

#include "cascade/angular/level_scheme.hpp"
#include "cascade/qcore/operator.hpp"

namespace cascade {

/// Angular factor of <lower, F, m| D_q |upper, F', m'>, zero unless m = m' + q.
double dipole_coefficient(const LevelScheme& scheme, int lower, HalfInteger F, HalfInteger m, int upper, HalfInteger Fp,
                          HalfInteger mp, int q);

/// Lowering operator sum |lower F m><upper F' m'| weighted by the angular
/// factor, on a single "atom" factor whose charges are 2 m_F.
Operator dipole_operator(const LevelScheme& scheme, std::string_view lower, std::string_view upper, int q);

/// The single-factor space used by dipole_operator.
SpacePtr atom_space(const LevelScheme& scheme);

} // namespace cascade
