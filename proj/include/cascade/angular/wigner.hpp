#pragma once

#include "cascade/angular/half_integer.hpp"

namespace cascade {

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3), Condon-Shortley phase.
/// Zero when the m's do not sum to zero, a triangle fails, or |m| > j.
/// Throws MalformedAngularMomentum on negative j or j/m parity mismatch.
double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6}. Zero when a triad fails the
/// triangle rule; throws when a triad has a half-odd perimeter.
double wigner_6j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger j4, HalfInteger j5, HalfInteger j6);

/// Convenience overloads taking twice the quantum numbers.
double wigner_3j_twice(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);
double wigner_6j_twice(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);

/// Clebsch-Gordan <j1 m1; j2 m2 | J M>.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J, HalfInteger M);

} // namespace cascade
