#include "cascade/angular/dipole.hpp"

#include <cmath>
#include <stdexcept>

#include "cascade/angular/wigner.hpp"

namespace cascade {

double dipole_coefficient(const LevelScheme& scheme, int lower, HalfInteger F, HalfInteger m, int upper, HalfInteger Fp,
                          HalfInteger mp, int q) {
    if (q < -1 || q > 1) throw std::invalid_argument("polarization q must be -1, 0 or +1");
    if (m.twice() != mp.twice() + 2 * q) return 0.0;
    const HalfInteger J = scheme.manifold(lower).J;
    const HalfInteger Jp = scheme.manifold(upper).J;
    const HalfInteger I = scheme.nuclear_spin();
    const HalfInteger one = HalfInteger::from_int(1);
    const double six = wigner_6j(J, Jp, one, Fp, F, I);
    if (six == 0.0) return 0.0;
    const double three = wigner_3j(Fp, one, F, mp, HalfInteger::from_int(q), -m);
    if (three == 0.0) return 0.0;
    const int e = (J.twice() + I.twice() - m.twice()) / 2;
    const double phase = (e % 2 == 0) ? 1.0 : -1.0;
    return phase * std::sqrt((F.twice() + 1.0) * (Fp.twice() + 1.0) * (Jp.twice() + 1.0)) * three * six;
}

SpacePtr atom_space(const LevelScheme& scheme) {
    return HilbertSpace::make({Factor{"atom", scheme.dim(), scheme.charges()}});
}

Operator dipole_operator(const LevelScheme& scheme, std::string_view lower, std::string_view upper, int q) {
    if (q < -1 || q > 1) throw std::invalid_argument("polarization q must be -1, 0 or +1");
    const int lo = scheme.manifold_index(lower);
    const int up = scheme.manifold_index(upper);
    std::vector<Triplet> trips;
    for (const auto& lv : scheme.manifold(lo).levels)
        for (const auto& uv : scheme.manifold(up).levels)
            for (int tm = -lv.F.twice(); tm <= lv.F.twice(); tm += 2) {
                const HalfInteger m = HalfInteger::from_twice(tm);
                const HalfInteger mp = HalfInteger::from_twice(tm - 2 * q);
                if (std::abs(mp.twice()) > uv.F.twice()) continue;
                const double c = dipole_coefficient(scheme, lo, lv.F, m, up, uv.F, mp, q);
                if (c != 0.0) trips.emplace_back(scheme.index(lo, lv.F, m), scheme.index(up, uv.F, mp), c);
            }
    SparseMatrix M(scheme.dim(), scheme.dim());
    M.setFromTriplets(trips.begin(), trips.end());
    return Operator(atom_space(scheme), std::move(M));
}

} // namespace cascade
