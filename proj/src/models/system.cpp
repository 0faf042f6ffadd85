#include "cascade/models/system.hpp"

namespace cascade {

SpacePtr model_space(const Factor& atom, bool telecom, int n_t, bool control, int n_c) {
    std::vector<Factor> f{atom};
    if (telecom) f.push_back({"telecom", n_t, {}});
    if (control) f.push_back({"control", n_c, {}});
    return HilbertSpace::make(std::move(f));
}

Operator ModelSystem::lift_atom(const SparseMatrix& local, bool hermitian) const {
    return embed(space, "atom", local, hermitian);
}

Operator ModelSystem::atom_projector(int level) const {
    const int d = space->factor(space->factor_index("atom")).dim;
    if (level < 0 || level >= d) throw DimensionError("atom level out of range");
    SparseMatrix p(d, d);
    p.insert(level, level) = 1.0;
    return lift_atom(p, true);
}

} // namespace cascade
