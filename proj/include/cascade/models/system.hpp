#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cascade/qcore/liouvillian.hpp"

namespace cascade {

/// Hamiltonian, collapse channels and handles to the cavity modes of a built
/// model. Cavity handles are empty when the cavity is disabled.
struct ModelSystem {
    SpacePtr space;
    Operator H;
    std::vector<CollapseTerm> collapses;
    std::optional<Operator> telecom;
    std::optional<Operator> control;
    double kappa_t = 0.0;
    double kappa_c = 0.0;
    std::vector<std::string> warnings;

    /// |i><i| on the atom factor lifted to the composite space.
    Operator atom_projector(int level) const;
    /// Lifts an atom-factor operator to the composite space.
    Operator lift_atom(const SparseMatrix& local, bool hermitian = false) const;
};

/// Atom factor followed by the enabled cavity factors "telecom" and "control".
SpacePtr model_space(const Factor& atom, bool telecom, int n_t, bool control, int n_c);

} // namespace cascade
