#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace cascade {

using Observables = std::map<std::string, double>;

struct Truncation {
    int n_t = 0;  // 0 when the mode is absent
    int n_c = 0;
    friend bool operator==(const Truncation&, const Truncation&) = default;
};

struct ScanPoint {
    Truncation truncation;
    Observables observables;
    std::string error;  // non-empty when the evaluation failed
};

struct ConvergenceReport {
    std::vector<ScanPoint> points;
    double tolerance = 1e-3;
    bool converged = false;
    /// Coarsest truncation whose refinement changed every observable by less
    /// than the tolerance; meaningful only when converged.
    Truncation accepted;
    /// Largest relative change per observable at the accepted truncation.
    Observables changes;

    std::string verdict() const;
};

using ObservableFn = std::function<Observables(const Truncation&)>;

/// |a - b| / max(|a|, |b|), zero when both are below `floor`.
double relative_change(double a, double b, double floor = 1e-12);

/// Evaluate a fixed list of truncations; converged at the first level whose
/// successor differs by less than `tolerance` in every observable.
ConvergenceReport convergence_scan(const ObservableFn& fn, const std::vector<Truncation>& truncations,
                                   double tolerance = 1e-3);

/// Escalating gate: refine each present mode by one photon separately and
/// raise the modes that moved by more than `tolerance`, until both pass or
/// `max_n` is reached.
ConvergenceReport convergence_gate(const ObservableFn& fn, Truncation start, int max_n, double tolerance);

} // namespace cascade
