#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "cascade/qcore/liouvillian.hpp"

namespace cascade {

class SparseLu;

class PropagationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PropagatorOptions {
    /// Shift sigma of the rational Krylov space; <= 0 picks horizon / 200.
    double shift = 0.0;
    /// Relative change between successive Krylov sizes accepted as converged.
    double tolerance = 1e-6;
    int max_krylov = 240;
    int check_every = 10;
    /// Maximum number of times the grid may be halved.
    int max_splits = 6;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
};

struct PropagationStats {
    int krylov_dim = 0;   // largest basis used
    int segments = 0;
    double estimate = 0.0;  // last convergence estimate
};

/// exp(L t) x0 on a time grid via shift-and-invert Arnoldi with (I - sigma L)
/// factorized once. Solves are reentrant, so one propagator may serve many
/// concurrent evolutions.
class Propagator {
public:
    Propagator(const Liouvillian& L, double horizon, PropagatorOptions options = {});
    ~Propagator();

    double shift() const { return sigma_; }
    const PropagatorOptions& options() const { return options_; }

    /// States exp(L t) x0; times ascending, starting at 0.
    Trajectory evolve(const Vector& x0, const std::vector<double>& times, PropagationStats* stats = nullptr) const;

    /// w . exp(L t) x0 for each t, without forming the states.
    std::vector<Complex> expectation(const Vector& x0, const Vector& w, const std::vector<double>& times,
                                     PropagationStats* stats = nullptr) const;

private:
    void run(const Vector& x0, const std::vector<double>& times, const Vector* w, std::vector<Vector>* states,
             std::vector<Complex>* values, Vector* last, PropagationStats& stats, int depth) const;

    const Liouvillian* L_;
    PropagatorOptions options_;
    double sigma_ = 0.0;
    std::shared_ptr<SparseLu> lu_;
};

/// One-shot convenience wrapper.
Trajectory evolve(const Liouvillian& L, const Vector& x0, const std::vector<double>& times,
                  const PropagatorOptions& options = {});

/// n uniform points over [0, tmax] inclusive.
std::vector<double> uniform_grid(double tmax, int n);

} // namespace cascade
