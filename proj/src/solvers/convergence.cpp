#include "cascade/solvers/convergence.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cascade {

double relative_change(double a, double b, double floor) {
    const double s = std::max(std::abs(a), std::abs(b));
    if (s < floor) return 0.0;
    return std::abs(a - b) / s;
}

std::string ConvergenceReport::verdict() const {
    std::ostringstream os;
    if (converged) {
        os << "converged at n_t=" << accepted.n_t << " n_c=" << accepted.n_c << " (tolerance " << tolerance << ")";
    } else {
        os << "not converged within " << points.size() << " truncations (tolerance " << tolerance << ")";
    }
    return os.str();
}

namespace {

ScanPoint evaluate(const ObservableFn& fn, const Truncation& t) {
    ScanPoint p{t, {}, {}};
    try {
        p.observables = fn(t);
    } catch (const std::exception& e) {
        p.error = e.what();
    }
    return p;
}

// Largest relative change per key; false if either point failed or keys differ.
bool compare(const ScanPoint& a, const ScanPoint& b, Observables& changes) {
    if (!a.error.empty() || !b.error.empty()) return false;
    for (const auto& [key, va] : a.observables) {
        auto it = b.observables.find(key);
        if (it == b.observables.end()) return false;
        double& c = changes[key];
        c = std::max(c, relative_change(va, it->second));
    }
    return true;
}

bool all_below(const Observables& changes, double tol) {
    for (const auto& [k, v] : changes)
        if (!(v < tol)) return false;
    return true;
}

} // namespace

ConvergenceReport convergence_scan(const ObservableFn& fn, const std::vector<Truncation>& truncations,
                                   double tolerance) {
    if (truncations.size() < 2) throw std::invalid_argument("convergence_scan needs at least two truncations");
    ConvergenceReport r;
    r.tolerance = tolerance;
    for (const auto& t : truncations) r.points.push_back(evaluate(fn, t));
    for (std::size_t k = 0; k + 1 < r.points.size(); ++k) {
        Observables changes;
        if (compare(r.points[k], r.points[k + 1], changes) && all_below(changes, tolerance)) {
            r.converged = true;
            r.accepted = r.points[k].truncation;
            r.changes = changes;
            break;
        }
    }
    return r;
}

ConvergenceReport convergence_gate(const ObservableFn& fn, Truncation start, int max_n, double tolerance) {
    ConvergenceReport r;
    r.tolerance = tolerance;
    Truncation cur = start;
    auto lookup = [&](const Truncation& t) -> const ScanPoint& {
        for (const auto& p : r.points)
            if (p.truncation == t) return p;
        r.points.push_back(evaluate(fn, t));
        return r.points.back();
    };
    while (true) {
        const ScanPoint base = lookup(cur);
        Observables changes;
        bool ok = base.error.empty();
        bool raise_t = false, raise_c = false;
        if (ok && cur.n_t > 0) {
            Observables c;
            const ScanPoint up = lookup({cur.n_t + 1, cur.n_c});
            ok = compare(base, up, c);
            raise_t = !ok || !all_below(c, tolerance);
            for (const auto& [k, v] : c) changes[k] = std::max(changes[k], v);
        }
        if (ok && cur.n_c > 0) {
            Observables c;
            const ScanPoint up = lookup({cur.n_t, cur.n_c + 1});
            const bool cmp = compare(base, up, c);
            ok = ok && cmp;
            raise_c = !cmp || !all_below(c, tolerance);
            for (const auto& [k, v] : c) changes[k] = std::max(changes[k], v);
        }
        if (!base.error.empty()) {
            r.accepted = cur;
            r.changes = changes;
            return r;
        }
        if (ok && !raise_t && !raise_c) {
            r.converged = true;
            r.accepted = cur;
            r.changes = changes;
            return r;
        }
        Truncation next = cur;
        if (raise_t && cur.n_t < max_n) ++next.n_t;
        if (raise_c && cur.n_c < max_n) ++next.n_c;
        if (next == cur) {
            r.accepted = cur;
            r.changes = changes;
            return r;
        }
        cur = next;
    }
}

} // namespace cascade
