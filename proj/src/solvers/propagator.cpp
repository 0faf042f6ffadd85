#include "cascade/solvers/propagator.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "cascade/solvers/sparse_lu.hpp"

namespace cascade {

namespace {

// Length of the leading stretch of equally spaced samples.
std::size_t uniform_prefix(const std::vector<double>& t) {
    if (t.size() < 3) return t.size();
    const double h = t[1] - t[0];
    std::size_t k = 2;
    while (k < t.size() && std::abs((t[k] - t[k - 1]) - h) <= 1e-10 * std::max(1.0, std::abs(t[k]))) ++k;
    return k;
}

Complex plain_dot(const Vector& w, const Vector& v) { return (w.array() * v.array()).sum(); }

} // namespace

std::vector<double> uniform_grid(double tmax, int n) {
    if (n < 2 || !(tmax > 0.0)) throw std::invalid_argument("uniform_grid needs n >= 2 and tmax > 0");
    std::vector<double> t(n);
    for (int k = 0; k < n; ++k) t[k] = tmax * k / (n - 1);
    return t;
}

Propagator::Propagator(const Liouvillian& L, double horizon, PropagatorOptions options)
    : L_(&L), options_(options) {
    if (!(horizon > 0.0)) throw std::invalid_argument("propagator horizon must be positive");
    if (options_.check_every < 1 || options_.max_krylov < options_.check_every)
        throw std::invalid_argument("invalid Krylov size settings");
    sigma_ = options_.shift > 0.0 ? options_.shift : horizon / 200.0;
    SparseMatrix M = -sigma_ * L.matrix();
    for (int i = 0; i < M.rows(); ++i) M.coeffRef(i, i) += 1.0;
    M.makeCompressed();
    try {
        lu_ = std::make_shared<SparseLu>(M);
    } catch (const SingularMatrix&) {
        throw PropagationFailure("shifted Liouvillian I - sigma L is singular");
    }
}

Propagator::~Propagator() = default;

void Propagator::run(const Vector& x0, const std::vector<double>& times, const Vector* w, std::vector<Vector>* states,
                     std::vector<Complex>* values, Vector* last, PropagationStats& stats, int depth) const {
    const std::size_t nt = times.size();
    const double beta = x0.norm();
    ++stats.segments;
    if (beta == 0.0) {
        for (std::size_t k = 0; k < nt; ++k) {
            if (states) states->push_back(Vector::Zero(x0.size()));
            if (values) values->push_back(0.0);
        }
        if (last) *last = Vector::Zero(x0.size());
        return;
    }

    const int mmax = options_.max_krylov;
    std::vector<Vector> V;
    V.reserve(mmax + 1);
    V.push_back(x0 / beta);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(mmax + 1, mmax);
    std::vector<Complex> wv;
    if (w) wv.push_back(plain_dot(*w, V[0]));

    const std::size_t prefix = uniform_prefix(times);
    Eigen::MatrixXcd Y, Yprev;
    bool converged = false;
    int m = 0;
    double estimate = 0.0;

    auto series = [&](int size) {
        const Eigen::MatrixXcd Hm = H.topLeftCorner(size, size);
        const Eigen::MatrixXcd Lm =
            (Eigen::MatrixXcd::Identity(size, size) - Hm.fullPivLu().inverse()) / sigma_;
        Eigen::MatrixXcd out(size, nt);
        Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(size);
        e1[0] = beta;
        out.col(0) = times[0] == 0.0 ? e1 : Eigen::VectorXcd((Lm * times[0]).exp() * e1);
        if (prefix >= 2) {
            const Eigen::MatrixXcd E = (Lm * (times[1] - times[0])).exp();
            for (std::size_t k = 1; k < prefix; ++k) out.col(k) = E * out.col(k - 1);
        }
        for (std::size_t k = std::max<std::size_t>(prefix, 1); k < nt; ++k)
            out.col(k) = (Lm * (times[k] - times[prefix - 1])).exp() * out.col(prefix - 1);
        return out;
    };

    while (m < mmax) {
        Vector u = lu_->solve(V[m]);
        const double before = u.norm();
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= m; ++i) {
                const Complex h = V[i].dot(u);
                H(i, m) += h;
                u -= h * V[i];
            }
        const double h = u.norm();
        H(m + 1, m) = h;
        ++m;
        const bool breakdown = h <= 1e-13 * before;
        if (breakdown || m % options_.check_every == 0 || m == mmax) {
            Y = series(m);
            if (breakdown) {
                converged = true;
                estimate = 0.0;
                break;
            }
            if (Yprev.size() > 0) {
                // With a functional only the scalar series has to settle.
                double diff = 0.0, scale = 0.0;
                for (std::size_t k = 0; k < nt; ++k) {
                    Eigen::VectorXcd d = Y.col(k);
                    d.head(Yprev.rows()) -= Yprev.col(k);
                    if (w) {
                        Complex sd = 0.0, sy = 0.0;
                        for (int i = 0; i < m; ++i) {
                            sd += wv[i] * d[i];
                            sy += wv[i] * Y(i, k);
                        }
                        diff = std::max(diff, std::abs(sd));
                        scale = std::max(scale, std::abs(sy));
                    } else {
                        diff = std::max(diff, d.norm());
                        scale = std::max(scale, Y.col(k).norm());
                    }
                }
                estimate = diff / std::max(scale, 1e-300);
                if (estimate <= options_.tolerance) {
                    converged = true;
                    break;
                }
            }
            Yprev = Y;
        }
        V.push_back(u / h);
        if (w) wv.push_back(plain_dot(*w, V.back()));
    }
    stats.krylov_dim = std::max(stats.krylov_dim, m);
    stats.estimate = std::max(stats.estimate, estimate);

    if (!converged) {
        if (depth >= options_.max_splits)
            throw PropagationFailure("Krylov propagation did not reach tolerance " + std::to_string(options_.tolerance) +
                                     " (estimate " + std::to_string(estimate) + ")");
        // Halve the grid and restart from the state at the split point. A
        // two-point grid gets an auxiliary midpoint that is not reported.
        std::vector<double> first, second;
        const bool auxiliary = nt == 2;
        if (auxiliary) {
            const double mid = 0.5 * times[1];
            first = {0.0, mid};
            second = {0.0, times[1] - mid};
        } else {
            const std::size_t mid = nt / 2;
            first.assign(times.begin(), times.begin() + mid + 1);
            for (std::size_t k = mid; k < nt; ++k) second.push_back(times[k] - times[mid]);
        }
        std::vector<Vector> s1, s2;
        std::vector<Complex> v1, v2;
        Vector xmid, xend;
        run(x0, first, w, states ? &s1 : nullptr, values ? &v1 : nullptr, &xmid, stats, depth + 1);
        run(xmid, second, w, states ? &s2 : nullptr, values ? &v2 : nullptr, &xend, stats, depth + 1);
        const std::size_t skip = auxiliary ? 1 : 0;
        if (states) {
            states->insert(states->end(), s1.begin(), s1.end() - 1);
            states->insert(states->end(), s2.begin() + skip, s2.end());
        }
        if (values) {
            values->insert(values->end(), v1.begin(), v1.end() - 1);
            values->insert(values->end(), v2.begin() + skip, v2.end());
        }
        if (last) *last = std::move(xend);
        return;
    }

    auto state_at = [&](std::size_t k) {
        Vector x = Vector::Zero(x0.size());
        for (int i = 0; i < m; ++i) x += Y(i, k) * V[i];
        return x;
    };
    for (std::size_t k = 0; k < nt; ++k) {
        if (values) {
            Complex s = 0.0;
            for (int i = 0; i < m; ++i) s += wv[i] * Y(i, k);
            values->push_back(s);
        }
        if (states) states->push_back(state_at(k));
    }
    if (last) *last = states ? states->back() : state_at(nt - 1);
}

Trajectory Propagator::evolve(const Vector& x0, const std::vector<double>& times, PropagationStats* stats) const {
    if (x0.size() != L_->size()) throw DimensionError("evolve: initial vector does not match the Liouvillian");
    if (times.empty() || times.front() != 0.0) throw std::invalid_argument("evolve: time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("evolve: times must be strictly increasing");
    PropagationStats local;
    Trajectory tr{times, {}};
    tr.states.reserve(times.size());
    run(x0, times, nullptr, &tr.states, nullptr, nullptr, local, 0);
    if (stats) *stats = local;
    return tr;
}

std::vector<Complex> Propagator::expectation(const Vector& x0, const Vector& w, const std::vector<double>& times,
                                             PropagationStats* stats) const {
    if (x0.size() != L_->size() || w.size() != L_->size())
        throw DimensionError("expectation: vector does not match the Liouvillian");
    if (times.empty() || times.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("times must be strictly increasing");
    PropagationStats local;
    std::vector<Complex> out;
    out.reserve(times.size());
    run(x0, times, &w, nullptr, &out, nullptr, local, 0);
    if (stats) *stats = local;
    return out;
}

Trajectory evolve(const Liouvillian& L, const Vector& x0, const std::vector<double>& times,
                  const PropagatorOptions& options) {
    if (times.empty()) throw std::invalid_argument("evolve: empty time grid");
    Propagator p(L, std::max(times.back(), 1e-300), options);
    return p.evolve(x0, times);
}

} // namespace cascade
