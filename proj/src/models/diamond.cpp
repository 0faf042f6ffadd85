#include "cascade/models/diamond.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cascade {

std::vector<std::string> DiamondParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    for (double v : {omega_g, delta_p, delta_s, omega_p, omega_s, g_t, g_c, kappa_t, kappa_c, gamma})
        if (!finite(v)) throw std::invalid_argument("diamond parameters must be finite");
    if (gamma < 0.0 || kappa_t < 0.0 || kappa_c < 0.0) throw std::invalid_argument("diamond rates must be non-negative");
    if (omega_g < 0.0) throw std::invalid_argument("ground splitting must be non-negative");
    if (telecom_cavity && n_t < 2) throw std::invalid_argument("telecom truncation n_t must be >= 2");
    if (control_cavity && n_c < 2) throw std::invalid_argument("control truncation n_c must be >= 2");
    std::vector<std::string> warnings;
    const double omax = std::max(std::abs(omega_p), std::abs(omega_s));
    if (omax > 0.0 && omega_g < 10.0 * omax) {
        std::ostringstream os;
        os << "ground splitting " << omega_g << " is less than 10x the largest Rabi frequency " << omax;
        warnings.push_back(os.str());
    }
    return warnings;
}

DriveMode parse_drive_mode(const std::string& name) {
    if (name == "off_resonant") return DriveMode::OffResonant;
    if (name == "resonant") return DriveMode::Resonant;
    throw std::invalid_argument("unknown drive mode '" + name + "' (off_resonant | resonant)");
}

double effective_two_photon_rate(const DiamondParams& p, DriveMode mode) {
    const double prod = 0.25 * p.omega_p * p.omega_s;
    if (mode == DriveMode::Resonant) return std::sqrt(2.0 * std::abs(prod));
    if (p.delta_s == 0.0) throw std::domain_error("off-resonant two-photon rate needs Delta_S != 0");
    return prod / p.delta_s;
}

double rabi_for_effective_rate(double target, DriveMode mode, double delta_s) {
    if (target < 0.0) throw std::invalid_argument("negative target two-photon rate");
    if (mode == DriveMode::Resonant) return 2.0 * target / std::sqrt(2.0);
    if (delta_s == 0.0) throw std::domain_error("off-resonant two-photon rate needs Delta_S != 0");
    return 2.0 * std::sqrt(target * std::abs(delta_s));
}

ModelSystem build_diamond(const DiamondParams& p) {
    std::vector<std::string> warnings = p.validate();
    const SpacePtr space = model_space(Factor{"atom", 5, {}}, p.telecom_cavity, p.n_t, p.control_cavity, p.n_c);
    auto atom = [&](int i, int j) {
        SparseMatrix m(5, 5);
        m.insert(i, j) = 1.0;
        return m;
    };
    SparseMatrix Dp = atom(kG1, kE1) + atom(kG2, kE1);
    SparseMatrix Ds = atom(kE1, kF);
    SparseMatrix Dt = atom(kE2, kF);
    SparseMatrix Dc = atom(kG2, kE2);
    SparseMatrix diag = -p.omega_g * atom(kG1, kG1) + p.delta_p * atom(kE1, kE1) + (p.delta_p + p.delta_s) * atom(kF, kF);
    SparseMatrix drive = 0.5 * p.omega_p * SparseMatrix(Dp + SparseMatrix(Dp.adjoint())) +
                         0.5 * p.omega_s * SparseMatrix(Ds + SparseMatrix(Ds.adjoint()));

    ModelSystem m{space, Operator::zero(space), {}, std::nullopt, std::nullopt, 0.0, 0.0, std::move(warnings)};
    Operator H = m.lift_atom(SparseMatrix(diag + drive), true);
    if (p.telecom_cavity) {
        const Operator t = embed(space, "telecom", destroy(p.n_t).matrix());
        const Operator dt = m.lift_atom(Dt);
        H += p.g_t * (dt.adjoint() * t + t.adjoint() * dt);
        m.telecom = t;
        m.kappa_t = p.kappa_t;
        m.collapses.push_back({t, 2.0 * p.kappa_t, "telecom"});
    }
    if (p.control_cavity) {
        const Operator c = embed(space, "control", destroy(p.n_c).matrix());
        const Operator dc = m.lift_atom(Dc);
        H += p.g_c * (dc.adjoint() * c + c.adjoint() * dc);
        m.control = c;
        m.kappa_c = p.kappa_c;
        m.collapses.push_back({c, 2.0 * p.kappa_c, "control"});
    }
    m.H = Operator(space, H.matrix(), true);
    m.collapses.push_back({m.lift_atom(Dp), p.gamma_p(), "D_p"});
    m.collapses.push_back({m.lift_atom(Ds), p.gamma_s(), "D_S"});
    m.collapses.push_back({m.lift_atom(Dt), p.gamma_t(), "D_t"});
    m.collapses.push_back({m.lift_atom(Dc), p.gamma_c(), "D_c"});
    return m;
}

double diamond_telecom_emission(const ModelSystem& m, const DensityMatrix& rho, const DiamondParams& p) {
    return p.gamma_t() * expect(m.atom_projector(kF), rho).real();
}

} // namespace cascade
