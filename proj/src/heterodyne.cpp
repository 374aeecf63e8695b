#include "hetspec/heterodyne.hpp"

#include <cmath>

namespace hetspec {

namespace {

constexpr double k_hbar = 1.054571817e-34;   // J s
constexpr double k_boltzmann = 1.380649e-23; // J/K

struct ComboTerms {
    double floor_const;   // alpha_floor entering S^(o)
    double om_weight;     // coefficient of 2 p kext (L - L-) in S^(om)
    double m_main, m_image;  // coefficients of 4 p kext L / L- in S^(m), red window
};

// red-window coefficients; the blue window swaps main <-> image and flips S^(om)
ComboTerms combo_terms(const ValidatedParams& vp) {
    const double alpha = vp.noise().alpha;
    const double beta = vp.mech().beta;
    const double n = vp.n_eff();
    ComboTerms t{};
    if (vp.detector().model == DetectorModel::SCL) {
        t.floor_const = alpha;
        t.om_weight = alpha;
        t.m_main = n + beta / 2.0;
        t.m_image = n + beta / 2.0;
    } else {  // QUA: vacuum noise invisible, shot-noise floor instead
        t.floor_const = vp.detector().i0_ratio;
        t.om_weight = vp.noise().kind == FieldKind::QuantumVacuum ? 0.0 : alpha;
        t.m_main = n + beta;
        t.m_image = n;
    }
    return t;
}

// laser-noise part of S^(o) at photocurrent frequency omega_if + w (signed w)
double laser_floor(const ValidatedParams& vp, double w) {
    if (!vp.noise().laser) return 0.0;
    const auto& l = *vp.noise().laser;
    if (l.r == 0.0) return 0.0;
    const auto& c = vp.cavity();
    const std::complex<double> filt =
        c.kappa_ext * chi_c(-w, c.kappa, c.Delta) - static_cast<double>(c.lambda);
    return l.r * l.r * c.kappa / (4.0 * c.kappa_ext) * std::norm(filt) * (l.C_xx + l.C_yy);
}

} // namespace

double noise_floor(const ValidatedParams& vp, double omega_tilde) {
    return vp.detector().Z2 * (combo_terms(vp).floor_const + laser_floor(vp, omega_tilde));
}

SidebandSpectra sidebands(const ValidatedParams& vp, std::vector<double> grid) {
    const ComboTerms t = combo_terms(vp);
    const double Z2 = vp.detector().Z2;
    const double pk = vp.coupling().p * vp.coupling().kappa_bar_ext;
    const double wm = vp.mech().omega_m;

    SidebandSpectra out;
    out.red.grid = grid;
    out.blue.grid = std::move(grid);
    const std::size_t n = out.red.grid.size();
    for (auto* curve : {&out.red, &out.blue}) {
        curve->S_o.resize(n);
        curve->S_om.resize(n);
        curve->S_m.resize(n);
        curve->S_total.resize(n);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double w = out.red.grid[k];
        const double L = lorentzian_L(w, wm);
        const double Li = lorentzian_L(-w, wm);
        out.red.S_o[k] = Z2 * (t.floor_const + laser_floor(vp, w));
        out.blue.S_o[k] = Z2 * (t.floor_const + laser_floor(vp, -w));
        out.red.S_om[k] = 2.0 * t.om_weight * pk * Z2 * (L - Li);
        out.blue.S_om[k] = -out.red.S_om[k];
        out.red.S_m[k] = 4.0 * pk * Z2 * (t.m_main * L + t.m_image * Li);
        out.blue.S_m[k] = 4.0 * pk * Z2 * (t.m_image * L + t.m_main * Li);
        out.red.S_total[k] = out.red.S_o[k] + out.red.S_om[k] + out.red.S_m[k];
        out.blue.S_total[k] = out.blue.S_o[k] + out.blue.S_om[k] + out.blue.S_m[k];
    }
    out.floor = noise_floor(vp, wm);
    return out;
}

SidebandSpectra sidebands_quantum_form(double p, double kappa_bar_ext, double n,
                                       double omega_m, std::vector<double> grid,
                                       double gamma_m) {
    const double pk = p * kappa_bar_ext;
    SidebandSpectra out;
    out.red.grid = grid;
    out.blue.grid = std::move(grid);
    const std::size_t count = out.red.grid.size();
    for (auto* curve : {&out.red, &out.blue}) {
        curve->S_o.assign(count, 1.0);
        curve->S_om.assign(count, 0.0);
        curve->S_m.resize(count);
        curve->S_total.resize(count);
    }
    for (std::size_t k = 0; k < count; ++k) {
        const double L = lorentzian_L(out.red.grid[k], omega_m, gamma_m);
        const double Li = lorentzian_L(-out.red.grid[k], omega_m, gamma_m);
        out.red.S_m[k] = 4.0 * pk * ((n + 1.0) * L + n * Li);
        out.blue.S_m[k] = 4.0 * pk * (n * L + (n + 1.0) * Li);
        out.red.S_total[k] = 1.0 + out.red.S_m[k];
        out.blue.S_total[k] = 1.0 + out.blue.S_m[k];
    }
    out.floor = 1.0;
    return out;
}

std::vector<double> asymmetry(const SidebandSpectra& s) {
    if (s.red.grid != s.blue.grid)
        throw GridMismatch("red and blue sideband grids differ");
    std::vector<double> out(s.red.grid.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = s.red.S_total[k] - s.blue.S_total[k];
    return out;
}

double asymmetry_peak_ratio(const ValidatedParams& vp) {
    const SidebandSpectra s = sidebands(vp, {vp.mech().omega_m});
    return (s.red.S_total[0] - s.blue.S_total[0]) / noise_floor(vp, vp.mech().omega_m);
}

double inferred_occupancy(const ThermometryReport& fit) {
    if (fit.h_r <= fit.h_b)
        throw DegenerateFit("h_r <= h_b: ratio method undefined");
    return fit.h_b / (fit.h_r - fit.h_b);
}

double classical_inferred_occupancy(double n_th, double alpha, double p) {
    return n_th / alpha + p - 0.5;
}

BlueHeightCurves blue_height_vs_Q(std::vector<double> Q_grid, double alpha, double p) {
    BlueHeightCurves out;
    out.Q = std::move(Q_grid);
    out.n_quantum.resize(out.Q.size());
    out.n_classical.resize(out.Q.size());
    for (std::size_t k = 0; k < out.Q.size(); ++k) {
        const double Q = out.Q[k];
        out.n_quantum[k] = 1.0 / std::expm1(Q) + p;
        out.n_classical[k] = 1.0 / (alpha * Q) + p - 0.5;
    }
    return out;
}

double classical_blue_zero_crossing(double alpha, double p) {
    if (p >= 0.5) throw BackactionTooLarge(p);
    auto f = [&](double Q) { return 1.0 / (alpha * Q) + p - 0.5; };
    // f is monotonically decreasing; bracket the sign change, then bisect
    double lo = 1e-6, hi = 1.0;
    while (f(hi) > 0.0) hi *= 2.0;
    while (f(lo) < 0.0) lo /= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double detectability_bound(double alpha, double p, double omega_m) {
    if (p >= 0.5) throw BackactionTooLarge(p);
    return k_hbar * omega_m * alpha / k_boltzmann * (0.5 - p);
}

EquivalenceCheck detector_equivalence_check(const ValidatedParams& vp,
                                            const std::vector<double>& grid) {
    EquivalenceCheck out;

    SystemParams scl = vp.sys();
    scl.detector.model = DetectorModel::SCL;
    SystemParams qua = vp.sys();
    qua.detector.model = DetectorModel::QUA;
    const ValidateOptions opt{.force = true};
    const SidebandSpectra a = sidebands(validate(scl, opt), grid);
    const SidebandSpectra b = sidebands(validate(qua, opt), grid);
    const double floor = noise_floor(vp, vp.mech().omega_m);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out.spectrum_residual = std::max(
            out.spectrum_residual,
            std::abs(a.red.S_total[k] - b.red.S_total[k]) / floor);
        out.spectrum_residual = std::max(
            out.spectrum_residual,
            std::abs(a.blue.S_total[k] - b.blue.S_total[k]) / floor);
    }

    // output-noise commutator identity:
    //   2 Im(G* chi_c*[w] S_{Gq x}[w]) / (sqrt(kext) G^2 |chi_c[w]|^2)
    //     = S_xx[w] - S_xx[-w]
    // with S_{Gq x}[w] assembled from the vacuum correlators and the
    // field-driven part of x[w] at Delta = 0.
    const auto& c = vp.cavity();
    const double G = c.G;
    if (G != 0.0) {
        const double alpha = vp.noise().alpha;
        const double wm = vp.mech().omega_m;
        const double sqrt_kext = std::sqrt(c.kappa_ext);
        for (double w : grid) {
            for (double sign : {1.0, -1.0}) {
                const double omega = sign * w;
                const std::complex<double> cc = chi_c(omega, c.kappa, c.Delta);
                const std::complex<double> s_gx =
                    std::complex<double>(0.0, -1.0) * G * alpha * sqrt_kext *
                    (c.kappa * cc - 1.0) * chi_c(-omega, c.kappa, c.Delta) *
                    (chi_m(-omega, wm) - std::conj(chi_m(omega, wm)));
                const double lhs =
                    2.0 * std::imag(G * std::conj(cc) * s_gx) /
                    (sqrt_kext * G * G * std::norm(cc));
                const double n = vp.n_eff();
                const double beta = vp.mech().beta;
                const double sxx_fwd = (n + beta) * std::norm(chi_m(omega, wm)) +
                                       n * std::norm(chi_m(-omega, wm));
                const double sxx_rev = (n + beta) * std::norm(chi_m(-omega, wm)) +
                                       n * std::norm(chi_m(omega, wm));
                const double rhs = sxx_fwd - sxx_rev;
                out.commutator_residual = std::max(
                    out.commutator_residual,
                    std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
        }
    }
    return out;
}

} // namespace hetspec
