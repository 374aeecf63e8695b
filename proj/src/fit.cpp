#include "hetspec/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace hetspec {

namespace {

// theta = (a_r, h_r, a_b, h_b, w0, g)
struct Design {
    const SidebandData& data;

    static double L(double w, double w0, double g) {
        const double hw = g / 2.0;
        const double d = w - w0;
        return hw * hw / (hw * hw + d * d);
    }
    // dL/dw0 = 2 (w - w0) L^2 / (g/2)^2 ; dL/dg = 2 L (1 - L) / g
    static void dL(double w, double w0, double g, double& dw0, double& dg) {
        const double hw = g / 2.0;
        const double l = L(w, w0, g);
        dw0 = 2.0 * (w - w0) * l * l / (hw * hw);
        dg = 2.0 * l * (1.0 - l) / g;
    }

    std::size_t rows() const { return data.grid_r.size() + data.grid_b.size(); }

    void fill(const Eigen::VectorXd& th, Eigen::VectorXd& r, Eigen::MatrixXd& J) const {
        const double w0 = th[4], g = th[5];
        std::size_t row = 0;
        for (int side = 0; side < 2; ++side) {
            const auto& grid = side == 0 ? data.grid_r : data.grid_b;
            const auto& y = side == 0 ? data.S_rr : data.S_bb;
            const auto& se = side == 0 ? data.se_r : data.se_b;
            const int ia = side == 0 ? 0 : 2;
            const int ih_main = side == 0 ? 1 : 3;
            const int ih_img = side == 0 ? 3 : 1;
            for (std::size_t k = 0; k < grid.size(); ++k, ++row) {
                const double w = grid[k];
                const double weight = se.empty() ? 1.0 : 1.0 / se[k];
                const double lm = L(w, w0, g);
                const double li = L(-w, w0, g);
                const double model = th[ia] + th[ih_main] * lm + th[ih_img] * li;
                r[row] = weight * (model - y[k]);
                J.row(row).setZero();
                J(row, ia) = weight;
                J(row, ih_main) = weight * lm;
                J(row, ih_img) = weight * li;
                double dmw0, dmg, diw0, dig;
                dL(w, w0, g, dmw0, dmg);
                dL(-w, w0, g, diw0, dig);
                J(row, 4) = weight * (th[ih_main] * dmw0 + th[ih_img] * diw0);
                J(row, 5) = weight * (th[ih_main] * dmg + th[ih_img] * dig);
            }
        }
    }
};

double edge_mean(const std::vector<double>& y) {
    const std::size_t n = y.size();
    const std::size_t m = std::max<std::size_t>(1, n / 10);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += y[k] + y[n - 1 - k];
    return sum / static_cast<double>(2 * m);
}

} // namespace

ThermometryReport fit_thermometry(const SidebandData& data, const FitOptions& opt) {
    const std::size_t nr = data.grid_r.size(), nb = data.grid_b.size();
    if (nr < 8 || nb < 8)
        throw DegenerateFit("need at least 8 bins per sideband");
    if (nr != data.S_rr.size() || nb != data.S_bb.size())
        throw GridMismatch("sideband grid/value lengths differ");

    // grid-scan initialization: floor from window edges, center from the
    // largest excursion on the red side, width from its FWHM bin count
    const double a_r0 = edge_mean(data.S_rr);
    const double a_b0 = edge_mean(data.S_bb);
    std::size_t peak = 0;
    for (std::size_t k = 0; k < nr; ++k)
        if (std::abs(data.S_rr[k] - a_r0) > std::abs(data.S_rr[peak] - a_r0)) peak = k;
    const double h_r0 = data.S_rr[peak] - a_r0;
    if (h_r0 == 0.0)
        throw DegenerateFit("no excursion above the floor; peak unconstrained");
    const double w00 = data.grid_r[peak];
    std::size_t above = 0;
    for (std::size_t k = 0; k < nr; ++k)
        if (std::abs(data.S_rr[k] - a_r0) >= std::abs(h_r0) / 2.0) ++above;
    const double dw = nr > 1 ? (data.grid_r.back() - data.grid_r.front()) /
                               static_cast<double>(nr - 1) : 1.0;
    double g0 = std::max(dw, static_cast<double>(above) * dw);
    std::size_t near_b = 0;
    for (std::size_t k = 0; k < nb; ++k)
        if (std::abs(data.grid_b[k] - w00) < std::abs(data.grid_b[near_b] - w00)) near_b = k;
    const double h_b0 = data.S_bb[near_b] - a_b0;

    Eigen::VectorXd th(6);
    th << a_r0, h_r0, a_b0, h_b0, w00, g0;

    const Design design{data};
    const std::size_t m = design.rows();
    Eigen::VectorXd r(m);
    Eigen::MatrixXd J(m, 6);
    design.fill(th, r, J);
    double chi2 = r.squaredNorm();

    double mu = 1e-3;
    bool converged = false;
    for (int it = 0; it < opt.max_iterations; ++it) {
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd Jtr = J.transpose() * r;
        Eigen::MatrixXd damped = JtJ;
        damped.diagonal() += mu * JtJ.diagonal();
        const Eigen::VectorXd step = damped.ldlt().solve(-Jtr);
        if (!step.allFinite())
            throw DegenerateFit("singular normal equations");
        Eigen::VectorXd trial = th + step;
        if (trial[5] <= 0.0) trial[5] = th[5] / 2.0;  // keep width positive
        Eigen::VectorXd r_trial(m);
        Eigen::MatrixXd J_trial(m, 6);
        design.fill(trial, r_trial, J_trial);
        const double chi2_trial = r_trial.squaredNorm();
        if (chi2_trial <= chi2) {
            const double rel_step = step.cwiseAbs().maxCoeff() /
                                    (1.0 + th.cwiseAbs().maxCoeff());
            const double rel_drop = (chi2 - chi2_trial) / (chi2 + 1e-300);
            th = trial;
            r.swap(r_trial);
            J.swap(J_trial);
            chi2 = chi2_trial;
            mu = std::max(mu / 3.0, 1e-14);
            if (rel_step < opt.tolerance || rel_drop < opt.tolerance) {
                converged = true;
                break;
            }
        } else {
            mu *= 4.0;
            if (mu > 1e12) {
                converged = true;  // stalled at a (possibly flat) minimum
                break;
            }
        }
    }
    if (!converged) throw NoConvergence("thermometry fit did not settle");

    // linear-parameter covariance; for unit weights scale by chi^2/dof
    Eigen::MatrixXd cov = (J.transpose() * J).inverse();
    if (data.se_r.empty()) {
        const double dof = static_cast<double>(m) - 6.0;
        cov *= dof > 0.0 ? chi2 / dof : 0.0;
    }

    ThermometryReport rep;
    rep.floor = 0.5 * (th[0] + th[2]);
    rep.h_r = th[1];
    rep.h_b = th[3];
    rep.h_r_err = std::sqrt(std::max(0.0, cov(1, 1)));
    rep.h_b_err = std::sqrt(std::max(0.0, cov(3, 3)));
    rep.omega_m_fit = th[4];
    rep.gamma_fit = th[5];
    rep.delta_ratio = (rep.h_r - rep.h_b) / rep.floor;
    rep.squashing = rep.h_b < 0.0;
    rep.ratio_method_n = rep.h_r > rep.h_b ? rep.h_b / (rep.h_r - rep.h_b) : 0.0;
    return rep;
}

void apply_floor_method(ThermometryReport& report, double p, double kappa_bar_ext) {
    report.floor_method_n = report.h_b / (report.floor * 4.0 * p * kappa_bar_ext);
}

} // namespace hetspec
