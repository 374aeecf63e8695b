#include "hetspec/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hetspec/rng.hpp"

namespace hetspec {

namespace {

// Augmented state over one step:
//   X = [dr, di, cr, ci, int(dr), int(di), dW_e1, dW_e2, dW_l1, dW_l2]
// The integral and increment entries are reset to zero at every step; they
// supply the boxcar average of d and the white parts of d_out exactly, with
// the correct cross-correlation to the state update.
constexpr int kDim = 10;
constexpr int kNoise = 8;  // xi_ext(2), xi_int(2), eta(2), laser(2)

struct Propagator {
    Eigen::Matrix<double, kDim, 4> F;       // propagation of the state block
    Eigen::Matrix<double, kDim, Eigen::Dynamic> L;  // noise factor, rank columns
    Eigen::Matrix<double, 4, 4> sigma_factor;       // stationary state factor
    double se{0.0};        // per-quadrature field-noise amplitude sqrt(alpha)/2
    double sx{0.0}, sxy{0.0}, syy{0.0};  // laser quadrature factors
    double lam_coeff{0.0};               // lambda r sqrt(kappa/kappa_ext)
    double sqrt_kext{0.0};
};

Propagator build_propagator(const ValidatedParams& vp, double dt) {
    const auto& c = vp.cavity();
    const auto& m = vp.mech();
    if (dt > 0.1 / c.kappa) throw StepTooLarge(dt, 0.1 / c.kappa);

    Eigen::Matrix4d A;
    A << -c.kappa / 2.0, -c.Delta, 0.0, 0.0,
         c.Delta, -c.kappa / 2.0, -2.0 * c.G, 0.0,
         0.0, 0.0, -0.5, m.omega_m,
         -2.0 * c.G, 0.0, -m.omega_m, -0.5;
    const Eigen::Vector4cd eig = A.eigenvalues();
    for (int k = 0; k < 4; ++k)
        if (eig[k].real() >= 0.0)
            throw UnstableDrift("drift eigenvalue with Re = " +
                                std::to_string(eig[k].real()));

    Propagator pr;
    pr.se = std::sqrt(vp.noise().alpha) / 2.0;
    pr.sqrt_kext = std::sqrt(c.kappa_ext);
    const double sqrt_kint = std::sqrt(c.kappa - c.kappa_ext);
    double r = 0.0;
    if (vp.noise().laser) {
        const auto& l = *vp.noise().laser;
        r = l.r;
        pr.sx = std::sqrt(l.C_xx);
        pr.sxy = l.C_xx > 0.0 ? l.C_xy / pr.sx : 0.0;
        pr.syy = std::sqrt(std::max(0.0, l.C_yy - pr.sxy * pr.sxy));
    }
    pr.lam_coeff = c.lambda * r * std::sqrt(c.kappa / c.kappa_ext);
    const double sh = std::sqrt((m.n_th + m.beta / 2.0) / 2.0);  // gamma_m = 1
    const double rk2 = r * std::sqrt(c.kappa) / 2.0;

    Eigen::Matrix<double, kDim, kDim> Aa = Eigen::Matrix<double, kDim, kDim>::Zero();
    Aa.topLeftCorner<4, 4>() = A;
    Aa(4, 0) = 1.0;  // d/dt int(dr) = dr
    Aa(5, 1) = 1.0;

    Eigen::Matrix<double, kDim, kNoise> B = Eigen::Matrix<double, kDim, kNoise>::Zero();
    B(0, 0) = pr.sqrt_kext * pr.se;
    B(0, 2) = sqrt_kint * pr.se;
    B(0, 4) = rk2 * pr.sx;
    B(1, 1) = pr.sqrt_kext * pr.se;
    B(1, 3) = sqrt_kint * pr.se;
    B(1, 4) = rk2 * pr.sxy;
    B(1, 5) = rk2 * pr.syy;
    B(2, 6) = sh;
    B(3, 7) = sh;
    B(6, 0) = 1.0;  // raw Wiener increments carried along
    B(7, 1) = 1.0;
    B(8, 4) = 1.0;
    B(9, 5) = 1.0;

    // joint (F, Q) of the exact discretization via the block-exponential
    Eigen::Matrix<double, 2 * kDim, 2 * kDim> M =
        Eigen::Matrix<double, 2 * kDim, 2 * kDim>::Zero();
    M.topLeftCorner<kDim, kDim>() = -Aa * dt;
    M.topRightCorner<kDim, kDim>() = B * B.transpose() * dt;
    M.bottomRightCorner<kDim, kDim>() = Aa.transpose() * dt;
    const Eigen::Matrix<double, 2 * kDim, 2 * kDim> E = M.exp();
    const Eigen::Matrix<double, kDim, kDim> Ffull =
        E.bottomRightCorner<kDim, kDim>().transpose();
    const Eigen::Matrix<double, kDim, kDim> Q =
        Ffull * E.topRightCorner<kDim, kDim>();

    pr.F = Ffull.leftCols<4>();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, kDim, kDim>> es(
        (Q + Q.transpose()) / 2.0);
    const double lmax = es.eigenvalues().maxCoeff();
    int rank = 0;
    for (int k = 0; k < kDim; ++k)
        if (es.eigenvalues()[k] > 1e-14 * lmax) ++rank;
    pr.L.resize(kDim, rank);
    for (int k = kDim - rank, col = 0; k < kDim; ++k, ++col)
        pr.L.col(col) = es.eigenvectors().col(k) *
                        std::sqrt(std::max(0.0, es.eigenvalues()[k]));

    // stationary covariance of the state block: S = F4 S F4' + Q4
    const Eigen::Matrix4d F4 = Ffull.topLeftCorner<4, 4>();
    const Eigen::Matrix4d Q4 = Q.topLeftCorner<4, 4>();
    Eigen::Matrix<double, 16, 16> K = Eigen::Matrix<double, 16, 16>::Identity();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            K.block<4, 4>(4 * i, 4 * j) -= F4(i, j) * F4;
    const Eigen::Matrix<double, 16, 1> q4 =
        Eigen::Map<const Eigen::Matrix<double, 16, 1>>(Q4.data());
    const Eigen::Matrix<double, 16, 1> s = K.partialPivLu().solve(q4);
    Eigen::Matrix4d S = Eigen::Map<const Eigen::Matrix4d>(s.data());
    S = ((S + S.transpose()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es4(S);
    pr.sigma_factor = es4.eigenvectors() *
                      es4.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    return pr;
}

} // namespace

double default_step(const ValidatedParams& vp) {
    return std::min(0.05 / vp.cavity().kappa,
                    2.0 * M_PI / (16.0 * (vp.detector().omega_if + vp.mech().omega_m)));
}

TimeTrace integrate(const ValidatedParams& vp, std::uint64_t seed,
                    double dt, double T_s) {
    const Propagator pr = build_propagator(vp, dt);
    const std::size_t steps = static_cast<std::size_t>(std::llround(T_s / dt));
    if (steps < 16) throw TooFewSamples("T_s/dt = " + std::to_string(steps));

    TimeTrace trace;
    trace.dt = dt;
    trace.T_s = static_cast<double>(steps) * dt;
    trace.x.resize(steps);
    trace.d.resize(steps);
    trace.d_out.resize(steps);

    Rng rng(seed);
    Eigen::Vector4d u;
    {
        Eigen::Vector4d z;
        for (int k = 0; k < 4; ++k) z[k] = rng.next_normal();
        u = pr.sigma_factor * z;
    }

    const int rank = static_cast<int>(pr.L.cols());
    Eigen::VectorXd z(rank);
    Eigen::Matrix<double, kDim, 1> X;
    const double inv_dt = 1.0 / dt;
    for (std::size_t k = 0; k < steps; ++k) {
        for (int j = 0; j < rank; ++j) z[j] = rng.next_normal();
        X.noalias() = pr.F * u;
        X.noalias() += pr.L * z;
        u = X.head<4>();
        trace.x[k] = 2.0 * u[2];
        trace.d[k] = {u[0], u[1]};
        const std::complex<double> dbar{X[4] * inv_dt, X[5] * inv_dt};
        const std::complex<double> xi_bar{pr.se * X[6] * inv_dt, pr.se * X[7] * inv_dt};
        const std::complex<double> zeta_bar{0.5 * pr.sx * X[8] * inv_dt,
                                            0.5 * (pr.sxy * X[8] + pr.syy * X[9]) * inv_dt};
        trace.d_out[k] = pr.sqrt_kext * dbar - xi_bar - pr.lam_coeff * zeta_bar;
    }
    return trace;
}

std::vector<double> synthesize_photocurrent(const TimeTrace& trace,
                                            const DetectorParams& det,
                                            std::uint64_t seed) {
    if (trace.d_out.empty()) throw MissingOutputTrace();
    const std::size_t n = trace.d_out.size();
    std::vector<double> i(n);
    const double amp = 2.0 * std::sqrt(det.Z2);
    // d_out samples are step averages; their timestamp is the step midpoint
    const std::complex<double> rot = std::polar(1.0, det.omega_if * trace.dt);
    std::complex<double> phase = std::polar(1.0, det.omega_if * trace.dt * 0.5);
    for (std::size_t k = 0; k < n; ++k) {
        // Z = i sqrt(Z2): 2 Re(Z e^{iwt} d_out) = -2 sqrt(Z2) Im(e^{iwt} d_out)
        i[k] = -amp * std::imag(phase * trace.d_out[k]);
        phase *= rot;
        if ((k & 0xFFF) == 0xFFF)
            phase = std::polar(1.0, det.omega_if * trace.dt *
                                        (static_cast<double>(k) + 1.5));
    }
    if (det.model == DetectorModel::QUA) {
        Rng rng(derive_seed(seed, 0, /*tag=*/0x51));
        const double sd = std::sqrt(det.Z2 * det.i0_ratio / trace.dt);
        for (std::size_t k = 0; k < n; ++k) i[k] += sd * rng.next_normal();
    }
    return i;
}

McRun run_heterodyne_mc(const ValidatedParams& vp, const McOptions& opt) {
    McRun run;
    run.dt = opt.dt > 0.0 ? opt.dt : default_step(vp);
    run.T_s = opt.T_s;
    run.segments = opt.segments;
    run.seed = opt.seed;

    int threads = opt.threads;
    if (threads <= 0) {
        if (const char* env = std::getenv("HETSPEC_THREADS")) threads = std::atoi(env);
        if (threads <= 0) threads = 1;
    }
    threads = std::min<int>(threads, static_cast<int>(opt.segments));

    struct Partial {
        PsdAccumulator psd;
        double var_sum{0.0};
        std::size_t count{0};
    };
    std::vector<Partial> partials(threads);

    auto worker = [&](int w) {
        Partial& part = partials[w];
        for (std::size_t s = w; s < opt.segments; s += threads) {
            const std::uint64_t seg_seed = derive_seed(opt.seed, s);
            const TimeTrace trace = integrate(vp, seg_seed, run.dt, opt.T_s);
            const std::vector<double> i =
                synthesize_photocurrent(trace, vp.detector(), seg_seed);
            part.psd.add_segment(i, run.dt, opt.window);
            double mean = 0.0, sq = 0.0;
            for (double v : trace.x) mean += v;
            mean /= static_cast<double>(trace.x.size());
            for (double v : trace.x) sq += (v - mean) * (v - mean);
            part.var_sum += sq / static_cast<double>(trace.x.size());
            ++part.count;
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    PsdAccumulator acc;
    double var_sum = 0.0;
    for (const Partial& part : partials) {
        acc.merge(part.psd);
        var_sum += part.var_sum;
    }
    run.psd = acc.finalize();
    run.var_x = var_sum / static_cast<double>(opt.segments);
    run.n_eff_mc = run.var_x / 2.0 - vp.mech().beta / 2.0;

    run.sidebands = extract_sidebands(run.psd, vp.detector().omega_if,
                                      vp.mech().omega_m, opt.window_halfwidth);
    try {
        run.fit = fit_thermometry(run.sidebands);
        apply_floor_method(run.fit, vp.coupling().p, vp.coupling().kappa_bar_ext);
        run.fit_ok = true;
    } catch (const Error&) {
        run.fit_ok = false;
    }
    return run;
}

} // namespace hetspec
