#include "rlab/euler2d.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rlab/rearrange.hpp"

namespace rlab {

static constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// VorticityField

double VorticityField::mass() const {
    double acc = 0.0;
    for (double v : vals) acc += v;
    return acc * cell_area();
}

double VorticityField::momentum_x2() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < N2; ++j) {
        double row = 0.0;
        for (std::size_t i = 0; i < N1; ++i) row += at(i, j);
        acc += row * x2(j);
    }
    return acc * cell_area();
}

AtomicFunction VorticityField::to_atoms(const CarrierPtr& carrier, double clamp_tol) const {
    if (carrier->size() != vals.size())
        throw std::invalid_argument("VorticityField::to_atoms: carrier size mismatch");
    double vmax = 0.0;
    for (double v : vals) vmax = std::max(vmax, v);
    std::vector<double> cl(vals.size());
    for (std::size_t k = 0; k < vals.size(); ++k) {
        double v = vals[k];
        if (v < 0.0) {
            if (v < -clamp_tol * std::max(vmax, 1.0))
                throw std::invalid_argument("VorticityField::to_atoms: genuinely negative value");
            v = 0.0;
        }
        cl[k] = v;
    }
    return AtomicFunction(carrier, std::move(cl));
}

VorticityField shear_field(std::size_t N1, std::size_t N2, double L1, double L2,
                           const std::function<double(double)>& F_of_x2) {
    VorticityField f;
    f.N1 = N1;
    f.N2 = N2;
    f.L1 = L1;
    f.L2 = L2;
    f.vals.resize(N1 * N2);
    for (std::size_t j = 0; j < N2; ++j) {
        double v = F_of_x2(f.x2(j));
        if (!(v >= 0.0)) throw std::invalid_argument("shear_field: profile must be nonnegative");
        for (std::size_t i = 0; i < N1; ++i) f.at(i, j) = v;
    }
    return f;
}

// ---------------------------------------------------------------------------
// StripSpectral

struct StripSpectral::Impl {
    std::size_t N1, N2;
    double L1, L2;
    mutable std::vector<double> buf;
    fftw_plan x1_fwd = nullptr, x1_inv = nullptr;
    fftw_plan sin_fwd = nullptr, sin_inv = nullptr;
    fftw_plan cos_fwd = nullptr, cos_inv = nullptr;

    Impl(std::size_t n1, std::size_t n2, double l1, double l2)
        : N1(n1), N2(n2), L1(l1), L2(l2), buf(n1 * n2) {
        int in1 = static_cast<int>(N1), in2 = static_cast<int>(N2);
        double* p = buf.data();
        fftw_r2r_kind k;
        k = FFTW_R2HC;
        x1_fwd = fftw_plan_many_r2r(1, &in1, in2, p, nullptr, 1, in1, p, nullptr, 1, in1, &k,
                                    FFTW_ESTIMATE);
        k = FFTW_HC2R;
        x1_inv = fftw_plan_many_r2r(1, &in1, in2, p, nullptr, 1, in1, p, nullptr, 1, in1, &k,
                                    FFTW_ESTIMATE);
        k = FFTW_RODFT10;
        sin_fwd = fftw_plan_many_r2r(1, &in2, in1, p, nullptr, in1, 1, p, nullptr, in1, 1, &k,
                                     FFTW_ESTIMATE);
        k = FFTW_RODFT01;
        sin_inv = fftw_plan_many_r2r(1, &in2, in1, p, nullptr, in1, 1, p, nullptr, in1, 1, &k,
                                     FFTW_ESTIMATE);
        k = FFTW_REDFT10;
        cos_fwd = fftw_plan_many_r2r(1, &in2, in1, p, nullptr, in1, 1, p, nullptr, in1, 1, &k,
                                     FFTW_ESTIMATE);
        k = FFTW_REDFT01;
        cos_inv = fftw_plan_many_r2r(1, &in2, in1, p, nullptr, in1, 1, p, nullptr, in1, 1, &k,
                                     FFTW_ESTIMATE);
    }
    ~Impl() {
        for (fftw_plan pl : {x1_fwd, x1_inv, sin_fwd, sin_inv, cos_fwd, cos_inv})
            if (pl) fftw_destroy_plan(pl);
    }

    void run(fftw_plan pl, std::vector<double>& f) const {
        std::copy(f.begin(), f.end(), buf.begin());
        fftw_execute_r2r(pl, buf.data(), buf.data());
        std::copy(buf.begin(), buf.end(), f.begin());
    }

    // raw spectral array: x1 halfcomplex x x2 sine modes
    std::vector<double> omega_hat(const std::vector<double>& vals) const {
        std::vector<double> w = vals;
        run(x1_fwd, w);
        run(sin_fwd, w);
        return w;
    }

    double lambda(std::size_t i, std::size_t n) const {
        std::size_t k = (2 * i <= N1) ? i : N1 - i;
        double kx = 2.0 * kPi * static_cast<double>(k) / L1;
        double kn = (static_cast<double>(n) + 1.0) * kPi / L2;
        return kx * kx + kn * kn;
    }

    // d/dx1 on the halfcomplex layout, in place; DC and Nyquist go to zero
    void dx1(std::vector<double>& w) const {
        for (std::size_t n = 0; n < N2; ++n) {
            double* row = w.data() + n * N1;
            row[0] = 0.0;
            for (std::size_t k = 1; 2 * k < N1; ++k) {
                double kx = 2.0 * kPi * static_cast<double>(k) / L1;
                double re = row[k], im = row[N1 - k];
                row[k] = -kx * im;
                row[N1 - k] = kx * re;
            }
            if (N1 % 2 == 0) row[N1 / 2] = 0.0;
        }
    }

    // sine modes -> cosine modes of the x2-derivative: cos_m = sin_{m-1} * m pi / (2 N2 L2)
    // (folds the sine round-trip normalization; pair with cos_inv then /N1)
    std::vector<double> sine_to_cos_derivative(const std::vector<double>& s) const {
        std::vector<double> c(N1 * N2, 0.0);
        for (std::size_t m = 1; m < N2; ++m) {
            double fac = static_cast<double>(m) * kPi / (2.0 * static_cast<double>(N2) * L2);
            for (std::size_t i = 0; i < N1; ++i) c[m * N1 + i] = s[(m - 1) * N1 + i] * fac;
        }
        return c;
    }

    void dealias(std::vector<double>& w) const {
        std::size_t kcut = N1 / 3;
        std::size_t ncut = (2 * N2) / 3;
        for (std::size_t n = 0; n < N2; ++n) {
            double* row = w.data() + n * N1;
            for (std::size_t i = 0; i < N1; ++i) {
                std::size_t k = (2 * i <= N1) ? i : N1 - i;
                if (k > kcut || n >= ncut) row[i] = 0.0;
            }
        }
    }

    std::vector<double> back_sine(std::vector<double> w) const {
        run(sin_inv, w);
        run(x1_inv, w);
        double s = 1.0 / (static_cast<double>(N1) * 2.0 * static_cast<double>(N2));
        for (double& v : w) v *= s;
        return w;
    }

    std::vector<double> back_cos_prenormalized(std::vector<double> w) const {
        // used after sine_to_cos_derivative, which already folded 1/(2 N2)
        run(cos_inv, w);
        run(x1_inv, w);
        double s = 1.0 / static_cast<double>(N1);
        for (double& v : w) v *= s;
        return w;
    }

    std::vector<double> back_cos(std::vector<double> w) const {
        run(cos_inv, w);
        run(x1_inv, w);
        double s = 1.0 / (static_cast<double>(N1) * 2.0 * static_cast<double>(N2));
        for (double& v : w) v *= s;
        return w;
    }
};

StripSpectral::StripSpectral(std::size_t N1, std::size_t N2, double L1, double L2)
    : impl_(std::make_unique<Impl>(N1, N2, L1, L2)) {
    if (N1 < 4 || N2 < 4) throw std::invalid_argument("StripSpectral: grid too small");
}

StripSpectral::~StripSpectral() = default;

StreamSolution StripSpectral::solve(const VorticityField& omega) const {
    const Impl& im = *impl_;
    std::vector<double> what = im.omega_hat(omega.vals);
    std::vector<double> psi_hat(what.size());
    for (std::size_t n = 0; n < im.N2; ++n)
        for (std::size_t i = 0; i < im.N1; ++i)
            psi_hat[n * im.N1 + i] = what[n * im.N1 + i] / im.lambda(i, n);

    StreamSolution out;
    out.psi = im.back_sine(psi_hat);

    std::vector<double> u_hat = im.sine_to_cos_derivative(psi_hat);
    for (double& v : u_hat) v = -v;
    out.u = im.back_cos_prenormalized(std::move(u_hat));

    std::vector<double> v_hat = psi_hat;
    im.dx1(v_hat);
    out.v = im.back_sine(std::move(v_hat));

    for (double v : out.u) out.max_u = std::max(out.max_u, std::abs(v));
    for (double v : out.v) out.max_v = std::max(out.max_v, std::abs(v));
    return out;
}

void StripSpectral::tendency(const VorticityField& omega, std::vector<double>& out) const {
    const Impl& im = *impl_;
    StreamSolution s = solve(omega);
    const std::size_t n = im.N1 * im.N2;
    std::vector<double> fu(n), fv(n);
    for (std::size_t k = 0; k < n; ++k) {
        fu[k] = s.u[k] * omega.vals[k];
        fv[k] = s.v[k] * omega.vals[k];
    }
    // d/dx1 (u omega): cosine expansion in x2 (even extension, no wall jump)
    im.run(im.x1_fwd, fu);
    im.run(im.cos_fwd, fu);
    im.dealias(fu);
    im.dx1(fu);
    std::vector<double> a = im.back_cos(std::move(fu));
    // d/dx2 (v omega): sine expansion (the flux vanishes at the walls)
    im.run(im.x1_fwd, fv);
    im.run(im.sin_fwd, fv);
    im.dealias(fv);
    std::vector<double> b = im.back_cos_prenormalized(im.sine_to_cos_derivative(fv));
    out.resize(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = -(a[k] + b[k]);
}

double StripSpectral::kinetic_energy(const VorticityField& omega) const {
    StreamSolution s = solve(omega);
    double acc = 0.0;
    for (std::size_t k = 0; k < s.u.size(); ++k) acc += s.u[k] * s.u[k] + s.v[k] * s.v[k];
    return 0.5 * acc * omega.cell_area();
}

StripTrajectory evolve_strip(const VorticityField& omega0, double T, double dt,
                             std::size_t sample_every, double cfl_limit) {
    if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("evolve_strip: T, dt > 0");
    StripSpectral sp(omega0.N1, omega0.N2, omega0.L1, omega0.L2);
    const double dx = omega0.L1 / omega0.N1;
    const double dy = omega0.L2 / omega0.N2;

    CarrierPtr carrier = make_rect_grid(omega0.N1, omega0.N2, omega0.L1, omega0.L2);
    StepProfile mu0 = mu_of(omega0.to_atoms(carrier));
    const double mass0 = omega0.mass();
    const double mom0 = omega0.momentum_x2();

    StripTrajectory traj;
    traj.dt = dt;
    VorticityField w = omega0;
    std::vector<double> k1, k2, k3, k4;
    VorticityField tmp = omega0;

    auto push_sample = [&](double t) {
        StripSample s;
        s.t = t;
        s.omega = w;
        s.mass = w.mass();
        s.momentum = w.momentum_x2();
        s.mass_drift = std::abs(s.mass - mass0) / std::max(std::abs(mass0), 1e-300);
        s.momentum_drift = std::abs(s.momentum - mom0) / std::max(std::abs(mom0), 1e-300);
        StepProfile mu_t = mu_of(w.to_atoms(carrier));
        double hi = 0.0;
        if (!mu0.empty()) hi = std::max(hi, mu0.max_breakpoint());
        if (!mu_t.empty()) hi = std::max(hi, mu_t.max_breakpoint());
        double l1 = StepProfile::integrate_combined(
            mu0, mu_t, [](double a, double b) { return std::abs(a - b); }, 0.0, hi);
        s.mu_drift = l1 / std::max(mass0, 1e-300);
        traj.samples.push_back(std::move(s));
    };

    push_sample(0.0);
    const std::size_t steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
    for (std::size_t step = 0; step < steps; ++step) {
        // CFL check on the current velocity field
        StreamSolution vel = sp.solve(w);
        double cfl = dt * (vel.max_u / dx + vel.max_v / dy);
        traj.cfl_max = std::max(traj.cfl_max, cfl);
        if (cfl > cfl_limit)
            throw std::runtime_error("evolve_strip: CFL violation, number = " +
                                     std::to_string(cfl));
        sp.tendency(w, k1);
        for (std::size_t i = 0; i < w.vals.size(); ++i)
            tmp.vals[i] = w.vals[i] + 0.5 * dt * k1[i];
        sp.tendency(tmp, k2);
        for (std::size_t i = 0; i < w.vals.size(); ++i)
            tmp.vals[i] = w.vals[i] + 0.5 * dt * k2[i];
        sp.tendency(tmp, k3);
        for (std::size_t i = 0; i < w.vals.size(); ++i) tmp.vals[i] = w.vals[i] + dt * k3[i];
        sp.tendency(tmp, k4);
        for (std::size_t i = 0; i < w.vals.size(); ++i)
            w.vals[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        ++traj.steps;
        if ((step + 1) % sample_every == 0 || step + 1 == steps)
            push_sample(static_cast<double>(step + 1) * dt);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Radial disc

RadialDiscMesh RadialDiscMesh::equal_area(std::size_t n, double R) {
    RadialDiscMesh m;
    m.R = R;
    m.edges = disc_shell_edges(n, R);
    return m;
}

double RadialDiscMesh::shell_area(std::size_t i) const {
    return kPi * (edges[i + 1] * edges[i + 1] - edges[i] * edges[i]);
}

RadialStream poisson_disc_radial(const RadialDiscMesh& mesh, const std::vector<double>& omega) {
    const std::size_t n = mesh.shells();
    if (omega.size() != n) throw std::invalid_argument("poisson_disc_radial: size mismatch");
    RadialStream out;
    out.mass_pref.resize(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double a = mesh.edges[i], b = mesh.edges[i + 1];
        out.mass_pref[i + 1] = out.mass_pref[i] + 0.5 * omega[i] * (b * b - a * a);
    }
    // psi(r) inside shell i: psi(b_i) + C_i ln(b_i / r) + w_i (b_i^2 - r^2)/4,
    // with C_i = M_i - w_i a_i^2 / 2   (M_i = mass_pref at the left edge)
    out.psi_edge.assign(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double a = mesh.edges[i], b = mesh.edges[i + 1];
        double C = out.mass_pref[i] - 0.5 * omega[i] * a * a;
        double seg = 0.25 * omega[i] * (b * b - a * a);
        if (a > 0.0) seg += C * std::log(b / a);
        out.psi_edge[i] = out.psi_edge[i + 1] + seg;
    }
    out.psi_center = out.psi_edge[0];

    auto psi_at = [&](std::size_t i, double r) {
        double a = mesh.edges[i], b = mesh.edges[i + 1];
        double C = out.mass_pref[i] - 0.5 * omega[i] * a * a;
        double v = out.psi_edge[i + 1] + 0.25 * omega[i] * (b * b - r * r);
        if (r > 0.0) v += C * std::log(b / r);
        return v;
    };

    // shell averages by 4-point Gauss on int psi(r) r dr (psi is smooth within
    // a shell; the log term is well resolved since a > 0 there)
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                 0.3478548451374538};
    out.psi_avg.resize(n);
    out.psi_omega = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = mesh.edges[i], b = mesh.edges[i + 1];
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (int q = 0; q < 4; ++q) {
            double r = mid + half * gx[q];
            acc += gw[q] * psi_at(i, r) * r;
        }
        acc *= half * 2.0 * kPi;  // integral of psi over the shell
        out.psi_avg[i] = acc / mesh.shell_area(i);
        out.psi_omega += acc * omega[i];
    }

    // exact gradient energy: int_0^R (M(r)/r)^2 2 pi r dr with M = C + D r^2
    out.grad_energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = mesh.edges[i], b = mesh.edges[i + 1];
        double C = out.mass_pref[i] - 0.5 * omega[i] * a * a;
        double D = 0.5 * omega[i];
        double seg = C * D * (b * b - a * a) + 0.25 * D * D * (b * b * b * b - a * a * a * a);
        if (a > 0.0) seg += C * C * std::log(b / a);
        out.grad_energy += 2.0 * kPi * seg;
    }
    return out;
}

double psi_r2_at(const RadialDiscMesh& mesh, const std::vector<double>& omega, double r) {
    const std::size_t n = mesh.shells();
    // psi(r) = -( ln(r) M(r) + int_r^R ln(rho) omega rho d rho ), M(r) = int_0^r s omega ds
    double M = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = mesh.edges[i], b = mesh.edges[i + 1];
        auto prim = [](double x) { return x > 0.0 ? 0.5 * x * x * std::log(x) - 0.25 * x * x : 0.0; };
        if (b <= r) {
            M += 0.5 * omega[i] * (b * b - a * a);
        } else if (a >= r) {
            tail += omega[i] * (prim(b) - prim(a));
        } else {
            M += 0.5 * omega[i] * (r * r - a * a);
            tail += omega[i] * (prim(b) - prim(r));
        }
    }
    return -(std::log(std::max(r, 1e-300)) * M + tail);
}

double radial_grad_energy_diff(const RadialDiscMesh& mesh, const std::vector<double>& omega_a,
                               const std::vector<double>& omega_b) {
    const std::size_t n = mesh.shells();
    double acc = 0.0;
    double Mi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = mesh.edges[i], b = mesh.edges[i + 1];
        double dw = omega_a[i] - omega_b[i];
        double C = Mi - 0.5 * dw * a * a;
        double D = 0.5 * dw;
        double seg = C * D * (b * b - a * a) + 0.25 * D * D * (b * b * b * b - a * a * a * a);
        if (a > 0.0) seg += C * C * std::log(b / a);
        acc += 2.0 * kPi * seg;
        Mi += 0.5 * dw * (b * b - a * a);
    }
    return acc;
}

Momenta momentum_functionals(const VorticityField& omega) {
    Momenta m;
    const double area = omega.cell_area();
    for (std::size_t j = 0; j < omega.N2; ++j)
        for (std::size_t i = 0; i < omega.N1; ++i) {
            double x1 = omega.x1(i), x2 = omega.x2(j), w = omega.at(i, j);
            m.A += (x1 * x1 + x2 * x2) * w * area;
            m.B += x2 * w * area;
        }
    StripSpectral sp(omega.N1, omega.N2, omega.L1, omega.L2);
    StreamSolution s = sp.solve(omega);
    double pw = 0.0;
    for (std::size_t k = 0; k < s.psi.size(); ++k) pw += s.psi[k] * omega.vals[k];
    m.H = 0.5 * pw * area;
    m.H_grad = sp.kinetic_energy(omega);
    return m;
}

Momenta momentum_functionals_disc(const RadialDiscMesh& mesh, const std::vector<double>& omega) {
    Momenta m;
    const std::size_t n = mesh.shells();
    if (omega.size() != n) throw std::invalid_argument("momentum_functionals_disc: size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        double a = mesh.edges[i], b = mesh.edges[i + 1];
        double sig = 0.5 * (a * a + b * b);  // exact shell average of |x|^2
        m.A += sig * omega[i] * mesh.shell_area(i);
    }
    RadialStream rs = poisson_disc_radial(mesh, omega);
    m.H = 0.5 * rs.psi_omega;
    m.H_grad = 0.5 * rs.grad_energy;
    return m;
}

// ---------------------------------------------------------------------------
// Certificates

Certificate certify_euler_symmetric(const AtomicFunction& omega_in,
                                    const AtomicFunction& omega_t, const AtomicFunction& q,
                                    EulerSteadyKind kind) {
    if (!omega_in.co_atomic_with(q) || !omega_t.co_atomic_with(q))
        throw std::invalid_argument("certify_euler_symmetric: carriers must match");
    const Domain& dom = q.carrier()->domain;
    Certificate c;
    double constant = 0.0, beta_coeff = 0.0;
    std::vector<double> sig(q.size());
    const Carrier& car = *q.carrier();
    if (kind == EulerSteadyKind::Radial) {
        if (dom.kind != Domain::Kind::Disc)
            throw std::invalid_argument("certify_euler_symmetric: radial kind needs a disc");
        c.inequality_id = "euler_radial";
        constant = 4.0 * kPi * sup_value(q);
        beta_coeff = 2.0 / kPi;
        // |x|^2 shell averages; shell carriers store the mid radius, recover
        // edges from weight = pi (b^2 - a^2)
        for (std::size_t i = 0; i < car.size(); ++i) {
            double rm = car.pos[i][0];
            double w = car.weight[i];
            // a = rm - h, b = rm + h with pi((rm+h)^2-(rm-h)^2) = w
            double h = w / (4.0 * kPi * rm);
            double a = rm - h, b = rm + h;
            sig[i] = 0.5 * (a * a + b * b);
        }
    } else if (kind == EulerSteadyKind::Shear) {
        if (dom.kind != Domain::Kind::Rectangle)
            throw std::invalid_argument("certify_euler_symmetric: shear kind needs a rectangle");
        c.inequality_id = "euler_rectangular";
        constant = 4.0 * dom.L1 * sup_value(q);
        beta_coeff = 2.0 / dom.L1;
        for (std::size_t i = 0; i < car.size(); ++i) sig[i] = car.pos[i][1];
    } else {
        throw std::invalid_argument("certify_euler_symmetric: kind must be Radial or Shear");
    }

    const double l1_dist = l1_distance(omega_t, q);
    const double nq = l1_norm(q);
    const double nin = l1_norm(omega_in);
    const double base = l1_dist + nq - nin;
    c.lhs = base * base;

    double energy = 0.0;
    for (std::size_t i = 0; i < car.size(); ++i)
        energy += car.weight[i] * sig[i] * (omega_in.value(i) - q.value(i));

    StepProfile mu_q = mu_of(q);
    StepProfile mu_in = mu_of(omega_in);
    double hi = 0.0;
    if (!mu_q.empty()) hi = std::max(hi, mu_q.max_breakpoint());
    if (!mu_in.empty()) hi = std::max(hi, mu_in.max_breakpoint());
    const double mu_beta = StepProfile::integrate_combined(
        mu_in, mu_q,
        [](double mi, double mq) { return mq * std::max(mq - mi, 0.0); }, 0.0, hi);

    c.rhs = constant * (energy + beta_coeff * mu_beta);
    c.slack = c.rhs - c.lhs;
    c.status = status_from_slack(c.lhs, c.rhs);

    c.component("constant", constant);
    if (kind == EulerSteadyKind::Shear)
        c.component("constant_displayed_variant", 4.0 * sup_value(q));
    c.component("sigma_energy", energy);
    c.component("mu_beta_integral", mu_beta);
    c.component("l1_omega_t_q", l1_dist);
    c.component("l1_q", nq);
    c.component("l1_omega_in", nin);
    const double supp_q = mu_q.empty() ? 0.0 : mu_q.max_value();
    c.component("supp_q_measure", supp_q);
    if (supp_q < car.total_weight * (1.0 - 1e-12)) {
        // compact-support variant of the bound
        double shortcut = constant * (energy + beta_coeff * supp_q *
                                                   rearranged_l1_distance(omega_in, q));
        c.component("compact_support_rhs", shortcut);
    }
    if (dom.truncated) c.caveats.push_back("domain truncated");
    return c;
}

SteadyStateEulerDomain build_psi0(const RadialDiscMesh& mesh,
                                  const std::function<double(double)>& F,
                                  double target_residual, std::size_t max_iter,
                                  double relaxation) {
    if (!(F(0.0) > 0.0)) throw std::invalid_argument("build_psi0: F(0) > 0 required");
    const std::size_t n = mesh.shells();
    SteadyStateEulerDomain ss;
    ss.mesh = mesh;
    std::vector<double> omega(n, 0.0);
    // psi^0 = 0 => omega^1 = F(0)
    for (std::size_t i = 0; i < n; ++i) omega[i] = F(0.0);
    RadialStream rs;
    double residual = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < max_iter; ++it) {
        rs = poisson_disc_radial(mesh, omega);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fi = F(rs.psi_avg[i]);
            if (!(fi >= 0.0)) throw std::invalid_argument("build_psi0: F must be nonnegative");
            residual = std::max(residual, std::abs(fi - omega[i]));
            omega[i] += relaxation * (fi - omega[i]);
        }
        ss.residual_history.push_back(residual);
        if (residual < target_residual) break;
    }
    if (!(residual < target_residual))
        throw std::runtime_error("build_psi0: no convergence, residual = " +
                                 std::to_string(residual));
    rs = poisson_disc_radial(mesh, omega);
    ss.omega0 = omega;
    ss.psi0_avg = rs.psi_avg;
    ss.psi0_center = rs.psi_center;
    ss.psi0_sup_atom = *std::max_element(rs.psi_avg.begin(), rs.psi_avg.end());
    ss.H0 = 0.5 * rs.psi_omega;
    ss.carrier = make_disc_shells(n, mesh.R);
    ss.psi0_field = SigmaField::stream_function(ss.carrier, rs.psi_avg);
    ss.Psi0 = b_sigma_curve(ss.psi0_field, 64, /*with_midpoints=*/false);
    return ss;
}

Certificate certify_euler_domain(const AtomicFunction& omega, const SteadyStateEulerDomain& ss) {
    if (!co_atomic(omega.carrier(), ss.carrier))
        throw std::invalid_argument("certify_euler_domain: carrier mismatch");
    Certificate c;
    c.inequality_id = "euler_domain";

    RadialStream rs = poisson_disc_radial(ss.mesh, omega.values());
    const double H = 0.5 * rs.psi_omega;
    AtomicFunction omega0(ss.carrier, ss.omega0);
    const double rearr_dist = rearranged_l1_distance(omega, omega0);
    c.lhs = 0.0;  // certificate convention is "lhs <= rhs": the convexity side is lhs
    const double paper_lhs = H - ss.H0 + ss.psi0_sup_atom * rearr_dist;

    const double grad_diff = radial_grad_energy_diff(ss.mesh, omega.values(), ss.omega0);

    StepProfile mu0 = mu_of(omega0);
    StepProfile beta = beta_of(omega, omega0);  // beta_omega(s) = meas{omega <= s < omega0}
    double hi = 0.0;
    if (!mu0.empty()) hi = std::max(hi, mu0.max_breakpoint());
    if (!beta.empty()) hi = std::max(hi, beta.max_breakpoint());
    const SigmaField& sf = ss.psi0_field;
    const double convexity_term = StepProfile::integrate_combined(
        mu0, beta,
        [&](double m, double b) {
            if (b <= 0.0) return 0.0;
            return sf.B(m + b) + sf.B(std::max(m - b, 0.0)) - 2.0 * sf.B(m);
        },
        0.0, hi);

    const double paper_rhs_half = 0.5 * grad_diff + convexity_term;
    c.lhs = paper_rhs_half;
    c.rhs = paper_lhs;
    c.slack = c.rhs - c.lhs;
    c.status = status_from_slack(c.lhs, c.rhs);

    double min_inc = ss.Psi0.min_slope_increment();
    c.component("H_omega", H);
    c.component("H_omega0", ss.H0);
    c.component("psi0_sup_atom", ss.psi0_sup_atom);
    c.component("psi0_center", ss.psi0_center);
    c.component("rearranged_l1", rearr_dist);
    c.component("grad_energy_diff", grad_diff);
    c.component("convexity_term", convexity_term);
    c.component("c_grad", 0.5);
    c.component("rhs_cgrad_one", grad_diff + convexity_term);
    c.component("cgrad_one_holds",
                (paper_lhs - (grad_diff + convexity_term) >=
                 -1e-9 * std::max({std::abs(paper_lhs), grad_diff + convexity_term, 1.0}))
                    ? 1.0
                    : 0.0);
    c.component("psi0_min_slope_increment", min_inc);
    // alhadra1 identity residual: H - H0 - int psi0 (omega - omega0) - grad/2
    double pairing = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i)
        pairing += omega.weight(i) * ss.psi0_avg[i] * (omega.value(i) - ss.omega0[i]);
    c.component("energy_identity_residual", H - ss.H0 - pairing - 0.5 * grad_diff);
    if (!(min_inc > 1e-12))
        c.caveats.push_back("Psi0 strict convexity not established; non-strict certificate");
    if (sf.tie_mass() > 0.0)
        c.caveats.push_back("psi0 level-set tie mass " + std::to_string(sf.tie_mass()));
    return c;
}

}  // namespace rlab
