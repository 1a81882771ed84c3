#include "fluxheat/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fluxheat/errors.hpp"

namespace fluxheat {

void Grid1D::validate() const {
    if (!(L > 0.0) || !(t_end > 0.0)) throw DomainError("grid: L and t_end must be positive");
    if (nx < 8) throw DomainError("grid: nx must be at least 8");
    if (nt < 1) throw DomainError("grid: nt must be at least 1");
    if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("grid: theta must lie in [0, 1]");
    if (theta < 0.5) {
        const double limit = dx() * dx() / (2.0 * (1.0 - 2.0 * theta));
        if (dt() > limit) {
            std::ostringstream msg;
            msg << "grid: dt = " << dt() << " violates the stability bound dt <= " << limit;
            throw StabilityError(msg.str(), limit);
        }
    }
}

FarFieldPolicy FarFieldPolicy::homogeneous() { return FarFieldPolicy{}; }

FarFieldPolicy FarFieldPolicy::manufactured(std::function<double(double, double)> exact, double L) {
    FarFieldPolicy f;
    f.kind = FarField::Manufactured;
    f.value = [exact = std::move(exact), L](double t) { return exact(L, t); };
    return f;
}

FarFieldPolicy FarFieldPolicy::manufactured(const SolutionField& exact, double L) {
    return manufactured([exact](double x, double t) { return exact.u(x, t); }, L);
}

double discrete_flux(const std::vector<double>& u, const ProblemSpec& spec, double dx, FluxStencil stencil) {
    if (spec.variant == Variant::PTilde) return u[0];
    if (stencil == FluxStencil::FirstOrder) return (u[1] - u[0]) / dx;
    return (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
}

DiscreteField initial_field(const ProblemSpec& spec, const Grid1D& grid, const FdOptions& opts) {
    grid.validate();
    DiscreteField f;
    f.u.resize(grid.nx + 1);
    const double dx = grid.dx();
    for (int i = 0; i <= grid.nx; ++i) f.u[i] = spec.h(i * dx);
    if (spec.variant == Variant::P) f.u[0] = 0.0;
    f.flux = discrete_flux(f.u, spec, dx, opts.stencil);
    f.source_prev = spec.flux(f.flux, 0.0);
    return f;
}

namespace {

void thomas(std::vector<double>& a, std::vector<double>& b, std::vector<double>& c, std::vector<double>& d) {
    const std::size_t n = d.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    d[n - 1] /= b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
    }
}

// One θ-weighted step of length dt from `s`. `f_src` is the F value multiplying Φ̃.
DiscreteField advance(const DiscreteField& s, const ProblemSpec& spec, const Grid1D& grid, const FarFieldPolicy& far,
                      const FdOptions& opts, double dt, double theta, double f_src) {
    const int nx = grid.nx;
    const double dx = grid.dx();
    const double r = dt / (dx * dx);
    const double t_new = s.t + dt;
    const bool tilde = spec.variant == Variant::PTilde;
    const int first = tilde ? 0 : 1;
    const int n = nx - first;

    std::vector<double> a(n, -r * theta), b(n, 1.0 + 2.0 * r * theta), c(n, -r * theta), d(n);
    const double u_far = far.at(t_new);

    // Neumann data of the tilde problem: v_x(0,t) = Φ(0)F(V,t).
    const double phi0 = spec.phi.base(0.0, 0);
    const double g_old = tilde ? phi0 * spec.flux(s.flux, s.t) : 0.0;
    const double g_new = tilde ? phi0 * spec.flux(s.flux, t_new) : 0.0;

    for (int row = 0; row < n; ++row) {
        const int i = row + first;
        double lap;
        if (tilde && i == 0) {
            lap = 2.0 * (s.u[1] - s.u[0]) - 2.0 * dx * g_old;
        } else {
            lap = s.u[i - 1] - 2.0 * s.u[i] + s.u[i + 1];
        }
        d[row] = s.u[i] + r * (1.0 - theta) * lap - dt * spec.phi(i * dx) * f_src;
    }
    if (tilde) {
        c[0] = -2.0 * r * theta;
        d[0] -= 2.0 * r * theta * dx * g_new;
    }
    d[n - 1] += r * theta * u_far;
    a[0] = 0.0;
    c[n - 1] = 0.0;
    thomas(a, b, c, d);

    DiscreteField out;
    out.u.assign(nx + 1, 0.0);
    for (int row = 0; row < n; ++row) out.u[row + first] = d[row];
    out.u[nx] = u_far;
    out.t = t_new;
    out.flux = discrete_flux(out.u, spec, dx, opts.stencil);
    out.steps = s.steps + 1;
    return out;
}

}  // namespace

DiscreteField step(const DiscreteField& state, const ProblemSpec& spec, const Grid1D& grid, const FarFieldPolicy& far,
                   const FdOptions& opts) {
    const double dt = grid.dt();
    const double f_now = spec.flux(state.flux, state.t);
    DiscreteField out;
    if (state.steps < opts.startup_steps) {
        DiscreteField half = advance(state, spec, grid, far, opts, 0.5 * dt, 1.0, f_now);
        out = advance(half, spec, grid, far, opts, 0.5 * dt, 1.0, spec.flux(half.flux, half.t));
        out.steps = state.steps + 1;
    } else {
        double f_src = f_now;
        if (opts.source_lag == SourceLag::Extrapolated && state.steps > 0) {
            f_src = 1.5 * f_now - 0.5 * state.source_prev;
        }
        out = advance(state, spec, grid, far, opts, dt, grid.theta, f_src);
    }
    out.source_prev = f_now;
    return out;
}

FdResult solve(const ProblemSpec& spec, const Grid1D& grid, const FarFieldPolicy& far, const FdOptions& opts,
               const FdObserver& observer) {
    DiscreteField state = initial_field(spec, grid, opts);
    std::vector<double> times{0.0};
    std::vector<double> flux{state.flux};
    times.reserve(grid.nt + 1);
    flux.reserve(grid.nt + 1);
    if (observer) observer(state);
    for (int n = 0; n < grid.nt; ++n) {
        state = step(state, spec, grid, far, opts);
        state.t = grid.t_end * (n + 1) / grid.nt;
        times.push_back(state.t);
        flux.push_back(state.flux);
        if (observer) observer(state);
    }
    return FdResult{state, FluxTrajectory::sampled(std::move(times), std::move(flux))};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Grid1D> refinement_ladder(const Grid1D& coarsest, int levels) {
    std::vector<Grid1D> out;
    Grid1D g = coarsest;
    for (int k = 0; k < levels; ++k) {
        out.push_back(g);
        g.nx *= 2;
        g.nt *= (g.theta >= 0.5) ? 2 : 4;
    }
    return out;
}

namespace {

double sample(const std::vector<double>& u, double L, double x) {
    const int n = static_cast<int>(u.size()) - 1;
    const double pos = x / L * n;
    const int i = std::clamp(static_cast<int>(std::floor(pos)), 0, n - 1);
    const double w = pos - i;
    return (1.0 - w) * u[i] + w * u[i + 1];
}

}  // namespace

ConvergenceResult convergence_order(const ProblemSpec& spec, const std::vector<Grid1D>& ladder,
                                    const ExactField& reference, const FarFieldPolicy& far, const FdOptions& opts) {
    if (ladder.size() < 3) throw DomainError("convergence_order: need at least 3 grids");
    std::vector<std::vector<double>> finals;
    for (const Grid1D& g : ladder) finals.push_back(solve(spec, g, far, opts).final.u);

    const std::size_t rows = reference ? ladder.size() : ladder.size() - 1;
    const Grid1D& finest = ladder.back();
    ConvergenceResult res;
    std::vector<double> hs, emax, el2;
    for (std::size_t k = 0; k < rows; ++k) {
        const Grid1D& g = ladder[k];
        const double dx = g.dx();
        double m = 0.0, s2 = 0.0;
        for (int i = 0; i <= g.nx; ++i) {
            const double x = i * dx;
            const double ref = reference ? reference(x, g.t_end) : sample(finals.back(), finest.L, x);
            const double e = std::abs(finals[k][i] - ref);
            m = std::max(m, e);
            s2 += e * e * dx;
        }
        ConvergenceRow row{dx, g.dt(), m, std::sqrt(s2)};
        res.rows.push_back(row);
        hs.push_back(dx);
        emax.push_back(std::max(m, 1e-300));
        el2.push_back(std::max(row.err_l2, 1e-300));
    }
    for (std::size_t k = 1; k < res.rows.size(); ++k) {
        if (!(res.rows[k].err_max < res.rows[k - 1].err_max)) res.monotone = false;
    }
    if (hs.size() >= 2) {
        res.order_max = loglog_slope(hs, emax);
        res.order_l2 = loglog_slope(hs, el2);
    }
    return res;
}

}  // namespace fluxheat
