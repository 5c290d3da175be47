#include "collab/growth_dynamics.hpp"

#include "collab/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace collab {

namespace {

GrowthState axpy(const GrowthState& s, double h, const GrowthState& d)
{
    return {s.x + h * d.x, s.S + h * d.S, s.F + h * d.F};
}

double percent_foreign(double F, double x)
{
    return 100.0 * F / x;
}

} // namespace

void validate(const ModelParams& params)
{
    auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidParameter, msg); };
    if (!(params.x0 > 0.0) || !std::isfinite(params.x0)) {
        bad(fmt::format("x0 must be positive, got {}", params.x0));
    }
    if (!(params.p0 >= 0.0 && params.p0 <= 1.0)) {
        bad(fmt::format("p0 must lie in [0, 1], got {}", params.p0));
    }
    if (!(params.alpha >= 0.0) || !(params.beta >= 0.0) || !(params.y0 >= 0.0) || !std::isfinite(params.alpha) ||
        !std::isfinite(params.beta) || !std::isfinite(params.y0)) {
        bad("alpha, beta and y0 must be finite and nonnegative");
    }
}

GrowthState derivatives(const GrowthState& state, const ModelParams& params)
{
    const double self = params.alpha * state.x;
    const double foreign = params.beta * state.x * params.y0;
    return {self + foreign, self, foreign};
}

TrajectoryPoint step_rk4(const TrajectoryPoint& point, const ModelParams& params, double dt)
{
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::NonPositiveStep, fmt::format("step must be positive, got {}", dt));
    }
    const GrowthState s{point.x, point.S, point.F};
    const auto k1 = derivatives(s, params);
    const auto k2 = derivatives(axpy(s, 0.5 * dt, k1), params);
    const auto k3 = derivatives(axpy(s, 0.5 * dt, k2), params);
    const auto k4 = derivatives(axpy(s, dt, k3), params);
    auto combine = [dt](double v, double a, double b, double c, double d) {
        return v + dt / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    };

    TrajectoryPoint next;
    next.t = point.t + dt;
    next.x = combine(s.x, k1.x, k2.x, k3.x, k4.x);
    next.S = combine(s.S, k1.S, k2.S, k3.S, k4.S);
    next.F = combine(s.F, k1.F, k2.F, k3.F, k4.F);
    next.y = point.y;
    next.pct_foreign = percent_foreign(next.F, next.x);
    return next;
}

TrajectoryPoint initial_point(const ModelParams& params)
{
    TrajectoryPoint p;
    p.t = 0.0;
    p.x = params.x0;
    p.F = params.p0 * params.x0;
    p.S = (1.0 - params.p0) * params.x0;
    p.y = params.y0;
    p.pct_foreign = percent_foreign(p.F, p.x);
    return p;
}

double closed_form_x(const ModelParams& params, double t)
{
    return params.x0 * std::exp(params.rate() * t);
}

double closed_form_foreign(const ModelParams& params, double t)
{
    const double r = params.rate();
    const double start = params.p0 * params.x0;
    if (r <= 0.0) {
        return start;
    }
    return start + params.beta * params.y0 / r * params.x0 * std::expm1(r * t);
}

Trajectory simulate(const ModelParams& params, double t_end, double dt)
{
    validate(params);
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw Error(ErrorCode::NonPositiveHorizon, fmt::format("t_end must be positive, got {}", t_end));
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorCode::NonPositiveStep, fmt::format("dt must be positive, got {}", dt));
    }
    if (dt > t_end) {
        throw Error(ErrorCode::NonPositiveStep, fmt::format("dt ({}) exceeds t_end ({})", dt, t_end));
    }

    Trajectory traj{params, dt, {}};
    // grid times are i*dt rather than accumulated sums; a final step shorter
    // than 1e-9*dt would only be rounding noise, so it is folded in
    const double n_float = t_end / dt;
    auto n_full = static_cast<std::size_t>(std::floor(n_float));
    if (n_float - static_cast<double>(n_full) < 1e-9) {
        n_full = n_full > 0 ? n_full - 1 : 0;
    }
    traj.points.reserve(n_full + 2);
    traj.points.push_back(initial_point(params));
    for (std::size_t i = 1; i <= n_full; ++i) {
        const double t = static_cast<double>(i) * dt;
        auto next = step_rk4(traj.points.back(), params, t - traj.points.back().t);
        next.t = t;
        traj.points.push_back(next);
    }
    auto last = step_rk4(traj.points.back(), params, t_end - traj.points.back().t);
    last.t = t_end;
    traj.points.push_back(last);
    return traj;
}

std::vector<std::pair<double, double>> fig3_curve(const Trajectory& trajectory)
{
    if (trajectory.points.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "trajectory has no points");
    }
    std::vector<std::pair<double, double>> curve;
    curve.reserve(trajectory.points.size());
    for (const auto& p : trajectory.points) {
        curve.emplace_back(p.S, p.pct_foreign);
    }
    return curve;
}

double foreign_share_asymptote(const ModelParams& params)
{
    const double r = params.rate();
    if (!(r > 0.0)) {
        throw Error(ErrorCode::DegenerateRates, "alpha + beta*y0 must be positive");
    }
    return 100.0 * params.beta * params.y0 / r;
}

std::string write_trajectory_csv(const Trajectory& trajectory)
{
    std::string out(kTrajectoryCsvHeader);
    out += '\n';
    for (const auto& p : trajectory.points) {
        out += fmt::format("{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", p.t, p.x, p.S, p.F, p.y, p.pct_foreign);
    }
    return out;
}

std::string write_fig3_csv(const std::vector<std::pair<double, double>>& curve)
{
    std::string out(kFig3CsvHeader);
    out += '\n';
    for (const auto& [self, pct] : curve) {
        out += fmt::format("{:.9g},{:.9g}\n", self, pct);
    }
    return out;
}

} // namespace collab
