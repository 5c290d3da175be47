#pragma once

#include <string>
#include <utility>
#include <vector>

namespace collab {

/// Rates and initial state of the developing/developed compartment model
///
///   dx/dt = alpha*x + beta*x*y,   dy/dt = 0  (y == y0).
///
/// Growth of x is attributed to two cumulative channels: S (self-driven, the
/// alpha*x term) and F (foreign-driven, the beta*x*y term), so x == S + F.
struct ModelParams {
    double alpha = 0.05;
    double beta = 0.01;
    double y0 = 5.0;
    double x0 = 1.0;
    /// Fraction of x0 that is foreign at t = 0.
    double p0 = 1.0;

    /// Total exponential rate r = alpha + beta*y0.
    double rate() const { return alpha + beta * y0; }
};

/// Throws Error(InvalidParameter) unless x0 > 0, 0 <= p0 <= 1 and alpha, beta, y0 >= 0.
void validate(const ModelParams& params);

struct GrowthState {
    double x = 0.0;
    double S = 0.0;
    double F = 0.0;
};

struct TrajectoryPoint {
    double t = 0.0;
    double x = 0.0;
    double S = 0.0;
    double F = 0.0;
    double y = 0.0;
    double pct_foreign = 0.0;
};

struct Trajectory {
    ModelParams params;
    double dt = 0.0;
    std::vector<TrajectoryPoint> points;
};

GrowthState derivatives(const GrowthState& state, const ModelParams& params);

/// Classical RK4 on (x, S, F). Throws Error(NonPositiveStep) when dt <= 0.
TrajectoryPoint step_rk4(const TrajectoryPoint& point, const ModelParams& params, double dt);

TrajectoryPoint initial_point(const ModelParams& params);

/// Exact x(t) = x0*exp(r*t).
double closed_form_x(const ModelParams& params, double t);

/// Exact F(t); falls back to the constant p0*x0 when r == 0.
double closed_form_foreign(const ModelParams& params, double t);

/// Fixed-step trajectory on t = 0, dt, 2dt, ..., with the last step shortened
/// to land on t_end.
Trajectory simulate(const ModelParams& params, double t_end, double dt);

/// (S, pct_foreign) per trajectory point. Throws Error(EmptyTrajectory).
std::vector<std::pair<double, double>> fig3_curve(const Trajectory& trajectory);

/// Limit of pct_foreign: 100*beta*y0 / (alpha + beta*y0).
/// Throws Error(DegenerateRates) when the total rate is zero.
double foreign_share_asymptote(const ModelParams& params);

inline constexpr std::string_view kTrajectoryCsvHeader = "t,x,S,F,y,pct_foreign";
inline constexpr std::string_view kFig3CsvHeader = "self_connections,pct_foreign";

std::string write_trajectory_csv(const Trajectory& trajectory);
std::string write_fig3_csv(const std::vector<std::pair<double, double>>& curve);

} // namespace collab
