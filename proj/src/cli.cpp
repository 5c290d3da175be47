#include "collab/cli.hpp"

#include "collab/country_features.hpp"
#include "collab/error.hpp"
#include "collab/graph_io.hpp"
#include "collab/growth_dynamics.hpp"
#include "collab/kmeans.hpp"
#include "collab/svg.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <sstream>

namespace collab::cli {

namespace fs = std::filesystem;

namespace {

bool needs_input(const std::string& subcommand)
{
    return subcommand == "features" || subcommand == "cluster" || subcommand == "report";
}

CollaborationGraph load_graph(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open input file '{}'", path));
    }
    try {
        return parse_edge_list(in);
    } catch (const Error& e) {
        // prefix the path so the diagnostic says which file failed
        throw Error(e.code(), fmt::format("{}: {}", path, e.what()), e.line());
    }
}

ModelParams model_params(const RunConfig& config)
{
    ModelParams p;
    p.alpha = config.alpha;
    p.beta = config.beta;
    p.y0 = config.y0;
    p.x0 = config.x0;
    p.p0 = config.p0;
    return p;
}

QuadrantThresholds thresholds_for(const RunConfig& config, const std::vector<CountryFeatures>& features)
{
    auto t = median_thresholds(features);
    if (config.share_cut) {
        t.share_cut = *config.share_cut;
    }
    if (config.partners_cut) {
        t.partners_cut = *config.partners_cut;
    }
    return t;
}

std::vector<std::string> model_metadata(const RunConfig& config)
{
    return {
        fmt::format("alpha={:.9g} beta={:.9g} y0={:.9g} x0={:.9g} p0={:.9g}", config.alpha, config.beta,
                    config.y0, config.x0, config.p0),
        fmt::format("dt={:.9g} t_end={:.9g} integrator=rk4", config.dt, config.t_end),
        "parameter values are illustrative defaults or user choices, not fitted to data",
    };
}

// At most `limit` evenly spaced samples, always keeping the endpoints.
std::vector<std::array<double, 2>> decimate(const std::vector<std::array<double, 2>>& pts, std::size_t limit)
{
    if (pts.size() <= limit) {
        return pts;
    }
    std::vector<std::array<double, 2>> out;
    out.reserve(limit);
    for (std::size_t i = 0; i < limit; ++i) {
        out.push_back(pts[i * (pts.size() - 1) / (limit - 1)]);
    }
    return out;
}

OutputFiles cmd_features(const RunConfig& config)
{
    const auto features = compute_features(load_graph(config.input));
    return {{"features.csv", write_features_csv(features)}};
}

OutputFiles cmd_cluster(const RunConfig& config, std::ostream& out)
{
    const auto features = compute_features(load_graph(config.input));
    const auto thresholds = thresholds_for(config, features);
    const auto points = feature_points(features);
    const auto model = kmeans(points, {config.k, config.seed, config.restarts, config.tol, config.max_iter});

    svg::ScatterPlotSpec plot;
    plot.title = fmt::format("k-means clusters (k={})", config.k);
    plot.x_label = "distinct partner countries";
    plot.y_label = "external connections (%)";
    plot.vertical_line = thresholds.partners_cut;
    plot.horizontal_line = thresholds.share_cut;
    plot.metadata = {
        fmt::format("k={} seed={} restarts={} tol={:.9g} max_iter={}", config.k, config.seed, config.restarts,
                    config.tol, config.max_iter),
        fmt::format("share_cut={:.6f} partners_cut={:.6f}", thresholds.share_cut, thresholds.partners_cut),
        fmt::format("wcss={:.6f} iterations={}", model.wcss, model.iterations),
    };
    for (const auto& f : features) {
        plot.points.push_back({static_cast<double>(f.distinct_partners), f.external_share_pct,
                               model.assignments.at(f.country)});
    }

    out << fmt::format("k={} wcss={:.6f} iterations={}\n", model.k, model.wcss, model.iterations);
    return {{"clusters.csv", write_clusters_csv(features, model)}, {"clusters.svg", svg::render_scatter(plot)}};
}

OutputFiles cmd_simulate(const RunConfig& config)
{
    const auto params = model_params(config);
    const auto traj = simulate(params, config.t_end, config.dt);
    const auto curve = fig3_curve(traj);

    std::vector<std::array<double, 2>> series;
    series.reserve(traj.points.size());
    for (const auto& p : traj.points) {
        series.push_back({p.t, p.x});
    }
    std::vector<std::array<double, 2>> fig3;
    fig3.reserve(curve.size());
    for (const auto& [s, pct] : curve) {
        fig3.push_back({s, pct});
    }

    svg::LinePlotSpec fig2_plot{decimate(series, 2001), "time", "connections of developing country (x)",
                                "connections over time", model_metadata(config)};
    svg::LinePlotSpec fig3_plot{decimate(fig3, 2001), "self connections (S)", "foreign connections (%)",
                                "self connections vs. foreign share", model_metadata(config)};
    return {
        {"trajectory.csv", write_trajectory_csv(traj)},
        {"fig2.svg", svg::render_line(fig2_plot)},
        {"fig3.csv", write_fig3_csv(curve)},
        {"fig3.svg", svg::render_line(fig3_plot)},
    };
}

OutputFiles cmd_synthesize(const RunConfig& config)
{
    return {{"graph.csv", write_graph(synthesize_graph(config.seed, config.n_countries))}};
}

std::string cmd_report(const RunConfig& config)
{
    const auto features = compute_features(load_graph(config.input));
    const auto thresholds = thresholds_for(config, features);
    const auto report = extremes(features);

    std::map<CountryId, const CountryFeatures*> by_id;
    for (const auto& f : features) {
        by_id.emplace(f.country, &f);
    }
    auto describe_country = [&](const CountryId& id) {
        const auto& f = *by_id.at(id);
        return fmt::format("{} (distinct_partners={}, external_share_pct={:.6f})", id.str(), f.distinct_partners,
                           f.external_share_pct);
    };

    std::map<Quadrant, std::size_t> counts{
        {Quadrant::BottomLeft, 0}, {Quadrant::BottomRight, 0}, {Quadrant::TopLeft, 0}, {Quadrant::TopRight, 0}};
    for (const auto& f : features) {
        ++counts[classify_quadrant(f, thresholds)];
    }

    std::string out;
    out += fmt::format("countries: {}\n", features.size());
    out += fmt::format("top_right: {}\n", describe_country(report.top_right));
    out += fmt::format("bottom_left: {}\n", describe_country(report.bottom_left));
    out += fmt::format("fully_external: {}\n", report.fully_external.size());
    for (const auto& id : report.fully_external) {
        out += fmt::format("  {}\n", describe_country(id));
    }
    out += fmt::format("thresholds: share_cut={:.6f} partners_cut={:.6f}\n", thresholds.share_cut,
                       thresholds.partners_cut);
    for (const auto& [q, n] : counts) {
        out += fmt::format("quadrant {}: {}\n", to_string(q), n);
    }
    return out;
}

bool is_config_error(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidK:
    case ErrorCode::InvalidParameter:
    case ErrorCode::NonPositiveStep:
    case ErrorCode::NonPositiveHorizon:
    case ErrorCode::TooFewCountries:
    case ErrorCode::DegenerateRates: return true;
    default: return false;
    }
}

} // namespace

void validate(const RunConfig& config)
{
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) {
            throw ConfigError(msg);
        }
    };
    const auto& sub = config.subcommand;
    require(sub == "features" || sub == "cluster" || sub == "simulate" || sub == "synthesize" || sub == "report",
            fmt::format("unknown subcommand '{}'", sub));
    if (needs_input(sub)) {
        require(!config.input.empty(), fmt::format("'{}' requires --input", sub));
    }
    require(!config.out_dir.empty(), "--out-dir must not be empty");

    require(config.k >= 1, fmt::format("--k must be at least 1, got {}", config.k));
    require(config.restarts >= 1, fmt::format("--restarts must be at least 1, got {}", config.restarts));
    require(config.tol > 0.0 && std::isfinite(config.tol), "--tol must be positive");
    require(config.max_iter >= 1, fmt::format("--max-iter must be at least 1, got {}", config.max_iter));

    for (auto [name, v] : {std::pair{"--alpha", config.alpha}, std::pair{"--beta", config.beta},
                           std::pair{"--y0", config.y0}}) {
        require(v >= 0.0 && std::isfinite(v), fmt::format("{} must be finite and nonnegative, got {}", name, v));
    }
    require(config.x0 > 0.0 && std::isfinite(config.x0), fmt::format("--x0 must be positive, got {}", config.x0));
    require(config.p0 >= 0.0 && config.p0 <= 1.0, fmt::format("--p0 must lie in [0, 1], got {}", config.p0));
    require(config.t_end > 0.0 && std::isfinite(config.t_end),
            fmt::format("--t-end must be positive, got {}", config.t_end));
    require(config.dt > 0.0 && std::isfinite(config.dt), fmt::format("--dt must be positive, got {}", config.dt));
    require(config.dt <= config.t_end, fmt::format("--dt ({}) must not exceed --t-end ({})", config.dt, config.t_end));

    if (config.share_cut) {
        require(*config.share_cut > 0.0 && *config.share_cut < 100.0, "--share-cut must lie in (0, 100)");
    }
    if (config.partners_cut) {
        require(*config.partners_cut > 0.0 && std::isfinite(*config.partners_cut), "--partners-cut must be positive");
    }
    require(config.n_countries >= 4, fmt::format("--n-countries must be at least 4, got {}", config.n_countries));
}

std::string describe(const RunConfig& c)
{
    auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{:.9g}", *v) : std::string("median"); };
    std::string out;
    out += fmt::format("subcommand={}\n", c.subcommand.empty() ? "(none)" : c.subcommand);
    out += fmt::format("input={}\n", c.input);
    out += fmt::format("out_dir={}\n", c.out_dir);
    out += fmt::format("k={}\nseed={}\nrestarts={}\ntol={:.9g}\nmax_iter={}\n", c.k, c.seed, c.restarts, c.tol,
                       c.max_iter);
    out += fmt::format("alpha={:.9g}\nbeta={:.9g}\ny0={:.9g}\nx0={:.9g}\np0={:.9g}\n", c.alpha, c.beta, c.y0, c.x0,
                       c.p0);
    out += fmt::format("dt={:.9g}\nt_end={:.9g}\n", c.dt, c.t_end);
    out += fmt::format("share_cut={}\npartners_cut={}\n", opt(c.share_cut), opt(c.partners_cut));
    out += fmt::format("n_countries={}\n", c.n_countries);
    return out;
}

void write_outputs_atomically(const fs::path& dir, const OutputFiles& files)
{
    fs::create_directories(dir);
    std::vector<fs::path> temps;
    auto cleanup = [&temps] {
        std::error_code ec;
        for (const auto& t : temps) {
            fs::remove(t, ec);
        }
    };
    try {
        for (const auto& [name, contents] : files) {
            const auto tmp = dir / (name + ".tmp");
            temps.push_back(tmp);
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << contents;
            out.close();
            if (!out) {
                throw std::runtime_error(fmt::format("failed writing '{}'", tmp.string()));
            }
        }
        for (std::size_t i = 0; i < files.size(); ++i) {
            fs::rename(temps[i], dir / files[i].first);
        }
    } catch (...) {
        cleanup();
        throw;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    CLI::App app{"Country collaboration network analysis: features, clustering, growth model"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    app.add_option("--input", config.input, "Edge-list CSV (source,target,weight)");
    app.add_option("--out-dir", config.out_dir, "Directory for output files");
    app.add_option("--k", config.k, "Number of clusters");
    app.add_option("--seed", config.seed, "Random seed for clustering and synthesis");
    app.add_option("--restarts", config.restarts, "k-means++ restarts");
    app.add_option("--tol", config.tol, "Relative WCSS improvement threshold");
    app.add_option("--max-iter", config.max_iter, "Maximum Lloyd iterations per restart");
    app.add_option("--alpha", config.alpha, "Self-growth rate");
    app.add_option("--beta", config.beta, "Interaction rate with developed nations");
    app.add_option("--y0", config.y0, "Developed-nation level (constant)");
    app.add_option("--x0", config.x0, "Initial connections of the developing country");
    app.add_option("--p0", config.p0, "Initial foreign fraction of x0");
    app.add_option("--dt", config.dt, "Integrator step");
    app.add_option("--t-end", config.t_end, "Simulation horizon");
    app.add_option("--share-cut", config.share_cut, "Override the median external-share cut");
    app.add_option("--partners-cut", config.partners_cut, "Override the median distinct-partners cut");
    app.add_option("--n-countries", config.n_countries, "Number of countries to synthesize");
    app.add_flag("--print-config", config.print_config, "Print the resolved configuration and exit");

    for (const char* name : {"features", "cluster", "simulate", "synthesize", "report"}) {
        app.add_subcommand(name)->fallthrough();
    }
    app.get_subcommand("features")->description("Write per-country features CSV");
    app.get_subcommand("cluster")->description("k-means clustering of the feature scatter");
    app.get_subcommand("simulate")->description("Simulate the two-compartment growth model");
    app.get_subcommand("synthesize")->description("Write a synthetic collaboration edge list");
    app.get_subcommand("report")->description("Print extremal countries and quadrant counts");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
    for (auto* sub : app.get_subcommands()) {
        config.subcommand = sub->get_name();
    }

    if (config.print_config) {
        out << describe(config);
        return kExitOk;
    }
    if (config.subcommand.empty()) {
        err << "error: a subcommand is required (features, cluster, simulate, synthesize, report)\n";
        return kExitConfigError;
    }

    try {
        validate(config);
        const fs::path dir(config.out_dir);
        const auto& sub = config.subcommand;
        if (sub == "features") {
            write_outputs_atomically(dir, cmd_features(config));
        } else if (sub == "cluster") {
            std::ostringstream summary;
            auto files = cmd_cluster(config, summary);
            write_outputs_atomically(dir, files);
            out << summary.str();
        } else if (sub == "simulate") {
            write_outputs_atomically(dir, cmd_simulate(config));
        } else if (sub == "synthesize") {
            write_outputs_atomically(dir, cmd_synthesize(config));
        } else {
            out << cmd_report(config);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_config_error(e.code()) ? kExitConfigError : kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

} // namespace collab::cli
