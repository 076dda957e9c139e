#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <copulas/copulas.hpp>

#include "csv.hpp"
#include "model_io.hpp"

namespace {

std::vector<std::string> coordinate_header(const std::string& prefix, Eigen::Index d)
{
    std::vector<std::string> names;
    for (Eigen::Index j = 1; j <= d; ++j)
        names.push_back(prefix + std::to_string(j));
    return names;
}

int run_sample(const std::string& model_path, long long n, std::uint64_t seed,
               const std::string& out_path)
{
    if (n < 1)
        throw std::invalid_argument("--n must be at least 1");
    const cli::LoadedModel model = cli::load_model(model_path);
    copulas::RandomEngine rng(seed);
    if (model.is_joint()) {
        const copulas::SklarDist dist(model.copula, *model.marginals);
        cli::write_csv(out_path, coordinate_header("x", model.dim),
                       dist.sample(rng, static_cast<int>(n)));
    } else {
        cli::write_csv(out_path, coordinate_header("u", model.dim),
                       model.copula->sample(rng, static_cast<int>(n)));
    }
    return 0;
}

std::vector<copulas::MarginalSpec> parse_marginal_list(const std::string& list)
{
    std::vector<copulas::MarginalSpec> specs;
    std::string::size_type start = 0;
    while (start <= list.size()) {
        auto comma = list.find(',', start);
        if (comma == std::string::npos)
            comma = list.size();
        std::string token = list.substr(start, comma - start);
        start = comma + 1;

        copulas::MarginalSpec spec;
        const auto colon = token.find(':');
        std::string name = token.substr(0, colon);
        if (name == "normal")
            spec.family = copulas::MarginalFamily::normal;
        else if (name == "gamma")
            spec.family = copulas::MarginalFamily::gamma;
        else if (name == "pareto")
            spec.family = copulas::MarginalFamily::pareto;
        else if (name == "binomial")
            spec.family = copulas::MarginalFamily::binomial;
        else if (name == "exponential")
            spec.family = copulas::MarginalFamily::exponential;
        else if (name == "uniform")
            spec.family = copulas::MarginalFamily::uniform;
        else
            throw std::invalid_argument("--marginals: unknown marginal family '" + name + "'");

        if (spec.family == copulas::MarginalFamily::binomial) {
            if (colon == std::string::npos)
                throw std::invalid_argument("--marginals: binomial needs a structural trial "
                                            "count, e.g. binomial:10");
            try {
                spec.trials = std::stoi(token.substr(colon + 1));
            } catch (const std::exception&) {
                throw std::invalid_argument("--marginals: '" + token.substr(colon + 1)
                                            + "' is not a valid trial count");
            }
        } else if (colon != std::string::npos) {
            throw std::invalid_argument("--marginals: '" + name
                                        + "' does not take a ':' argument");
        }
        specs.push_back(spec);
    }
    return specs;
}

int run_fit(const std::string& family_name, const std::string& data_path,
            const std::string& marginals_arg, const std::string& method_name,
            const std::string& out_path)
{
    const copulas::ArchFamily family = cli::detail::arch_family_from_name(family_name);
    const copulas::FitMethod method = method_name == "mle" ? copulas::FitMethod::mle
                                                           : copulas::FitMethod::tau_inversion;
    const cli::Csv data = cli::read_csv(data_path);

    copulas::FitReport report;
    cli::ordered_json model_doc;
    if (marginals_arg == "ranks") {
        const Eigen::MatrixXd pseudo = copulas::pseudo_observations(data.values);
        report = method == copulas::FitMethod::mle ? copulas::fit_copula_mle(family, pseudo)
                                                   : copulas::fit_copula_tau(family, pseudo);
        model_doc = cli::model_to_json(family_name, data.values.cols(), report.theta,
                                       std::nullopt);
    } else {
        const auto specs = parse_marginal_list(marginals_arg);
        if (static_cast<Eigen::Index>(specs.size()) != data.values.cols())
            throw std::invalid_argument("--marginals lists " + std::to_string(specs.size())
                                        + " families for " + std::to_string(data.values.cols())
                                        + " data columns");
        auto [dist, rep] = copulas::fit_sklar(family, specs, data.values, method);
        report = rep;
        model_doc = cli::model_to_json(family_name, data.values.cols(), report.theta,
                                       dist.marginals());
    }

    cli::ordered_json report_doc;
    report_doc["theta"] = report.theta;
    report_doc["tau_hat"] = report.tau_hat;
    report_doc["method"] = copulas::fit_method_name(report.method);
    report_doc["n"] = static_cast<long long>(report.n);
    if (report.loglik)
        report_doc["loglik"] = *report.loglik;
    report_doc["clipped"] = report.clipped;

    cli::write_json(out_path, model_doc);
    cli::write_json(out_path + ".report.json", report_doc);
    if (report.clipped)
        std::cerr << "warning: sample tau was outside the attainable range and theta "
                     "was clipped to the boundary\n";
    return 0;
}

int run_eval(const std::string& model_path, const std::string& points_path,
             const std::string& what, const std::string& out_path)
{
    const cli::LoadedModel model = cli::load_model(model_path);
    const cli::Csv points = cli::read_csv(points_path);
    if (points.values.cols() != model.dim)
        throw std::invalid_argument("points have " + std::to_string(points.values.cols())
                                    + " columns, the model has dimension "
                                    + std::to_string(model.dim));

    const std::optional<copulas::SklarDist> dist
        = model.is_joint()
              ? std::optional<copulas::SklarDist>(std::in_place, model.copula, *model.marginals)
              : std::nullopt;

    Eigen::MatrixXd out(points.values.rows(), 1);
    for (Eigen::Index i = 0; i < points.values.rows(); ++i) {
        const Eigen::VectorXd x = points.values.row(i).transpose();
        double v;
        if (what == "cdf")
            v = dist ? dist->cdf(x) : model.copula->cdf(x);
        else if (what == "pdf")
            v = dist ? dist->pdf(x) : model.copula->pdf(x);
        else
            v = std::log(dist ? dist->pdf(x) : model.copula->pdf(x));
        out(i, 0) = v;
    }
    cli::write_csv(out_path, {"value"}, out);
    return 0;
}

int run_tau(const std::string& family_name, std::optional<double> theta,
            std::optional<double> invert)
{
    const copulas::ArchFamily family = cli::detail::arch_family_from_name(family_name);
    double value;
    if (theta) {
        const copulas::ArchimedeanCopula c = copulas::archimedean_copula(family, 2, *theta);
        value = copulas::tau(c);
    } else {
        value = copulas::theta_from_tau(family, *invert);
    }
    std::printf("%.12g\n", value);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"copula models: sampling, fitting, evaluation, tau calculus"};
    app.require_subcommand(1);

    std::string model_path, data_path, points_path, out_path;
    std::string family_name, marginals_arg, method_name = "tau", what;
    long long n = 0;
    std::uint64_t seed = 0;
    std::optional<double> theta_arg, invert_arg;

    CLI::App* sample = app.add_subcommand("sample", "draw seeded samples from a model file");
    sample->add_option("--model", model_path, "model JSON path")->required();
    sample->add_option("--n", n, "number of rows")->required();
    sample->add_option("--seed", seed, "random seed")->required();
    sample->add_option("--out", out_path, "output CSV path")->required();

    CLI::App* fit = app.add_subcommand("fit", "fit a model to a data CSV");
    fit->add_option("--family", family_name, "copula family: clayton|frank|gumbel")
        ->required();
    fit->add_option("--data", data_path, "data CSV path")->required();
    fit->add_option("--marginals", marginals_arg,
                    "comma-separated marginal families (binomial:TRIALS), or 'ranks' "
                    "for a copula-only fit")
        ->required();
    fit->add_option("--method", method_name, "estimator: tau|mle")
        ->check(CLI::IsMember({"tau", "mle"}));
    fit->add_option("--out", out_path, "output model JSON path")->required();

    CLI::App* eval = app.add_subcommand("eval", "evaluate cdf/pdf/loglik at given points");
    eval->add_option("--model", model_path, "model JSON path")->required();
    eval->add_option("--points", points_path, "points CSV path")->required();
    eval->add_option("--what", what, "quantity: cdf|pdf|loglik")
        ->required()
        ->check(CLI::IsMember({"cdf", "pdf", "loglik"}));
    eval->add_option("--out", out_path, "output CSV path")->required();

    CLI::App* tau = app.add_subcommand("tau", "Kendall tau of a family, or its inverse");
    tau->add_option("--family", family_name, "copula family: clayton|frank|gumbel")
        ->required();
    tau->add_option("--theta", theta_arg, "parameter; prints tau(theta)");
    tau->add_option("--invert", invert_arg, "tau value; prints theta(tau)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (sample->parsed())
            return run_sample(model_path, n, seed, out_path);
        if (fit->parsed())
            return run_fit(family_name, data_path, marginals_arg, method_name, out_path);
        if (eval->parsed())
            return run_eval(model_path, points_path, what, out_path);
        if (theta_arg.has_value() == invert_arg.has_value())
            throw std::invalid_argument("tau: exactly one of --theta and --invert is required");
        return run_tau(family_name, theta_arg, invert_arg);
    } catch (const cli::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
