#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include <copulas/marginals.hpp>
#include <copulas/random.hpp>
#include <copulas/tools/quadrature.hpp>

using namespace copulas;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("normal marginal reference values")
{
    const Marginal m = Normal(1.0, 2.0);
    CHECK(cdf(m, 2.0) == Catch::Approx(0.6914624612740131).epsilon(1e-13));
    CHECK(pdf(m, 2.0) == Catch::Approx(0.17603266338214974).epsilon(1e-13));
    CHECK(quantile(m, 0.975) == Catch::Approx(4.9199279690801084).epsilon(1e-10));
    CHECK(quantile(m, 0.5) == Catch::Approx(1.0).margin(1e-12));
    CHECK(cdf(m, -inf) == 0.0);
    CHECK(cdf(m, inf) == 1.0);
    CHECK(quantile(m, 0.0) == -inf);
    CHECK(quantile(m, 1.0) == inf);
    CHECK_THROWS_AS(Normal(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(Normal(0.0, -1.0), std::domain_error);
}

TEST_CASE("gamma marginal reference values")
{
    const Marginal m = Gamma(2.0, 3.0);
    CHECK(cdf(m, 6.0) == Catch::Approx(0.59399415029016192).epsilon(1e-13));
    CHECK(pdf(m, 6.0) == Catch::Approx(0.090223522157741795).epsilon(1e-13));
    CHECK(quantile(m, 0.5) == Catch::Approx(5.035040970049982).epsilon(1e-9));
    CHECK(quantile(m, 0.59399415029016192) == Catch::Approx(6.0).epsilon(1e-9));
    CHECK(cdf(m, 0.0) == 0.0);
    CHECK(cdf(m, -3.0) == 0.0);
    CHECK(pdf(m, -3.0) == 0.0);
    CHECK(quantile(m, 0.0) == 0.0);
    CHECK(quantile(m, 1.0) == inf);
    CHECK_THROWS_AS(Gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(Gamma(1.0, -2.0), std::domain_error);
}

TEST_CASE("pareto marginal reference values")
{
    const Marginal m = Pareto(0.5);
    CHECK(cdf(m, 4.0) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(pdf(m, 4.0) == Catch::Approx(0.0625).epsilon(1e-14));
    CHECK(quantile(m, 0.75) == Catch::Approx(16.0).epsilon(1e-12));
    CHECK(cdf(m, 1.0) == 0.0);
    CHECK(cdf(m, 0.5) == 0.0);
    CHECK(pdf(m, 0.5) == 0.0);
    CHECK(quantile(m, 0.0) == 1.0);
    CHECK(quantile(m, 1.0) == inf);
    CHECK_THROWS_AS(Pareto(0.0), std::domain_error);
    CHECK_THROWS_AS(Pareto(-2.0), std::domain_error);
}

TEST_CASE("binomial marginal reference values")
{
    const Marginal m = Binomial(10, 0.8);
    CHECK(pdf(m, 8.0) == Catch::Approx(0.301989888).epsilon(1e-12));
    CHECK(cdf(m, 8.0) == Catch::Approx(0.6241903616).epsilon(1e-12));
    CHECK(cdf(m, 8.5) == Catch::Approx(0.6241903616).epsilon(1e-12));
    CHECK(pdf(m, 10.0) == Catch::Approx(0.1073741824).epsilon(1e-12));
    CHECK(pdf(m, 8.5) == 0.0); // mass only on integers
    CHECK(cdf(m, -1.0) == 0.0);
    CHECK(cdf(m, 10.0) == 1.0);
    CHECK(quantile(m, 1.0) == 10.0);
    CHECK(quantile(m, 0.6241903616) == 8.0);
    CHECK(quantile(m, 0.63) == 9.0);
    CHECK(is_discrete(m));
    CHECK_THROWS_AS(Binomial(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(Binomial(10, 1.5), std::domain_error);
    // degenerate success probabilities stay well defined
    const Marginal sure = Binomial(4, 1.0);
    CHECK(pdf(sure, 4.0) == 1.0);
    CHECK(pdf(sure, 3.0) == 0.0);
    const Marginal never = Binomial(4, 0.0);
    CHECK(pdf(never, 0.0) == 1.0);
    CHECK(cdf(never, 0.0) == 1.0);
}

TEST_CASE("exponential marginal reference values")
{
    const Marginal m = Exponential(2.0);
    CHECK(cdf(m, 2.0) == Catch::Approx(0.63212055882855768).epsilon(1e-14));
    CHECK(pdf(m, 2.0) == Catch::Approx(0.18393972058572116).epsilon(1e-14));
    CHECK(quantile(m, 0.5) == Catch::Approx(1.3862943611198906).epsilon(1e-14));
    CHECK(cdf(m, 0.0) == 0.0);
    CHECK(pdf(m, -1.0) == 0.0);
    CHECK_THROWS_AS(Exponential(0.0), std::domain_error);
}

TEST_CASE("uniform marginal reference values")
{
    const Marginal m = Uniform(-1.0, 3.0);
    CHECK(cdf(m, 0.0) == 0.25);
    CHECK(pdf(m, 0.0) == 0.25);
    CHECK(pdf(m, 4.0) == 0.0);
    CHECK(quantile(m, 0.25) == 0.0);
    CHECK(quantile(m, 0.0) == -1.0);
    CHECK(quantile(m, 1.0) == 3.0);
    CHECK_THROWS_AS(Uniform(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(Uniform(2.0, 1.0), std::domain_error);
}

TEST_CASE("quantile validates its argument for every family")
{
    const Marginal families[] = {
        Normal(0.0, 1.0), Gamma(2.0, 3.0),     Pareto(1.5),
        Binomial(5, 0.4), Exponential(1.0),    Uniform(0.0, 1.0),
    };
    for (const Marginal& m : families) {
        CHECK_THROWS_AS(quantile(m, -0.1), std::invalid_argument);
        CHECK_THROWS_AS(quantile(m, 1.1), std::invalid_argument);
        CHECK_THROWS_AS(quantile(m, std::nan("")), std::invalid_argument);
    }
}

TEST_CASE("quantile and cdf are mutually inverse on the continuous families")
{
    const Marginal families[] = {
        Normal(-1.0, 0.5), Gamma(2.0, 3.0), Gamma(0.5, 1.0),
        Pareto(2.5),       Exponential(4.0), Uniform(-2.0, 5.0),
    };
    for (const Marginal& m : families)
        for (double u = 0.02; u < 1.0; u += 0.02) {
            const double x = quantile(m, u);
            CHECK(std::abs(cdf(m, x) - u) < 1e-9);
        }
}

TEST_CASE("densities integrate to one")
{
    struct Range {
        Marginal m;
        double lo, hi;
    };
    // integration windows hold all but negligible mass; the Pareto case uses
    // shape 2.5 because heavier tails put visible mass beyond any finite window
    const Range cases[] = {
        {Normal(1.0, 2.0), -14.0, 16.0},
        {Gamma(2.0, 3.0), 0.0, 90.0},
        {Gamma(0.5, 1.0), 1e-12, 40.0},
        {Pareto(2.5), 1.0, 1e5},
        {Exponential(2.0), 0.0, 80.0},
        {Uniform(-1.0, 3.0), -1.0, 3.0},
    };
    for (const auto& [m, lo, hi] : cases) {
        const double total = tools::adaptive_simpson(
            [&m](double x) { return pdf(m, x); }, lo, hi, 1e-10);
        CHECK(total == Catch::Approx(1.0).margin(1e-6));
    }
    // discrete mass function sums to one
    const Marginal b = Binomial(10, 0.8);
    double mass = 0.0;
    for (int k = 0; k <= 10; ++k)
        mass += pdf(b, k);
    CHECK(mass == Catch::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("family metadata round-trips through the variant")
{
    CHECK(family_of(Marginal(Normal(0, 1))) == MarginalFamily::normal);
    CHECK(family_of(Marginal(Gamma(1, 1))) == MarginalFamily::gamma);
    CHECK(family_of(Marginal(Pareto(1))) == MarginalFamily::pareto);
    CHECK(family_of(Marginal(Binomial(3, 0.5))) == MarginalFamily::binomial);
    CHECK(family_of(Marginal(Exponential(1))) == MarginalFamily::exponential);
    CHECK(family_of(Marginal(Uniform(0, 1))) == MarginalFamily::uniform);

    CHECK(marginal_family_name(MarginalFamily::normal) == "normal");
    CHECK(marginal_family_name(MarginalFamily::binomial) == "binomial");

    CHECK(is_discrete(Marginal(Binomial(3, 0.5))));
    CHECK_FALSE(is_discrete(Marginal(Normal(0, 1))));

    const auto p = parameters(Marginal(Normal(2.0, 0.5)));
    REQUIRE(p.size() == 2);
    CHECK(p[0] == 2.0);
    CHECK(p[1] == 0.5);
    const auto pb = parameters(Marginal(Binomial(7, 0.25)));
    REQUIRE(pb.size() == 2);
    CHECK(pb[0] == 7.0);
    CHECK(pb[1] == 0.25);
    CHECK(parameters(Marginal(Pareto(1.5))) == std::vector<double>{1.5});
}

TEST_CASE("sampling pushes uniforms through the quantile")
{
    RandomEngine rng(500);
    const Marginal m = Normal(10.0, 3.0);
    const Eigen::VectorXd x = sample(m, rng, 5000);
    REQUIRE(x.size() == 5000);
    CHECK(std::abs(x.mean() - 10.0) < 0.2);
    const double sd = std::sqrt((x.array() - x.mean()).square().mean());
    CHECK(std::abs(sd - 3.0) < 0.2);

    // a seeded redraw reproduces the exact same values
    RandomEngine rng2(500);
    const Eigen::VectorXd y = sample(m, rng2, 5000);
    CHECK((x - y).cwiseAbs().maxCoeff() == 0.0);

    const Marginal b = Binomial(10, 0.8);
    RandomEngine rng3(42);
    const Eigen::VectorXd k = sample(b, rng3, 2000);
    CHECK(k.minCoeff() >= 0.0);
    CHECK(k.maxCoeff() <= 10.0);
    for (int i = 0; i < k.size(); ++i)
        CHECK(k[i] == std::floor(k[i]));
    CHECK(std::abs(k.mean() - 8.0) < 0.15);
}

TEST_CASE("normal fit recovers location and scale")
{
    RandomEngine rng(7001);
    const Eigen::VectorXd x = sample(Marginal(Normal(-1.0, 0.5)), rng, 20000);
    const Marginal m = fit_marginal(MarginalFamily::normal, x);
    const auto p = parameters(m);
    CHECK(std::abs(p[0] + 1.0) < 0.02);
    CHECK(std::abs(p[1] - 0.5) < 0.02);

    // the scale estimate divides by n, not n - 1
    Eigen::VectorXd two(2);
    two << 0.0, 2.0;
    const auto q = parameters(fit_marginal(MarginalFamily::normal, two));
    CHECK(q[0] == 1.0);
    CHECK(q[1] == 1.0);
}

TEST_CASE("gamma fit recovers shape and scale")
{
    RandomEngine rng(7002);
    const Eigen::VectorXd x = sample(Marginal(Gamma(2.0, 3.0)), rng, 20000);
    const auto p = parameters(fit_marginal(MarginalFamily::gamma, x));
    CHECK(std::abs(p[0] - 2.0) < 0.1);
    CHECK(std::abs(p[1] - 3.0) < 0.2);
}

TEST_CASE("pareto fit recovers the tail index")
{
    RandomEngine rng(7003);
    const Eigen::VectorXd x = sample(Marginal(Pareto(0.5)), rng, 10000);
    const auto p = parameters(fit_marginal(MarginalFamily::pareto, x));
    CHECK(std::abs(p[0] - 0.5) < 0.02);
}

TEST_CASE("binomial fit recovers the success probability")
{
    RandomEngine rng(7004);
    const Eigen::VectorXd x = sample(Marginal(Binomial(10, 0.8)), rng, 10000);
    const auto p = parameters(fit_marginal(MarginalFamily::binomial, x, 10));
    CHECK(p[0] == 10.0);
    CHECK(std::abs(p[1] - 0.8) < 0.02);
}

TEST_CASE("exponential and uniform fits are the sample mean and range")
{
    Eigen::VectorXd x(4);
    x << 1.0, 2.0, 3.0, 6.0;
    CHECK(parameters(fit_marginal(MarginalFamily::exponential, x))[0] == 3.0);
    const auto u = parameters(fit_marginal(MarginalFamily::uniform, x));
    CHECK(u[0] == 1.0);
    CHECK(u[1] == 6.0);
}

TEST_CASE("fits reject data outside the family support")
{
    Eigen::VectorXd with_zero(3);
    with_zero << 2.0, 0.0, 3.0;
    CHECK_THROWS_WITH(fit_marginal(MarginalFamily::gamma, with_zero),
                      Catch::Matchers::ContainsSubstring("observation 2"));
    Eigen::VectorXd below_one(3);
    below_one << 2.0, 3.0, 0.5;
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::pareto, below_one),
                    std::invalid_argument);
    Eigen::VectorXd not_count(3);
    not_count << 2.0, 3.5, 4.0;
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::binomial, not_count, 10),
                    std::invalid_argument);
    Eigen::VectorXd too_big(3);
    too_big << 2.0, 11.0, 4.0;
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::binomial, too_big, 10),
                    std::invalid_argument);
    Eigen::VectorXd negative(3);
    negative << 2.0, -1.0, 4.0;
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::exponential, negative),
                    std::invalid_argument);
}

TEST_CASE("fits reject degenerate samples with estimation errors")
{
    Eigen::VectorXd constant(3);
    constant << 2.0, 2.0, 2.0;
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::normal, constant), EstimationError);
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::uniform, constant), EstimationError);
    Eigen::VectorXd ones(3);
    ones << 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::pareto, ones), EstimationError);

    Eigen::VectorXd single(1);
    single << 1.0;
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::normal, single), std::invalid_argument);

    Eigen::VectorXd counts(3);
    counts << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::binomial, counts, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_marginal(MarginalFamily::binomial, counts),
                    std::invalid_argument);
}
