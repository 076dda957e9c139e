#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <copulas/copulas.hpp>

#include "csv.hpp"

namespace cli {

using ordered_json = nlohmann::ordered_json;

//! a model file brought to life: the copula, optional marginals, and the
//! fields needed to write it back out
struct LoadedModel {
    std::shared_ptr<const copulas::Copula> copula;
    std::optional<std::vector<copulas::Marginal>> marginals;
    std::string family;
    Eigen::Index dim = 0;
    std::optional<double> theta;

    bool is_joint() const { return marginals.has_value(); }
};

namespace detail {

inline copulas::ArchFamily arch_family_from_name(const std::string& name)
{
    if (name == "clayton")
        return copulas::ArchFamily::clayton;
    if (name == "frank")
        return copulas::ArchFamily::frank;
    if (name == "gumbel")
        return copulas::ArchFamily::gumbel;
    throw std::invalid_argument("unknown Archimedean family '" + name
                                + "' (expected clayton, frank, or gumbel)");
}

inline std::shared_ptr<const copulas::Copula> build_copula(const std::string& family,
                                                           Eigen::Index dim,
                                                           std::optional<double> theta)
{
    const bool parametric = family == "clayton" || family == "frank" || family == "gumbel";
    if (parametric && !theta)
        throw std::invalid_argument("copula.theta is required for family '" + family + "'");
    if (!parametric && theta)
        throw std::invalid_argument("copula.theta is not a parameter of family '" + family
                                    + "'");
    if (family == "independence")
        return std::make_shared<copulas::IndependenceCopula>(dim);
    if (family == "comonotone")
        return std::make_shared<copulas::ComonotoneCopula>(dim);
    if (family == "countermonotone") {
        if (dim != 2)
            throw std::invalid_argument("copula.dim: the countermonotone copula only exists "
                                        "in dimension 2");
        return std::make_shared<copulas::CountermonotoneCopula>();
    }
    return std::make_shared<copulas::ArchimedeanCopula>(
        copulas::archimedean_copula(arch_family_from_name(family), dim, *theta));
}

inline double require_number(const ordered_json& obj, const std::string& key,
                             const std::string& where)
{
    if (!obj.contains(key))
        throw std::invalid_argument(where + "." + key + " is missing");
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw std::invalid_argument(where + "." + key + " must be a number");
    return v.template get<double>();
}

inline void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                                const std::string& where)
{
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            throw std::invalid_argument(where + ": unexpected field '" + item.key() + "'");
}

inline copulas::Marginal marginal_from_json(const ordered_json& obj, const std::string& where)
{
    if (!obj.is_object())
        throw std::invalid_argument(where + " must be an object");
    if (!obj.contains("family") || !obj.at("family").is_string())
        throw std::invalid_argument(where + ".family must be a string");
    const std::string family = obj.at("family").template get<std::string>();
    if (family == "normal") {
        reject_unknown_keys(obj, {"family", "mu", "sigma"}, where);
        return copulas::Normal(require_number(obj, "mu", where),
                               require_number(obj, "sigma", where));
    }
    if (family == "gamma") {
        reject_unknown_keys(obj, {"family", "shape", "scale"}, where);
        return copulas::Gamma(require_number(obj, "shape", where),
                              require_number(obj, "scale", where));
    }
    if (family == "pareto") {
        reject_unknown_keys(obj, {"family", "shape"}, where);
        return copulas::Pareto(require_number(obj, "shape", where));
    }
    if (family == "binomial") {
        reject_unknown_keys(obj, {"family", "trials", "p"}, where);
        if (!obj.contains("trials") || !obj.at("trials").is_number_integer())
            throw std::invalid_argument(where + ".trials must be an integer");
        return copulas::Binomial(obj.at("trials").template get<int>(),
                                 require_number(obj, "p", where));
    }
    if (family == "exponential") {
        reject_unknown_keys(obj, {"family", "scale"}, where);
        return copulas::Exponential(require_number(obj, "scale", where));
    }
    if (family == "uniform") {
        reject_unknown_keys(obj, {"family", "a", "b"}, where);
        return copulas::Uniform(require_number(obj, "a", where),
                                require_number(obj, "b", where));
    }
    throw std::invalid_argument(where + ".family: unknown marginal family '" + family + "'");
}

inline ordered_json marginal_to_json(const copulas::Marginal& m)
{
    const auto params = copulas::parameters(m);
    ordered_json obj;
    obj["family"] = copulas::marginal_family_name(copulas::family_of(m));
    switch (copulas::family_of(m)) {
    case copulas::MarginalFamily::normal:
        obj["mu"] = params[0];
        obj["sigma"] = params[1];
        break;
    case copulas::MarginalFamily::gamma:
        obj["shape"] = params[0];
        obj["scale"] = params[1];
        break;
    case copulas::MarginalFamily::pareto:
        obj["shape"] = params[0];
        break;
    case copulas::MarginalFamily::binomial:
        obj["trials"] = static_cast<int>(params[0]);
        obj["p"] = params[1];
        break;
    case copulas::MarginalFamily::exponential:
        obj["scale"] = params[0];
        break;
    case copulas::MarginalFamily::uniform:
        obj["a"] = params[0];
        obj["b"] = params[1];
        break;
    }
    return obj;
}

} // namespace detail

//! parse and validate a model file; throws IoError on unreadable paths and
//! invalid_argument (naming the offending field) on schema violations
inline LoadedModel load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }

    if (!doc.is_object())
        throw std::invalid_argument("model document must be a JSON object");
    detail::reject_unknown_keys(doc, {"copula", "marginals"}, "model");
    if (!doc.contains("copula") || !doc.at("copula").is_object())
        throw std::invalid_argument("copula must be an object");
    const auto& cop = doc.at("copula");
    detail::reject_unknown_keys(cop, {"family", "dim", "theta"}, "copula");

    if (!cop.contains("family") || !cop.at("family").is_string())
        throw std::invalid_argument("copula.family must be a string");
    const std::string family = cop.at("family").template get<std::string>();
    const std::set<std::string> known{"independence", "clayton", "frank",
                                      "gumbel",       "comonotone", "countermonotone"};
    if (!known.contains(family))
        throw std::invalid_argument("copula.family: unknown family '" + family + "'");

    if (!cop.contains("dim") || !cop.at("dim").is_number_integer())
        throw std::invalid_argument("copula.dim must be an integer");
    const auto dim = cop.at("dim").template get<Eigen::Index>();
    if (dim < 2)
        throw std::invalid_argument("copula.dim must be at least 2");

    std::optional<double> theta;
    if (cop.contains("theta")) {
        if (!cop.at("theta").is_number())
            throw std::invalid_argument("copula.theta must be a number");
        theta = cop.at("theta").template get<double>();
    }

    LoadedModel model;
    model.family = family;
    model.dim = dim;
    model.theta = theta;
    model.copula = detail::build_copula(family, dim, theta);

    if (doc.contains("marginals")) {
        if (!doc.at("marginals").is_array())
            throw std::invalid_argument("marginals must be an array");
        const auto& arr = doc.at("marginals");
        if (static_cast<Eigen::Index>(arr.size()) != dim)
            throw std::invalid_argument("marginals has " + std::to_string(arr.size())
                                        + " entries, copula.dim is " + std::to_string(dim));
        std::vector<copulas::Marginal> marginals;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "marginals[" + std::to_string(i) + "]";
            try {
                marginals.push_back(detail::marginal_from_json(arr[i], where));
            } catch (const std::domain_error& e) {
                throw std::invalid_argument(where + ": " + e.what());
            }
        }
        model.marginals = std::move(marginals);
    }
    return model;
}

inline ordered_json model_to_json(const std::string& family, Eigen::Index dim,
                                  std::optional<double> theta,
                                  const std::optional<std::vector<copulas::Marginal>>& marginals)
{
    ordered_json doc;
    doc["copula"]["family"] = family;
    doc["copula"]["dim"] = static_cast<long long>(dim);
    if (theta)
        doc["copula"]["theta"] = *theta;
    if (marginals) {
        doc["marginals"] = ordered_json::array();
        for (const auto& m : *marginals)
            doc["marginals"].push_back(detail::marginal_to_json(m));
    }
    return doc;
}

inline void write_json(const std::string& path, const ordered_json& doc)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out)
        throw IoError("failed while writing '" + path + "'");
}

}
