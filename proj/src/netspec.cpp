#include "invnet/netspec.hpp"

#include <cmath>
#include <string>

#include "invnet/errors.hpp"

namespace invnet {

namespace {

std::string idx(const char* name, std::size_t i) {
    return std::string(name) + "[" + std::to_string(i) + "]";
}

void check_finite_nonneg(double v, const std::string& field) {
    if (!std::isfinite(v)) throw ConfigError(field + ": must be finite");
    if (v < 0.0) throw ConfigError(field + ": must be >= 0 (got " + std::to_string(v) + ")");
}

}  // namespace

bool EchelonSpec::gamma_symmetric() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (transshipment(i, j) != transshipment(j, i)) return false;
    return true;
}

double FullNetworkSpec::echelon_supply(std::size_t e) const {
    double total = 0.0;
    for (const auto& w : echelons[e].warehouses) total += w.max_supply;
    return total;
}

void validate(const EchelonSpec& spec) {
    const std::size_t n = spec.size();
    if (n < 1) throw ConfigError("warehouses: at least one warehouse required");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& w = spec.warehouses[i];
        if (!std::isfinite(w.max_level) || w.max_level <= 0.0) {
            throw ConfigError(idx("warehouses", i) + ".L: must be > 0 (got " + std::to_string(w.max_level) + ")");
        }
        check_finite_nonneg(w.max_supply, idx("warehouses", i) + ".mu");
        check_finite_nonneg(w.deterioration, idx("warehouses", i) + ".theta");
        check_finite_nonneg(w.demand, idx("warehouses", i) + ".lambda");
    }
    if (spec.transshipment.rows() != n || spec.transshipment.cols() != n) {
        throw ConfigError("gamma: expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                          std::to_string(spec.transshipment.rows()) + "x" +
                          std::to_string(spec.transshipment.cols()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double g = spec.transshipment(i, j);
            const std::string field =
                "gamma[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            if (!std::isfinite(g)) throw ConfigError(field + ": must be finite");
            if (i == j && g != 0.0) throw ConfigError(field + ": diagonal entry must be 0");
            if (g < 0.0) throw ConfigError(field + ": must be >= 0 (got " + std::to_string(g) + ")");
        }
    }
}

void validate(const ChainSpec& spec) {
    if (spec.size() < 2) throw ConfigError("echelons: chain requires at least 2 echelons");
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& e = spec.echelons[i];
        if (!std::isfinite(e.capacity) || e.capacity <= 0.0) {
            throw ConfigError(idx("echelons", i) + ".C: must be > 0 (got " + std::to_string(e.capacity) + ")");
        }
        check_finite_nonneg(e.max_supply, idx("echelons", i) + ".mu");
        check_finite_nonneg(e.deterioration, idx("echelons", i) + ".theta");
    }
    check_finite_nonneg(spec.terminal_demand, "lambda_c");
}

void validate(const FullNetworkSpec& spec) {
    if (spec.size() < 2) throw ConfigError("echelons: network requires at least 2 echelons");
    for (std::size_t e = 0; e < spec.size(); ++e) {
        if (spec.echelons[e].size() < 1) {
            throw ConfigError(idx("echelons", e) + ": echelon must contain at least one warehouse");
        }
        try {
            validate(spec.echelons[e]);
        } catch (const ConfigError& err) {
            throw ConfigError(idx("echelons", e) + "." + err.what());
        }
    }
    check_finite_nonneg(spec.terminal_demand, "lambda_c");
}

std::vector<bool> validate_positivity_condition(const EchelonSpec& spec) {
    std::vector<bool> flags(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        flags[i] = spec.warehouses[i].max_supply > spec.warehouses[i].demand;
    }
    return flags;
}

DenseMatrix uniform_transshipment(std::size_t n, double rate) {
    DenseMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) g(i, j) = rate;
    return g;
}

}  // namespace invnet
