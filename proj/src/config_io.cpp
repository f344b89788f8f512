#include "invnet/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "invnet/errors.hpp"

namespace invnet {

using nlohmann::json;

namespace {

double number_field(const json& obj, const std::string& field, const std::string& context) {
    if (!obj.contains(field)) throw ConfigError(context + ": missing field '" + field + "'");
    const json& v = obj.at(field);
    if (!v.is_number()) throw ConfigError(context + "." + field + ": must be a number");
    return v.get<double>();
}

double number_field_or(const json& obj, const std::string& field, const std::string& context,
                       double fallback) {
    if (!obj.contains(field)) return fallback;
    const json& v = obj.at(field);
    if (!v.is_number()) throw ConfigError(context + "." + field + ": must be a number");
    return v.get<double>();
}

Vector vector_field(const json& v, const std::string& context) {
    if (!v.is_array()) throw ConfigError(context + ": must be an array of numbers");
    Vector out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            throw ConfigError(context + "[" + std::to_string(i) + "]: must be a number");
        }
        out.push_back(v[i].get<double>());
    }
    return out;
}

DenseMatrix gamma_from_json(const json& obj, std::size_t n, const std::string& context) {
    if (!obj.contains("gamma")) return DenseMatrix(n, n);  // no transshipment
    const json& g = obj.at("gamma");
    if (g.is_number()) return uniform_transshipment(n, g.get<double>());
    if (!g.is_array()) throw ConfigError(context + ".gamma: must be a matrix or a scalar rate");
    if (g.size() != n) {
        throw ConfigError(context + ".gamma: expected " + std::to_string(n) + " rows, got " +
                          std::to_string(g.size()));
    }
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = g[i];
        if (!row.is_array() || row.size() != n) {
            throw ConfigError(context + ".gamma[" + std::to_string(i) + "]: expected a row of " +
                              std::to_string(n) + " numbers");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!row[j].is_number()) {
                throw ConfigError(context + ".gamma[" + std::to_string(i) + "][" +
                                  std::to_string(j) + "]: must be a number");
            }
            m(i, j) = row[j].get<double>();
        }
    }
    return m;
}

EchelonSpec echelon_from_json(const json& obj, const std::string& context, bool demand_required) {
    if (!obj.contains("warehouses")) throw ConfigError(context + ": missing field 'warehouses'");
    const json& ws = obj.at("warehouses");
    if (!ws.is_array() || ws.empty()) {
        throw ConfigError(context + ".warehouses: must be a nonempty array");
    }
    EchelonSpec spec;
    spec.warehouses.reserve(ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::string wctx = context + ".warehouses[" + std::to_string(i) + "]";
        if (!ws[i].is_object()) throw ConfigError(wctx + ": must be an object");
        WarehouseParams w;
        w.max_level = number_field(ws[i], "L", wctx);
        w.max_supply = number_field(ws[i], "mu", wctx);
        w.deterioration = number_field(ws[i], "theta", wctx);
        w.demand = demand_required ? number_field(ws[i], "lambda", wctx)
                                   : number_field_or(ws[i], "lambda", wctx, 0.0);
        spec.warehouses.push_back(w);
    }
    spec.transshipment = gamma_from_json(obj, spec.size(), context);
    return spec;
}

json echelon_to_json(const EchelonSpec& spec) {
    json obj;
    obj["warehouses"] = json::array();
    for (const auto& w : spec.warehouses) {
        obj["warehouses"].push_back(
            {{"L", w.max_level}, {"mu", w.max_supply}, {"theta", w.deterioration}, {"lambda", w.demand}});
    }
    json g = json::array();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < spec.size(); ++j) row.push_back(spec.transshipment(i, j));
        g.push_back(row);
    }
    obj["gamma"] = g;
    return obj;
}

}  // namespace

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::echelon: return "echelon";
        case ModelKind::chain: return "chain";
        case ModelKind::full_network: return "full-network";
    }
    return "?";
}

ParsedConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("document: top level must be an object");
    if (!doc.contains("model")) throw ConfigError("document: missing field 'model'");
    if (!doc["model"].is_string()) throw ConfigError("model: must be a string");
    const std::string model = doc["model"].get<std::string>();

    ParsedConfig config;
    if (model == "echelon") {
        EchelonSpec spec = echelon_from_json(doc, "document", /*demand_required=*/true);
        validate(spec);
        config.spec = std::move(spec);
        if (doc.contains("y0")) config.initial_levels = vector_field(doc["y0"], "y0");
    } else if (model == "chain") {
        if (!doc.contains("echelons")) throw ConfigError("document: missing field 'echelons'");
        const json& es = doc["echelons"];
        if (!es.is_array()) throw ConfigError("echelons: must be an array");
        ChainSpec spec;
        spec.echelons.reserve(es.size());
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::string ctx = "echelons[" + std::to_string(i) + "]";
            if (!es[i].is_object()) throw ConfigError(ctx + ": must be an object");
            ChainEchelon e;
            e.capacity = number_field(es[i], "C", ctx);
            e.max_supply = number_field(es[i], "mu", ctx);
            e.deterioration = number_field(es[i], "theta", ctx);
            spec.echelons.push_back(e);
        }
        spec.terminal_demand = number_field(doc, "lambda_c", "document");
        validate(spec);
        config.spec = std::move(spec);
        if (doc.contains("x0")) config.initial_levels = vector_field(doc["x0"], "x0");
    } else if (model == "full-network") {
        if (!doc.contains("echelons")) throw ConfigError("document: missing field 'echelons'");
        const json& es = doc["echelons"];
        if (!es.is_array()) throw ConfigError("echelons: must be an array");
        FullNetworkSpec spec;
        spec.echelons.reserve(es.size());
        for (std::size_t e = 0; e < es.size(); ++e) {
            const std::string ctx = "echelons[" + std::to_string(e) + "]";
            if (!es[e].is_object()) throw ConfigError(ctx + ": must be an object");
            spec.echelons.push_back(echelon_from_json(es[e], ctx, /*demand_required=*/false));
        }
        spec.terminal_demand = number_field(doc, "lambda_c", "document");
        validate(spec);
        config.spec = std::move(spec);
    } else {
        throw ConfigError("model: unknown kind '" + model +
                          "' (expected echelon, chain, or full-network)");
    }

    if (config.initial_levels) {
        std::size_t expected = 0;
        if (config.kind() == ModelKind::echelon) expected = config.echelon().size();
        if (config.kind() == ModelKind::chain) expected = config.chain().size();
        if (config.initial_levels->size() != expected) {
            throw ConfigError("initial levels: expected " + std::to_string(expected) +
                              " entries, got " + std::to_string(config.initial_levels->size()));
        }
    }
    return config;
}

ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize(const ParsedConfig& config) {
    json doc;
    doc["model"] = to_string(config.kind());
    switch (config.kind()) {
        case ModelKind::echelon: {
            const auto& spec = config.echelon();
            doc.update(echelon_to_json(spec));
            if (config.initial_levels) doc["y0"] = *config.initial_levels;
            break;
        }
        case ModelKind::chain: {
            const auto& spec = config.chain();
            doc["echelons"] = json::array();
            for (const auto& e : spec.echelons) {
                doc["echelons"].push_back(
                    {{"C", e.capacity}, {"mu", e.max_supply}, {"theta", e.deterioration}});
            }
            doc["lambda_c"] = spec.terminal_demand;
            if (config.initial_levels) doc["x0"] = *config.initial_levels;
            break;
        }
        case ModelKind::full_network: {
            const auto& spec = config.network();
            doc["echelons"] = json::array();
            for (const auto& e : spec.echelons) doc["echelons"].push_back(echelon_to_json(e));
            doc["lambda_c"] = spec.terminal_demand;
            break;
        }
    }
    return doc.dump(2);
}

}  // namespace invnet
