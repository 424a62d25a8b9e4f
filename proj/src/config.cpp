#include "nullgeo/config.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace nullgeo {

namespace {

using nlohmann::ordered_json;

const char* const kPipelines[] = {"uniform",      "gh-to-limit", "holder", "lower-bound",
                                  "swif",         "oracle-check", "pointwise"};

bool known_pipeline(const std::string& name) {
    return std::find_if(std::begin(kPipelines), std::end(kPipelines),
                        [&](const char* p) { return name == p; }) != std::end(kPipelines);
}

double as_number(const ordered_json& v, const char* field) {
    if (!v.is_number()) throw std::invalid_argument(std::string("config field ") + field +
                                                    " must be a number");
    return v.get<double>();
}

int as_int(const ordered_json& v, const char* field) {
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("config field ") + field +
                                                            " must be an integer");
    return v.get<int>();
}

std::string as_string(const ordered_json& v, const char* field) {
    if (!v.is_string()) throw std::invalid_argument(std::string("config field ") + field +
                                                    " must be a string");
    return v.get<std::string>();
}

}  // namespace

bool is_pipeline_id(const std::string& name) { return known_pipeline(name); }

ExperimentConfig config_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

    ExperimentConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "example") cfg.example = as_string(value, "example");
        else if (key == "pipeline") cfg.pipeline = as_string(value, "pipeline");
        else if (key == "j_ladder") {
            if (!value.is_array())
                throw std::invalid_argument("config field j_ladder must be an array");
            cfg.j_ladder.clear();
            for (const auto& item : value) cfg.j_ladder.push_back(as_number(item, "j_ladder"));
        } else if (key == "level") cfg.level = as_int(value, "level");
        else if (key == "samples") {
            if (!value.is_object())
                throw std::invalid_argument("config field samples must be an object");
            for (const auto& [skey, svalue] : value.items()) {
                if (skey == "spatial") cfg.samples.spatial = as_int(svalue, "samples.spatial");
                else if (skey == "times") cfg.samples.times = as_int(svalue, "samples.times");
                else if (skey == "pairs") cfg.samples.pairs = as_int(svalue, "samples.pairs");
                else throw std::invalid_argument("unknown config field: samples." + skey);
            }
        } else if (key == "lambda") cfg.lambda = as_number(value, "lambda");
        else if (key == "kappa") cfg.kappa = as_number(value, "kappa");
        else if (key == "alpha") cfg.alpha = as_number(value, "alpha");
        else if (key == "p") cfg.p = as_number(value, "p");
        else if (key == "profile_lambda") cfg.profile_lambda = as_number(value, "profile_lambda");
        else if (key == "eps") cfg.eps = as_number(value, "eps");
        else if (key == "oracle_pairs") cfg.oracle_pairs = as_int(value, "oracle_pairs");
        else if (key == "out_dir") cfg.out_dir = as_string(value, "out_dir");
        else if (key == "seed") {
            if (!value.is_number_unsigned() && !value.is_number_integer())
                throw std::invalid_argument("config field seed must be a nonnegative integer");
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "metric") cfg.metric = as_string(value, "metric");
        else throw std::invalid_argument("unknown config field: " + key);
    }
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    ordered_json doc;
    doc["example"] = cfg.example;
    doc["pipeline"] = cfg.pipeline;
    doc["j_ladder"] = cfg.j_ladder;
    doc["level"] = cfg.level;
    doc["samples"] =
        ordered_json{{"spatial", cfg.samples.spatial}, {"times", cfg.samples.times},
                     {"pairs", cfg.samples.pairs}};
    doc["lambda"] = cfg.lambda;
    doc["kappa"] = cfg.kappa;
    doc["alpha"] = cfg.alpha;
    doc["p"] = cfg.p;
    doc["profile_lambda"] = cfg.profile_lambda;
    doc["eps"] = cfg.eps;
    doc["oracle_pairs"] = cfg.oracle_pairs;
    doc["out_dir"] = cfg.out_dir;
    if (cfg.seed) doc["seed"] = *cfg.seed;
    doc["metric"] = cfg.metric;
    return doc.dump(2) + "\n";
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> out;
    if (!is_example_id(cfg.example)) out.push_back("unknown example id: " + cfg.example);
    if (!known_pipeline(cfg.pipeline)) out.push_back("unknown pipeline: " + cfg.pipeline);
    for (double j : cfg.j_ladder)
        if (!(j >= 2.0)) {
            out.push_back("j ladder entries must be at least 2");
            break;
        }
    for (std::size_t i = 1; i < cfg.j_ladder.size(); ++i)
        if (!(cfg.j_ladder[i] > cfg.j_ladder[i - 1])) {
            out.push_back("j ladder must be strictly increasing");
            break;
        }
    if (cfg.level < 0 || cfg.level > 6) out.push_back("refinement level must be between 0 and 6");
    if (cfg.samples.spatial < 18)
        out.push_back("spatial sample too small to hold the center and the boundary ring");
    if (cfg.samples.times < 2) out.push_back("need at least two time samples");
    if (cfg.samples.pairs < 1) out.push_back("pair budget must be positive");
    if (!(cfg.lambda > 0.0)) out.push_back("good-set deviation budget lambda must be positive");
    if (!(cfg.kappa > 1.0)) out.push_back("volume parameter kappa must exceed 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        out.push_back("holder exponent alpha must lie inside (0, 1)");
    if (!(cfg.p > 2.0)) out.push_back("integral exponent p must exceed the spatial dimension (2)");
    if (cfg.example == "ex34-spline" && !(cfg.profile_lambda > 1.0))
        out.push_back("profile exponent lambda must exceed 1 for the spline family");
    if (!(cfg.eps > 0.0)) out.push_back("pointwise tolerance eps must be positive");
    if (cfg.oracle_pairs < 1) out.push_back("oracle check needs at least one pair");
    if (cfg.out_dir.empty()) out.push_back("output directory must not be empty");
    if (!cfg.seed) out.push_back("seed is required");
    if (!cfg.metric.empty() && cfg.metric != "flat")
        out.push_back("metric must be empty or \"flat\"");
    return out;
}

std::vector<double> default_ladder(const std::string& example) {
    if (example == "ex34-spline") return {100.0, 1000.0, 10000.0};
    return {10.0, 20.0, 50.0, 100.0};
}

}  // namespace nullgeo
