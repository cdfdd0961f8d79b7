#include "oblivion/config_io.hpp"

#include "oblivion/errors.hpp"

namespace oblivion {

namespace {

double require_number(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError("missing or non-numeric field: " + key);
    return j[key].get<double>();
}

template <typename T>
void maybe(const Json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j[key].get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string("field has the wrong type: ") + key);
    }
}

}  // namespace

Json to_json(const TailSpec& spec) {
    Json params;
    switch (spec.family) {
        case TailFamily::SymmetricPareto:
            params = {{"exponent", spec.exponent}, {"scale", spec.scale}};
            break;
        case TailFamily::TwoPoint:
            params = {{"magnitude", spec.magnitude}};
            break;
        case TailFamily::Uniform:
            params = {{"range", spec.range}};
            break;
        case TailFamily::Gaussian:
            params = {{"stddev", spec.stddev}};
            break;
        case TailFamily::CustomAtoms: {
            Json atoms = Json::array();
            for (const auto& [v, w] : spec.atoms) atoms.push_back({v, w});
            params = {{"atoms", atoms}};
            break;
        }
    }
    return Json{{"family", to_string(spec.family)}, {"params", params}};
}

TailSpec tail_from_json(const Json& j) {
    if (!j.contains("family")) throw ConfigError("tail.family missing");
    const std::string family = j["family"].get<std::string>();
    const Json params = j.value("params", Json::object());
    if (family == "symmetric_pareto")
        return TailSpec::symmetric_pareto(require_number(params, "exponent"),
                                          require_number(params, "scale"));
    if (family == "two_point") return TailSpec::two_point(require_number(params, "magnitude"));
    if (family == "uniform") return TailSpec::uniform(require_number(params, "range"));
    if (family == "gaussian") return TailSpec::gaussian(require_number(params, "stddev"));
    if (family == "custom_atoms") {
        if (!params.contains("atoms") || !params["atoms"].is_array())
            throw ConfigError("tail.params.atoms missing or not an array");
        std::vector<std::pair<double, double>> atoms;
        for (const auto& a : params["atoms"]) {
            if (!a.is_array() || a.size() != 2)
                throw ConfigError("tail.params.atoms entries must be [value, weight]");
            atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
        }
        return TailSpec::custom_atoms(std::move(atoms));
    }
    throw ConfigError("unknown tail.family: " + family);
}

Json to_json(const ObliviousNoiseSpec& spec) {
    return Json{{"alpha", spec.alpha},
                {"tail", to_json(spec.tail)},
                {"bounded_variance_mode", spec.bounded_variance_mode},
                {"sigma_xi", spec.sigma_xi}};
}

ObliviousNoiseSpec oblivious_from_json(const Json& j) {
    ObliviousNoiseSpec spec;
    spec.alpha = require_number(j, "alpha");
    if (!j.contains("tail")) throw ConfigError("oblivious noise: tail missing");
    spec.tail = tail_from_json(j["tail"]);
    maybe(j, "bounded_variance_mode", spec.bounded_variance_mode);
    maybe(j, "sigma_xi", spec.sigma_xi);
    spec.validate();
    return spec;
}

Json to_json(const ObservationNoiseSpec& spec) {
    Json j{{"family", to_string(spec.family)}};
    if (spec.family == ObsFamily::RecenteredPareto)
        j["t"] = spec.t;
    else
        j["sigma"] = spec.sigma;
    return j;
}

ObservationNoiseSpec observation_from_json(const Json& j) {
    if (!j.contains("family")) throw ConfigError("observation noise: family missing");
    const std::string family = j["family"].get<std::string>();
    ObservationNoiseSpec spec;
    if (family == "gaussian")
        spec = ObservationNoiseSpec::gaussian(require_number(j, "sigma"));
    else if (family == "scaled_rademacher")
        spec = ObservationNoiseSpec::scaled_rademacher(require_number(j, "sigma"));
    else if (family == "recentered_pareto")
        spec = ObservationNoiseSpec::recentered_pareto(require_number(j, "t"));
    else
        throw ConfigError("unknown observation family: " + family);
    spec.validate();
    return spec;
}

Json to_json(const Shift1DConfig& cfg) {
    return Json{{"eta", cfg.eta},
                {"alpha", cfg.alpha},
                {"sigma", cfg.sigma},
                {"A0_multiplier", cfg.A0_multiplier},
                {"slack_const", cfg.slack_const},
                {"c_near", cfg.c_near},
                {"c_far", cfg.c_far},
                {"C_budget", cfg.C_budget},
                {"u_cap", cfg.u_cap},
                {"pair_budget", cfg.pair_budget},
                {"min_retained", cfg.min_retained},
                {"T_override", cfg.T_override},
                {"bounded_variance_mode", cfg.bounded_variance_mode}};
}

void merge_from_json(Shift1DConfig& cfg, const Json& j) {
    maybe(j, "eta", cfg.eta);
    maybe(j, "alpha", cfg.alpha);
    maybe(j, "sigma", cfg.sigma);
    maybe(j, "A0_multiplier", cfg.A0_multiplier);
    maybe(j, "slack_const", cfg.slack_const);
    maybe(j, "c_near", cfg.c_near);
    maybe(j, "c_far", cfg.c_far);
    maybe(j, "C_budget", cfg.C_budget);
    maybe(j, "u_cap", cfg.u_cap);
    maybe(j, "pair_budget", cfg.pair_budget);
    maybe(j, "min_retained", cfg.min_retained);
    maybe(j, "T_override", cfg.T_override);
    maybe(j, "bounded_variance_mode", cfg.bounded_variance_mode);
}

Json to_json(const AmplifyConfig& cfg) {
    return Json{{"trials", cfg.trials},
                {"c_T", cfg.c_T},
                {"delta", cfg.delta},
                {"ball_radius_multiplier", cfg.ball_radius_multiplier},
                {"quorum", cfg.quorum},
                {"c_coord", cfg.c_coord},
                {"min_singular_scale", cfg.min_singular_scale}};
}

void merge_from_json(AmplifyConfig& cfg, const Json& j) {
    maybe(j, "trials", cfg.trials);
    maybe(j, "c_T", cfg.c_T);
    maybe(j, "delta", cfg.delta);
    maybe(j, "ball_radius_multiplier", cfg.ball_radius_multiplier);
    maybe(j, "quorum", cfg.quorum);
    maybe(j, "c_coord", cfg.c_coord);
    maybe(j, "min_singular_scale", cfg.min_singular_scale);
}

Json to_json(const LdmeConfig& cfg) {
    return Json{{"alpha", cfg.alpha},
                {"eta", cfg.eta},
                {"delta", cfg.delta},
                {"repeats_cap", cfg.repeats_cap},
                {"repeats_override", cfg.repeats_override},
                {"clean_threshold", cfg.clean_threshold}};
}

void merge_from_json(LdmeConfig& cfg, const Json& j) {
    maybe(j, "alpha", cfg.alpha);
    maybe(j, "eta", cfg.eta);
    maybe(j, "delta", cfg.delta);
    maybe(j, "repeats_cap", cfg.repeats_cap);
    maybe(j, "repeats_override", cfg.repeats_override);
    maybe(j, "clean_threshold", cfg.clean_threshold);
}

Json to_json(const LdsoConfig& cfg) {
    return Json{{"eta", cfg.eta},
                {"alpha", cfg.alpha},
                {"sigma", cfg.sigma},
                {"delta", cfg.delta},
                {"m_anchor", cfg.m_anchor},
                {"m_shift", cfg.m_shift},
                {"cache_anchor", cfg.cache_anchor},
                {"smoothness", cfg.smoothness},
                {"learner",
                 Json{{"step_size", cfg.learner.step_size},
                      {"max_iters", cfg.learner.max_iters},
                      {"c_G", cfg.learner.c_G},
                      {"suboptimality_bound", cfg.learner.suboptimality_bound},
                      {"beta", cfg.learner.beta},
                      {"epsilon", cfg.learner.epsilon}}},
                {"ldme", to_json(cfg.ldme)},
                {"shift1d", to_json(cfg.shift)},
                {"amplify", to_json(cfg.amplify)}};
}

void merge_from_json(LdsoConfig& cfg, const Json& j) {
    maybe(j, "eta", cfg.eta);
    maybe(j, "alpha", cfg.alpha);
    maybe(j, "sigma", cfg.sigma);
    maybe(j, "delta", cfg.delta);
    maybe(j, "m_anchor", cfg.m_anchor);
    maybe(j, "m_shift", cfg.m_shift);
    maybe(j, "cache_anchor", cfg.cache_anchor);
    maybe(j, "smoothness", cfg.smoothness);
    if (j.contains("learner")) {
        const Json& l = j["learner"];
        maybe(l, "step_size", cfg.learner.step_size);
        maybe(l, "max_iters", cfg.learner.max_iters);
        maybe(l, "c_G", cfg.learner.c_G);
        maybe(l, "suboptimality_bound", cfg.learner.suboptimality_bound);
        maybe(l, "beta", cfg.learner.beta);
        maybe(l, "epsilon", cfg.learner.epsilon);
    }
    if (j.contains("ldme")) merge_from_json(cfg.ldme, j["ldme"]);
    if (j.contains("shift1d")) merge_from_json(cfg.shift, j["shift1d"]);
    if (j.contains("amplify")) merge_from_json(cfg.amplify, j["amplify"]);
}

}  // namespace oblivion
