#include "affiq.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "affiq/body_json.hpp"
#include "affiq/quermass.hpp"
#include "affiq/rolodex.hpp"
#include "affiq/suites.hpp"
#include "affiq/symmetry.hpp"

using nlohmann::json;

struct affiq_body {
    affiq::Body body;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

int status_of(affiq::ErrorCode code) {
    using affiq::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::UnknownName:
        case ErrorCode::BadDims:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::NotUnitVector:
        case ErrorCode::ZeroVector:
            return AFFIQ_ERR_USAGE;
        default:
            return AFFIQ_ERR_NUMERIC;
    }
}

template <class F>
int wrap(F&& fn) {
    try {
        fn();
        return AFFIQ_OK;
    } catch (const affiq::Error& e) {
        set_error(e.what());
        return status_of(e.code());
    } catch (const json::exception& e) {
        set_error(std::string("json: ") + e.what());
        return AFFIQ_ERR_USAGE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return AFFIQ_ERR_NUMERIC;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

json estimate_json(const affiq::MCEstimate& e) {
    json j;
    j["value"] = e.value;
    j["stderr"] = e.std_error;
    j["n_samples"] = e.n_samples;
    j["seed"] = e.seed;
    switch (e.transform) {
        case affiq::MCEstimate::Transform::None: j["transform"] = "none"; break;
        case affiq::MCEstimate::Transform::ReciprocalRoot:
            j["transform"] = "reciprocal-root";
            j["p"] = e.power;
            break;
        case affiq::MCEstimate::Transform::LogMean: j["transform"] = "log-mean"; break;
    }
    return j;
}

affiq::BodyParams params_from_json(const char* params_json, int n) {
    affiq::BodyParams params;
    if (params_json == nullptr || *params_json == '\0') return params;
    const json j = json::parse(params_json);
    if (j.contains("m")) params.m = j["m"].get<int>();
    if (j.contains("radius")) params.radius = j["radius"].get<double>();
    if (j.contains("sides")) {
        params.sides.resize(j["sides"].size());
        for (std::size_t i = 0; i < j["sides"].size(); ++i)
            params.sides[i] = j["sides"][i].get<double>();
    }
    if (j.contains("center")) {
        params.center.resize(j["center"].size());
        for (std::size_t i = 0; i < j["center"].size(); ++i)
            params.center[i] = j["center"][i].get<double>();
    }
    if (j.contains("diag")) {
        params.shape = affiq::Mat::Zero(n, n);
        for (int i = 0; i < n && i < static_cast<int>(j["diag"].size()); ++i)
            params.shape(i, i) = j["diag"][i].get<double>();
    }
    if (j.contains("shape")) {
        params.shape = affiq::Mat(n, n);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) params.shape(i, c) = j["shape"][i][c].get<double>();
    }
    return params;
}

}  // namespace

extern "C" {

const char* affiq_version(void) { return "affiq 1.0.0"; }

const char* affiq_last_error(void) { return g_last_error.c_str(); }

void affiq_string_free(char* s) { std::free(s); }

void affiq_body_free(affiq_body* b) { delete b; }

int affiq_body_generate(const char* kind, int n, const char* params_json, uint64_t seed,
                        affiq_body** out) {
    return wrap([&] {
        affiq::require(kind != nullptr && out != nullptr, affiq::ErrorCode::InvalidArgument,
                       "null argument");
        const auto params = params_from_json(params_json, n);
        *out = new affiq_body{affiq::standard_body(kind, n, params, affiq::RngStream(seed))};
    });
}

int affiq_body_parse(const char* json_text, affiq_body** out) {
    return wrap([&] {
        affiq::require(json_text != nullptr && out != nullptr,
                       affiq::ErrorCode::InvalidArgument, "null argument");
        *out = new affiq_body{affiq::body_from_json(json::parse(json_text))};
    });
}

int affiq_body_dump(const affiq_body* b, char** out_json) {
    return wrap([&] {
        affiq::require(b != nullptr && out_json != nullptr,
                       affiq::ErrorCode::InvalidArgument, "null argument");
        *out_json = dup_string(affiq::body_to_json(b->body).dump(2));
    });
}

int affiq_body_info(const affiq_body* b, size_t budget, uint64_t seed, char** out_json) {
    return wrap([&] {
        affiq::require(b != nullptr && out_json != nullptr,
                       affiq::ErrorCode::InvalidArgument, "null argument");
        json j;
        j["kind"] = affiq::body_kind(b->body);
        j["dim"] = affiq::body_dim(b->body);
        if (const auto* v = std::get_if<affiq::VPolytope>(&b->body))
            j["vertices"] = v->count();
        if (const auto* h = std::get_if<affiq::HPolytope>(&b->body)) j["rows"] = h->count();
        const auto vol = affiq::body_volume(b->body, budget == 0 ? 200000 : budget,
                                            affiq::RngStream(seed));
        j["volume"] = vol.value;
        j["volume_stderr"] = vol.std_error;
        j["volume_method"] = vol.method == affiq::VolumeMethod::Exact ? "exact" : "monte-carlo";
        j["inradius"] = affiq::inscribed_radius(b->body);
        *out_json = dup_string(j.dump(2));
    });
}

int affiq_quermass(const affiq_body* b, int k, double p, int p_is_log, size_t budget,
                   uint64_t seed, int threads, char** out_json) {
    return wrap([&] {
        affiq::require(b != nullptr && out_json != nullptr,
                       affiq::ErrorCode::InvalidArgument, "null argument");
        const int n = affiq::body_dim(b->body);
        const affiq::RngStream rng{seed};
        const bool log_mean = p_is_log != 0;
        affiq::QuermassSpec spec{k, log_mean ? 0.0 : p, log_mean, budget};

        const auto shadows = affiq::shadow_samples(b->body, k, budget, rng, threads);
        const auto q = affiq::q_kp_from_samples(shadows, n, k, spec.p, log_mean, seed);
        const auto vol = affiq::body_volume(b->body, budget, rng.substream(0x10f), threads);
        const double qball = affiq::ball_quermass(n, k, vol.value);

        json j;
        j["n"] = n;
        j["k"] = k;
        j["p"] = log_mean ? json("log") : json(spec.p);
        j["q_kp"] = estimate_json(q);
        affiq::MCEstimate ik = q;
        ik.value = q.value / qball;
        ik.std_error = q.std_error / qball;
        j["i_kp"] = estimate_json(ik);
        j["volume"] = vol.value;
        if (!log_mean && spec.p == -static_cast<double>(n)) j["phi_k"] = estimate_json(q);
        *out_json = dup_string(j.dump(2));
    });
}

int affiq_symmetrize(const affiq_body* b, const double* u, int u_len, double t, int n_extra,
                     uint64_t seed, affiq_body** out) {
    return wrap([&] {
        affiq::require(b != nullptr && u != nullptr && out != nullptr,
                       affiq::ErrorCode::InvalidArgument, "null argument");
        const auto* vp = std::get_if<affiq::VPolytope>(&b->body);
        affiq::require(vp != nullptr, affiq::ErrorCode::UnsupportedRepresentation,
                       "symmetrization needs a V-polytope");
        const int n = vp->dim();
        affiq::require(u_len == n, affiq::ErrorCode::DimensionMismatch, "direction length");
        affiq::Vec dir(n);
        for (int i = 0; i < n; ++i) dir[i] = u[i];
        if (n_extra <= 0) n_extra = n <= 4 ? 2000 : 8000;
        auto shadow = affiq::shadow_body(*vp, dir, t, n_extra, affiq::RngStream(seed));
        *out = new affiq_body{affiq::Body{std::move(shadow.body)}};
    });
}

int affiq_bp_check(int n, int k, size_t budget, uint64_t seed, int threads, char** out_json) {
    return wrap([&] {
        affiq::require(out_json != nullptr, affiq::ErrorCode::InvalidArgument, "null out");
        const affiq::RngStream rng{seed, 0xb9};
        affiq::RngStream dir_rng = rng.substream(1);
        const affiq::Vec u = affiq::sample_sphere(n, dir_rng);

        const affiq::Body cube = affiq::standard_body("cube", n);
        const affiq::Body simplex = affiq::standard_body("simplex", n);
        struct TestFn {
            const char* name;
            std::function<double(const affiq::Subspace&)> f;
        };
        const double nd = n;
        std::vector<TestFn> fns;
        fns.push_back({"constant", [](const affiq::Subspace&) { return 1.0; }});
        fns.push_back({"cube-shadow", [&](const affiq::Subspace& f) {
                           return affiq::projection_volume(cube, f).value;
                       }});
        fns.push_back({"simplex-shadow", [&](const affiq::Subspace& f) {
                           return affiq::projection_volume(simplex, f).value;
                       }});
        fns.push_back({"cube-neg-n", [&, nd](const affiq::Subspace& f) {
                           return std::pow(affiq::projection_volume(cube, f).value, -nd);
                       }});
        fns.push_back({"simplex-neg-n", [&, nd](const affiq::Subspace& f) {
                           return std::pow(affiq::projection_volume(simplex, f).value, -nd);
                       }});

        json battery = json::array();
        std::vector<double> ratios, errors;
        for (std::size_t i = 0; i < fns.size(); ++i) {
            const auto chk = affiq::bp_ratio_check(fns[i].f, u, n, k, budget,
                                                   rng.substream(2 + i), threads);
            json row;
            row["f"] = fns[i].name;
            row["lhs"] = estimate_json(chk.lhs);
            row["rhs"] = estimate_json(chk.rhs);
            row["ratio"] = chk.ratio;
            row["ratio_stderr"] = chk.ratio_std_error;
            battery.push_back(std::move(row));
            ratios.push_back(chk.ratio);
            errors.push_back(chk.ratio_std_error);
        }
        bool pass = true;
        for (std::size_t i = 1; i < ratios.size(); ++i) {
            const double joint =
                std::sqrt(errors[0] * errors[0] + errors[i] * errors[i]);
            if (std::abs(ratios[i] - ratios[0]) > 4.0 * joint) pass = false;
        }
        json j;
        j["n"] = n;
        j["k"] = k;
        j["budget"] = budget;
        j["seed"] = seed;
        j["battery"] = std::move(battery);
        j["pass"] = pass;
        *out_json = dup_string(j.dump(2));
    });
}

int affiq_rolodex_check(int n, int k, size_t budget, uint64_t seed, int threads,
                        char** out_json) {
    return wrap([&] {
        affiq::require(out_json != nullptr, affiq::ErrorCode::InvalidArgument, "null out");
        const affiq::RngStream rng{seed, 0x307};
        affiq::RngStream dir_rng = rng.substream(1);
        const affiq::Vec u = affiq::sample_sphere(n, dir_rng);

        struct Probe {
            const char* name;
            affiq::Body body;
        };
        std::vector<Probe> probes;
        probes.push_back({"ball", affiq::standard_body("ball", n)});
        probes.push_back({"cube", affiq::standard_body("cube", n)});
        probes.push_back({"simplex", affiq::standard_body("simplex", n)});

        json battery = json::array();
        std::vector<double> ratios, errors;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const auto mu = affiq::mu_estimate(probes[i].body, u, k, budget,
                                               rng.substream(2 + 2 * i), threads);
            // plain Haar mean of |P_F K|^{-n}
            std::vector<double> raw;
            const affiq::Body& body = probes[i].body;
            affiq::fill_indexed_samples(
                raw, budget, rng.substream(3 + 2 * i),
                [&](std::size_t, affiq::RngStream s) {
                    const auto f = affiq::sample_grassmannian(n, k, s);
                    return std::pow(affiq::projection_volume(body, f).value, -n);
                },
                threads);
            const auto qr = affiq::mean_estimate(raw, seed);
            json row;
            row["body"] = probes[i].name;
            row["mu"] = estimate_json(mu);
            row["q_raw"] = estimate_json(qr);
            const double ratio = mu.value / qr.value;
            const double rse = affiq::ratio_std_error(mu, qr);
            row["ratio"] = ratio;
            row["ratio_stderr"] = rse;
            battery.push_back(std::move(row));
            ratios.push_back(ratio);
            errors.push_back(rse);
        }
        bool pass = true;
        for (std::size_t i = 1; i < ratios.size(); ++i) {
            const double joint =
                std::sqrt(errors[0] * errors[0] + errors[i] * errors[i]);
            if (std::abs(ratios[i] - ratios[0]) > 4.0 * joint) pass = false;
        }
        json j;
        j["n"] = n;
        j["k"] = k;
        j["budget"] = budget;
        j["seed"] = seed;
        j["battery"] = std::move(battery);
        j["pass"] = pass;
        *out_json = dup_string(j.dump(2));
    });
}

int affiq_suite_list(char** out_json) {
    return wrap([&] {
        affiq::require(out_json != nullptr, affiq::ErrorCode::InvalidArgument, "null out");
        json j = json::array();
        for (const auto& name : affiq::suite_names()) j.push_back(name);
        *out_json = dup_string(j.dump(2));
    });
}

int affiq_verify(const char* suite, const char* config_json, char** out_report_json,
                 char** out_report_csv, int* out_pass) {
    return wrap([&] {
        affiq::require(suite != nullptr, affiq::ErrorCode::InvalidArgument, "null suite");
        affiq::SuiteConfig cfg;
        if (config_json != nullptr && *config_json != '\0') {
            const json j = json::parse(config_json);
            if (j.contains("dims")) cfg.dims = j["dims"].get<std::vector<int>>();
            if (j.contains("k")) cfg.k_values = j["k"].get<std::vector<int>>();
            if (j.contains("budget")) cfg.budget = j["budget"].get<std::size_t>();
            if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
            if (j.contains("directions")) cfg.directions = j["directions"].get<int>();
            if (j.contains("t_grid")) cfg.t_grid = j["t_grid"].get<std::vector<double>>();
            if (j.contains("p_grid")) cfg.p_grid = j["p_grid"].get<std::vector<double>>();
            if (j.contains("n_extra")) cfg.n_extra = j["n_extra"].get<int>();
            if (j.contains("slab_directions"))
                cfg.slab_directions = j["slab_directions"].get<int>();
            if (j.contains("chord_probes")) cfg.chord_probes = j["chord_probes"].get<int>();
            if (j.contains("catalog")) cfg.catalog_text = j["catalog"].get<std::string>();
            if (j.contains("bodies"))
                cfg.bodies = j["bodies"].get<std::vector<std::string>>();
            if (j.contains("explore")) cfg.explore = j["explore"].get<bool>();
        }
        const auto report = affiq::run_suite(suite, cfg);
        if (out_report_json != nullptr) *out_report_json = dup_string(report.to_json_string());
        if (out_report_csv != nullptr) *out_report_csv = dup_string(report.to_csv());
        if (out_pass != nullptr) *out_pass = report.pass ? 1 : 0;
    });
}

}  // extern "C"
