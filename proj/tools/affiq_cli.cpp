// affiq command-line interface. A thin shell over the C API: parses flags,
// forwards to libaffiq, writes JSON/CSV outputs, maps statuses to exit codes
// (0 pass, 1 suite failure, 2 usage, 3 numerical failure).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "affiq.h"

using nlohmann::json;

namespace {

constexpr int kExitSuiteFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { affiq_string_free(ptr); }
    std::string str() const { return ptr != nullptr ? std::string(ptr) : std::string(); }
};

struct OwnedBody {
    affiq_body* ptr = nullptr;
    ~OwnedBody() { affiq_body_free(ptr); }
};

int report_status(int status) {
    if (status != AFFIQ_OK) std::cerr << "error: " << affiq_last_error() << "\n";
    return status;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        std::exit(kExitUsage);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        std::exit(kExitUsage);
    }
    out << text;
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

OwnedBody load_body(const std::string& path) {
    OwnedBody body;
    const std::string text = read_file(path);
    if (report_status(affiq_body_parse(text.c_str(), &body.ptr)) != AFFIQ_OK)
        std::exit(kExitUsage);
    return body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"affiq: quermassintegrals of convex bodies and inequality suites"};
    app.require_subcommand(1);

    // ---- body generate / inspect -------------------------------------
    auto* body_cmd = app.add_subcommand("body", "generate or inspect bodies");
    body_cmd->require_subcommand(1);

    std::string gen_kind = "cube", gen_sides, gen_diag, out_path;
    int gen_n = 3, gen_m = 0;
    double gen_radius = 1.0;
    std::optional<uint64_t> seed;
    auto* gen = body_cmd->add_subcommand("generate", "emit a body as JSON");
    gen->add_option("--kind", gen_kind, "cube|box|simplex|cross-polytope|random-poly|ball-polytope|ellipsoid|ball");
    gen->add_option("--n", gen_n, "ambient dimension");
    gen->add_option("--m", gen_m, "vertex count for random kinds");
    gen->add_option("--radius", gen_radius, "ball radius");
    gen->add_option("--sides", gen_sides, "box sides, comma separated");
    gen->add_option("--diag", gen_diag, "ellipsoid diagonal, comma separated");
    gen->add_option("--seed", seed, "rng seed (required for random kinds)");
    gen->add_option("--out", out_path, "output path (default stdout)");

    std::string inspect_path;
    std::optional<uint64_t> inspect_seed;
    size_t inspect_budget = 200000;
    auto* inspect = body_cmd->add_subcommand("inspect", "dim, counts, volume, inradius");
    inspect->add_option("file", inspect_path, "body JSON file")->required();
    inspect->add_option("--budget", inspect_budget, "MC volume budget");
    inspect->add_option("--seed", inspect_seed, "MC volume seed");

    // ---- quermass compute ---------------------------------------------
    auto* quer = app.add_subcommand("quermass", "L^p-moment quermassintegrals");
    auto* compute = quer->add_subcommand("compute", "Q_{k,p}, Phi_k, I_{k,p}");
    std::string q_body, q_p = "1";
    int q_k = 1, threads = 0;
    size_t q_budget = 200000;
    compute->add_option("--body", q_body, "body JSON file")->required();
    compute->add_option("--k", q_k, "projection rank");
    compute->add_option("--p", q_p, "moment (real, or 'log' for p = 0)");
    compute->add_option("--budget", q_budget, "sample count");
    compute->add_option("--seed", seed, "rng seed")->required();
    compute->add_option("--threads", threads, "worker threads (0 = auto)");
    compute->add_option("--out", out_path, "output path");

    // ---- symmetrize ----------------------------------------------------
    auto* symm = app.add_subcommand("symmetrize", "Steiner symmetral / shadow body");
    std::string s_body, s_u;
    double s_t = 0.0;
    int s_extra = 0;
    symm->add_option("--body", s_body, "body JSON file")->required();
    symm->add_option("--u", s_u, "direction, comma separated (normalized)")->required();
    symm->add_option("--t", s_t, "shadow parameter in [-1, 1] (0 = symmetral)");
    symm->add_option("--n-extra", s_extra, "extra fiber base points (0 = default)");
    symm->add_option("--seed", seed, "rng seed")->required();
    symm->add_option("--out", out_path, "output path");

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite_name, catalog_path, v_format = "json", v_bodies, v_tgrid, v_pgrid;
    std::vector<int> v_dims, v_ks;
    size_t v_budget = 200000;
    int v_dirs = 0, v_extra = 0, v_slabs = 0, v_probes = 0;
    bool v_list = false, v_explore = false;
    verify->add_option("suite", suite_name, "suite name (see --list)");
    verify->add_flag("--list", v_list, "list available suites");
    verify->add_option("--n", v_dims, "ambient dimension(s)");
    verify->add_option("--k", v_ks, "projection rank(s)");
    verify->add_option("--budget", v_budget, "samples per case");
    verify->add_option("--seed", seed, "rng seed");
    verify->add_option("--threads", threads, "worker threads (0 = auto)");
    verify->add_option("--dirs", v_dirs, "directions per body");
    verify->add_option("--t", v_tgrid, "shadow t grid, comma separated");
    verify->add_option("--p", v_pgrid, "moment grid, comma separated");
    verify->add_option("--n-extra", v_extra, "symmetral refinement");
    verify->add_option("--slab-dirs", v_slabs, "slab directions");
    verify->add_option("--chord-probes", v_probes, "chord probes per direction");
    verify->add_option("--catalog", catalog_path, "catalog JSON file");
    verify->add_option("--bodies", v_bodies, "catalog ids, comma separated");
    verify->add_flag("--explore", v_explore, "report the unproven af-chain range");
    verify->add_option("--out", out_path, "output basename (.json/.csv appended)");
    verify->add_option("--format", v_format, "json|csv (stdout format)");

    // ---- bp-check / rolodex-check ---------------------------------------
    auto* bp = app.add_subcommand("bp-check", "Blaschke-Petkantschin f-invariance");
    int bp_n = 3, bp_k = 2;
    size_t bp_budget = 200000;
    bp->add_option("--n", bp_n, "ambient dimension");
    bp->add_option("--k", bp_k, "subspace dimension");
    bp->add_option("--budget", bp_budget, "samples per side");
    bp->add_option("--seed", seed, "rng seed")->required();
    bp->add_option("--threads", threads, "worker threads (0 = auto)");
    bp->add_option("--out", out_path, "output path");

    auto* rolo = app.add_subcommand("rolodex-check", "Rolodex measure identity");
    int ro_n = 3, ro_k = 2;
    size_t ro_budget = 200000;
    rolo->add_option("--n", ro_n, "ambient dimension");
    rolo->add_option("--k", ro_k, "subspace dimension");
    rolo->add_option("--budget", ro_budget, "samples per body");
    rolo->add_option("--seed", seed, "rng seed")->required();
    rolo->add_option("--threads", threads, "worker threads (0 = auto)");
    rolo->add_option("--out", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (threads <= 0) {
        if (const char* env = std::getenv("AFFIQ_THREADS")) threads = std::atoi(env);
    }

    if (gen->parsed()) {
        const bool stochastic = gen_kind == "random-poly" || gen_kind == "ball-polytope";
        if (stochastic && !seed) {
            std::cerr << "error: --seed is required for random body kinds\n";
            return kExitUsage;
        }
        json params;
        if (gen_m > 0) params["m"] = gen_m;
        params["radius"] = gen_radius;
        if (!gen_sides.empty()) params["sides"] = parse_vector(gen_sides);
        if (!gen_diag.empty()) params["diag"] = parse_vector(gen_diag);
        OwnedBody body;
        int status = affiq_body_generate(gen_kind.c_str(), gen_n, params.dump().c_str(),
                                         seed.value_or(0), &body.ptr);
        if (report_status(status) != AFFIQ_OK) return status;
        OwnedString text;
        status = affiq_body_dump(body.ptr, &text.ptr);
        if (report_status(status) != AFFIQ_OK) return status;
        write_output(text.str(), out_path);
        return 0;
    }

    if (inspect->parsed()) {
        OwnedBody body = load_body(inspect_path);
        OwnedString text;
        const int status =
            affiq_body_info(body.ptr, inspect_budget, inspect_seed.value_or(1), &text.ptr);
        if (report_status(status) != AFFIQ_OK) return status;
        write_output(text.str(), "");
        return 0;
    }

    if (compute->parsed()) {
        OwnedBody body = load_body(q_body);
        const bool is_log = q_p == "log";
        double p = 0.0;
        if (!is_log) {
            try {
                p = std::stod(q_p);
            } catch (...) {
                std::cerr << "error: --p expects a real number or 'log'\n";
                return kExitUsage;
            }
        }
        OwnedString text;
        const int status = affiq_quermass(body.ptr, q_k, p, is_log ? 1 : 0, q_budget, *seed,
                                          threads, &text.ptr);
        if (report_status(status) != AFFIQ_OK) return status;
        write_output(text.str(), out_path);
        return 0;
    }

    if (symm->parsed()) {
        OwnedBody body = load_body(s_body);
        std::vector<double> u = parse_vector(s_u);
        double norm = 0.0;
        for (double x : u) norm += x * x;
        norm = std::sqrt(norm);
        if (norm <= 0.0) {
            std::cerr << "error: zero direction\n";
            return kExitUsage;
        }
        for (double& x : u) x /= norm;
        OwnedBody out_body;
        int status = affiq_symmetrize(body.ptr, u.data(), static_cast<int>(u.size()), s_t,
                                      s_extra, *seed, &out_body.ptr);
        if (report_status(status) != AFFIQ_OK) return status;
        OwnedString text;
        status = affiq_body_dump(out_body.ptr, &text.ptr);
        if (report_status(status) != AFFIQ_OK) return status;
        write_output(text.str(), out_path);
        return 0;
    }

    if (verify->parsed()) {
        if (v_list) {
            OwnedString names;
            if (report_status(affiq_suite_list(&names.ptr)) != AFFIQ_OK) return kExitNumeric;
            write_output(names.str(), "");
            return 0;
        }
        if (suite_name.empty()) {
            std::cerr << "error: suite name required (or --list)\n";
            return kExitUsage;
        }
        if (!seed) {
            std::cerr << "error: --seed is required\n";
            return kExitUsage;
        }
        json cfg;
        cfg["seed"] = *seed;
        cfg["budget"] = v_budget;
        if (threads > 0) cfg["threads"] = threads;
        if (!v_dims.empty()) cfg["dims"] = v_dims;
        if (!v_ks.empty()) cfg["k"] = v_ks;
        if (v_dirs > 0) cfg["directions"] = v_dirs;
        if (!v_tgrid.empty()) cfg["t_grid"] = parse_vector(v_tgrid);
        if (!v_pgrid.empty()) cfg["p_grid"] = parse_vector(v_pgrid);
        if (v_extra > 0) cfg["n_extra"] = v_extra;
        if (v_slabs > 0) cfg["slab_directions"] = v_slabs;
        if (v_probes > 0) cfg["chord_probes"] = v_probes;
        if (!catalog_path.empty()) cfg["catalog"] = read_file(catalog_path);
        if (!v_bodies.empty()) {
            std::vector<std::string> ids;
            std::stringstream ss(v_bodies);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) ids.push_back(item);
            cfg["bodies"] = ids;
        }
        if (v_explore) cfg["explore"] = true;

        OwnedString rep_json, rep_csv;
        int pass = 0;
        const int status = affiq_verify(suite_name.c_str(), cfg.dump().c_str(), &rep_json.ptr,
                                        &rep_csv.ptr, &pass);
        if (report_status(status) != AFFIQ_OK) return status;
        if (out_path.empty()) {
            write_output(v_format == "csv" ? rep_csv.str() : rep_json.str(), "");
        } else {
            write_output(rep_json.str(), out_path + ".json");
            write_output(rep_csv.str(), out_path + ".csv");
        }
        return pass == 1 ? 0 : kExitSuiteFail;
    }

    if (bp->parsed()) {
        OwnedString text;
        const int status =
            affiq_bp_check(bp_n, bp_k, bp_budget, *seed, threads, &text.ptr);
        if (report_status(status) != AFFIQ_OK) return status;
        write_output(text.str(), out_path);
        const auto parsed = json::parse(text.str());
        return parsed["pass"].get<bool>() ? 0 : kExitSuiteFail;
    }

    if (rolo->parsed()) {
        OwnedString text;
        const int status =
            affiq_rolodex_check(ro_n, ro_k, ro_budget, *seed, threads, &text.ptr);
        if (report_status(status) != AFFIQ_OK) return status;
        write_output(text.str(), out_path);
        const auto parsed = json::parse(text.str());
        return parsed["pass"].get<bool>() ? 0 : kExitSuiteFail;
    }

    return kExitUsage;
}
