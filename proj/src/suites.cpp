#include "affiq/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "affiq/quermass.hpp"
#include "affiq/rolodex.hpp"
#include "affiq/symmetry.hpp"

namespace affiq {

namespace {

constexpr double kQuadTol = 1e-9;

struct Ctx {
    std::vector<CatalogEntry> catalog;
    int threads = 1;
    RngStream root;
    std::uint64_t counter = 0;

    RngStream next() { return root.substream(counter++); }
};

Ctx make_ctx(const SuiteConfig& cfg, std::uint64_t tag) {
    Ctx ctx{cfg.catalog_text.empty() ? default_catalog() : load_catalog(cfg.catalog_text),
            cfg.threads > 0 ? cfg.threads : default_thread_count(), RngStream(cfg.seed, tag), 0};
    return ctx;
}

std::vector<const CatalogEntry*> pick(const Ctx& ctx, const SuiteConfig& cfg, int n,
                                      const std::vector<std::string>& defaults) {
    const auto& ids = cfg.bodies.empty() ? defaults : cfg.bodies;
    std::vector<const CatalogEntry*> out;
    for (const auto& id : ids) {
        const auto* e = find_body(ctx.catalog, id);
        if (e != nullptr && e->n == n) out.push_back(e);
    }
    return out;
}

std::vector<int> k_range(const SuiteConfig& cfg, int n) {
    std::vector<int> ks;
    if (cfg.k_values.empty()) {
        for (int k = 1; k <= n - 1; ++k) ks.push_back(k);
    } else {
        for (int k : cfg.k_values)
            if (k >= 1 && k <= n - 1) ks.push_back(k);
    }
    return ks;
}

std::vector<double> powered(std::span<const double> shadows, double p) {
    std::vector<double> out(shadows.size());
    for (std::size_t i = 0; i < shadows.size(); ++i) out[i] = std::pow(shadows[i], p);
    return out;
}

double qnorm(int n, int k) { return unit_ball_volume(n) / unit_ball_volume(k); }

double exact_volume(const Body& b) {
    // catalog bodies used on exact paths stay within the exact-dispatch regime
    return body_volume(b, 1, RngStream(0)).value;
}

Vec axis(int n, int j) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    return e;
}

// I_{k,p}^{1/k} with a delta-method standard error; volume must be exact.
struct RootedIndex {
    double value;
    double std_error;
};

RootedIndex rooted_index(std::span<const double> shadows, int n, int k, double p,
                         bool log_mean, double volume, std::uint64_t seed) {
    const MCEstimate q = q_kp_from_samples(shadows, n, k, p, log_mean, seed);
    const double qball = ball_quermass(n, k, volume);
    const double ikp = q.value / qball;
    const double se_ikp = q.std_error / qball;
    const double root = std::pow(ikp, 1.0 / k);
    return {root, root / (k * ikp) * se_ikp};
}

std::string format_p(double p, bool log_mean) {
    if (log_mean) return "p0";
    std::string s = "p" + std::to_string(p);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SuiteReport suite_lutwak(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Ctx ctx = make_ctx(cfg, 0x117ull);
    SuiteReport rep;
    rep.suite = "lutwak";
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;
    rep.threads = ctx.threads;

    for (int n : cfg.dims) {
        const std::string sn = std::to_string(n);
        const auto bodies = pick(ctx, cfg, n,
                                 {"cube" + sn, "simplex" + sn, "rand" + sn + "a",
                                  "rand" + sn + "b", "box" + sn + "a", "box" + sn + "b",
                                  "ell" + sn + "a", "ell" + sn + "b"});
        for (const auto* e : bodies) {
            // exact ellipsoids sit on the equality locus; everything else must
            // beat the ball bound strictly
            const bool is_ellipsoid = e->kind == "ellipsoid" || e->kind == "ball";
            const double vol = exact_volume(e->body);
            for (int k : k_range(cfg, n)) {
                RngStream rng = ctx.next();
                const auto shadows = shadow_samples(e->body, k, cfg.budget, rng, ctx.threads);
                const auto phi = q_kp_from_samples(shadows, n, k, -n, false, cfg.seed);
                const double rhs = ball_quermass(n, k, vol);
                const std::string id = e->id + "/n" + sn + "/k" + std::to_string(k);
                CaseRecord c = is_ellipsoid ? equality_case(id, phi.value, rhs, phi.std_error)
                                            : strict_case(id, phi.value, rhs, phi.std_error);
                c.body = e->id;
                c.n = n;
                c.k = k;
                rep.add(std::move(c));
            }
        }
    }
    rep.finalize();
    rep.wall_time_s = wall_seconds(t0);
    return rep;
}

SuiteReport suite_steiner_monotone(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Ctx ctx = make_ctx(cfg, 0x57eull);
    SuiteReport rep;
    rep.suite = "steiner";
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;
    rep.threads = ctx.threads;

    std::vector<double> t_grid = cfg.t_grid;
    std::sort(t_grid.begin(), t_grid.end());

    for (int n : cfg.dims) {
        const std::string sn = std::to_string(n);
        for (const auto* e : pick(ctx, cfg, n, {"simplex" + sn, "cube" + sn, "rand" + sn + "a"})) {
            const auto* vp = std::get_if<VPolytope>(&e->body);
            if (vp == nullptr) continue;

            // direction 0 is the first axis (an exact-symmetry control for
            // boxes); the rest are Haar directions.
            RngStream dir_rng = ctx.next();
            std::vector<Vec> dirs = {axis(n, 0)};
            for (int d = 1; d < cfg.directions; ++d) dirs.push_back(sample_sphere(n, dir_rng));

            const bool box_like = e->kind == "cube" || e->kind == "box";
            for (std::size_t d = 0; d < dirs.size(); ++d) {
                const Vec& u = dirs[d];
                RngStream rng = ctx.next();
                const VPolytope sym =
                    steiner_symmetral(*vp, u, cfg.n_extra, rng.substream(1));
                for (int k : k_range(cfg, n)) {
                    std::vector<double> sk, ss;
                    shadow_sample_pairs(e->body, Body{sym}, k, cfg.budget, rng.substream(2 + k),
                                        sk, ss, ctx.threads);
                    const auto pm = paired_power_margin(powered(sk, -n), powered(ss, -n), -n,
                                                        qnorm(n, k), qnorm(n, k));
                    const std::string id = e->id + "/u" + std::to_string(d) + "/k" +
                                           std::to_string(k);
                    CaseRecord c = (box_like && d == 0)
                                       ? equality_case(id, pm.value_a, pm.value_b, pm.std_error)
                                       : one_sided_case(id, pm.value_a, pm.value_b, pm.std_error);
                    c.body = e->id;
                    c.n = n;
                    c.k = k;
                    c.u_hash = direction_hash(u.data(), n);
                    rep.add(std::move(c));
                }
            }

            // shadow-system profile along one Haar direction: the sampled
            // family is itself a shadow system, so t -> Phi_k must not
            // decrease on [0, 1] for the family itself.
            RngStream prof_rng = ctx.next();
            const Vec u = sample_sphere(n, prof_rng);
            const auto profile = shadow_profile(*vp, u, t_grid, cfg.n_extra, prof_rng);
            for (int k : k_range(cfg, n)) {
                const RngStream shade_rng = ctx.next();
                std::vector<std::vector<double>> shadows(profile.size());
                for (std::size_t i = 0; i < profile.size(); ++i)
                    shadows[i] =
                        shadow_samples(Body{profile[i]}, k, cfg.budget, shade_rng, ctx.threads);
                for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
                    const auto pm =
                        paired_power_margin(powered(shadows[i + 1], -n), powered(shadows[i], -n),
                                            -n, qnorm(n, k), qnorm(n, k));
                    const std::string id = e->id + "/profile/k" + std::to_string(k) + "/t" +
                                           std::to_string(i + 1) + "vs" + std::to_string(i);
                    CaseRecord c = one_sided_case(id, pm.value_a, pm.value_b, pm.std_error);
                    c.body = e->id;
                    c.n = n;
                    c.k = k;
                    c.t = t_grid[i + 1];
                    c.has_t = true;
                    c.u_hash = direction_hash(u.data(), n);
                    rep.add(std::move(c));
                }
            }
        }
    }
    rep.finalize();
    rep.wall_time_s = wall_seconds(t0);
    return rep;
}

SuiteReport suite_af_chain(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Ctx ctx = make_ctx(cfg, 0xafcull);
    SuiteReport rep;
    rep.suite = "af-chain";
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;
    rep.threads = ctx.threads;

    for (int n : cfg.dims) {
        const std::string sn = std::to_string(n);
        std::vector<double> ps = cfg.p_grid;
        if (ps.empty()) ps = {0.0, -1.0, -2.0, -static_cast<double>(n)};

        for (const auto* e :
             pick(ctx, cfg, n, {"cube" + sn, "simplex" + sn, "rand" + sn + "a"})) {
            const double vol = exact_volume(e->body);
            std::vector<std::vector<double>> shadows(n + 1);
            for (int k = 1; k <= n; ++k)
                shadows[k] = shadow_samples(e->body, k, cfg.budget, ctx.next(), ctx.threads);

            for (double p : ps) {
                require(p >= -n - kQuadTol && p <= kQuadTol, ErrorCode::InvalidArgument,
                        "af-chain needs p in [-n, 0]");
                const bool log_mean = p == 0.0;
                for (int k = 1; k <= n; ++k) {
                    for (int m = k + 1; m <= n; ++m) {
                        const bool proven = m >= -p;
                        if (!proven && !cfg.explore) continue;
                        const auto a =
                            rooted_index(shadows[k], n, k, p, log_mean, vol, cfg.seed);
                        const auto b =
                            rooted_index(shadows[m], n, m, p, log_mean, vol, cfg.seed);
                        const double se = std::sqrt(a.std_error * a.std_error +
                                                    b.std_error * b.std_error);
                        const std::string id = e->id + "/" + format_p(p, log_mean) + "/k" +
                                               std::to_string(k) + "m" + std::to_string(m);
                        CaseRecord c = proven ? one_sided_case(id, a.value, b.value, se)
                                              : info_case(id, a.value, b.value, se);
                        c.body = e->id;
                        c.n = n;
                        c.k = k;
                        c.p = p;
                        c.has_p = true;
                        rep.add(std::move(c));
                    }
                }
            }
        }
    }
    rep.finalize();
    rep.wall_time_s = wall_seconds(t0);
    return rep;
}

namespace {

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace

SuiteReport suite_loomis_whitney(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Ctx ctx = make_ctx(cfg, 0x10ull);
    SuiteReport rep;
    rep.suite = "loomis-whitney";
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;
    rep.threads = ctx.threads;

    const int n = cfg.dims.front();
    const int k = n - 1;
    const std::string sn = std::to_string(n);
    const auto subsets = k_subsets(n, k);
    const double cnk = static_cast<double>(subsets.size());
    const double cn1k1 = static_cast<double>(k_subsets(n - 1, k - 1).size());

    for (const auto* e : pick(ctx, cfg, n,
                              {"cube" + sn, "box" + sn + "a", "simplex" + sn, "rand" + sn + "a",
                               "ballpoly" + sn})) {
        const auto* vp = std::get_if<VPolytope>(&e->body);
        if (vp == nullptr) continue;
        const double vol = exact_volume(e->body);
        const bool box_like = e->kind == "cube" || e->kind == "box";

        // (a) classical: product of axis shadows vs |K|^{n-1}, exact volumes
        double prod = 1.0;
        for (int j = 0; j < n; ++j) {
            Mat frame(n, n - 1);
            int c = 0;
            for (int a = 0; a < n; ++a)
                if (a != j) frame.col(c++) = axis(n, a);
            prod *= projection_volume(e->body, Subspace::from_frame(frame)).value;
        }
        const double rhs_classical = std::pow(vol, n - 1);
        {
            const std::string id = e->id + "/classical";
            const double tol = kQuadTol * std::max(1.0, rhs_classical);
            CaseRecord c = box_like ? exact_case(id, prod, rhs_classical, tol)
                                    : exact_one_sided_case(id, prod, rhs_classical, tol);
            c.body = e->id;
            c.n = n;
            c.k = k;
            rep.add(std::move(c));
        }

        // (b) averaged, in the log domain
        {
            RngStream rng = ctx.next();
            std::vector<double> vals;
            fill_indexed_samples(
                vals, cfg.budget, rng,
                [&](std::size_t, RngStream s) {
                    const Mat rot = sample_rotation(n, s);
                    double acc = 0.0;
                    for (const auto& subset : subsets) {
                        Mat frame(n, k);
                        for (int c = 0; c < k; ++c) frame.col(c) = rot.col(subset[c]);
                        acc += std::log(
                            projection_volume(e->body, Subspace::from_frame(frame)).value);
                    }
                    return acc;
                },
                ctx.threads);
            const double log_rhs = cnk * std::log(unit_ball_volume(k)) +
                                   cn1k1 * (std::log(vol) - std::log(unit_ball_volume(n)));
            const double m = mean(vals);
            const double se = standard_error(vals);
            const std::string id = e->id + "/averaged";
            CaseRecord c;
            if (e->kind == "ball-polytope") {
                // provable bias cap: Q_{k,0}(P) <= Q_{k,0}(B) for inscribed P
                const double floor = cnk * (k / static_cast<double>(n)) *
                                     (std::log(unit_ball_volume(n)) - std::log(vol));
                c = bounded_case(id, m, log_rhs, se, floor);
            } else if (e->kind == "cube") {
                c = strict_case(id, m, log_rhs, se);
            } else {
                c = one_sided_case(id, m, log_rhs, se);
            }
            c.body = e->id;
            c.n = n;
            c.k = k;
            c.p = 0.0;
            c.has_p = true;
            rep.add(std::move(c));
        }

        // (c) W_{n-1} >= Q_{n-1,0} >= ball bound, shared samples
        {
            RngStream rng = ctx.next();
            const auto shadows = shadow_samples(e->body, k, cfg.budget, rng, ctx.threads);
            const std::vector<double> linear(shadows.begin(), shadows.end());
            std::vector<double> logs(shadows.size());
            for (std::size_t i = 0; i < shadows.size(); ++i) logs[i] = std::log(shadows[i]);

            // mixed-transform pairing: W = C mean(a), G = C exp(mean(log a))
            const double c0 = qnorm(n, k);
            const double ma = mean(linear);
            const double mb = mean(logs);
            const double w_val = c0 * ma;
            const double g_val = c0 * std::exp(mb);
            const double va = sample_sd(linear) * sample_sd(linear) / shadows.size();
            const double vb = sample_sd(logs) * sample_sd(logs) / shadows.size();
            const double cab = sample_cov(linear, logs) / shadows.size();
            const double gw = c0;
            const double gg = g_val;
            const double var = gw * gw * va + gg * gg * vb - 2.0 * gw * gg * cab;

            CaseRecord c1 = one_sided_case(e->id + "/w-vs-q0", w_val, g_val,
                                           std::sqrt(std::max(var, 0.0)));
            c1.body = e->id;
            c1.n = n;
            c1.k = k;
            rep.add(std::move(c1));

            const auto q0 = q_kp_from_samples(shadows, n, k, 0.0, true, cfg.seed);
            CaseRecord c2 = one_sided_case(e->id + "/q0-vs-ball", q0.value,
                                           ball_quermass(n, k, vol), q0.std_error);
            c2.body = e->id;
            c2.n = n;
            c2.k = k;
            rep.add(std::move(c2));
        }
    }
    rep.finalize();
    rep.wall_time_s = wall_seconds(t0);
    return rep;
}

namespace {

// Endpoint of { s >= 0 : gauge(y + s * dir) <= 1 } by doubling + bisection;
// the gauge is convex so the feasible set is an interval.
double gauge_chord_endpoint(const Body& b, const Vec& y, const Vec& dir) {
    auto gauge = [&](double s) { return polar_projection_norm(b, y + s * dir); };
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (polar_projection_norm(b, y + hi * dir) <= 1.0 && guard++ < 60) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gauge(mid) <= 1.0 ? lo : hi) = mid;
    }
    return lo;
}

double gauge_chord_length(const Body& b, const Vec& y, const Vec& u) {
    return gauge_chord_endpoint(b, y, u) + gauge_chord_endpoint(b, y, -u);
}

}  // namespace

SuiteReport suite_petty(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Ctx ctx = make_ctx(cfg, 0x9e77ull);
    SuiteReport rep;
    rep.suite = "petty";
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;
    rep.threads = ctx.threads;

    const int n = cfg.dims.front();
    const std::string sn = std::to_string(n);

    // calibration: |Pi* B| for the unit ball, zero-variance closed form
    {
        const Body ball = standard_body("ball", n);
        const auto est = polar_projection_volume(ball, 64, ctx.next(), ctx.threads);
        const double expected =
            unit_ball_volume(n) * std::pow(unit_ball_volume(n - 1), -n);
        CaseRecord c = exact_case("ball/calibration", est.value, expected, 1e-12 * expected);
        c.body = "ball" + sn;
        c.n = n;
        rep.add(std::move(c));
    }

    for (const auto* e :
         pick(ctx, cfg, n, {"simplex" + sn, "cube" + sn, "rand" + sn + "a"})) {
        const auto* vp = std::get_if<VPolytope>(&e->body);
        if (vp == nullptr) continue;
        RngStream dir_rng = ctx.next();
        for (int d = 0; d < cfg.directions; ++d) {
            const Vec u = sample_sphere(n, dir_rng);
            RngStream rng = ctx.next();
            const VPolytope sym = steiner_symmetral(*vp, u, cfg.n_extra, rng.substream(1));
            const Body sym_body{sym};

            // (a) global paired comparison over shared sphere directions
            std::vector<double> vk, vs;
            fill_indexed_sample_pairs(
                vk, vs, cfg.budget, rng.substream(2),
                [&](std::size_t, RngStream s) {
                    const Vec theta = sample_sphere(n, s);
                    const Mat basis = complement_basis(theta);
                    const auto f = Subspace::from_frame(basis);
                    return std::pair{std::pow(projection_volume(e->body, f).value, -n),
                                     std::pow(projection_volume(sym_body, f).value, -n)};
                },
                ctx.threads);
            const auto pm = paired_mean_margin(vs, vk, unit_ball_volume(n));
            std::string base_id = e->id + "/u" + std::to_string(d);
            CaseRecord cg = one_sided_case(base_id + "/global", pm.value_a, pm.value_b,
                                           pm.std_error);
            cg.body = e->id;
            cg.n = n;
            cg.u_hash = direction_hash(u.data(), n);
            rep.add(std::move(cg));

            // (b) chord-wise comparison of Pi* sections parallel to u
            const Mat cb = complement_basis(u);
            RngStream probe_rng = rng.substream(3);
            double worst = std::numeric_limits<double>::infinity();
            double worst_len = 0.0;
            const double len0_k = gauge_chord_length(e->body, Vec::Zero(n), u);
            const double len0_s = gauge_chord_length(sym_body, Vec::Zero(n), u);
            for (int probe = 0; probe < cfg.chord_probes; ++probe) {
                Vec w(n - 1);
                for (int j = 0; j < n - 1; ++j) w[j] = probe_rng.gaussian();
                if (w.norm() < 1e-12) continue;
                Vec dir = cb * (w / w.norm());
                const double g = polar_projection_norm(e->body, dir);
                const Vec y = (0.9 * probe_rng.uniform() / g) * dir;
                const double lk = gauge_chord_length(e->body, y, u);
                const double ls = gauge_chord_length(sym_body, y, u);
                if (ls - lk < worst) {
                    worst = ls - lk;
                    worst_len = lk;
                }
            }
            const double tol = 1e-5 * (1.0 + worst_len);
            CaseRecord cc = exact_one_sided_case(base_id + "/chords", worst + worst_len,
                                                 worst_len, tol);
            cc.body = e->id;
            cc.n = n;
            cc.u_hash = direction_hash(u.data(), n);
            rep.add(std::move(cc));

            CaseRecord c0 = exact_one_sided_case(base_id + "/chord-origin", len0_s, len0_k,
                                                 1e-5 * (1.0 + len0_k));
            c0.body = e->id;
            c0.n = n;
            c0.u_hash = direction_hash(u.data(), n);
            rep.add(std::move(c0));
        }
    }
    rep.finalize();
    rep.wall_time_s = wall_seconds(t0);
    return rep;
}

SuiteReport suite_local_min_probe(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Ctx ctx = make_ctx(cfg, 0x10caull);
    SuiteReport rep;
    rep.suite = "local-min";
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;
    rep.threads = ctx.threads;

    const int n = cfg.dims.front();
    const int base_m = 600;
    RngStream gen = ctx.next();
    BodyParams params;
    params.m = base_m;
    const Body base = standard_body("ball-polytope", n, params, gen.substream(0));
    const auto& base_vp = std::get<VPolytope>(base);

    std::vector<int> ks = cfg.k_values.empty() ? std::vector<int>{1, 2} : cfg.k_values;
    const std::vector<double> eps_grid = {0.05, 0.1, 0.2};

    for (int k : ks) {
        if (k < 1 || k > n - 1) continue;
        // control at eps = 0: the polytopal approximation floor
        const auto ctrl = i_kp(base, k, -n, false, cfg.budget, ctx.next(), ctx.threads);
        const double floor = (ctrl.value - 1.0) + 4.0 * ctrl.std_error;
        {
            CaseRecord c = info_case("base/eps0/k" + std::to_string(k), ctrl.value, 1.0,
                                     ctrl.std_error);
            c.body = "ball-polytope";
            c.n = n;
            c.k = k;
            rep.add(std::move(c));
        }

        // exact ellipsoid stretch: affine invariance keeps the deviation at 0
        {
            Mat shape = Mat::Identity(n, n);
            shape(0, 0) = 1.2;
            shape(1, 1) = 1.0 / 1.2;
            const Body ell = make_ellipsoid(Vec::Zero(n), shape);
            const auto est = i_kp(ell, k, -n, false, cfg.budget, ctx.next(), ctx.threads);
            CaseRecord c = equality_case("ellipsoid-stretch/k" + std::to_string(k), est.value,
                                         1.0, est.std_error);
            c.body = "ellipsoid";
            c.n = n;
            c.k = k;
            rep.add(std::move(c));
        }

        for (double eps : eps_grid) {
            for (int repi = 0; repi < 2; ++repi) {
                RngStream perturb = gen.substream(1000 + 100 * repi + static_cast<int>(eps * 100));
                Mat verts = base_vp.vertices;
                for (int i = 0; i < verts.rows(); ++i) {
                    const double eta = 2.0 * perturb.uniform() - 1.0;
                    verts.row(i) *= 1.0 + eps * eta;
                }
                const Body body{make_vpolytope(std::move(verts))};
                const auto est = i_kp(body, k, -n, false, cfg.budget, ctx.next(), ctx.threads);
                const std::string id = "probe/eps" + std::to_string(eps).substr(0, 4) + "/r" +
                                       std::to_string(repi) + "/k" + std::to_string(k);
                CaseRecord c = floored_case(id + "/lb", est.value, 1.0, est.std_error, floor);
                c.body = "perturbed";
                c.n = n;
                c.k = k;
                c.t = eps;
                c.has_t = true;
                rep.add(std::move(c));
                if (eps >= 0.1) {
                    CaseRecord cs = strict_case(id + "/beyond-floor", est.value - 1.0, floor,
                                                est.std_error);
                    cs.body = "perturbed";
                    cs.n = n;
                    cs.k = k;
                    cs.t = eps;
                    cs.has_t = true;
                    rep.add(std::move(cs));
                }
            }
        }
    }
    rep.finalize();
    rep.wall_time_s = wall_seconds(t0);
    return rep;
}

SuiteReport suite_dichotomy(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Ctx ctx = make_ctx(cfg, 0xd1c0ull);
    SuiteReport rep;
    rep.suite = "dichotomy";
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;
    rep.threads = ctx.threads;

    std::vector<double> t_grid = cfg.t_grid;
    std::sort(t_grid.begin(), t_grid.end());
    const int n = cfg.dims.front();
    const std::string sn = std::to_string(n);

    struct Probe {
        const CatalogEntry* entry;
        bool axis_dir;
    };
    std::vector<Probe> probes;
    for (const auto* e : pick(ctx, cfg, n, {"simplex" + sn, "cube" + sn}))
        probes.push_back({e, e->kind == "cube"});

    for (const auto& probe : probes) {
        const auto* vp = std::get_if<VPolytope>(&probe.entry->body);
        if (vp == nullptr) continue;
        RngStream rng = ctx.next();
        const Vec u = probe.axis_dir ? axis(n, 0) : sample_sphere(n, rng);
        const auto profile = shadow_profile(*vp, u, t_grid, cfg.n_extra, rng);

        for (int k : k_range(cfg, n)) {
            const RngStream shade_rng = ctx.next();
            std::vector<std::vector<double>> shadows(profile.size());
            std::vector<double> phis(profile.size());
            for (std::size_t i = 0; i < profile.size(); ++i) {
                shadows[i] =
                    shadow_samples(Body{profile[i]}, k, cfg.budget, shade_rng, ctx.threads);
                phis[i] = q_kp_from_samples(shadows[i], n, k, -n, false, cfg.seed).value;
            }
            std::vector<bool> significant(profile.size() - 1);
            for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
                const auto pm =
                    paired_power_margin(powered(shadows[i + 1], -n), powered(shadows[i], -n), -n,
                                        qnorm(n, k), qnorm(n, k));
                significant[i] = pm.margin > 4.0 * pm.std_error;
                const std::string id = probe.entry->id + "/k" + std::to_string(k) + "/step" +
                                       std::to_string(i);
                CaseRecord c = one_sided_case(id, pm.value_a, pm.value_b, pm.std_error);
                c.body = probe.entry->id;
                c.n = n;
                c.k = k;
                c.t = t_grid[i + 1];
                c.has_t = true;
                c.u_hash = direction_hash(u.data(), n);
                rep.add(std::move(c));
            }
            // the dichotomy predicts a flat stretch followed by strict growth:
            // once a step is significant, later steps must stay significant
            bool shape_ok = true;
            for (std::size_t i = 1; i < significant.size(); ++i)
                if (significant[i - 1] && !significant[i]) shape_ok = false;
            CaseRecord flag = info_case(
                probe.entry->id + "/k" + std::to_string(k) + "/flat-then-strict",
                shape_ok ? 1.0 : 0.0, 0.0, 0.0);
            flag.body = probe.entry->id;
            flag.n = n;
            flag.k = k;
            rep.add(std::move(flag));
            for (std::size_t i = 0; i < profile.size(); ++i) {
                CaseRecord c = info_case(probe.entry->id + "/k" + std::to_string(k) + "/phi-t" +
                                             std::to_string(i),
                                         phis[i], 0.0, 0.0);
                c.body = probe.entry->id;
                c.n = n;
                c.k = k;
                c.t = t_grid[i];
                c.has_t = true;
                rep.add(std::move(c));
            }
        }
    }
    rep.finalize();
    rep.wall_time_s = wall_seconds(t0);
    return rep;
}

SuiteReport suite_slab_body(const SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    Ctx ctx = make_ctx(cfg, 0x51abull);
    SuiteReport rep;
    rep.suite = "slab";
    rep.seed = cfg.seed;
    rep.budget = cfg.budget;
    rep.threads = ctx.threads;

    const int n = cfg.dims.front();
    const std::string sn = std::to_string(n);
    for (const auto* e :
         pick(ctx, cfg, n, {"cube" + sn, "simplex" + sn, "rand" + sn + "a"})) {
        const auto* vp0 = std::get_if<VPolytope>(&e->body);
        if (vp0 == nullptr) continue;

        // center on the vertex centroid
        Mat verts = vp0->vertices;
        verts.rowwise() -= verts.colwise().mean();
        const VPolytope vp = make_vpolytope(std::move(verts));
        const Body body{vp};
        const double vol = exact_volume(body);

        RngStream rng = ctx.next();
        const int m = cfg.slab_directions;
        Mat normals(2 * m, n);
        Vec offsets(2 * m);
        for (int j = 0; j < m; ++j) {
            const Vec theta = sample_sphere(n, rng);
            const double half_width =
                0.5 * (support(body, theta) + support(body, -theta));
            normals.row(2 * j) = theta.transpose();
            normals.row(2 * j + 1) = -theta.transpose();
            offsets[2 * j] = half_width;
            offsets[2 * j + 1] = half_width;
        }
        const Body slab{make_hpolytope(std::move(normals), std::move(offsets))};

        Vec lo, hi;
        bounding_box(slab, lo, hi);
        const auto vol_slab = volume_mc(
            [&](const Vec& x) { return membership(slab, x); }, lo, hi, cfg.budget,
            rng.substream(1), ctx.threads);
        CaseRecord c1 = one_sided_case(e->id + "/vol-increases", vol_slab.value, vol,
                                       vol_slab.std_error);
        c1.body = e->id;
        c1.n = n;
        rep.add(std::move(c1));

        // symmetric inputs sit inside every slab exactly
        bool symmetric = true;
        for (int i = 0; i < vp.count() && symmetric; ++i)
            symmetric = membership(body, (-vp.vertices.row(i)).transpose());
        if (symmetric) {
            RngStream probe = rng.substream(2);
            double min_slack = std::numeric_limits<double>::infinity();
            const auto& hs = std::get<HPolytope>(slab);
            for (int trial = 0; trial < 200; ++trial) {
                // random convex combination of vertices
                Vec w(vp.count());
                for (int i = 0; i < vp.count(); ++i) w[i] = -std::log(probe.uniform_pos());
                w /= w.sum();
                const Vec x = vp.vertices.transpose() * w;
                min_slack =
                    std::min(min_slack, (hs.offsets - hs.normals * x).minCoeff());
            }
            CaseRecord c2 =
                exact_one_sided_case(e->id + "/containment", min_slack, 0.0, kQuadTol);
            c2.body = e->id;
            c2.n = n;
            rep.add(std::move(c2));
        }

        // compact-set Blaschke-Santalo statement, convex inputs: Phi_1 >= ball
        const auto shadows = shadow_samples(body, 1, cfg.budget, rng.substream(3), ctx.threads);
        const auto phi1 = q_kp_from_samples(shadows, n, 1, -n, false, cfg.seed);
        CaseRecord c3 = one_sided_case(e->id + "/phi1-vs-ball", phi1.value,
                                       ball_quermass(n, 1, vol), phi1.std_error);
        c3.body = e->id;
        c3.n = n;
        c3.k = 1;
        rep.add(std::move(c3));
    }
    rep.finalize();
    rep.wall_time_s = wall_seconds(t0);
    return rep;
}

std::vector<std::string> suite_names() {
    return {"lutwak", "steiner", "af-chain", "loomis-whitney",
            "petty",  "local-min", "dichotomy", "slab"};
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "lutwak") return suite_lutwak(cfg);
    if (name == "steiner") return suite_steiner_monotone(cfg);
    if (name == "af-chain") return suite_af_chain(cfg);
    if (name == "loomis-whitney") return suite_loomis_whitney(cfg);
    if (name == "petty") return suite_petty(cfg);
    if (name == "local-min") return suite_local_min_probe(cfg);
    if (name == "dichotomy") return suite_dichotomy(cfg);
    if (name == "slab") return suite_slab_body(cfg);
    fail(ErrorCode::UnknownName, "unknown suite '" + name + "'");
}

}  // namespace affiq
