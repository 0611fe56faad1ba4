#pragma once

#include <span>
#include <string>
#include <vector>

#include "affiq/catalog.hpp"
#include "affiq/report.hpp"

namespace affiq {

struct SuiteConfig {
    std::vector<int> dims = {3};
    std::vector<int> k_values;              // empty: all 1..n-1
    std::size_t budget = 200000;
    std::uint64_t seed = 1;
    int threads = 0;                        // 0: default_thread_count()
    int directions = 8;                     // symmetrization directions per body
    std::vector<double> t_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> p_grid;             // af-chain moments; empty: {0,-1,-2,-n}
    int n_extra = 600;                      // symmetral fiber refinement
    int slab_directions = 200;
    int chord_probes = 50;
    std::string catalog_text;               // empty: built-in catalog
    std::vector<std::string> bodies;        // optional catalog-id filter
    bool explore = false;                   // report the unproven af-chain range
};

SuiteReport suite_lutwak(const SuiteConfig& cfg);
SuiteReport suite_steiner_monotone(const SuiteConfig& cfg);
SuiteReport suite_af_chain(const SuiteConfig& cfg);
SuiteReport suite_loomis_whitney(const SuiteConfig& cfg);
SuiteReport suite_petty(const SuiteConfig& cfg);
SuiteReport suite_local_min_probe(const SuiteConfig& cfg);
SuiteReport suite_dichotomy(const SuiteConfig& cfg);
SuiteReport suite_slab_body(const SuiteConfig& cfg);

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace affiq
