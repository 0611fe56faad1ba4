#pragma once

#include <string>
#include <vector>

#include "affiq/bodies.hpp"

namespace affiq {

struct CatalogEntry {
    std::string id;
    std::string kind;
    int n = 0;
    Body body;
};

// The versioned default catalog (also shipped as data/catalog.json).
const std::string& default_catalog_text();

// Parses a catalog document: {"version": 1, "bodies": [{id, kind, n, ...}]}.
// Entries may carry m/seed/sides/diag/shape/radius generator parameters or an
// inline "body" object.
std::vector<CatalogEntry> load_catalog(const std::string& json_text);

std::vector<CatalogEntry> default_catalog();

// nullptr when absent.
const CatalogEntry* find_body(const std::vector<CatalogEntry>& catalog,
                              const std::string& id);

}  // namespace affiq
