#include "affiq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include <json.hpp>

namespace affiq {

namespace {

CaseRecord base_case(std::string id, double lhs, double rhs, double std_error) {
    CaseRecord c;
    c.case_id = std::move(id);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = lhs - rhs;
    c.std_error = std_error;
    return c;
}

}  // namespace

CaseRecord one_sided_case(std::string id, double lhs, double rhs, double std_error) {
    CaseRecord c = base_case(std::move(id), lhs, rhs, std_error);
    c.check = "one-sided";
    c.pass = c.margin >= -4.0 * std_error;
    return c;
}

CaseRecord strict_case(std::string id, double lhs, double rhs, double std_error) {
    CaseRecord c = base_case(std::move(id), lhs, rhs, std_error);
    c.check = "strict";
    c.pass = c.margin > 4.0 * std_error;
    return c;
}

CaseRecord equality_case(std::string id, double lhs, double rhs, double std_error) {
    CaseRecord c = base_case(std::move(id), lhs, rhs, std_error);
    c.check = "equality";
    c.pass = std::abs(c.margin) <= 4.0 * std_error;
    return c;
}

CaseRecord exact_case(std::string id, double lhs, double rhs, double tol) {
    CaseRecord c = base_case(std::move(id), lhs, rhs, 0.0);
    c.check = "exact";
    c.tol = tol;
    c.pass = std::abs(c.margin) <= tol;
    return c;
}

CaseRecord exact_one_sided_case(std::string id, double lhs, double rhs, double tol) {
    CaseRecord c = base_case(std::move(id), lhs, rhs, 0.0);
    c.check = "exact-one-sided";
    c.tol = tol;
    c.pass = c.margin >= -tol;
    return c;
}

CaseRecord bounded_case(std::string id, double lhs, double rhs, double std_error, double tol) {
    CaseRecord c = base_case(std::move(id), lhs, rhs, std_error);
    c.check = "bounded";
    c.tol = tol;
    c.pass = c.margin >= -4.0 * std_error && c.margin <= tol + 4.0 * std_error;
    return c;
}

CaseRecord floored_case(std::string id, double lhs, double rhs, double std_error, double tol) {
    CaseRecord c = base_case(std::move(id), lhs, rhs, std_error);
    c.check = "floored";
    c.tol = tol;
    c.pass = c.margin >= -(tol + 4.0 * std_error);
    return c;
}

CaseRecord info_case(std::string id, double lhs, double rhs, double std_error) {
    CaseRecord c = base_case(std::move(id), lhs, rhs, std_error);
    c.check = "info";
    c.pass = true;
    c.asserted = false;
    return c;
}

std::uint64_t direction_hash(const double* data, int n) {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < n; ++i) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(double));
        std::memcpy(&bits, &data[i], sizeof(bits));
        h ^= bits;
        h *= 1099511628211ull;
    }
    return h;
}

void SuiteReport::add(CaseRecord c) { cases.push_back(std::move(c)); }

void SuiteReport::finalize() {
    std::sort(cases.begin(), cases.end(),
              [](const CaseRecord& a, const CaseRecord& b) { return a.case_id < b.case_id; });
    pass = true;
    for (const auto& c : cases)
        if (c.asserted && !c.pass) pass = false;
}

std::string SuiteReport::to_json_string(int indent) const {
    nlohmann::json j;
    // `threads` and `wall_time_s` are deliberately not serialized: reports must
    // be byte-identical across re-runs and worker counts.
    j["suite"] = suite;
    j["seed"] = seed;
    j["budget"] = budget;
    j["pass"] = pass;
    j["cases"] = nlohmann::json::array();
    for (const auto& c : cases) {
        nlohmann::json jc;
        jc["case"] = c.case_id;
        jc["body"] = c.body;
        jc["n"] = c.n;
        if (c.k >= 0) jc["k"] = c.k;
        if (c.has_p) jc["p"] = c.p;
        if (c.has_t) jc["t"] = c.t;
        if (c.u_hash != 0) jc["u_hash"] = c.u_hash;
        jc["lhs"] = c.lhs;
        jc["rhs"] = c.rhs;
        jc["margin"] = c.margin;
        jc["stderr"] = c.std_error;
        if (c.check == "exact" || c.check == "bounded") jc["tol"] = c.tol;
        jc["check"] = c.check;
        jc["pass"] = c.pass;
        jc["asserted"] = c.asserted;
        j["cases"].push_back(std::move(jc));
    }
    return j.dump(indent);
}

std::string SuiteReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "suite,case,body,n,k,p,t,u_hash,lhs,rhs,margin,stderr,pass\n";
    for (const auto& c : cases) {
        os << suite << ',' << c.case_id << ',' << c.body << ',' << c.n << ',';
        if (c.k >= 0) os << c.k;
        os << ',';
        if (c.has_p) os << c.p;
        os << ',';
        if (c.has_t) os << c.t;
        os << ',';
        if (c.u_hash != 0) os << c.u_hash;
        os << ',' << c.lhs << ',' << c.rhs << ',' << c.margin << ',' << c.std_error << ','
           << (c.pass ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace affiq
