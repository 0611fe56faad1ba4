#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace affiq {

// One verification case inside a suite. `check` selects the pass rule:
//   one-sided       : margin >= -4 stderr
//   strict          : margin > 4 stderr
//   equality        : |margin| <= 4 stderr
//   exact           : |margin| <= tol (deterministic computations)
//   exact-one-sided : margin >= -tol
//   bounded         : -4 stderr <= margin <= tol + 4 stderr (floor-limited equality)
//   floored         : margin >= -(tol + 4 stderr)
//   info            : recorded, never asserted
struct CaseRecord {
    std::string case_id;
    std::string body;
    int n = 0;
    int k = -1;              // -1: not applicable
    double p = 0.0;
    bool has_p = false;
    double t = 0.0;
    bool has_t = false;
    std::uint64_t u_hash = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double std_error = 0.0;
    double tol = 0.0;
    std::string check = "one-sided";
    bool pass = true;
    bool asserted = true;
};

CaseRecord one_sided_case(std::string id, double lhs, double rhs, double std_error);
CaseRecord strict_case(std::string id, double lhs, double rhs, double std_error);
CaseRecord equality_case(std::string id, double lhs, double rhs, double std_error);
CaseRecord exact_case(std::string id, double lhs, double rhs, double tol);
CaseRecord exact_one_sided_case(std::string id, double lhs, double rhs, double tol);
CaseRecord bounded_case(std::string id, double lhs, double rhs, double std_error, double tol);
CaseRecord floored_case(std::string id, double lhs, double rhs, double std_error, double tol);
CaseRecord info_case(std::string id, double lhs, double rhs, double std_error);

std::uint64_t direction_hash(const double* data, int n);

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    int threads = 0;
    std::vector<CaseRecord> cases;
    bool pass = true;
    double wall_time_s = 0.0;  // not serialized: reports must be re-run identical

    void add(CaseRecord c);
    void finalize();  // sorts cases by id, recomputes the global pass flag

    // Deterministic serializations (sorted keys; timing excluded).
    std::string to_json_string(int indent = 2) const;
    std::string to_csv() const;
};

}  // namespace affiq
