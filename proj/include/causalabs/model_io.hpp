#pragma once

#include <cstdint>
#include <string>

#include "causalabs/abstraction.hpp"
#include "causalabs/scm.hpp"

#include <nlohmann/json_fwd.hpp>

namespace causalabs {

// SCM file format (JSON):
//   {"variables":[{"name":"Sm","outcomes":["0","1"]}, ...],
//    "edges":[["Sm","Tar"], ...],
//    "mechanisms":{"Tar":{"parents":["Sm"],"matrix":[[1.0,0.2],[0.0,0.8]]}}}
// Matrix rows = child outcomes; columns = parent joint outcomes in canonical
// flat order; "parents" fixes the column ordering.
Scm scm_from_json(const nlohmann::json& j);
nlohmann::json scm_to_json(const Scm& scm);
Scm load_scm(const std::string& path);
void save_scm(const Scm& scm, const std::string& path);

// Abstraction file format (JSON):
//   {"relevant":["Sm","Cou","Fat"],
//    "map":{"Sm":"Sm'","Cou":"Hea'","Fat":"Hea'"},
//    "alphas":{"Hea'":{"low_order":["Cou","Fat"],"matrix":[[0,1,1,0],[1,0,0,1]]}}}
// Alphas may be omitted per variable (partially specified abstraction).
// Each alpha's low_order must be the canonical base ordering of the preimage;
// files that disagree are rejected.
Abstraction abstraction_from_json(const nlohmann::json& j, const Scm& base);
nlohmann::json abstraction_to_json(const Abstraction& abs, const Scm& base);
Abstraction load_abstraction(const std::string& path, const Scm& base);
void save_abstraction(const Abstraction& abs, const Scm& base, const std::string& path);

// FNV-1a 64-bit digest of a file's bytes; used to pin bundled data files.
std::uint64_t fnv1a64_file(const std::string& path);

} // namespace causalabs
