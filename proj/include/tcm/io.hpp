#pragma once

#include "tcm/measures.hpp"
#include "tcm/polytope.hpp"
#include "tcm/symtensor.hpp"
#include "tcm/verify.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>

namespace tcm {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// {"dim": n, "vertices": [[...], ...]} or {"dim": n, "halfspaces": [{"normal": [...], "offset": b}]}.
Polytope polytope_from_json(const Json& j);
Json polytope_to_json(const Polytope& p);

/// cube<n>, simplex<n>, cross<n> or random<n>:<seed>.
Polytope builtin_polytope(const std::string& name);

/// {"universe": true}, {"box": {"lo": [...], "hi": [...]}} or
/// {"halfspaces": [...], "allow_unbounded": false}.
Region region_from_json(const Json& j, int n);
Json region_to_json(const Region& r);

/// {"dim", "rank", "entries": [[[beta...], coordinate], ...]}; only nonzero
/// coordinates are listed.
Json tensor_to_json(const SymTensor& t);
SymTensor tensor_from_json(const Json& j);

Json measure_value_to_json(const MeasureValue& v);
Json report_to_json(const VerificationReport& r);
Json rank_to_json(const RankResult& r);
Json steiner_to_json(const SteinerReport& r);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tcm
