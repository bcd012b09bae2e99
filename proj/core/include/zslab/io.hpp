#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "zslab/algebra.hpp"
#include "zslab/element_set.hpp"
#include "zslab/group.hpp"
#include "zslab/search.hpp"
#include "zslab/sequence.hpp"
#include "zslab/subgroup.hpp"

namespace zslab::io {

using Json = nlohmann::ordered_json;

Json group_json(const AbelianGroup& group);
Json element_json(const AbelianGroup& group, ElementId id);
Json set_json(const ElementSet& set);
Json subgroup_json(const Subgroup& h);
// {"length": n, "multiplicities": [{"element": [..], "count": k}, ...]}
Json sequence_json(const Sequence& s);
Json search_report_json(const SearchReport& report);

// Coordinates are reduced modulo the invariant factors, so [1, -1] is accepted.
ElementId element_from_json(const AbelianGroup& group, const nlohmann::json& value);

// Accepts a bare array of terms, {"terms": [...]}, or the compact
// {"multiplicities": [{"element": [...], "count": k}, ...]}, or the
// index-keyed {"multiplicity": {"<element index>": k, ...}}. An optional
// "group" member must match `group`. Throws InvalidInput.
Sequence sequence_from_json(const AbelianGroup& group, const nlohmann::json& value);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace zslab::io
