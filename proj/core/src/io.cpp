#include "zslab/io.hpp"

#include <fstream>
#include <string>

#include "zslab/error.hpp"

namespace zslab::io {

Json group_json(const AbelianGroup& group) {
  Json out;
  const auto f = group.invariant_factors();
  out["invariant_factors"] = std::vector<int>(f.begin(), f.end());
  out["order"] = group.order();
  out["exponent"] = group.exponent();
  out["rank"] = group.rank();
  return out;
}

Json element_json(const AbelianGroup& group, ElementId id) { return group.element(id).coords; }

Json set_json(const ElementSet& set) {
  Json out = Json::array();
  for (const ElementId id : set.elements()) out.push_back(element_json(set.group(), id));
  return out;
}

Json subgroup_json(const Subgroup& h) {
  Json out;
  out["order"] = h.order();
  Json gens = Json::array();
  for (const ElementId g : h.generators()) gens.push_back(element_json(h.group(), g));
  out["generators"] = std::move(gens);
  return out;
}

Json sequence_json(const Sequence& s) {
  Json out;
  out["length"] = s.length();
  Json mult = Json::array();
  for (const ElementId id : s.support()) {
    Json entry;
    entry["element"] = element_json(s.group(), id);
    entry["count"] = s.multiplicity(id);
    mult.push_back(std::move(entry));
  }
  out["multiplicities"] = std::move(mult);
  return out;
}

Json search_report_json(const SearchReport& report) {
  Json out;
  out["group"] = report.group.literal();
  out["invariant"] = report.invariant;
  out["value"] = report.value ? Json(*report.value) : Json("Unknown");
  out["witness"] = report.witness ? sequence_json(*report.witness) : Json(nullptr);
  out["nodes_explored"] = report.nodes;
  out["budget_exhausted"] = report.budget_exhausted;
  out["cap_hit"] = report.cap_hit;
  out["tasks_total"] = report.tasks_total;
  out["tasks_resumed"] = report.tasks_resumed;
  return out;
}

ElementId element_from_json(const AbelianGroup& group, const nlohmann::json& value) {
  const auto f = group.invariant_factors();
  if (f.size() == 1 && value.is_number_integer()) return element_from_json(group, nlohmann::json::array({value}));
  if (!value.is_array() || value.size() != f.size()) {
    throw Error(ErrorCode::InvalidInput, "element " + value.dump() + " needs " + std::to_string(f.size()) +
                                             " integer coordinates");
  }
  GroupElement e;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!value[i].is_number_integer()) throw Error(ErrorCode::InvalidInput, "non-integer coordinate in " + value.dump());
    const std::int64_t c = value[i].get<std::int64_t>() % f[i];
    e.coords.push_back(c < 0 ? c + f[i] : c);
  }
  return group.index_of(e);
}

Sequence sequence_from_json(const AbelianGroup& group, const nlohmann::json& value) {
  try {
    Sequence s(group);
    const nlohmann::json* terms = nullptr;
    if (value.is_array()) {
      terms = &value;
    } else if (value.is_object()) {
      if (value.contains("group")) {
        const AbelianGroup declared =
            value["group"].is_string()
                ? parse_group_literal(value["group"].get<std::string>())
                : AbelianGroup::from_moduli(value["group"].get<std::vector<std::int64_t>>());
        if (!(declared == group)) {
          throw Error(ErrorCode::InvalidInput, "sequence file is over " + declared.literal() + ", not " +
                                                   group.literal());
        }
      }
      if (value.contains("terms")) {
        terms = &value["terms"];
      } else if (value.contains("multiplicities")) {
        for (const auto& entry : value["multiplicities"]) {
          const int count = entry.at("count").get<int>();
          if (count < 0) throw Error(ErrorCode::InvalidInput, "negative count");
          s.add(element_from_json(group, entry.at("element")), count);
        }
        return s;
      }
      if (value.contains("multiplicity")) {
        for (const auto& [key, count_value] : value["multiplicity"].items()) {
          std::size_t used = 0;
          long index = -1;
          try {
            index = std::stol(key, &used);
          } catch (const std::exception&) {
          }
          if (used != key.size() || index < 0 || index >= group.order()) {
            throw Error(ErrorCode::InvalidInput, "element index '" + key + "' outside 0.." +
                                                     std::to_string(group.order() - 1));
          }
          const int count = count_value.get<int>();
          if (count < 0) throw Error(ErrorCode::InvalidInput, "negative count");
          s.add(static_cast<ElementId>(index), count);
        }
        return s;
      }
    }
    if (!terms || !terms->is_array()) {
      throw Error(ErrorCode::InvalidInput, "expected an array of terms, {\"terms\": ...}, {\"multiplicities\": ...} or {\"multiplicity\": ...}");
    }
    for (const auto& t : *terms) s.add(element_from_json(group, t));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed sequence: ") + e.what());
  }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
}

}  // namespace zslab::io
