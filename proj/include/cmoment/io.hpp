#ifndef CMOMENT_IO_HPP
#define CMOMENT_IO_HPP

// JSON documents for moment tables, measures and reports.
//
//   moments: {"degree": D, "entries": [{"i","j","re","im"}, ...],
//             "relation": {"k": K, "coefficients": [{"n","m","re","im"}, ...]}}
//   measure: {"atoms": [{"re","im","weight"}, ...]}
//
// Malformed documents raise Error(kInvalidInput).

#include <optional>
#include <string>

#include "json.hpp"

#include "cmoment/solver.hpp"

namespace cmoment {

using Json = nlohmann::json;

struct MomentsFile {
  MomentTable table;
  std::optional<ColumnRelation> relation;
};

MomentsFile moments_from_json(const Json& doc);
Json to_json(const MomentTable& table, const std::optional<ColumnRelation>& relation = {});

AtomicMeasure measure_from_json(const Json& doc);
Json to_json(const AtomicMeasure& mu);

// [[i, j, re, im], ...] as a polynomial in zbar^i z^j.
BivarPoly poly_from_json(const Json& doc);
Json to_json(const BivarPoly& p);

Json to_json(const SolveReport& report);
Json to_json(const ZeroSet& zeros);
Json to_json(const XiData& xi);
Json to_json(const PsdReport& psd);
Json to_json(const CubicConditionReport& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cmoment

#endif  // CMOMENT_IO_HPP
