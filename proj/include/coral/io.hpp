#pragma once

#include "coral/constraints.hpp"
#include "coral/coral.hpp"
#include "coral/counting.hpp"
#include "coral/morse.hpp"
#include "coral/moduli.hpp"
#include "coral/quotient.hpp"

#include <string>

#include "json.hpp"

namespace coral {

using Json = nlohmann::json;

// All rationals serialize as strings "p/q" in lowest terms ("p" when q = 1),
// lattice vectors as [a, b] integer pairs.

Json to_json(const CoralGraph& g);
CoralGraph graph_from_json(const Json& j);

Json to_json(const CoralType& t);
CoralType type_from_json(const Json& j);

Json to_json(const TropicalCoral& c);
TropicalCoral coral_from_json(const Json& j);

Json to_json(const Degree& d);
Degree degree_from_json(const Json& j);

Json to_json(const Constraint& lam);
Constraint constraint_from_json(const Json& j);

Json to_json(const MorseTree& m);
MorseTree tmt_from_json(const Json& j);

Json to_json(const TropicalCurve& tc);
TropicalCurve curve_from_json(const Json& j);

Json to_json(const TypeCatalog& cat);
Json to_json(const CountResult& r);
Json to_json(const AreaSeries& s);
Json to_json(const StableRangeCertificate& cert);

std::string dump_json(const Json& j);
Json parse_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace coral
