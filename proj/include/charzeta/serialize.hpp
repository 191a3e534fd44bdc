#pragma once

// JSON encodings of the library's records. Elementary factors carry their
// sign as the operator shown in (1 -/+ p^(a-s)).

#include <json.hpp>

#include "charzeta/fibercount.hpp"
#include "charzeta/globalzeta.hpp"
#include "charzeta/localzeta.hpp"
#include "charzeta/specialvalues.hpp"
#include "charzeta/varieties.hpp"

namespace charzeta {

using json = nlohmann::ordered_json;

void to_json(json& j, const CountRecord& r);
void to_json(json& j, const BiprojectivePoint& pt);
void to_json(json& j, const ConicClass& c);
void to_json(json& j, const FiberReport& r);
void to_json(json& j, const ZetaFactor& f);
void to_json(json& j, const LocalZetaFactors& z);
void to_json(json& j, const GlobalFactor& f);
void to_json(json& j, const ElementaryFactor& f);
void to_json(json& j, const GlobalZetaExpr& e);
void to_json(json& j, const GlobalCheck& c);
void to_json(json& j, const LaurentLeading& l);
void to_json(json& j, const Table1Cell& c);
void to_json(json& j, const MahlerEstimate& m);

}  // namespace charzeta
