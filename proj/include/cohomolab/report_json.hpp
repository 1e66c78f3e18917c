#pragma once

#include "json.hpp"

#include "cohomolab/analysis.hpp"

namespace cohomolab {

using Json = nlohmann::ordered_json;

// Non-finite reals serialize as the strings "inf" / "-inf" / "nan" so the
// documents stay valid JSON.
Json json_real(double x);

Json to_json(const DegreeReport& d);
Json to_json(const CohomologyReport& r);
Json to_json(const ChainEvaluation& c);
Json to_json(const SufficientEpsilon& s);
Json to_json(const WeilCertificate& w);

}  // namespace cohomolab
