#ifndef MEIXNER_TENSOR_IO_HPP
#define MEIXNER_TENSOR_IO_HPP

#include <string>

#include <json.hpp>

#include "meixner/classify3.hpp"
#include "meixner/integrability.hpp"
#include "meixner/tensor.hpp"
#include "meixner/verify.hpp"

namespace meixner {

using Json = nlohmann::json;

// Tensor file schema:
//   {"dimension": d,
//    "alpha": [{"index": [i,j,k], "value": x}, ...],
//    "beta":  [[...], ...]   (optional, default identity),
//    "mean":  [...]          (optional, default zeros)}
// Indices are 0-based; every value must be finite.
MeixnerSpec spec_from_json(const Json& j);
MeixnerSpec load_spec(const std::string& path);
Json spec_to_json(const MeixnerSpec& spec);

Json lcc_report_to_json(const LccReport& rep);
Json obstruction_report_to_json(const ObstructionReport& rep);
Json classification_to_json(const Classification3& cls);
Json verify_report_to_json(const VerifyReport& rep, bool include_timings = false);

} // namespace meixner

#endif
