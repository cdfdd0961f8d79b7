#pragma once

#include <string>

#include <json.hpp>

#include "oblivion/ldme.hpp"
#include "oblivion/ldso.hpp"
#include "oblivion/noise.hpp"
#include "oblivion/shift1d.hpp"
#include "oblivion/shifthd.hpp"

namespace oblivion {

using Json = nlohmann::json;

// Spec records serialize through a key-value tree. Field names are part of
// the external interface: alpha, tail.family, tail.params, sigma,
// bounded_variance_mode.

Json to_json(const TailSpec& spec);
TailSpec tail_from_json(const Json& j);

Json to_json(const ObliviousNoiseSpec& spec);
ObliviousNoiseSpec oblivious_from_json(const Json& j);

Json to_json(const ObservationNoiseSpec& spec);
ObservationNoiseSpec observation_from_json(const Json& j);

Json to_json(const Shift1DConfig& cfg);
void merge_from_json(Shift1DConfig& cfg, const Json& j);

Json to_json(const AmplifyConfig& cfg);
void merge_from_json(AmplifyConfig& cfg, const Json& j);

Json to_json(const LdmeConfig& cfg);
void merge_from_json(LdmeConfig& cfg, const Json& j);

Json to_json(const LdsoConfig& cfg);
void merge_from_json(LdsoConfig& cfg, const Json& j);

}  // namespace oblivion
