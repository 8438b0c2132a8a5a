#pragma once

#include <string>

#include "json.hpp"
#include "vmp/chain.hpp"
#include "vmp/gain_synthesis.hpp"
#include "vmp/scenarios.hpp"
#include "vmp/simulation.hpp"

namespace vmp {

using nlohmann::json;

// Reads and parses a JSON file; InputError on I/O or syntax problems.
json load_json_file(const std::string& path);

// A number, or a string such as "pi/4", "-3*pi/14", "0.25".
double number_field(const json& obj, const std::string& key);
double parse_number_text(const std::string& text);

VisibilityScenario scenario_from_json(const json& j);
json scenario_to_json(const VisibilityScenario& sc);

// Chain specs carry a "links" array; scenario files carry "type".
bool is_chain_json(const json& j);
ChainSpec chain_from_json(const json& j);
json chain_to_json(const ChainSpec& spec);

// Accepts {"k11","k22","k23"}, [k11, k22, k23] or the 2x3 matrix form.
GainMatrix gain_from_json(const json& j);
json gain_to_json(const GainMatrix& K);

Signal signal_from_json(const json& j);
json signal_to_json(const Signal& s);
LeaderProfile profile_from_json(const json& j);
json profile_to_json(const LeaderProfile& p);

json to_json(const FeasibilityReport& rep);
json to_json(const CertificateReport& rep);
json to_json(const SynthesisResult& res);
json to_json(const ClosedChainReport& rep);
// Violation lists are truncated to max_entries each; counts are kept.
json to_json(const ViolationReport& rep, std::size_t max_entries = 100);
json to_json(const Rationalizer& rz);

}  // namespace vmp
