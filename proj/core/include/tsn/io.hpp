#ifndef TSN_IO_HPP_
#define TSN_IO_HPP_

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tsn/instance.hpp"

namespace tsn {

using Json = nlohmann::ordered_json;

// Instance schema:
//   {"directed": bool, "variant": "edge"|"node"|"node_and_edge", "T": int,
//    "vertices": [string],
//    "edges": [{"u": string, "v": string, "w": number|"p/q", "times": [int]}],
//    "node_activity": {vertex: [int]}, "demands": [{"a", "b", "t"}]}
// An edge may give {"from": t} instead of "times" as shorthand for t..T.
TemporalInstance instance_from_json(const Json& json);
Json to_json(const TemporalInstance& instance);

// {"edges": [int], "cost": "p/q", "feasible": bool}
Json solution_to_json(const Solution& solution, bool feasible = true);
Json infeasible_solution_json();
// Returns the stored edges and cost as given; feasibility is the caller's job.
Solution solution_from_json(const Json& json);
bool solution_claims_feasible(const Json& json);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& json);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Rational rational_from_json(const Json& json);

}  // namespace tsn

#endif  // TSN_IO_HPP_
