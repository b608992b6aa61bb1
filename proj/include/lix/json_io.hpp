#pragma once

#include <string>

#include "json.hpp"

#include "lix/ainfty.hpp"
#include "lix/curved_algebra.hpp"
#include "lix/defcomplex.hpp"
#include "lix/mc_solver.hpp"

namespace lix {

using Json = nlohmann::json;

/* JSON schemas (bit-exact round trips, rationals as decimal-free "p/q"
 * strings, infinite weights as "inf"):
 *   space    {"basis":[{"id":"e0","degree":0,"weight":2}, ...]}
 *   element  {"e0":"-1/2", ...}
 *   algebra  {"space":.., "brackets":[{"arity":2,"args":["b","b"],"value":{..}}, ..]}
 *   ainfty   {"space":.., "ops":[{"arity":2,"args":["x","x"],"value":{..}}, ..],
 *             "weightCap":3}
 *   cert     {"alpha":{..},"r":1,"steps":[{"k":3,"twist":{..},"before":3,"after":4}, ..]}
 */

Json space_to_json(const GradedSpace& s);
SpacePtr space_from_json(const Json& j, int max_dim);

Json element_to_json(const Element& x);
Element element_from_json(const Json& j, const SpacePtr& space);

Json algebra_to_json(const CurvedAlgebra& alg);
CurvedAlgebra algebra_from_json(const Json& j, int max_dim);

Json ainfty_to_json(const AInftyAlgebra& a);
AInftyAlgebra ainfty_from_json(const Json& j, int max_dim);

Json certificate_to_json(const MCCertificate& c);
MCCertificate certificate_from_json(const Json& j, const SpacePtr& space);

// Shared file kind detection: "brackets" -> curved algebra, "ops" -> ainfty.
bool json_is_ainfty(const Json& j);

// Degree shift g -> g[-1] applied on input for the unshifted convention:
// every basis degree drops by one.
Json shift_input_degrees(Json j);

Json load_json_file(const std::string& path);

}  // namespace lix
