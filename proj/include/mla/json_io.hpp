#pragma once

#include <string>

#include "json.hpp"
#include "mla/commutator.hpp"
#include "mla/grothendieck.hpp"
#include "mla/modules.hpp"

namespace mla {

// insertion-ordered documents keep every report byte-deterministic
using Json = nlohmann::ordered_json;

// canonical dump used for files, golden comparisons, and hashes
std::string dump_json(const Json& j);

Json weight_json(const Weight& w);
Weight weight_parse(const Json& j, int rank);

// Chevalley basis element: {"cartan": i} (1-based) or {"root": [coords]}
Json chev_json(const RootSystemData& R, Chev g);
Chev chev_parse(const RootSystemData& R, const Json& j);

// {"type":"loop","root_or_cartan":...,"power":[...]} | {"type":"c","i":1}
// | {"type":"d","i":1}; central and derivation axes are 1-based in JSON
Json gen_json(const RootSystemData& R, const LoopGen& g);
LoopGen gen_parse(const RootSystemData& R, const Json& j, int k);

Json loop_element_json(const LoopElement& x);
LoopElement loop_element_parse(const RootSystemPtr& R, const Json& j);

Json pbw_element_json(const RootSystemData& R, int k, const PbwElement& z);
PbwElement pbw_element_parse(const RootSystemPtr& R, const Json& j);

Json certificate_json(const RootSystemData& R, int k, const WitnessCertificate& c);
Json verify_report_json(const VerifyReport& r);

// structure tables of the finite algebra, for the root-system report
Json root_system_json(const RootSystemData& R);

// buildable description plus block summary; module_from_json re-induces
// the tower from the description part
Json module_json(const TowerModule& m);
TowerModulePtr module_from_json(const Json& j, int jobs = 1);

Json pmatrix_json(const PMatrix& P);
PMatrix pmatrix_parse(const Json& j);

Json grothendieck_vector_json(const GrothendieckVector& v);
Json character_json(const CharacterPolynomial& ch);

// order-stable content hash of a sparse module vector
std::string sparsevec_hash(const SparseVec& v);

}  // namespace mla
