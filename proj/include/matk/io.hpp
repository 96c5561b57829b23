#pragma once

#include "matk/nestohedra.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace matk {

using Json = nlohmann::json;

/**
 * JSON exchange formats.  Keys are emitted in sorted order and numbers in
 * a fixed format, so `dump_stable` output is byte-for-byte reproducible.
 * Every parser throws Error("InvalidJson", ...) on malformed input and the
 * owning module's codes on semantic problems.
 */

/** Read and parse a JSON file.  Throws FileNotFound, InvalidJson. */
Json read_json_file(const std::filesystem::path& path);
/** Two-space indented text with a trailing newline. */
std::string dump_stable(const Json& j);
void write_json_file(const std::filesystem::path& path, const Json& j);

// -------------------------------- complexes ------------------------ //

/** {"vertices": [...], "facets": [[...], ...]}; facets in canonical order. */
Json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& j);

/** Labels of a simplex in rank order. */
Json simplex_to_json(const SimplicialComplex& k, VertexSet s);
VertexSet simplex_from_json(const SimplicialComplex& k, const Json& j);

// ------------------------------ (co)chains ------------------------- //

/** {"J": [...], "p": 0, "terms": [{"simplex": [...], "coeff": "1"}]}. */
Json cochain_to_json(const Cochain& a);
Json chain_to_json(const Chain& x);
Cochain cochain_from_json(const ComplexPtr& k, const Json& j, const Ring& ring);
Chain chain_from_json(const ComplexPtr& k, const Json& j, const Ring& ring);

/** Either a bare array of cochains or {"classes": [...]}. */
std::vector<Cochain> cochains_from_json(const ComplexPtr& k, const Json& j, const Ring& ring);

Json scalar_to_json(const Scalar& c);
Scalar scalar_from_json(const Json& j);

// ------------------------------- reports --------------------------- //

/** {"free_rank": r, "torsion": [orders]}. */
Json group_to_json(const AbelianGroup& g);
Json hochster_to_json(const SimplicialComplex& k, const HochsterTable& t);
/** {"ring": ..., "total": [{"degree", "free_rank", "torsion"}]}. */
Json graded_groups_to_json(const Ring& ring, const std::map<int, AbelianGroup>& groups);

/** {"n": n, "entries": [{"i", "k", "cochain"}]} in stage order, diagonal first. */
Json defining_system_to_json(const DefiningSystem& ds);
DefiningSystem defining_system_from_json(const ComplexPtr& k, const Json& j, const Ring& ring);

/** true / false / "unknown". */
Json tristate_to_json(Tristate t);
Json verdict_to_json(const MasseyVerdict& v);

// ---------------------------- constructions ------------------------ //

/**
 * {"factors": [complex or path], "classes": [cochain or path],
 *  "vertex_choice": [[{"simplex": [...], "vertex": label}]],
 *  "support_order": [[[...], ...]], "ring": "Z"}.  Relative paths are
 * resolved against `base`.
 */
JoinMasseySpec join_spec_from_json(const Json& j, const std::filesystem::path& base, const Ring& ring);
Json deletion_ledger_to_json(const JoinConstruction& c);

/** {"source": complex, "target": complex, "image": {label: label}}. */
Json vertex_map_to_json(const VertexMap& phi);
VertexMap vertex_map_from_json(const ComplexPtr& source, const ComplexPtr& target, const Json& image);

// ------------------------------ nestohedra ------------------------- //

/** {"ground": n, "sets": [[...], ...]}. */
Json building_set_to_json(const BuildingSet& b);
BuildingSet building_set_from_json(const Json& j);

}  // namespace matk
