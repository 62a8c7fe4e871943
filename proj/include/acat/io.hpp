#pragma once
#include <string>

#include "acat/morphism.hpp"
#include "acat/system.hpp"
#include "json.hpp"

namespace acat {

// Current container format tags; parse rejects anything else.
inline constexpr const char* kSystemFormatV1 = "augcat-system-v1";
inline constexpr const char* kFamilyFormatV1 = "augcat-family-v1";

// A structurally valid system together with the findings of check_system.
// Structural problems (syntax, unknown keys, undeclared chords, bad field)
// throw with the origin, the offending key path and, for syntax errors,
// line:column; mathematical violations land in `audit` so callers can report
// them instead of dying on them.
struct LoadedSystem {
    DGASystem sys;
    Report audit;
};

LoadedSystem load_system_text(const std::string& text, const std::string& origin = "<string>");
LoadedSystem load_system(const std::string& path);

// load_system that additionally throws when the audit has findings.
DGASystem parse_system(const std::string& path);

// Canonical serialization: fixed key order, every default made explicit,
// generators and differentials in declaration order, all subset containers
// sorted. parse(serialize(sys)) reproduces sys exactly (same ids, same
// polynomials), and serialize is byte-stable for a fixed input.
std::string serialize_system(const DGASystem& sys);

// A morphism family binds to a concrete source and target system: each map
// goes from the source system's subset algebra to the target system's. The
// file carries steps tagged by kind ("identity" | "images"); the first step
// maps source to target, later steps are target endomorphisms, and the
// recorded map is their composition. Accepts either a family file or a
// system file carrying a "morphisms" key.
MorphismFamily parse_family_text(const std::string& text, const DGASystem& srcSys,
                                 const DGASystem& tgtSys, const std::string& origin = "<string>");
MorphismFamily parse_family(const std::string& path, const DGASystem& srcSys,
                            const DGASystem& tgtSys);

std::string serialize_family(const MorphismFamily& fam);

// Machine-readable report envelope: {"command", "status", "findings",
// "tables"} with stable key order; findings render as
// {"rule", "where", "detail"} in report order.
nlohmann::ordered_json report_doc(const std::string& command, const std::string& status,
                                  const Report& rep, nlohmann::ordered_json tables);

}  // namespace acat
