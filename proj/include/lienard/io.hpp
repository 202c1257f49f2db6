#pragma once

// JSON encoding of functions, systems and reports.
//
// A function is a tree of
//   {"poly": [c0, c1, ...]}
//   {"neg_factor":   {"lambda": l, "base": ...}}
//   {"neg_argscale": {"lambda": l, "base": ...}}
//   {"sub_const":    {"c": c, "base": ...}}
//   {"sub_linear":   {"c": c, "base": ...}}
// and a system is {"f": ..., "g": ...} or {"F": ..., "g": ...}, either bare or
// under a "system" key of a larger document.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "lienard/avg.hpp"
#include "lienard/cycles.hpp"
#include "lienard/deform.hpp"
#include "lienard/funcs.hpp"
#include "lienard/hypo.hpp"
#include "lienard/ode.hpp"

namespace lienard::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const funcs::Polynomial& p);
Json to_json(const funcs::ScalarFn& fn);
/// Throws InputError on anything that is not a well-formed tree.
funcs::ScalarFn scalar_fn_from_json(const Json& j);

Json to_json(const funcs::LienardSystem& sys);
funcs::LienardSystem system_from_json(const Json& j);

Json to_json(const roots::RootInterval& r);
Json to_json(const hypo::HypothesisReport& rep);
Json to_json(const cycles::CycleRecord& c);
Json to_json(const cycles::CrossingCounts& c);
Json to_json(const deform::DeformOutcome& out);
Json to_json(const avg::Prediction& p);

/// Doubles at 17 significant digits, non-finite values as null, two-space indent.
std::string dump(const Json& j);

/// Throws InputError when the file cannot be read or parsed.
Json read_json(const std::filesystem::path& path);
funcs::LienardSystem load_system(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// "t,x,y" header, one row per sample.
std::string trajectory_csv(const std::vector<ode::State>& samples);

}  // namespace lienard::io
