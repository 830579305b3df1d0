#pragma once

// JSON object documents (see docs/format.md) and report serialisation.

#include "gaussbreak/classification.hpp"
#include "gaussbreak/compatibility.hpp"
#include "gaussbreak/distributions.hpp"
#include "gaussbreak/gaussian_objects.hpp"
#include "gaussbreak/witness.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>

namespace gaussbreak {

inline constexpr int kFormatVersion = 1;

using Object = std::variant<GaussianState, GaussianChannel, GaussianObservable,
                            GaussianPostprocessing>;

/// "state", "channel", "observable" or "postprocessing".
const char* kind_name(const Object& obj);

/// Parses one object document. Errors are InvalidInput prefixed with `source`
/// and the offending field.
Object parse_object(const nlohmann::json& doc, const std::string& source = "document");
Object load_object(const std::filesystem::path& path);

/// Loads and requires a particular kind.
template <typename T>
T load_as(const std::filesystem::path& path);

nlohmann::json to_document(const GaussianState& st);
nlohmann::json to_document(const GaussianChannel& ch);
nlohmann::json to_document(const GaussianObservable& obs);
nlohmann::json to_document(const GaussianPostprocessing& pp);
nlohmann::json to_document(const Object& obj);

nlohmann::json to_json(const RealMatrix& m);
nlohmann::json to_json(const RealVector& v);

nlohmann::json to_json(const PsdVerdict& v);
nlohmann::json to_json(const ValidityReport& r);
nlohmann::json to_json(const FeasibilityResult& r);
nlohmann::json to_json(const EbResult& r);
nlohmann::json to_json(const SteerabilityBreakingReport& r);
nlohmann::json to_json(const ClassicalNoiseFlags& f);
nlohmann::json to_json(const ChannelReport& r);
nlohmann::json to_json(const IncompatibilityWitness& w);
nlohmann::json to_json(const CompatibilityVerdict& v);
nlohmann::json to_json(const SteeringVerdict& v);
nlohmann::json to_json(const OutcomeGaussian& d);

/// Pretty-printed JSON with every floating-point number written as %.17g.
std::string dump_report(const nlohmann::json& j);

}  // namespace gaussbreak
