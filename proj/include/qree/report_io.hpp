#pragma once

#include "qree/bounds.hpp"
#include "qree/mregs.hpp"
#include "qree/optimizer.hpp"
#include "qree/scan.hpp"
#include "qree/state.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qree {

/// State loaded from the JSON file format: {"dims": [...]} plus either
/// "amplitudes" (pure) or "density".
struct LoadedState {
  QuantumState density;
  std::optional<PureState> pure;  // set when the file carried amplitudes
};

/// Throws std::runtime_error with a field-precise message on bad input.
LoadedState load_state_file(const std::string& path);
LoadedState load_state_json(const nlohmann::json& j, const std::string& origin);

/// Nearest double with 9 significant decimal digits; reports quote numbers
/// at this precision so the JSON and CSV views agree.
double round_sig(double v);
/// %.9g rendering used by the CSV writer.
std::string format_sig(double v);

nlohmann::ordered_json to_json(const ReeResult& result);
nlohmann::ordered_json to_json(const BoundsReport& report);
nlohmann::ordered_json to_json(const MregsDecomposition& decomposition);
nlohmann::ordered_json to_json(const ScanResult& scan);
nlohmann::ordered_json to_json(const VerifySummary& verify);

std::string to_csv(const ReeResult& result);
std::string to_csv(const BoundsReport& report);
std::string to_csv(const MregsDecomposition& decomposition);
std::string to_csv(const ScanResult& scan);
std::string to_csv(const VerifySummary& verify);

}  // namespace qree
