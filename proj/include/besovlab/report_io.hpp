#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "besovlab/clt_lab.hpp"

namespace besovlab {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Everything needed to reproduce one CLI run. Output locations and thread
/// counts are deliberately not part of it.
struct RunManifest
{
  std::string command;
  std::vector<std::string> argv;  ///< arguments that re-run the command, without --out
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string version = kLibraryVersion;
  nlohmann::json conventions = nlohmann::json::object();
  std::vector<std::string> outputs;  ///< files written next to manifest.json

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

/// "# manifest: {...}" line for CSV headers.
std::string manifest_comment(const RunManifest& manifest);

/// Manifest embedded as a comment line, if any.
std::optional<RunManifest> read_manifest_comment(std::istream& in);

nlohmann::json clt_report_json(const CltReport& report, const RunManifest& manifest);

/// replica,seminorm,norm
void write_norms_csv(std::ostream& out, const NormSummary& summary, const RunManifest& manifest);
/// n,u,empirical,bound
void write_tails_csv(std::ostream& out, const CltReport& report, const RunManifest& manifest);
/// n,m,empirical,kappa,beta_tilde
void write_moments_csv(std::ostream& out, const CltReport& report, const RunManifest& manifest);
/// replica,t,value
void write_ensemble_csv(std::ostream& out, const Ensemble& ensemble, const RunManifest& manifest);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace besovlab
