#include "besovlab/report_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "besovlab/errors.hpp"
#include "besovlab/format.hpp"

namespace besovlab {

using nlohmann::json;

namespace {

constexpr const char* kManifestTag = "# manifest: ";

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json RunManifest::to_json() const
{
  return {{"command", command}, {"argv", argv},       {"params", params},    {"seed", seed},
          {"version", version}, {"conventions", conventions}, {"outputs", outputs}};
}

RunManifest RunManifest::from_json(const json& j)
{
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.params = j.value("params", json::object());
    m.seed = j.value("seed", std::uint64_t{0});
    m.version = j.value("version", std::string{});
    m.conventions = j.value("conventions", json::object());
    m.outputs = j.value("outputs", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::string manifest_comment(const RunManifest& manifest)
{
  return std::string(kManifestTag) + manifest.to_json().dump() + "\n";
}

std::optional<RunManifest> read_manifest_comment(std::istream& in)
{
  std::string line;
  const std::string tag = kManifestTag;
  while (std::getline(in, line)) {
    if (line.rfind(tag, 0) == 0) {
      try {
        return RunManifest::from_json(json::parse(line.substr(tag.size())));
      } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed manifest line: ") + e.what());
      }
    }
    if (line.empty() || line[0] != '#')
      break;
  }
  return std::nullopt;
}

json clt_report_json(const CltReport& rep, const RunManifest& manifest)
{
  const auto& cfg = rep.config;
  json theory = json::array();
  for (std::size_t a = 0; a < cfg.m_list.size(); ++a) {
    json row = {{"m", cfg.m_list[a]}, {"kappa", rep.kappa[a]}, {"rosenthal", rosenthal_bound(cfg.m_list[a])}};
    row["V"] = rep.entropy_V.empty() ? json(nullptr) : number_or_null(rep.entropy_V[a]);
    row["beta_tilde"] = rep.beta_tilde.empty() ? json(nullptr) : number_or_null(rep.beta_tilde[a]);
    theory.push_back(row);
  }
  json per_n = json::array();
  for (const auto& s : rep.per_n) {
    json q = json::array();
    for (std::size_t i = 0; i < s.quantiles.size(); ++i)
      q.push_back({{"level", s.quantile_levels[i]}, {"value", s.quantiles[i]}});
    per_n.push_back({{"n", s.n},
                     {"replicas", s.seminorms.size()},
                     {"mean_seminorm", s.mean},
                     {"all_finite", s.all_finite},
                     {"quantiles", q},
                     {"norms_csv", "norms_n" + std::to_string(s.n) + ".csv"}});
  }
  json moments = json::array();
  for (const auto& r : rep.moments)
    moments.push_back({{"n", r.n},
                       {"m", r.m},
                       {"empirical", number_or_null(r.empirical)},
                       {"se_rel", r.se_rel},
                       {"kappa", r.kappa},
                       {"beta_tilde", number_or_null(r.beta_tilde)},
                       {"pass", r.pass}});
  json tails = json::array();
  for (const auto& r : rep.tails)
    tails.push_back({{"n", r.n},
                     {"u", r.u},
                     {"empirical", r.empirical},
                     {"se", r.se},
                     {"bound", number_or_null(r.bound)},
                     {"in_theorem", r.in_theorem},
                     {"pass", r.pass}});
  json sup_tail = json::array();
  for (std::size_t b = 0; b < cfg.u_list.size(); ++b)
    sup_tail.push_back({{"u", cfg.u_list[b]}, {"empirical", rep.sup_tail[b]}});
  auto ks_json = [](const std::vector<KsRow>& rows) {
    json a = json::array();
    for (const auto& r : rows)
      a.push_back({{"n_a", r.n_a}, {"n_b", r.n_b}, {"distance", r.distance}, {"dkw_envelope", r.envelope}});
    return a;
  };
  return {{"manifest", manifest.to_json()},
          {"delta_min", rep.delta_min},
          {"theory", theory},
          {"per_n", per_n},
          {"moments", moments},
          {"tails", tails},
          {"sup_tail", sup_tail},
          {"ks_consecutive", ks_json(rep.ks_consecutive)},
          {"ks_reference", ks_json(rep.ks_reference)},
          {"checks", {{"moments_pass", rep.moments_pass}, {"tails_pass", rep.tails_pass}, {"passed", rep.passed()}}}};
}

void write_norms_csv(std::ostream& out, const NormSummary& s, const RunManifest& manifest)
{
  out << manifest_comment(manifest) << "replica,seminorm,norm\n";
  for (std::size_t r = 0; r < s.seminorms.size(); ++r)
    out << r << ',' << fmt17(s.seminorms[r]) << ',' << fmt17(s.norms[r]) << '\n';
}

void write_tails_csv(std::ostream& out, const CltReport& rep, const RunManifest& manifest)
{
  out << manifest_comment(manifest) << "n,u,empirical,bound\n";
  for (const auto& r : rep.tails)
    out << r.n << ',' << fmt17(r.u) << ',' << fmt17(r.empirical) << ',' << fmt17(r.bound) << '\n';
}

void write_moments_csv(std::ostream& out, const CltReport& rep, const RunManifest& manifest)
{
  out << manifest_comment(manifest) << "n,m,empirical,kappa,beta_tilde\n";
  for (const auto& r : rep.moments)
    out << r.n << ',' << fmt17(r.m) << ',' << fmt17(r.empirical) << ',' << fmt17(r.kappa) << ','
        << fmt17(r.beta_tilde) << '\n';
}

void write_ensemble_csv(std::ostream& out, const Ensemble& e, const RunManifest& manifest)
{
  out << manifest_comment(manifest) << "replica,t,value\n";
  const auto t = e.grid().nodes();
  for (std::size_t r = 0; r < e.replicas(); ++r) {
    const auto row = e.row(r);
    for (std::size_t i = 0; i < t.size(); ++i)
      out << r << ',' << fmt17(t[i]) << ',' << fmt17(row[i]) << '\n';
  }
}

std::string read_text_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace besovlab
