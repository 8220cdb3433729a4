#include "besovlab/cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>
#include <unistd.h>

#include "besovlab/besov.hpp"
#include "besovlab/clt_lab.hpp"
#include "besovlab/entropy.hpp"
#include "besovlab/errors.hpp"
#include "besovlab/format.hpp"
#include "besovlab/grand_lebesgue.hpp"
#include "besovlab/process_models.hpp"
#include "besovlab/report_io.hpp"

namespace besovlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Exponent parse_exponent(const std::string& text, const char* name)
{
  if (text == "inf" || text == "infinity" || text == "INFINITY")
    return Exponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw std::invalid_argument(std::string("--") + name + ": not an exponent: '" + text + "'");
  return Exponent(v);
}

json exponent_json(Exponent e) { return e.is_infinite() ? json("inf") : json(e.value()); }

// Arguments that re-run the command: drop --out and --threads.
std::vector<std::string> replay_args(const std::vector<std::string>& args)
{
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--out" || a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0 || a.rfind("--threads=", 0) == 0)
      continue;
    kept.push_back(a);
  }
  return kept;
}

// Replace the value of a path-valued option by its absolute form.
void absolutize(std::vector<std::string>& args, const std::string& flag, const std::string& prefix = "")
{
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == flag && args[i + 1].rfind(prefix, 0) == 0) {
      const std::string rest = args[i + 1].substr(prefix.size());
      args[i + 1] = prefix + fs::absolute(rest).lexically_normal().string();
    }
  }
}

json base_conventions()
{
  return {{"boundary", "zero_extension"},
          {"interpolation", "linear"},
          {"float_format", "%.17g in CSV, shortest round-trip in JSON"}};
}

void ensure_dir(const fs::path& dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory '" + dir.string() + "'");
  const fs::path probe = dir / ".besovlab_write_probe";
  {
    std::ofstream p(probe);
    if (!p)
      throw IoError("output directory '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

void write_manifest_file(const fs::path& dir, const RunManifest& manifest)
{
  write_text_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
}

// ---------------------------------------------------------------- norm
struct NormOpts
{
  std::string input;
  std::string p = "2", q = "inf", s = "2";
  double alpha = 0.1;
  bool generalized = false;
  double delta_min = 0.0;
  std::size_t h_nodes = kDefaultShiftNodes;
  std::size_t delta_nodes = 64;
};

int cmd_norm(const NormOpts& o, const std::vector<std::string>& args, std::ostream& out)
{
  const BesovParams params(parse_exponent(o.p, "p"), parse_exponent(o.q, "q"), parse_exponent(o.s, "s"), o.alpha);
  std::ifstream in(o.input);
  if (!in)
    throw IoError("cannot open '" + o.input + "'");
  const SampledPath f = read_path_csv(in);
  const double dmin = o.delta_min > 0.0 ? o.delta_min : 1.0 / static_cast<double>(f.grid().size());
  const auto measure = besov_delta_measure(params, dmin, o.delta_nodes);
  const BesovKind kind = o.generalized ? BesovKind::generalized : BesovKind::ordinary;
  const double lp = lp_norm(f, params.p, lebesgue_on(f.grid()));
  const double semi = besov_seminorm(f, params, measure, o.h_nodes, kind);

  RunManifest m;
  m.command = "norm";
  m.argv = replay_args(args);
  absolutize(m.argv, "--input");
  m.params = {{"input", fs::absolute(o.input).lexically_normal().string()},
              {"p", exponent_json(params.p)},
              {"q", exponent_json(params.q)},
              {"s", exponent_json(params.s)},
              {"alpha", o.alpha},
              {"kind", o.generalized ? "generalized" : "ordinary"},
              {"grid_n", f.grid().size()}};
  m.conventions = base_conventions();
  m.conventions["delta_min"] = dmin;
  m.conventions["delta_nodes"] = o.delta_nodes;
  m.conventions["h_nodes"] = o.h_nodes;
  const json result = {{"lp", lp}, {"seminorm", semi}, {"norm", lp + semi}, {"manifest", m.to_json()}};
  out << result.dump(2) << '\n';
  return kPass;
}

// ---------------------------------------------------------------- simulate
struct ModelOpts
{
  std::string model = "wiener";
  double hurst = 0.5;
  double sigma = 1.0;
};

void add_model_options(CLI::App* sub, ModelOpts& m)
{
  sub->add_option("--model", m.model, "wiener | fbm | iid | rademacher")->capture_default_str();
  sub->add_option("--hurst", m.hurst, "fbm Hurst index")->capture_default_str();
  sub->add_option("--sigma", m.sigma, "scale")->capture_default_str();
}

json model_json(const ProcessModel& model)
{
  return {{"name", model.name()}, {"hurst", model.hurst}, {"sigma", model.sigma}};
}

struct SimulateOpts
{
  ModelOpts model;
  std::size_t grid_n = 257;
  std::size_t replicas = 100;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_simulate(const SimulateOpts& o, const std::vector<std::string>& args, std::ostream& out)
{
  const ProcessModel model = parse_model(o.model.model, o.model.hurst, o.model.sigma);
  if (o.replicas == 0)
    throw std::invalid_argument("--replicas must be positive");
  if (model.kind == ModelKind::fbm && o.grid_n > kMaxFbmNodes)
    throw std::invalid_argument("fbm grids are limited to " + std::to_string(kMaxFbmNodes) + " nodes");
  const fs::path dir(o.out);
  ensure_dir(dir);
  const Ensemble e = sample(model, {UnitGrid(o.grid_n), o.replicas, o.seed});

  RunManifest m;
  m.command = "simulate";
  m.argv = replay_args(args);
  m.params = {{"model", model_json(model)}, {"grid_n", o.grid_n}, {"replicas", o.replicas}};
  m.seed = o.seed;
  m.conventions = base_conventions();
  m.conventions["fbm_jitter"] = e.jitter;
  m.outputs = {"ensemble.csv"};

  std::ostringstream csv;
  write_ensemble_csv(csv, e, m);
  write_text_file(dir / "ensemble.csv", csv.str());
  write_manifest_file(dir, m);
  out << "wrote " << (dir / "ensemble.csv").string() << '\n';
  return kPass;
}

// ---------------------------------------------------------------- clt
struct CltOpts
{
  ModelOpts model;
  std::string p = "2", q = "2", s = "2";
  double alpha = 0.1;
  bool ordinary = false;
  std::size_t grid_n = 512;
  std::vector<std::size_t> n_list{1, 4, 16, 64};
  std::vector<double> m_list{4, 6, 8};
  std::vector<double> u_list{3, 4, 5, 6};
  std::size_t replicas = 500;
  std::uint64_t seed = 1;
  double delta_min = 0.0;
  std::size_t delta_nodes = 64;
  std::size_t h_nodes = kDefaultShiftNodes;
  std::size_t z_nodes = kDefaultShiftNodes;
  std::size_t entropy_z_nodes = 33;
  double kappa_scale = 1.0;
  std::size_t budget = 400'000;
  std::string reference;
  std::size_t reference_replicas = 2000;
  std::string out;
};

int cmd_clt(const CltOpts& o, const std::vector<std::string>& args, std::ostream& out)
{
  CltConfig cfg;
  cfg.model = parse_model(o.model.model, o.model.hurst, o.model.sigma);
  cfg.besov = BesovParams(parse_exponent(o.p, "p"), parse_exponent(o.q, "q"), parse_exponent(o.s, "s"), o.alpha);
  cfg.kind = o.ordinary ? BesovKind::ordinary : BesovKind::generalized;
  cfg.grid_n = o.grid_n;
  cfg.n_list = o.n_list;
  cfg.m_list = o.m_list;
  cfg.u_list = o.u_list;
  cfg.replicas = o.replicas;
  cfg.seed = o.seed;
  cfg.delta_min = o.delta_min;
  cfg.delta_nodes = o.delta_nodes;
  cfg.h_nodes = o.h_nodes;
  cfg.z_nodes = o.z_nodes;
  cfg.entropy_z_nodes = o.entropy_z_nodes;
  cfg.kappa_scale = o.kappa_scale;
  cfg.budget = o.budget;
  if (!o.reference.empty())
    cfg.reference = parse_model(o.reference, 0.5, o.model.sigma);
  cfg.reference_replicas = o.reference_replicas;
  cfg.validate();
  const fs::path dir(o.out);
  ensure_dir(dir);

  const CltReport rep = run_clt_experiment(cfg);

  RunManifest m;
  m.command = "clt";
  m.argv = replay_args(args);
  m.params = {{"model", model_json(cfg.model)},
              {"p", exponent_json(cfg.besov.p)},
              {"q", exponent_json(cfg.besov.q)},
              {"s", exponent_json(cfg.besov.s)},
              {"alpha", cfg.besov.alpha},
              {"kind", o.ordinary ? "ordinary" : "generalized"},
              {"grid_n", cfg.grid_n},
              {"n_list", cfg.n_list},
              {"m_list", cfg.m_list},
              {"u_list", cfg.u_list},
              {"replicas", cfg.replicas},
              {"kappa_scale", cfg.kappa_scale},
              {"budget", cfg.budget},
              {"reference", o.reference.empty() ? json(nullptr) : json(o.reference)},
              {"reference_replicas", cfg.reference_replicas}};
  m.seed = cfg.seed;
  m.conventions = base_conventions();
  m.conventions["delta_min"] = rep.delta_min;
  m.conventions["delta_nodes"] = cfg.delta_nodes;
  m.conventions["h_nodes"] = cfg.h_nodes;
  m.conventions["z_nodes"] = cfg.z_nodes;
  m.conventions["entropy_z_nodes"] = cfg.entropy_z_nodes;
  m.conventions["statistic"] = "Besov seminorm of S_n";
  m.conventions["margins"] = "3 SE: delta method for moments, binomial for tails";
  m.conventions["tail_bound"] = "exp(-kappa_tilde^*(ln u)) on the m_list table, reported only for u > e";
  m.conventions["entropy_integrand"] = "N^{1/m}";
  m.conventions["exit_code_checks"] = "moments and tails; KS distances are reported only";
  for (const auto& s : rep.per_n)
    m.outputs.push_back("norms_n" + std::to_string(s.n) + ".csv");
  m.outputs.insert(m.outputs.end(), {"tails.csv", "moments.csv", "report.json"});

  for (const auto& s : rep.per_n) {
    std::ostringstream csv;
    write_norms_csv(csv, s, m);
    write_text_file(dir / ("norms_n" + std::to_string(s.n) + ".csv"), csv.str());
  }
  {
    std::ostringstream csv;
    write_tails_csv(csv, rep, m);
    write_text_file(dir / "tails.csv", csv.str());
  }
  {
    std::ostringstream csv;
    write_moments_csv(csv, rep, m);
    write_text_file(dir / "moments.csv", csv.str());
  }
  write_text_file(dir / "report.json", clt_report_json(rep, m).dump(2) + "\n");
  write_manifest_file(dir, m);

  for (const auto& r : rep.moments)
    out << "moment n=" << r.n << " m=" << fmt17(r.m) << " empirical=" << fmt17(r.empirical)
        << " kappa=" << fmt17(r.kappa) << (r.pass ? " ok" : " VIOLATED") << '\n';
  for (const auto& r : rep.tails)
    if (r.in_theorem && !r.pass)
      out << "tail n=" << r.n << " u=" << fmt17(r.u) << " empirical=" << fmt17(r.empirical)
          << " bound=" << fmt17(r.bound) << " VIOLATED\n";
  out << (rep.passed() ? "all bound comparisons pass\n" : "bound comparison failed\n");
  return rep.passed() ? kPass : kBoundViolation;
}

// ---------------------------------------------------------------- tails
struct TailsOpts
{
  std::string psi = "sqrt";
  std::vector<double> u_list{3, 4, 5, 10};
  std::string out;
};

PsiFunction load_psi(const std::string& spec)
{
  const std::string tag = "table:";
  if (spec.rfind(tag, 0) != 0)
    return parse_psi(spec);
  const std::string path = spec.substr(tag.size());
  std::istringstream in(read_text_file(path));
  std::string line;
  std::vector<MomentPoint> table;
  bool header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    if (!header) {
      if (line != "m,psi")
        throw std::invalid_argument("psi table must start with header 'm,psi'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("psi table line " + std::to_string(line_no) + ": expected two columns");
    try {
      std::size_t u1 = 0, u2 = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const double mv = std::stod(a, &u1);
      const double pv = std::stod(b, &u2);
      if (u1 != a.size() || u2 != b.size())
        throw std::invalid_argument("trailing text");
      table.push_back({mv, pv});
    } catch (const std::exception&) {
      throw std::invalid_argument("psi table line " + std::to_string(line_no) + ": not a number");
    }
  }
  return PsiFunction::tabulated(std::move(table));
}

int cmd_tails(const TailsOpts& o, const std::vector<std::string>& args, std::ostream& out)
{
  const PsiFunction psi = load_psi(o.psi);
  RunManifest m;
  m.command = "tails";
  m.argv = replay_args(args);
  absolutize(m.argv, "--psi", "table:");
  m.params = {{"psi", o.psi}, {"u_list", o.u_list}};
  m.conventions = {{"tail_bound", "exp(-psi_tilde^*(ln u))"},
                   {"out_of_theorem", "u <= e is reported with the trivial bound 1"},
                   {"float_format", "%.17g"}};
  std::ostringstream csv;
  csv << manifest_comment(m) << "u,bound\n";
  for (double u : o.u_list) {
    const double b = u > std::exp(1.0) ? tail_bound(psi, u) : 1.0;
    csv << fmt17(u) << ',' << fmt17(b) << '\n';
  }
  if (o.out.empty())
    out << csv.str();
  else
    write_text_file(o.out, csv.str());
  return kPass;
}

// ---------------------------------------------------------------- entropy
struct EntropyOpts
{
  ModelOpts model;
  std::string p = "2", q = "2", s = "2";
  double alpha = 0.1;
  std::vector<double> m_list{4, 6, 8};
  std::size_t z_nodes = 33;
  std::size_t grid_n = 257;
  std::size_t replicas = 400;
  std::uint64_t seed = 1;
  double delta_min = 0.0;
  std::size_t delta_nodes = 64;
  std::size_t eps_nodes = 257;
  std::string out;
};

int cmd_entropy(const EntropyOpts& o, const std::vector<std::string>& args, std::ostream& out)
{
  const ProcessModel model = parse_model(o.model.model, o.model.hurst, o.model.sigma);
  const BesovParams params(parse_exponent(o.p, "p"), parse_exponent(o.q, "q"), parse_exponent(o.s, "s"), o.alpha);
  if (o.z_nodes == 0)
    throw std::invalid_argument("--z-nodes must be positive");
  if (o.replicas < 2)
    throw std::invalid_argument("--replicas must be at least 2");
  for (double mv : o.m_list)
    (void)Exponent(mv);
  const double dmin = o.delta_min > 0.0 ? o.delta_min : 1.0 / static_cast<double>(o.grid_n);
  const auto nu = nu_measure(params, dmin, o.delta_nodes);

  std::vector<std::array<double, 3>> rows;
  if (o.z_nodes == 1) {
    // single point z = 0: diameter 0
    for (double mv : o.m_list)
      rows.push_back({mv, 0.0, 0.0});
  } else {
    const Ensemble e = sample(model, {UnitGrid(o.grid_n), o.replicas, o.seed});
    const auto z = z_grid(o.z_nodes);
    const ThetaTable table(e, params.p, z, std::vector<double>(nu.nodes().begin(), nu.nodes().end()));
    for (double mv : o.m_list) {
      const Exponent em(mv);
      const FiniteMetricSpace space(z, table.rho_matrix(em));
      const double V = entropy_integral(space, em, o.eps_nodes);
      rows.push_back({mv, V, beta_of_m(V, table.mu_curve(em), params.s, nu)});
    }
  }

  RunManifest m;
  m.command = "entropy";
  m.argv = replay_args(args);
  m.params = {{"model", model_json(model)},
              {"p", exponent_json(params.p)},
              {"q", exponent_json(params.q)},
              {"s", exponent_json(params.s)},
              {"alpha", params.alpha},
              {"m_list", o.m_list},
              {"z_nodes", o.z_nodes},
              {"grid_n", o.grid_n},
              {"replicas", o.replicas}};
  m.seed = o.seed;
  m.conventions = base_conventions();
  m.conventions["delta_min"] = dmin;
  m.conventions["delta_nodes"] = o.delta_nodes;
  m.conventions["eps_nodes"] = o.eps_nodes;
  m.conventions["covering"] = "greedy farthest-point";
  m.conventions["entropy_integrand"] = "N^{1/m}";
  m.conventions["beta"] = "V(m) * |mu_m|_{s,nu}";
  std::ostringstream csv;
  csv << manifest_comment(m) << "m,V,beta\n";
  for (const auto& r : rows)
    csv << fmt17(r[0]) << ',' << fmt17(r[1]) << ',' << fmt17(r[2]) << '\n';
  if (o.out.empty())
    out << csv.str();
  else
    write_text_file(o.out, csv.str());
  return kPass;
}

// ---------------------------------------------------------------- verify
fs::path scratch_path(const std::string& stem)
{
  static std::atomic<unsigned> counter{0};
  return fs::temp_directory_path() /
         ("besovlab_verify_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + stem);
}

int compare_files(const fs::path& a, const fs::path& b, std::ostream& out)
{
  const bool same = read_text_file(a) == read_text_file(b);
  out << (same ? "identical " : "DIFFERS ") << a.string() << '\n';
  return same ? kPass : kBoundViolation;
}

int cmd_verify(const std::string& target, std::ostream& out, std::ostream& err)
{
  fs::path path(target);
  if (fs::is_directory(path))
    path /= "manifest.json";
  const std::string text = read_text_file(path);

  if (path.filename() == "manifest.json") {
    const RunManifest m = RunManifest::from_json(json::parse(text));
    const fs::path tmp = scratch_path("dir");
    std::vector<std::string> argv = m.argv;
    argv.insert(argv.end(), {"--out", tmp.string()});
    std::ostringstream sink;
    const int code = run(argv, sink, err);
    if (code != kPass && code != kBoundViolation) {
      fs::remove_all(tmp);
      return code;
    }
    int result = compare_files(path, tmp / "manifest.json", out);
    for (const auto& name : m.outputs)
      result = std::max(result, compare_files(path.parent_path() / name, tmp / name, out));
    fs::remove_all(tmp);
    return result;
  }

  // JSON document with an embedded manifest (norm output)
  if (!text.empty() && text[0] == '{') {
    const json doc = json::parse(text);
    if (!doc.contains("manifest"))
      throw std::invalid_argument("'" + path.string() + "' carries no manifest");
    const RunManifest m = RunManifest::from_json(doc.at("manifest"));
    std::ostringstream rerun;
    const int code = run(m.argv, rerun, err);
    if (code != kPass)
      return code;
    const bool same = rerun.str() == text;
    out << (same ? "identical " : "DIFFERS ") << path.string() << '\n';
    return same ? kPass : kBoundViolation;
  }

  // CSV with a manifest comment line
  std::istringstream in(text);
  const auto m = read_manifest_comment(in);
  if (!m)
    throw std::invalid_argument("'" + path.string() + "' carries no manifest");
  const fs::path tmp = scratch_path("file.csv");
  std::vector<std::string> argv = m->argv;
  argv.insert(argv.end(), {"--out", tmp.string()});
  std::ostringstream sink;
  const int code = run(argv, sink, err);
  if (code != kPass) {
    fs::remove(tmp);
    return code;
  }
  const int result = compare_files(path, tmp, out);
  fs::remove(tmp);
  return result;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Besov-space norms, Grand Lebesgue tail bounds and CLT experiments", "besovlab"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");

  NormOpts norm;
  auto* s_norm = app.add_subcommand("norm", "Besov norm of a path CSV (t,value)");
  s_norm->add_option("--input", norm.input, "path CSV")->required();
  s_norm->add_option("--p", norm.p)->capture_default_str();
  s_norm->add_option("--q", norm.q)->capture_default_str();
  s_norm->add_option("--s", norm.s)->capture_default_str();
  s_norm->add_option("--alpha", norm.alpha)->capture_default_str();
  s_norm->add_flag("--generalized", norm.generalized, "q-averaged modulus");
  s_norm->add_option("--delta-min", norm.delta_min, "delta truncation (default 1/N)");
  s_norm->add_option("--h-nodes", norm.h_nodes)->capture_default_str();
  s_norm->add_option("--delta-nodes", norm.delta_nodes)->capture_default_str();

  SimulateOpts sim;
  auto* s_sim = app.add_subcommand("simulate", "Write a seeded path ensemble");
  add_model_options(s_sim, sim.model);
  s_sim->add_option("--grid-n", sim.grid_n)->capture_default_str();
  s_sim->add_option("--replicas", sim.replicas)->capture_default_str();
  s_sim->add_option("--seed", sim.seed)->capture_default_str();
  s_sim->add_option("--out", sim.out, "output directory")->required();

  CltOpts clt;
  auto* s_clt = app.add_subcommand("clt", "Monte Carlo CLT experiment against the moment and tail bounds");
  add_model_options(s_clt, clt.model);
  s_clt->add_option("--p", clt.p)->capture_default_str();
  s_clt->add_option("--q", clt.q)->capture_default_str();
  s_clt->add_option("--s", clt.s)->capture_default_str();
  s_clt->add_option("--alpha", clt.alpha)->capture_default_str();
  s_clt->add_flag("--ordinary", clt.ordinary, "use the sup-over-shifts modulus");
  s_clt->add_option("--grid-n", clt.grid_n)->capture_default_str();
  s_clt->add_option("--n-list", clt.n_list)->delimiter(',');
  s_clt->add_option("--m-list", clt.m_list)->delimiter(',');
  s_clt->add_option("--u-list", clt.u_list)->delimiter(',');
  s_clt->add_option("--replicas", clt.replicas)->capture_default_str();
  s_clt->add_option("--seed", clt.seed)->capture_default_str();
  s_clt->add_option("--delta-min", clt.delta_min, "delta truncation (default 1/N)");
  s_clt->add_option("--delta-nodes", clt.delta_nodes)->capture_default_str();
  s_clt->add_option("--h-nodes", clt.h_nodes)->capture_default_str();
  s_clt->add_option("--z-nodes", clt.z_nodes)->capture_default_str();
  s_clt->add_option("--entropy-z-nodes", clt.entropy_z_nodes, "0 skips beta_tilde")->capture_default_str();
  s_clt->add_option("--kappa-scale", clt.kappa_scale)->capture_default_str();
  s_clt->add_option("--budget", clt.budget, "max replicas * sum(n_list)")->capture_default_str();
  s_clt->add_option("--reference", clt.reference, "reference model for KS distances");
  s_clt->add_option("--reference-replicas", clt.reference_replicas)->capture_default_str();
  s_clt->add_option("--out", clt.out, "output directory")->required();

  TailsOpts tails;
  auto* s_tails = app.add_subcommand("tails", "Tail bounds exp(-psi_tilde^*(ln u))");
  s_tails->add_option("--psi", tails.psi, "sqrt | power:<l> | table:<file>")->capture_default_str();
  s_tails->add_option("--u-list", tails.u_list)->delimiter(',');
  s_tails->add_option("--out", tails.out, "output CSV (default stdout)");

  EntropyOpts ent;
  auto* s_ent = app.add_subcommand("entropy", "Entropy integrals V(m) and beta(m) of the rho_m space");
  add_model_options(s_ent, ent.model);
  s_ent->add_option("--p", ent.p)->capture_default_str();
  s_ent->add_option("--q", ent.q)->capture_default_str();
  s_ent->add_option("--s", ent.s)->capture_default_str();
  s_ent->add_option("--alpha", ent.alpha)->capture_default_str();
  s_ent->add_option("--m-list", ent.m_list)->delimiter(',');
  s_ent->add_option("--z-nodes", ent.z_nodes)->capture_default_str();
  s_ent->add_option("--grid-n", ent.grid_n)->capture_default_str();
  s_ent->add_option("--replicas", ent.replicas)->capture_default_str();
  s_ent->add_option("--seed", ent.seed)->capture_default_str();
  s_ent->add_option("--delta-min", ent.delta_min, "delta truncation (default 1/N)");
  s_ent->add_option("--delta-nodes", ent.delta_nodes)->capture_default_str();
  s_ent->add_option("--eps-nodes", ent.eps_nodes)->capture_default_str();
  s_ent->add_option("--out", ent.out, "output CSV (default stdout)");

  std::string verify_target;
  auto* s_ver = app.add_subcommand("verify", "Re-run a manifest and diff the outputs");
  s_ver->add_option("--manifest", verify_target, "manifest.json, output directory, or output file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (threads < 0)
    throw std::invalid_argument("--threads must be nonnegative");
  if (threads > 0)
    omp_set_num_threads(threads);

  // arguments after the subcommand name
  std::vector<std::string> sub_args;
  const std::string name = app.get_subcommands().front()->get_name();
  const auto it = std::find(args.begin(), args.end(), name);
  sub_args.push_back(name);
  if (it != args.end())
    sub_args.insert(sub_args.end(), it + 1, args.end());

  if (s_norm->parsed())
    return cmd_norm(norm, sub_args, out);
  if (s_sim->parsed())
    return cmd_simulate(sim, sub_args, out);
  if (s_clt->parsed())
    return cmd_clt(clt, sub_args, out);
  if (s_tails->parsed())
    return cmd_tails(tails, sub_args, out);
  if (s_ent->parsed())
    return cmd_entropy(ent, sub_args, out);
  return cmd_verify(verify_target, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  try {
    return dispatch(args, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace besovlab::cli
