#include "dkwaves/certify.hpp"
#include "dkwaves/curved.hpp"
#include "dkwaves/fermion_map.hpp"
#include "dkwaves/fields.hpp"
#include "dkwaves/types.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using dkwaves::Real;
using nlohmann::json;

/// Shortest exact decimal form; CSV cells always use '.' as the decimal mark.
std::string fmt(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<Real> grid(Real lo, Real hi, int count) {
  if (count < 1) throw std::domain_error("grid counts must be >= 1");
  std::vector<Real> g;
  g.reserve(count);
  if (count == 1) {
    g.push_back(lo);
    return g;
  }
  for (int i = 0; i < count; ++i)
    g.push_back(lo + (hi - lo) * static_cast<Real>(i) / (count - 1));
  return g;
}

/// Sink selected by --output: stdout by default, else the named file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct GridSpec {
  Real t_min = 0.0, t_max = 0.0;
  int t_count = 1;
  Real r_min = 2.0, r_max = 2.0;
  int r_count = 1;
  Real theta_min = 1.0, theta_max = 1.0;
  int theta_count = 1;
  Real phi_min = 0.5, phi_max = 0.5;
  int phi_count = 1;
};

void add_grid_options(CLI::App* cmd, GridSpec& g) {
  cmd->add_option("--t-min", g.t_min, "Start of the t grid");
  cmd->add_option("--t-max", g.t_max, "End of the t grid");
  cmd->add_option("--t-count", g.t_count, "Number of t samples");
  cmd->add_option("--r-min", g.r_min, "Start of the r grid");
  cmd->add_option("--r-max", g.r_max, "End of the r grid");
  cmd->add_option("--r-count", g.r_count, "Number of r samples");
  cmd->add_option("--theta-min", g.theta_min, "Start of the theta grid");
  cmd->add_option("--theta-max", g.theta_max, "End of the theta grid");
  cmd->add_option("--theta-count", g.theta_count, "Number of theta samples");
  cmd->add_option("--phi-min", g.phi_min, "Start of the phi grid");
  cmd->add_option("--phi-max", g.phi_max, "End of the phi grid");
  cmd->add_option("--phi-count", g.phi_count, "Number of phi samples");
}

struct ModeFlags {
  std::string kind = "i";
  int J = 1;
  int M = 0;
  int delta = +1;
  int lambda = +1;
  Real eps = 2.0;
  Real mass = 1.0;
  int two_j = 1;
  int two_m = 1;
  int channel = 1;
};

void add_boson_options(CLI::App* cmd, ModeFlags& m, bool with_dirac) {
  std::string kinds = with_dirac ? "i, ii, scalar, or dirac" : "i, ii, or scalar";
  cmd->add_option("--kind", m.kind, "Wave family: " + kinds);
  cmd->add_option("--j", m.J, "Integer tower label J");
  cmd->add_option("--m", m.M, "Projection label M");
  cmd->add_option("--delta", m.delta, "Reflection sign (+1 or -1)");
  cmd->add_option("--lambda", m.lambda, "Constraint sign (+1 or -1)");
  cmd->add_option("--eps", m.eps, "Frequency (eps > mass)");
  cmd->add_option("--mass", m.mass, "Mass parameter");
  if (with_dirac) {
    cmd->add_option("--two-j", m.two_j, "Doubled spinor label 2j (dirac)");
    cmd->add_option("--two-m", m.two_m, "Doubled projection 2m (dirac)");
    cmd->add_option("--channel", m.channel, "Spinor copy 1..4 (dirac)");
  }
}

dkwaves::BosonMode boson_mode_of(const ModeFlags& m) {
  dkwaves::BosonMode mode;
  if (m.kind == "i")
    mode.kind = dkwaves::RadialKind::TypeI;
  else if (m.kind == "ii")
    mode.kind = dkwaves::RadialKind::TypeII;
  else if (m.kind == "scalar")
    mode.kind = dkwaves::RadialKind::Scalar;
  else
    throw std::invalid_argument("unknown kind: " + m.kind);
  mode.J = m.J;
  mode.M = m.M;
  mode.delta = m.delta;
  mode.lambda = m.lambda;
  mode.eps = m.eps;
  mode.mass = m.mass;
  dkwaves::validate_mode(mode);
  return mode;
}

dkwaves::DiracMode dirac_mode_of(const ModeFlags& m) {
  dkwaves::DiracMode mode;
  mode.two_j = m.two_j;
  mode.two_m = m.two_m;
  mode.delta = m.delta;
  mode.eps = m.eps;
  mode.mass = m.mass;
  mode.channel = m.channel;
  dkwaves::validate_mode(mode);
  return mode;
}

int run_eval(const ModeFlags& mf, const GridSpec& gs,
             const std::string& format, const std::string& output) {
  const bool dirac = mf.kind == "dirac";
  dkwaves::BosonMode bmode;
  dkwaves::DiracMode dmode;
  if (dirac)
    dmode = dirac_mode_of(mf);
  else
    bmode = boson_mode_of(mf);

  std::vector<std::string> columns = {"t", "r", "theta", "phi"};
  if (dirac) {
    for (int a = 0; a < 4; ++a) {
      columns.push_back("psi" + std::to_string(a) + "_re");
      columns.push_back("psi" + std::to_string(a) + "_im");
    }
  } else {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const std::string slot = std::to_string(a) + std::to_string(b);
        columns.push_back("u" + slot + "_re");
        columns.push_back("u" + slot + "_im");
      }
    }
  }

  std::vector<std::vector<Real>> rows;
  for (Real t : grid(gs.t_min, gs.t_max, gs.t_count)) {
    for (Real r : grid(gs.r_min, gs.r_max, gs.r_count)) {
      for (Real theta : grid(gs.theta_min, gs.theta_max, gs.theta_count)) {
        for (Real phi : grid(gs.phi_min, gs.phi_max, gs.phi_count)) {
          dkwaves::Point pt{t, r, theta, phi};
          std::vector<Real> row = {t, r, theta, phi};
          if (dirac) {
            const dkwaves::Vector4c psi = dkwaves::eval_Psi(dmode, pt);
            for (int a = 0; a < 4; ++a) {
              row.push_back(psi(a).real());
              row.push_back(psi(a).imag());
            }
          } else {
            const dkwaves::Matrix4c u = dkwaves::eval_U(bmode, pt);
            for (int a = 0; a < 4; ++a) {
              for (int b = 0; b < 4; ++b) {
                row.push_back(u(a, b).real());
                row.push_back(u(a, b).imag());
              }
            }
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }

  Output out(output);
  if (format == "json") {
    json doc;
    doc["schema_version"] = 1;
    doc["command"] = "eval";
    doc["columns"] = columns;
    doc["rows"] = rows;
    out.stream() << doc.dump(2) << "\n";
  } else {
    std::ostream& os = out.stream();
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << fmt(row[i]);
      os << "\n";
    }
  }
  return 0;
}

int run_certify(const dkwaves::CertifyOptions& options,
                const std::string& format, const std::string& output) {
  const std::vector<dkwaves::CheckRecord> records =
      dkwaves::run_certification(options);
  const bool ok = dkwaves::all_pass(records);

  Output out(output);
  if (format == "csv") {
    std::ostream& os = out.stream();
    os << "name,tag,max_residual,tolerance,verdict\n";
    for (const auto& rec : records)
      os << rec.name << "," << rec.tag << "," << fmt(rec.max_residual) << ","
         << fmt(rec.tolerance) << "," << (rec.pass ? "pass" : "fail") << "\n";
  } else {
    json doc;
    doc["schema_version"] = 1;
    doc["command"] = "certify";
    doc["all_pass"] = ok;
    doc["checks"] = json::array();
    for (const auto& rec : records) {
      json item;
      item["name"] = rec.name;
      item["tag"] = rec.tag;
      item["max_residual"] = rec.max_residual;
      item["tolerance"] = rec.tolerance;
      item["verdict"] = rec.pass ? "pass" : "fail";
      doc["checks"].push_back(std::move(item));
    }
    out.stream() << doc.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

int run_expand(const ModeFlags& mf, int points, std::uint64_t seed,
               Real tolerance, const std::string& format,
               const std::string& output) {
  const dkwaves::BosonMode mode = boson_mode_of(mf);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> ut(0.0, 2.0), ur(1.0, 5.0),
      uth(0.4, 2.7), uph(0.0, 2.0 * M_PI);
  std::vector<dkwaves::Point> pts;
  for (int k = 0; k < std::max(1, points); ++k)
    pts.push_back({ut(rng), ur(rng), uth(rng), uph(rng)});

  const dkwaves::ExpansionReport report = dkwaves::verify_expansion(mode, pts);
  const bool ok =
      report.max_residual <= tolerance && report.off_branch_norm <= tolerance;

  Output out(output);
  if (format == "csv") {
    std::ostream& os = out.stream();
    os << "column,coeff_re,coeff_im,two_j,two_m,delta,branch,max_residual,"
          "off_branch_norm\n";
    for (int c = 0; c < 4; ++c) {
      const dkwaves::ExpansionTerm& term = report.terms[c];
      os << c << "," << fmt(term.coeff.real()) << "," << fmt(term.coeff.imag())
         << "," << term.two_j << "," << term.two_m << "," << term.delta << ","
         << report.branch << "," << fmt(report.max_residual) << ","
         << fmt(report.off_branch_norm) << "\n";
    }
  } else {
    json doc;
    doc["schema_version"] = 1;
    doc["command"] = "expand";
    doc["branch"] = report.branch;
    doc["max_residual"] = report.max_residual;
    doc["off_branch_norm"] = report.off_branch_norm;
    doc["verdict"] = ok ? "pass" : "fail";
    doc["terms"] = json::array();
    for (int c = 0; c < 4; ++c) {
      const dkwaves::ExpansionTerm& term = report.terms[c];
      json item;
      item["column"] = c;
      item["coeff_re"] = term.coeff.real();
      item["coeff_im"] = term.coeff.imag();
      item["two_j"] = term.two_j;
      item["two_m"] = term.two_m;
      item["delta"] = term.delta;
      doc["terms"].push_back(std::move(item));
    }
    out.stream() << doc.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

int run_curved_scan(int J, Real eps, Real mass, Real chi_min, Real chi_max,
                    int count, const std::string& format,
                    const std::string& output) {
  if (count < 1) throw std::domain_error("grid counts must be >= 1");
  if (!(chi_min < chi_max))
    throw std::domain_error("curved-scan: requires chi-min < chi-max");
  dkwaves::CurvedRadialParams params;
  params.J = J;
  params.eps = eps;
  params.mass = mass;

  const std::vector<dkwaves::WitnessSample> witness =
      dkwaves::witness_scan(params, chi_min, chi_max, count);
  const std::vector<Real> chis = grid(chi_min, chi_max, count);

  std::vector<std::array<Real, 4>> rows;
  for (int k = 0; k < count; ++k) {
    const Real chi = chis[k];
    rows.push_back({chi, dkwaves::obstruction_gap_with(params, chi),
                    std::tan(0.5 * chi), witness[k].ratio});
  }

  Output out(output);
  if (format == "json") {
    json doc;
    doc["schema_version"] = 1;
    doc["command"] = "curved-scan";
    doc["columns"] = {"chi", "gap", "tan_half", "dyn_residual"};
    doc["rows"] = rows;
    out.stream() << doc.dump(2) << "\n";
  } else {
    std::ostream& os = out.stream();
    os << "chi,gap,tan_half,dyn_residual\n";
    for (const auto& row : rows)
      os << fmt(row[0]) << "," << fmt(row[1]) << "," << fmt(row[2]) << ","
         << fmt(row[3]) << "\n";
  }
  return 0;
}

/// Applies a flat key=value config file as defaults: for every key naming an
/// option of the chosen subcommand that the command line leaves unset, a
/// "--key value" pair is appended, so explicit flags always win.  Keys that
/// do not name an option of that subcommand are ignored, letting one file
/// hold defaults for several subcommands.  Returns 0, or an exit code.
int inject_config_defaults(const CLI::App& app,
                           std::vector<std::string>& args) {
  std::size_t sub_index = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] != '-') {
      sub_index = i;
      break;
    }
  }
  if (sub_index == args.size()) return 0;
  const CLI::App* sub = app.get_subcommand_no_throw(args[sub_index]);
  if (sub == nullptr) return 0;

  std::string path;
  for (std::size_t i = sub_index + 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return 0;

  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << path << "'\n";
    return 2;
  }

  auto trim = [](const std::string& s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
  };

  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: malformed config line '" << line
                << "' (expected key=value)\n";
      return 2;
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\'')))
      value = value.substr(1, value.size() - 2);
    if (key.empty() || key == "config") continue;
    const std::string flag = "--" + key;
    if (sub->get_option_no_throw(flag) == nullptr) continue;
    bool given = false;
    for (std::size_t i = sub_index + 1; i < args.size() && !given; ++i)
      given = args[i] == flag || args[i].rfind(flag + "=", 0) == 0;
    if (given) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spherical matrix waves: evaluation, certification sweeps, "
      "fermion expansion reports, and curved-space obstruction scans"};
  app.require_subcommand(1);

  // The config file is applied by inject_config_defaults before parsing;
  // this option only documents the flag and lets CLI11 consume it.
  std::string config_path;

  // eval
  auto* eval_cmd =
      app.add_subcommand("eval", "Evaluate a wave on a coordinate grid");
  eval_cmd->add_option("--config", config_path,
                       "Flat key=value defaults (flags override)");
  ModeFlags eval_mode;
  GridSpec eval_grid;
  std::string eval_format = "csv", eval_output;
  std::uint64_t eval_seed = 1;
  add_boson_options(eval_cmd, eval_mode, true);
  add_grid_options(eval_cmd, eval_grid);
  eval_cmd->add_option("--format", eval_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  eval_cmd->add_option("--output", eval_output, "Output path (default stdout)");
  eval_cmd->add_option("--seed", eval_seed, "Random seed")
      ->envname("DKWAVES_SEED");

  // certify
  auto* certify_cmd = app.add_subcommand(
      "certify", "Run the certification sweep and emit a report");
  certify_cmd->add_option("--config", config_path,
                          "Flat key=value defaults (flags override)");
  dkwaves::CertifyOptions cert;
  std::string cert_format = "json", cert_output;
  certify_cmd->add_option("--j-max", cert.j_max, "Largest tower label swept");
  certify_cmd->add_option("--points", cert.points,
                          "Random samples per check family");
  certify_cmd->add_option("--seed", cert.seed, "Random seed")
      ->envname("DKWAVES_SEED");
  certify_cmd->add_option("--tolerance", cert.tolerance_override,
                          "Override every per-check tolerance");
  certify_cmd
      ->add_option("--format", cert_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  certify_cmd->add_option("--output", cert_output,
                          "Output path (default stdout)");

  // expand
  auto* expand_cmd = app.add_subcommand(
      "expand", "Report the spinor-wave expansion of one mode");
  expand_cmd->add_option("--config", config_path,
                         "Flat key=value defaults (flags override)");
  ModeFlags expand_mode;
  std::string expand_format = "json", expand_output;
  std::uint64_t expand_seed = 1;
  int expand_points = 20;
  Real expand_tol = 1e-8;
  add_boson_options(expand_cmd, expand_mode, false);
  expand_cmd->add_option("--points", expand_points,
                         "Verification sample count");
  expand_cmd->add_option("--seed", expand_seed, "Random seed")
      ->envname("DKWAVES_SEED");
  expand_cmd->add_option("--tolerance", expand_tol,
                         "Verification pass threshold");
  expand_cmd
      ->add_option("--format", expand_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  expand_cmd->add_option("--output", expand_output,
                         "Output path (default stdout)");

  // curved-scan
  auto* scan_cmd = app.add_subcommand(
      "curved-scan", "Scan the curved-space obstruction across chi");
  scan_cmd->add_option("--config", config_path,
                       "Flat key=value defaults (flags override)");
  int scan_J = 1;
  Real scan_eps = 2.0, scan_mass = 1.0;
  Real chi_min = 0.1, chi_max = 3.0;
  int chi_count = 100;
  std::string scan_format = "csv", scan_output;
  scan_cmd->add_option("--j", scan_J, "Integer tower label J");
  scan_cmd->add_option("--eps", scan_eps, "Frequency");
  scan_cmd->add_option("--mass", scan_mass, "Mass parameter");
  scan_cmd->add_option("--chi-min", chi_min, "Start of the chi grid");
  scan_cmd->add_option("--chi-max", chi_max, "End of the chi grid");
  scan_cmd->add_option("--chi-count", chi_count, "Number of chi samples");
  scan_cmd->add_option("--format", scan_format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->add_option("--output", scan_output,
                       "Output path (default stdout)");

  std::vector<std::string> args(argv + 1, argv + argc);
  if (const int rc = inject_config_defaults(app, args); rc != 0) return rc;
  std::reverse(args.begin(), args.end());  // CLI11 consumes args back-to-front

  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval_cmd)
      return run_eval(eval_mode, eval_grid, eval_format, eval_output);
    if (*certify_cmd) return run_certify(cert, cert_format, cert_output);
    if (*expand_cmd)
      return run_expand(expand_mode, expand_points, expand_seed, expand_tol,
                        expand_format, expand_output);
    if (*scan_cmd)
      return run_curved_scan(scan_J, scan_eps, scan_mass, chi_min, chi_max,
                             chi_count, scan_format, scan_output);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
