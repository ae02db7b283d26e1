// relosc: spectra, wavefunction tables and the verification suite of the
// relativistic singular oscillator.
//
// Exit codes: 0 success (verify: every check passed), 1 verify found a failing
// check, 2 configuration or validation error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relosc/errors.hpp"
#include "relosc/oscillator_model.hpp"
#include "relosc/verification.hpp"

namespace {

using relosc::ValidationError;
using Json = nlohmann::json;

constexpr int kExitConfig = 2;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("invalid number '" + s + "' for " + what);
  }
}

// "start:stop:count", inclusive and evenly spaced.
std::vector<double> parse_range(const std::string& s, const std::string& what) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ValidationError("range for " + what + " must be start:stop:count");
  const double a = parse_double(parts[0], what);
  const double b = parse_double(parts[1], what);
  const double c = parse_double(parts[2], what);
  if (!(c >= 1.0) || c != std::floor(c) || c > 1e7) {
    throw ValidationError("range count for " + what + " must be a positive integer");
  }
  const auto count = static_cast<std::size_t>(c);
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / (count - 1.0));
  }
  return out;
}

// Comma-separated values, each either a number or a start:stop:count range.
std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) {
    if (item.find(':') != std::string::npos) {
      const auto r = parse_range(item, what);
      out.insert(out.end(), r.begin(), r.end());
    } else {
      out.push_back(parse_double(item, what));
    }
  }
  if (out.empty()) throw ValidationError("empty list for " + what);
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_list(s, what)) {
    if (v != std::round(v) || std::fabs(v) > 1e6) {
      throw ValidationError(what + " must be integers, got " + std::to_string(v));
    }
    out.push_back(static_cast<int>(std::lround(v)));
  }
  return out;
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v < 0.0 || v != std::floor(v) || v > 1e6) {
    throw ValidationError(what + " must be a non-negative integer");
  }
  return static_cast<unsigned>(v);
}

// Flag values gathered from the config file and the command line; the command
// line wins.
class Settings {
 public:
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ValidationError("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "tol" && value.is_object()) {
        for (const auto& [id, tol] : value.items()) file_["tol-" + id] = to_flag(tol);
      } else {
        file_[key] = to_flag(value);
      }
    }
  }

  void set_cli(const std::string& key, const std::string& value) { cli_[key] = value; }

  std::optional<std::string> get(const std::string& key) const {
    if (auto it = cli_.find(key); it != cli_.end()) return it->second;
    if (auto it = file_.find(key); it != file_.end()) return it->second;
    return std::nullopt;
  }

  std::vector<std::string> file_keys() const {
    std::vector<std::string> keys;
    for (const auto& [k, v] : file_) keys.push_back(k);
    return keys;
  }

 private:
  static std::string to_flag(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    if (v.is_array()) {
      std::string out;
      for (const auto& item : v) {
        if (!out.empty()) out += ",";
        out += to_flag(item);
      }
      return out;
    }
    throw ValidationError("unsupported config value " + v.dump());
  }

  std::map<std::string, std::string> file_;
  std::map<std::string, std::string> cli_;
};

struct CommonFlags {
  std::string dims, l, n_max, n, omega0, g0, format, out, config, grid, points, checks;
  bool canonical = false;
  unsigned threads = 0;
  std::map<std::string, double> tol;
};

void add_grid_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--dims", f.dims, "dimensions N (comma list or start:stop:count)");
  cmd->add_option("--l", f.l, "orbital quantum numbers");
  cmd->add_option("--omega0", f.omega0, "hbar omega / mc^2 values");
  cmd->add_option("--g0", f.g0, "singular coupling values");
  cmd->add_option("--format", f.format, "text, json or csv");
  cmd->add_option("--out", f.out, "write the output to this file");
  cmd->add_option("--config", f.config, "JSON file with the same keys as the flags");
}

// Copies the flags given on the command line into the settings.
void collect(const CLI::App* cmd, const CommonFlags& f, Settings& s) {
  const std::pair<const char*, const std::string*> flags[] = {
      {"dims", &f.dims},     {"l", &f.l},         {"n-max", &f.n_max},
      {"n", &f.n},           {"omega0", &f.omega0}, {"g0", &f.g0},
      {"format", &f.format}, {"out", &f.out},     {"grid", &f.grid},
      {"points", &f.points}, {"checks", &f.checks}};
  for (const auto& [name, value] : flags) {
    const std::string opt = std::string("--") + name;
    if (cmd->get_option_no_throw(opt) && cmd->count(opt) > 0) s.set_cli(name, *value);
  }
  if (cmd->get_option_no_throw("--canonical") && cmd->count("--canonical") > 0) {
    s.set_cli("canonical", f.canonical ? "true" : "false");
  }
  if (cmd->get_option_no_throw("--threads") && cmd->count("--threads") > 0) {
    s.set_cli("threads", std::to_string(f.threads));
  }
  for (const auto& [id, tol] : f.tol) {
    if (cmd->count("--tol-" + id) > 0) {
      std::ostringstream v;
      v.precision(17);
      v << tol;
      s.set_cli("tol-" + id, v.str());
    }
  }
}

std::string format_of(const Settings& s) {
  const std::string fmt = s.get("format").value_or("text");
  if (fmt != "text" && fmt != "json" && fmt != "csv") {
    throw ValidationError("--format must be text, json or csv, got " + fmt);
  }
  return fmt;
}

bool flag_of(const Settings& s, const std::string& key) {
  const std::string v = s.get(key).value_or("false");
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ValidationError(key + " must be true or false");
}

void emit(const Settings& s, const std::string& payload) {
  if (const auto out = s.get("out")) {
    std::ofstream file(*out);
    if (!file) throw ValidationError("cannot write " + *out);
    file << payload;
  } else {
    std::cout << payload;
  }
}

relosc::GridConfig grid_of(const Settings& s) {
  relosc::GridConfig g;
  if (auto v = s.get("dims")) g.dims = parse_int_list(*v, "--dims");
  if (auto v = s.get("l")) g.ls = parse_int_list(*v, "--l");
  if (auto v = s.get("n-max")) g.n_max = parse_unsigned(*v, "--n-max");
  if (auto v = s.get("omega0")) g.omega0s = parse_list(*v, "--omega0");
  if (auto v = s.get("g0")) g.g0s = parse_list(*v, "--g0");
  return g;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const Settings& s) {
  const relosc::GridConfig g = grid_of(s);
  const std::string fmt = format_of(s);
  Json rows = Json::array();
  Json skipped = Json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "dims,l,n,omega0,g0,alpha,nu,s,energy,excitation,nonrel\n";
  text << "    N   l   n       omega0           g0           alpha              nu"
          "               s          E/mc^2   (E-mc^2)/hw          nonrel\n";
  for (int dims : g.dims) {
    for (int l : g.ls) {
      for (double w : g.omega0s) {
        for (double g0 : g.g0s) {
          const relosc::ModelParams p{dims, l, w, g0};
          relosc::DerivedParams d;
          try {
            d = relosc::derive_params(p);
          } catch (const relosc::Error& e) {
            skipped.push_back({{"dims", dims}, {"l", l}, {"omega0", w}, {"g0", g0},
                               {"reason", e.what()}});
            text << "# skipped N=" << dims << " l=" << l << " omega0=" << w << " g0=" << g0
                 << ": " << e.what() << '\n';
            continue;
          }
          for (unsigned n = 0; n <= g.n_max; ++n) {
            const double e = relosc::energy(n, d, w);
            const double nonrel = relosc::nonrel_energy(n, d.L, g0);
            const double excitation = (e - 1.0) / w;
            rows.push_back({{"dims", dims},       {"l", l},          {"n", n},
                            {"omega0", w},        {"g0", g0},        {"alpha", d.alpha},
                            {"nu", d.nu},         {"s", d.s},        {"energy", e},
                            {"excitation", excitation}, {"nonrel", nonrel}});
            csv << dims << ',' << l << ',' << n << ',' << num(w) << ',' << num(g0) << ','
                << num(d.alpha) << ',' << num(d.nu) << ',' << num(d.s) << ',' << num(e) << ','
                << num(excitation) << ',' << num(nonrel) << '\n';
            char line[256];
            std::snprintf(line, sizeof line,
                          "%5d %3d %3u %12.6g %12.6g %15.10f %15.10f %15.10f %15.12f %13.8f "
                          "%15.10f\n",
                          dims, l, n, w, g0, d.alpha, d.nu, d.s, e, excitation, nonrel);
            text << line;
          }
        }
      }
    }
  }
  if (fmt == "json") {
    emit(s, Json{{"rows", rows}, {"skipped", skipped}}.dump(2) + "\n");
  } else if (fmt == "csv") {
    emit(s, csv.str());
  } else {
    emit(s, text.str());
  }
  if (rows.empty()) {
    std::cerr << "relosc: no valid parameter point in the grid\n";
    return kExitConfig;
  }
  return 0;
}

int cmd_eval(const Settings& s) {
  const relosc::GridConfig g = grid_of(s);
  const std::string fmt = format_of(s);
  std::vector<int> ns{0};
  if (auto v = s.get("n")) ns = parse_int_list(*v, "--n");
  for (int n : ns) {
    if (n < 0) throw ValidationError("--n must be non-negative");
  }
  std::vector<relosc::ModelParams> points;
  for (int dims : g.dims) {
    for (int l : g.ls) {
      for (double w : g.omega0s) {
        for (double g0 : g.g0s) points.push_back({dims, l, w, g0});
      }
    }
  }
  const bool multiple = points.size() * ns.size() > 1;
  std::ostringstream csv;
  Json blocks = Json::array();
  for (const auto& p : points) {
    const relosc::DerivedParams d = relosc::derive_params(p);
    for (int n : ns) {
      const auto un = static_cast<unsigned>(n);
      std::vector<double> rhos;
      if (auto v = s.get("grid")) {
        rhos = parse_range(*v, "--grid");
      } else {
        rhos = parse_range(
            "0:" + num(relosc::truncation_point(relosc::radial_decay_hint(d, un))) + ":4001",
            "--grid");
      }
      const relosc::RadialState st = relosc::radial_wavefunction(p, un);
      if (multiple) {
        csv << "# N=" << p.dims << " l=" << p.l << " n=" << n << " omega0=" << num(p.omega0)
            << " g0=" << num(p.g0) << '\n';
      }
      csv << "rho,re,im,abs2\n";
      Json values = Json::array();
      for (double rho : rhos) {
        const relosc::Complex v = st.fn(relosc::Complex(rho, 0.0));
        csv << num(rho) << ',' << num(v.real()) << ',' << num(v.imag()) << ','
            << num(std::norm(v)) << '\n';
        values.push_back({rho, v.real(), v.imag(), std::norm(v)});
      }
      blocks.push_back({{"dims", p.dims},
                        {"l", p.l},
                        {"n", n},
                        {"omega0", p.omega0},
                        {"g0", p.g0},
                        {"energy", st.energy},
                        {"norm_const", st.norm_const},
                        {"columns", {"rho", "re", "im", "abs2"}},
                        {"values", values}});
    }
  }
  if (fmt == "json") {
    emit(s, Json{{"blocks", blocks}}.dump(2) + "\n");
  } else {
    emit(s, csv.str());
  }
  return 0;
}

int cmd_verify(const Settings& s) {
  relosc::RunConfig config;
  config.grid = grid_of(s);
  if (auto v = s.get("checks")) config.checks = split(*v, ',');
  if (auto v = s.get("points")) config.sample_points = parse_list(*v, "--points");
  if (auto v = s.get("threads")) config.threads = parse_unsigned(*v, "--threads");
  for (const auto& info : relosc::check_catalog()) {
    if (auto v = s.get("tol-" + info.id)) {
      config.tolerances[info.id] = parse_double(*v, "--tol-" + info.id);
    }
  }
  relosc::validate_config(config);
  const std::string fmt = format_of(s);
  const bool canonical = flag_of(s, "canonical");
  const relosc::VerificationReport report = relosc::run_verification(config);
  if (fmt == "json") {
    Json j = relosc::report_to_json(report, !canonical);
    j["digest"] = relosc::report_digest(report);
    emit(s, j.dump(2) + "\n");
  } else if (fmt == "csv") {
    emit(s, relosc::report_to_csv(report, !canonical));
  } else {
    emit(s, relosc::report_to_text(report, !canonical));
  }
  if (s.get("out")) {
    const auto& sum = report.summary;
    std::cout << "summary: total=" << sum.total << " passed=" << sum.passed
              << " failed=" << sum.failed << " skipped=" << sum.skipped << '\n';
  }
  return relosc::report_exit_code(report);
}

// Keys a config file may hold for each subcommand.
void check_file_keys(const Settings& s, const std::vector<std::string>& allowed) {
  for (const auto& key : s.file_keys()) {
    bool ok = std::find(allowed.begin(), allowed.end(), key) != allowed.end();
    if (!ok && key.rfind("tol-", 0) == 0) ok = relosc::find_check(key.substr(4)) != nullptr;
    if (!ok) throw ValidationError("unknown config key: " + key);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic N-dimensional singular oscillator: spectra, wavefunctions, "
               "verification"};
  app.require_subcommand(1);

  CommonFlags spectrum_flags;
  CLI::App* spectrum = app.add_subcommand("spectrum", "energy levels over a parameter grid");
  add_grid_flags(spectrum, spectrum_flags);
  spectrum->add_option("--n-max", spectrum_flags.n_max, "highest radial quantum number");

  CommonFlags eval_flags;
  CLI::App* eval = app.add_subcommand("eval", "tabulate normalized R_n on a rho grid");
  add_grid_flags(eval, eval_flags);
  eval->add_option("--n", eval_flags.n, "radial quantum numbers");
  eval->add_option("--grid", eval_flags.grid, "rho grid start:stop:count");

  CommonFlags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_grid_flags(verify, verify_flags);
  verify->add_option("--n-max", verify_flags.n_max, "highest radial quantum number");
  verify->add_option("--checks", verify_flags.checks, "comma-separated check ids");
  verify->add_option("--points", verify_flags.points, "residual sample points in rho");
  verify->add_option("--threads", verify_flags.threads,
                     "worker threads (default: REL_SINGOSC_THREADS or all cores)");
  verify->add_flag("--canonical", verify_flags.canonical, "omit runtimes from the report");
  for (const auto& info : relosc::check_catalog()) {
    verify_flags.tol[info.id] = info.default_tolerance;
    verify->add_option("--tol-" + info.id, verify_flags.tol[info.id],
                       "tolerance of " + info.id);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    Settings settings;
    if (spectrum->parsed()) {
      if (!spectrum_flags.config.empty()) settings.load_file(spectrum_flags.config);
      check_file_keys(settings, {"dims", "l", "n-max", "omega0", "g0", "format", "out"});
      collect(spectrum, spectrum_flags, settings);
      return cmd_spectrum(settings);
    }
    if (eval->parsed()) {
      if (!eval_flags.config.empty()) settings.load_file(eval_flags.config);
      check_file_keys(settings, {"dims", "l", "n", "omega0", "g0", "format", "out", "grid"});
      collect(eval, eval_flags, settings);
      return cmd_eval(settings);
    }
    if (!verify_flags.config.empty()) settings.load_file(verify_flags.config);
    check_file_keys(settings, {"dims", "l", "n-max", "omega0", "g0", "format", "out",
                               "checks", "points", "threads", "canonical"});
    collect(verify, verify_flags, settings);
    return cmd_verify(settings);
  } catch (const relosc::Error& e) {
    std::cerr << "relosc: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "relosc: " << e.what() << '\n';
    return kExitConfig;
  }
}
