#include "ccnv/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ccnv {

void RunConfig::validate() const {
  grid.validate();
  params.validate();
  stepper.validate();
  diag.validate();
  if (init_family != "random-bandlimited" && init_family != "taylor-green" &&
      init_family != "buoyant-blob" && init_family != "zero")
    throw std::invalid_argument("init.family: unknown family '" + init_family + "'");
  if (!(init_amplitude >= 0.0)) throw std::invalid_argument("init.amplitude: must be >= 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("time.t_end: must be > 0");
  if (output_every < 1) throw std::invalid_argument("output.every_steps: must be >= 1");
  if (checkpoint_every < 0) throw std::invalid_argument("output.checkpoint_every: must be >= 0");
  if (out_dir.empty()) throw std::invalid_argument("output.dir: must not be empty");
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": cannot parse '" + v + "' as a number");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": cannot parse '" + v + "' as an integer");
  }
}

struct Key {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
  const char* doc;
};

const std::map<std::string, Key>& key_table() {
  static const std::map<std::string, Key> table = {
      {"grid.n",
       {[](RunConfig& c, const std::string& v) { c.grid.n = static_cast<int>(parse_int("grid.n", v)); },
        [](const RunConfig& c) { return std::to_string(c.grid.n); },
        "points per side; power of two >= 8"}},
      {"grid.dealias_fraction",
       {[](RunConfig& c, const std::string& v) { c.grid.dealias_fraction = parse_double("grid.dealias_fraction", v); },
        [](const RunConfig& c) { return fmt_double(c.grid.dealias_fraction); },
        "kept fraction of |k_i| <= fraction*n/2 after products; default 2/3"}},
      {"params.chi",
       {[](RunConfig& c, const std::string& v) { c.params.chi = parse_double("params.chi", v); },
        [](const RunConfig& c) { return fmt_double(c.params.chi); },
        "vortex viscosity, > 0"}},
      {"params.nu",
       {[](RunConfig& c, const std::string& v) { c.params.nu = parse_double("params.nu", v); },
        [](const RunConfig& c) { return fmt_double(c.params.nu); },
        "angular viscosity, > 0"}},
      {"params.beta",
       {[](RunConfig& c, const std::string& v) { c.params.beta = parse_double("params.beta", v); },
        [](const RunConfig& c) { return fmt_double(c.params.beta); },
        "temperature dissipation exponent in [0, 2]; 1 = critical"}},
      {"params.alpha",
       {[](RunConfig& c, const std::string& v) { c.params.velocity_dissipation_alpha = parse_double("params.alpha", v); },
        [](const RunConfig& c) { return fmt_double(c.params.velocity_dissipation_alpha); },
        "optional velocity dissipation exponent; 0 disables the term"}},
      {"init.family",
       {[](RunConfig& c, const std::string& v) { c.init_family = v; },
        [](const RunConfig& c) { return c.init_family; },
        "random-bandlimited | taylor-green | buoyant-blob | zero"}},
      {"init.amplitude",
       {[](RunConfig& c, const std::string& v) { c.init_amplitude = parse_double("init.amplitude", v); },
        [](const RunConfig& c) { return fmt_double(c.init_amplitude); },
        "initial data amplitude"}},
      {"init.seed",
       {[](RunConfig& c, const std::string& v) {
          const long long s = parse_int("init.seed", v);
          if (s < 0) throw std::invalid_argument("init.seed: must be >= 0");
          c.seed = static_cast<std::uint64_t>(s);
        },
        [](const RunConfig& c) { return std::to_string(c.seed); },
        "random data seed"}},
      {"time.t_end",
       {[](RunConfig& c, const std::string& v) { c.t_end = parse_double("time.t_end", v); },
        [](const RunConfig& c) { return fmt_double(c.t_end); },
        "integration horizon"}},
      {"time.cfl",
       {[](RunConfig& c, const std::string& v) { c.stepper.cfl = parse_double("time.cfl", v); },
        [](const RunConfig& c) { return fmt_double(c.stepper.cfl); },
        "Courant number in (0, 1]"}},
      {"time.dt_max",
       {[](RunConfig& c, const std::string& v) { c.stepper.dt_max = parse_double("time.dt_max", v); },
        [](const RunConfig& c) { return fmt_double(c.stepper.dt_max); },
        "time step cap"}},
      {"output.every_steps",
       {[](RunConfig& c, const std::string& v) { c.output_every = static_cast<int>(parse_int("output.every_steps", v)); },
        [](const RunConfig& c) { return std::to_string(c.output_every); },
        "diagnostics cadence in steps"}},
      {"output.checkpoint_every",
       {[](RunConfig& c, const std::string& v) { c.checkpoint_every = static_cast<int>(parse_int("output.checkpoint_every", v)); },
        [](const RunConfig& c) { return std::to_string(c.checkpoint_every); },
        "checkpoint every k outputs; 0 = final checkpoint only"}},
      {"output.dir",
       {[](RunConfig& c, const std::string& v) { c.out_dir = v; },
        [](const RunConfig& c) { return c.out_dir; },
        "run directory"}},
      {"diagnostics.k",
       {[](RunConfig& c, const std::string& v) { c.diag.k = parse_double("diagnostics.k", v); },
        [](const RunConfig& c) { return fmt_double(c.diag.k); },
        "Lambda^k theta exponent; 1/2 < k <= (r-2)/r"}},
      {"diagnostics.r",
       {[](RunConfig& c, const std::string& v) { c.diag.r = parse_double("diagnostics.r", v); },
        [](const RunConfig& c) { return fmt_double(c.diag.r); },
        "L^r exponent for gamma and the micro-rotation; 4 < r < inf"}},
      {"diagnostics.s",
       {[](RunConfig& c, const std::string& v) { c.diag.hs = parse_double("diagnostics.s", v); },
        [](const RunConfig& c) { return fmt_double(c.diag.hs); },
        "Sobolev regularity reported for the state; > 2"}},
  };
  return table;
}

}  // namespace

void apply_override(RunConfig& c, const std::string& key, const std::string& value) {
  const auto& table = key_table();
  auto it = table.find(key);
  if (it == table.end()) {
    std::string msg = "unknown config key '" + key + "'; valid keys:";
    for (const auto& [k, _] : table) msg += " " + k;
    throw std::invalid_argument(msg);
  }
  it->second.set(c, value);
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    apply_override(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  for (const auto& [key, entry] : key_table()) out += key + " = " + entry.get(c) + "\n";
  return out;
}

std::string config_schema() {
  RunConfig defaults;
  std::string out = "# key = default            (description)\n";
  for (const auto& [key, entry] : key_table())
    out += key + " = " + entry.get(defaults) + "\n    # " + entry.doc + "\n";
  return out;
}

}  // namespace ccnv
