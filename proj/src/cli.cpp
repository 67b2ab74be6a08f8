#include "cpheat/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "cpheat/coefficients_laplace.hpp"
#include "cpheat/csv.hpp"
#include "cpheat/diffusion_sim.hpp"
#include "cpheat/heat_kernel.hpp"
#include "cpheat/validation.hpp"

namespace cpheat {

namespace {

const std::vector<std::string> kAllKeys{"N",     "k",    "t",  "c",    "grid",  "tol", "n-max",
                                        "lambda", "paths", "dt", "seed", "tier", "threads"};

const std::map<Command, std::set<std::string>>& allowed_keys() {
  static const std::map<Command, std::set<std::string>> keys{
      {Command::density1d, {"N", "t", "c", "grid", "tol", "n-max"}},
      {Command::density2d, {"N", "t", "c", "grid", "tol", "n-max"}},
      {Command::coeffs, {"N", "c", "n-max"}},
      {Command::laplace, {"N", "t", "c", "lambda", "tol", "n-max"}},
      {Command::simulate, {"N", "k", "t", "c", "paths", "dt", "seed", "threads"}},
      {Command::validate, {"tier", "seed", "threads"}},
  };
  return keys;
}

const std::map<Command, std::set<std::string>>& required_keys() {
  static const std::map<Command, std::set<std::string>> keys{
      {Command::density1d, {"N", "t", "c"}}, {Command::density2d, {"N", "t", "c"}},
      {Command::coeffs, {"N", "c"}},         {Command::laplace, {"N", "t", "c"}},
      {Command::simulate, {"N", "t", "c"}},  {Command::validate, {}},
  };
  return keys;
}

// The parser: one subcommand per command, every key registered on each so
// that misuse is reported by validate_manifest with a specific message.
struct Parser {
  CLI::App app{"Transition densities of Brownian motion on complex projective space", "cpheat"};
  std::map<std::string, std::string> values;
  std::string out = "-";
  std::string tier_positional;
  std::map<std::string, CLI::App*> subs;

  Parser() {
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(CPHEAT_VERSION));
    const std::vector<std::pair<Command, std::string>> commands{
        {Command::density1d, "Evaluate the 1D density on a grid in u"},
        {Command::density2d, "Evaluate the 2D density on a triangular grid"},
        {Command::coeffs, "Coefficient table: triangular solve against closed form"},
        {Command::laplace, "Laplace transform: series against quadrature"},
        {Command::simulate, "Simulate the simplex diffusion and dump terminal points"},
        {Command::validate, "Run the validation suite and write a JSON report"}};
    for (const auto& [cmd, help] : commands) {
      CLI::App* sub = app.add_subcommand(command_name(cmd), help);
      for (const auto& key : kAllKeys) {
        sub->add_option_function<std::string>(
            "--" + key, [this, key](const std::string& v) { values[key] = v; });
      }
      sub->add_option("--out,-o", out, "Output file, '-' for standard output");
      if (cmd == Command::validate) {
        sub->add_option("tier_name", tier_positional, "quick or full");
      }
      subs[command_name(cmd)] = sub;
    }
  }

  RunManifest manifest() const {
    RunManifest m;
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) {
        for (Command c : {Command::density1d, Command::density2d, Command::coeffs,
                          Command::laplace, Command::simulate, Command::validate}) {
          if (command_name(c) == name) m.command = c;
        }
      }
    }
    m.params = values;
    if (!tier_positional.empty()) {
      if (m.params.count("tier") != 0 && m.params.at("tier") != tier_positional) {
        throw UsageError("validate: conflicting tiers '" + tier_positional + "' and '" +
                         m.params.at("tier") + "'");
      }
      m.params["tier"] = tier_positional;
    }
    m.output_path = out;
    return m;
  }
};

// key=value -> --key value; n_max and n-max are both accepted.
std::vector<std::string> normalize_args(const std::vector<std::string>& args) {
  static const std::regex kv("^([A-Za-z_][A-Za-z_-]*)=(.*)$");
  std::vector<std::string> out;
  for (const auto& a : args) {
    std::smatch m;
    if (std::regex_match(a, m, kv)) {
      std::string key = m[1];
      std::replace(key.begin(), key.end(), '_', '-');
      out.push_back("--" + key);
      out.push_back(m[2]);
    } else if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos) {
      std::string key = a;
      std::replace(key.begin() + 2, key.end(), '_', '-');
      out.push_back(key);
    } else {
      out.push_back(a);
    }
  }
  return out;
}

double parse_double(const RunManifest& m, const std::string& key) {
  const std::string& s = m.params.at(key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--" + key + ": '" + s + "' is not a finite number");
  }
}

long long parse_integer(const RunManifest& m, const std::string& key) {
  const std::string& s = m.params.at(key);
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--" + key + ": '" + s + "' is not an integer");
  }
}

std::uint64_t parse_seed(const RunManifest& m, std::uint64_t fallback) {
  if (m.params.count("seed") == 0) return fallback;
  const std::string& s = m.params.at("seed");
  try {
    std::size_t pos = 0;
    if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--seed: '" + s + "' is not an unsigned 64-bit integer");
  }
}

std::vector<double> parse_list(const RunManifest& m, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(m.params.at(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    RunManifest one;
    one.params[key] = item;
    out.push_back(parse_double(one, key));
  }
  if (out.empty()) throw UsageError("--" + key + ": empty list");
  return out;
}

double get_double(const RunManifest& m, const std::string& key, double fallback) {
  return m.params.count(key) != 0 ? parse_double(m, key) : fallback;
}

long long get_integer(const RunManifest& m, const std::string& key, long long fallback) {
  return m.params.count(key) != 0 ? parse_integer(m, key) : fallback;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

int default_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

// Output target that is either stdout or a file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

CsvMetadata base_metadata(const RunManifest& m) {
  CsvMetadata meta{{"command", command_name(m.command)}};
  for (const auto& [k, v] : m.params) meta.emplace_back(k, v);
  return meta;
}

Truncation truncation_for(const RunManifest& m, double t, int N, int k) {
  if (m.params.count("n-max") != 0) {
    return fixed_truncation(static_cast<int>(parse_integer(m, "n-max")), t, N, k);
  }
  return auto_truncation(t, N, get_double(m, "tol", 1e-10), k);
}

void add_truncation(CsvMetadata& meta, const Truncation& tr) {
  meta.emplace_back("n_max", std::to_string(tr.n_max));
  meta.emplace_back("achieved_bound", format_double(tr.achieved_bound));
}

void warn_truncation(bool warned) {
  if (warned) {
    std::cerr << "warning: the first omitted series term exceeds the certified tail bound\n";
  }
}

int run_density1d(const RunManifest& m, std::ostream& out) {
  const int N = static_cast<int>(parse_integer(m, "N"));
  const double t = parse_double(m, "t");
  const double c = parse_double(m, "c");
  const int grid = static_cast<int>(get_integer(m, "grid", 101));
  const Truncation tr = truncation_for(m, t, N, 1);
  const Kernel1D kernel(t, c, N, tr);
  CsvMetadata meta = base_metadata(m);
  add_truncation(meta, tr);
  write_csv_metadata(out, meta);
  write_csv_columns(out, {"u", "f"});
  bool warned = false;
  for (int i = 0; i < grid; ++i) {
    const double u = static_cast<double>(i) / (grid - 1);
    warned = warned || kernel.omitted_term(u) * std::pow(1.0 - u, N - 2) > tr.achieved_bound;
    write_csv_row(out, std::vector<double>{u, kernel.density(u)});
  }
  warn_truncation(warned);
  return 0;
}

int run_density2d(const RunManifest& m, std::ostream& out) {
  const int N = static_cast<int>(parse_integer(m, "N"));
  const double t = parse_double(m, "t");
  const auto c = parse_list(m, "c");
  const int grid = static_cast<int>(get_integer(m, "grid", 21));
  const Truncation tr = truncation_for(m, t, N, 2);
  const Kernel2D kernel(t, {c[0], c[1]}, N, tr);
  CsvMetadata meta = base_metadata(m);
  add_truncation(meta, tr);
  write_csv_metadata(out, meta);
  write_csv_columns(out, {"u1", "u2", "f"});
  bool warned = false;
  const int steps = grid - 1;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      const SimplexPoint u{static_cast<double>(i) / steps, static_cast<double>(j) / steps};
      const double w = std::max(0.0, 1.0 - u.u1 - u.u2);
      warned = warned || kernel.omitted_term(u) * std::pow(w, N - 3) > tr.achieved_bound;
      write_csv_row(out, std::vector<double>{u.u1, u.u2, kernel.density(u)});
    }
  }
  warn_truncation(warned);
  return 0;
}

int run_coeffs(const RunManifest& m, std::ostream& out) {
  const int N = static_cast<int>(parse_integer(m, "N"));
  const double c = parse_double(m, "c");
  const int n_max = static_cast<int>(get_integer(m, "n-max", 20));
  const CoefficientTable table = solve_coefficients(c, N, n_max);
  write_csv_metadata(out, base_metadata(m));
  write_csv_columns(out, {"n", "solve", "closed_form", "abs_diff"});
  for (int n = 0; n <= n_max; ++n) {
    const double closed = closed_form_coefficient(c, N, n);
    write_csv_row(out, std::vector<double>{static_cast<double>(n), table.a[n], closed,
                                           std::abs(table.a[n] - closed)});
  }
  return 0;
}

int run_laplace(const RunManifest& m, std::ostream& out) {
  const int N = static_cast<int>(parse_integer(m, "N"));
  const double t = parse_double(m, "t");
  const double c = parse_double(m, "c");
  const auto lambdas = m.params.count("lambda") != 0 ? parse_list(m, "lambda")
                                                     : std::vector<double>{0.0};
  const Truncation tr = truncation_for(m, t, N, 1);
  CsvMetadata meta = base_metadata(m);
  add_truncation(meta, tr);
  write_csv_metadata(out, meta);
  write_csv_columns(out, {"lambda", "series", "quadrature", "abs_diff"});
  bool warned = false;
  for (double lambda : lambdas) {
    SeriesDiagnostics diag;
    const double series = laplace_series(c, lambda, t, N, tr, &diag);
    const double quad = laplace_by_quadrature(c, lambda, t, N, std::min(tr.tol, 1e-13));
    warned = warned || diag.truncation_warning;
    write_csv_row(out, std::vector<double>{lambda, series, quad, std::abs(series - quad)});
  }
  warn_truncation(warned);
  return 0;
}

int run_simulate(const RunManifest& m, std::ostream& out) {
  SdeConfig cfg;
  cfg.N = static_cast<int>(parse_integer(m, "N"));
  cfg.k = static_cast<int>(get_integer(m, "k", 1));
  cfg.t_final = parse_double(m, "t");
  cfg.dt = get_double(m, "dt", 1e-3);
  cfg.paths = static_cast<long>(get_integer(m, "paths", 1000));
  cfg.seed = parse_seed(m, 1);
  cfg.threads = static_cast<int>(get_integer(m, "threads", default_threads()));
  const auto start = parse_list(m, "c");
  const PathEnsemble ens = simulate(cfg, start);
  CsvMetadata meta = base_metadata(m);
  meta.emplace_back("paths_written", std::to_string(ens.size()));
  write_csv_metadata(out, meta);
  write_ensemble_csv(ens, out);
  return 0;
}

int run_validate(const RunManifest& m, std::ostream& out) {
  ValidationOptions opts;
  opts.tier = parse_tier(m.params.count("tier") != 0 ? m.params.at("tier") : "quick");
  opts.seed = parse_seed(m, opts.seed);
  opts.threads = static_cast<int>(get_integer(m, "threads", default_threads()));
  const auto reports = run_validation(opts);
  const auto json = report_to_json(opts, reports);
  out << json.dump(2) << '\n';
  for (const auto& rep : reports) {
    if (rep.pass()) continue;
    for (const auto& c : rep.checks) {
      if (!c.pass) {
        std::cerr << "FAIL criterion " << rep.id << " (" << rep.name << "): " << c.check_name
                  << ' ' << c.params.dump() << " measured=" << format_double(c.measured)
                  << " tolerance=" << format_double(c.tolerance) << '\n';
      }
    }
  }
  return json["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::density1d: return "density1d";
    case Command::density2d: return "density2d";
    case Command::coeffs: return "coeffs";
    case Command::laplace: return "laplace";
    case Command::simulate: return "simulate";
    case Command::validate: return "validate";
  }
  return "?";
}

RunManifest parse_command_line(const std::vector<std::string>& args) {
  Parser p;
  auto normalized = normalize_args(args);
  std::reverse(normalized.begin(), normalized.end());
  try {
    p.app.parse(normalized);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return p.manifest();
}

void validate_manifest(const RunManifest& m) {
  const std::string cmd = command_name(m.command);
  const auto& allowed = allowed_keys().at(m.command);
  for (const auto& [key, value] : m.params) {
    require(allowed.count(key) != 0, cmd + ": --" + key + " does not apply");
  }
  for (const auto& key : required_keys().at(m.command)) {
    require(m.params.count(key) != 0, cmd + ": --" + key + " is required");
  }

  const int N = m.params.count("N") != 0 ? static_cast<int>(parse_integer(m, "N")) : 0;
  if (m.params.count("N") != 0) {
    const int min_N = m.command == Command::density2d ? 3 : 2;
    require(N >= min_N, cmd + ": --N must be >= " + std::to_string(min_N));
  }
  if (m.params.count("t") != 0) {
    require(parse_double(m, "t") > 0.0, cmd + ": --t must be > 0");
  }
  if (m.params.count("tol") != 0) {
    require(parse_double(m, "tol") > 0.0, cmd + ": --tol must be > 0");
  }
  if (m.params.count("n-max") != 0) {
    const long long n = parse_integer(m, "n-max");
    require(n >= (m.command == Command::coeffs ? 0 : 1) && n <= 100000,
            cmd + ": --n-max out of range");
  }
  if (m.params.count("grid") != 0) {
    const long long g = parse_integer(m, "grid");
    require(g >= 2 && g <= 100000, cmd + ": --grid must be in [2, 100000]");
  }
  if (m.params.count("threads") != 0) {
    require(parse_integer(m, "threads") >= 1, cmd + ": --threads must be >= 1");
  }
  if (m.params.count("seed") != 0) parse_seed(m, 0);
  if (m.params.count("tier") != 0) {
    try {
      parse_tier(m.params.at("tier"));
    } catch (const std::invalid_argument& e) {
      throw UsageError(cmd + ": " + e.what());
    }
  }
  if (m.params.count("lambda") != 0) {
    for (double l : parse_list(m, "lambda")) {
      require(std::abs(l) <= 10.0, cmd + ": --lambda values must satisfy |lambda| <= 10");
    }
  }

  if (m.params.count("c") == 0) return;
  const auto c = parse_list(m, "c");
  int dims = 1;
  if (m.command == Command::density2d) dims = 2;
  if (m.command == Command::simulate) {
    dims = static_cast<int>(get_integer(m, "k", 1));
    require(dims >= 1 && dims <= N - 1, cmd + ": --k must satisfy 1 <= k <= N-1");
  }
  require(static_cast<int>(c.size()) == dims,
          cmd + ": --c needs " + std::to_string(dims) + " comma-separated value(s)");
  double sum = 0.0;
  for (double x : c) {
    require(x >= 0.0 && x <= 1.0, cmd + ": --c entries must lie in [0,1]");
    sum += x;
  }
  require(sum <= 1.0 + 1e-12, cmd + ": --c entries must sum to at most 1");

  if (m.command == Command::simulate) {
    const double t = parse_double(m, "t");
    const double dt = get_double(m, "dt", 1e-3);
    require(dt > 0.0 && dt <= t / 10.0, cmd + ": --dt must satisfy 0 < dt <= t/10");
    const long long paths = get_integer(m, "paths", 1000);
    require(paths >= 1, cmd + ": --paths must be >= 1");
  }
}

int run(const RunManifest& m) {
  Output output(m.output_path);
  std::ostream& out = output.stream();
  switch (m.command) {
    case Command::density1d: return run_density1d(m, out);
    case Command::density2d: return run_density2d(m, out);
    case Command::coeffs: return run_coeffs(m, out);
    case Command::laplace: return run_laplace(m, out);
    case Command::simulate: return run_simulate(m, out);
    case Command::validate: return run_validate(m, out);
  }
  return 2;
}

int cli_main(int argc, const char* const* argv) {
  Parser p;
  std::vector<std::string> args(argv + 1, argv + argc);
  auto normalized = normalize_args(args);
  std::reverse(normalized.begin(), normalized.end());
  try {
    p.app.parse(normalized);
  } catch (const CLI::ParseError& e) {
    const int code = p.app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    const RunManifest m = p.manifest();
    validate_manifest(m);
    return run(m);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cpheat
