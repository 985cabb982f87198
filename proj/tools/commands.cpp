#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace chordnoise::cli {

namespace {

using nlohmann::json;

constexpr std::pair<double, double> kCatCenter1{0.4, 0.25};
constexpr std::pair<double, double> kCatCenter2{0.6, 0.75};

std::array<int, 3> parse_line(const json& value) {
  std::array<int, 3> out{};
  if (value.is_array()) {
    if (value.size() != 3) throw CliError("--line", "expected three integers n1,n2,n3");
    for (int i = 0; i < 3; ++i) out[i] = value.at(i).get<int>();
    return out;
  }
  std::stringstream ss(value.get<std::string>());
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 3) throw CliError("--line", "expected three integers n1,n2,n3");
    std::size_t used = 0;
    try {
      out[i] = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw CliError("--line", "'" + part + "' is not an integer");
    ++i;
  }
  if (i != 3) throw CliError("--line", "expected three integers n1,n2,n3");
  return out;
}

template <typename T>
T read_key(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw CliError(std::string("--") + key, "bad value in config: " + j.at(key).dump());
  }
}

void require_finite(double v, const char* flag) {
  if (!std::isfinite(v)) throw CliError(flag, "must be finite");
}

TorusGeometry geometry_of(const RunConfig& cfg) {
  if (cfg.n < 2) throw CliError("--n", "must be at least 2, got " + std::to_string(cfg.n));
  return TorusGeometry(cfg.n);
}

DiagonalChordChannel channel_of(const RunConfig& cfg, const TorusGeometry& geom) {
  if (cfg.family == "gaussian") {
    if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma)) {
      throw CliError("--sigma", "gaussian family needs a positive --sigma");
    }
    try {
      return make_gaussian(geom, cfg.sigma);
    } catch (const std::domain_error& e) {
      throw CliError("--sigma", e.what());
    }
  }
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0)) {
    throw CliError("--epsilon", "must lie in [0, 1]");
  }
  if (cfg.family == "depolarizing") return make_depolarizing(geom, cfg.epsilon);
  if (cfg.family == "pdc-line") {
    try {
      const auto line = line_points(geom, cfg.line[0], cfg.line[1], cfg.line[2]);
      return make_phase_damping_line(geom, line, cfg.epsilon);
    } catch (const std::invalid_argument& e) {
      throw CliError("--line", e.what());
    } catch (const EmptyLineError& e) {
      throw CliError("--line", e.what());
    }
  }
  throw CliError("--family", "unknown family '" + cfg.family + "' (depolarizing, pdc-line, gaussian)");
}

UnitaryMap map_of(const RunConfig& cfg, const TorusGeometry& geom) {
  require_finite(cfg.k, "--k");
  if (!cfg.cat) return nonlinear_kick(geom, cfg.k);
  try {
    return perturbed_cat(geom, cfg.k);
  } catch (const UnquantizableMapError& e) {
    throw CliError("--n", std::string("cat map: ") + e.what());
  }
}

DensityMatrix cat_density(const TorusGeometry& geom) {
  return density_from_pure(cat_state(geom, kCatCenter1, kCatCenter2));
}

double phase_0_2pi(Complex z) {
  double phi = std::arg(z);
  if (phi < 0.0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi = 0.0;
  return phi;
}

void check_output(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw CliError("--format", "must be csv or json, got '" + cfg.format + "'");
  }
  if (cfg.command != "stability" && cfg.out.empty()) throw CliError("--out", "output path is required");
}

void write_csv(std::ostream& os, const Table& table, const RunConfig& cfg) {
  os << "# config: " << to_json(cfg).dump() << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n' << std::setprecision(17);
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table, const RunConfig& cfg) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (double v : row) {
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  os << json{{"config", to_json(cfg)}, {"columns", table.columns}, {"rows", std::move(rows)}}.dump() << '\n';
}

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("--in", "cannot open '" + path + "'");
  Table table;
  if (in.peek() == '{') {
    json j;
    try {
      in >> j;
      table.columns = j.at("columns").get<std::vector<std::string>>();
      for (const auto& row : j.at("rows")) {
        std::vector<double> values;
        for (const auto& v : row) values.push_back(v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>());
        table.rows.push_back(std::move(values));
      }
    } catch (const json::exception& e) {
      throw CliError("--in", "'" + path + "' is not a valid spectrum file: " + e.what());
    }
    return table;
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (table.columns.empty()) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
      continue;
    }
    std::vector<double> values;
    while (std::getline(ss, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw CliError("--in", "'" + path + "' has a non-numeric cell '" + cell + "'");
      }
    }
    table.rows.push_back(std::move(values));
  }
  return table;
}

}  // namespace

RunConfig config_from_json(const std::string& command, const json& j) {
  if (!j.is_object()) throw CliError("--config", "each config entry must be a JSON object");
  RunConfig cfg;
  cfg.command = command;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      if (value != command) throw CliError("--config", "entry is for command " + value.dump());
    } else if (key == "n") {
      cfg.n = read_key<int>(j, "n");
    } else if (key == "family") {
      cfg.family = read_key<std::string>(j, "family");
    } else if (key == "epsilon") {
      cfg.epsilon = read_key<double>(j, "epsilon");
    } else if (key == "sigma") {
      cfg.sigma = read_key<double>(j, "sigma");
    } else if (key == "line") {
      try {
        cfg.line = parse_line(value);
      } catch (const json::exception&) {
        throw CliError("--line", "bad value in config: " + value.dump());
      }
    } else if (key == "cat") {
      cfg.cat = read_key<bool>(j, "cat");
    } else if (key == "k") {
      cfg.k = read_key<double>(j, "k");
    } else if (key == "a") {
      cfg.a = read_key<double>(j, "a");
    } else if (key == "count") {
      cfg.count = read_key<int>(j, "count");
    } else if (key == "out") {
      cfg.out = read_key<std::string>(j, "out");
    } else if (key == "format") {
      cfg.format = read_key<std::string>(j, "format");
    } else if (key == "in") {
      cfg.inputs = read_key<std::vector<std::string>>(j, "in");
    } else {
      throw CliError("--config", "unknown key '" + key + "'");
    }
  }
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j{{"command", cfg.command}, {"n", cfg.n},   {"family", cfg.family}, {"epsilon", cfg.epsilon},
         {"sigma", cfg.sigma},     {"line", cfg.line}, {"cat", cfg.cat},   {"k", cfg.k},
         {"a", cfg.a},             {"count", cfg.count}, {"out", cfg.out}, {"format", cfg.format}};
  if (!cfg.inputs.empty()) j["in"] = cfg.inputs;
  return j;
}

std::vector<RunConfig> expand_configs(const std::string& command, const json& file, const json& overrides) {
  std::vector<json> entries;
  if (file.is_array()) {
    if (file.empty()) throw CliError("--config", "sweep array is empty");
    entries.assign(file.begin(), file.end());
  } else if (file.is_null()) {
    entries.push_back(json::object());
  } else {
    entries.push_back(file);
  }
  std::vector<RunConfig> out;
  for (auto& entry : entries) {
    if (!entry.is_object()) throw CliError("--config", "each config entry must be a JSON object");
    entry.update(overrides);
    out.push_back(config_from_json(command, entry));
  }
  return out;
}

Table run_channel_spectrum(const RunConfig& cfg) {
  const auto geom = geometry_of(cfg);
  const auto spectrum = channel_spectrum(channel_of(cfg, geom));
  Table t{{"q", "p", "re", "im"}, {}};
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    const auto pt = point_at(geom, i);
    t.rows.push_back({double(pt.q), double(pt.p), spectrum.values[i].real(), spectrum.values[i].imag()});
  }
  return t;
}

Table run_evolve(const RunConfig& cfg) {
  const auto geom = geometry_of(cfg);
  const auto ch = channel_of(cfg, geom);
  const auto rho = cat_density(geom);
  const auto before = wigner_function(rho);
  const auto after = wigner_function(apply_channel(ch, rho));
  Table t{{"xq", "xp", "input", "output"}, {}};
  const int m = 2 * geom.n();
  for (int xq = 0; xq < m; ++xq)
    for (int xp = 0; xp < m; ++xp) t.rows.push_back({double(xq), double(xp), before(xq, xp), after(xq, xp)});
  return t;
}

Table run_wigner(const RunConfig& cfg) {
  const auto geom = geometry_of(cfg);
  const auto w = wigner_function(cat_density(geom));
  Table t{{"xq", "xp", "value"}, {}};
  const int m = 2 * geom.n();
  for (int xq = 0; xq < m; ++xq)
    for (int xp = 0; xp < m; ++xp) t.rows.push_back({double(xq), double(xp), w(xq, xp)});
  return t;
}

Table run_propagator_spectrum(const RunConfig& cfg, int threads) {
  const auto geom = geometry_of(cfg);
  if (cfg.family != "gaussian") {
    throw CliError("--family", "propagator-spectrum needs the gaussian family");
  }
  if (!(cfg.a > 0.0) || !std::isfinite(cfg.a)) throw CliError("--a", "must be positive");
  const auto ch = channel_of(cfg, geom);
  const auto u = map_of(cfg, geom);
  const auto tp = build_noisy_propagator(ch, u, cfg.a, threads);
  if (cfg.count < 0 || cfg.count > tp.dim()) {
    throw CliError("--count", "must lie in [0, " + std::to_string(tp.dim()) + "]");
  }
  const auto spectrum = leading_spectrum(tp, cfg.count == 0 ? tp.dim() : cfg.count);
  Table t{{"re", "im", "modulus", "phase", "minus_log_modulus"}, {}};
  for (const auto& z : spectrum.eigenvalues) {
    t.rows.push_back({z.real(), z.imag(), std::abs(z), phase_0_2pi(z), -std::log(std::abs(z))});
  }
  return t;
}

SpectrumResult read_spectrum(const std::string& path) {
  const auto table = read_table(path);
  auto column = [&](const std::string& name) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      if (table.columns[c] == name) return c;
    throw CliError("--in", "'" + path + "' has no '" + name + "' column");
  };
  const auto re = column("re"), im = column("im");
  SpectrumResult s;
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw CliError("--in", "'" + path + "' has a ragged row");
    s.eigenvalues.emplace_back(row[re], row[im]);
  }
  sort_spectrum(s.eigenvalues);
  s.dim_used = static_cast<int>(s.eigenvalues.size());
  return s;
}

double run_stability(const RunConfig& cfg) {
  if (cfg.inputs.size() != 2) throw CliError("--in", "stability needs exactly two --in files");
  const auto s1 = read_spectrum(cfg.inputs[0]);
  const auto s2 = read_spectrum(cfg.inputs[1]);
  const int available = static_cast<int>(std::min(s1.eigenvalues.size(), s2.eigenvalues.size()));
  const int count = cfg.count == 0 ? 20 : cfg.count;
  if (count < 0 || count > available) {
    throw CliError("--count", "must lie in [1, " + std::to_string(available) + "]");
  }
  return stability_report(s1, s2, count);
}

void write_table(const Table& table, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path target(cfg.out);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw CliError("--out", "cannot write '" + tmp.string() + "'");
    if (cfg.format == "json") {
      write_json(os, table, cfg);
    } else {
      write_csv(os, table, cfg);
    }
    os.close();
    if (!os) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw CliError("--out", "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw CliError("--out", "cannot move output into '" + target.string() + "': " + ec.message());
}

int threads_from_env() {
  if (const char* env = std::getenv("CHORDNOISE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    throw CliError("CHORDNOISE_THREADS", std::string("expected a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void execute(const RunConfig& cfg, std::ostream& log) {
  check_output(cfg);
  if (cfg.command == "stability") {
    const double deviation = run_stability(cfg);
    log << "max deviation: " << std::setprecision(6) << deviation << '\n';
    if (!cfg.out.empty()) {
      Table t{{"count", "max_deviation"}, {{double(cfg.count == 0 ? 20 : cfg.count), deviation}}};
      write_table(t, cfg);
    }
    return;
  }
  Table table;
  if (cfg.command == "channel-spectrum") {
    table = run_channel_spectrum(cfg);
  } else if (cfg.command == "evolve") {
    table = run_evolve(cfg);
  } else if (cfg.command == "wigner") {
    table = run_wigner(cfg);
  } else if (cfg.command == "propagator-spectrum") {
    table = run_propagator_spectrum(cfg, threads_from_env());
  } else {
    throw CliError("command", "unknown command '" + cfg.command + "'");
  }
  write_table(table, cfg);
  log << "wrote " << table.rows.size() << " rows to " << cfg.out << '\n';
}

}  // namespace chordnoise::cli
