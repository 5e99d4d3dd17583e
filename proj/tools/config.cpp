#include "config.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pspin::cli {

namespace {

const std::set<std::string> kCommands = {
    "anneal",       "sweep-size", "sweep-order", "ensemble",
    "finite-range", "eta-compare", "fit",        "gap-scan"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": " + v);
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key + ": " + v);
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const std::uint64_t x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad seed value for " + key + ": " + v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config: bad boolean value for " + key + ": " + v);
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos && text.find(',') == std::string::npos) {
    const int lo = static_cast<int>(to_int("range", trim(text.substr(0, colon))));
    const int hi = static_cast<int>(to_int("range", trim(text.substr(colon + 1))));
    if (hi < lo) throw std::invalid_argument("config: descending range " + text);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(static_cast<int>(to_int("list", item)));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double("list", item));
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "command") cfg.command = val;
    else if (key == "n") cfg.n = static_cast<int>(to_int(key, val));
    else if (key == "p") cfg.p = static_cast<int>(to_int(key, val));
    else if (key == "variant") cfg.variant = val;
    else if (key == "nu") cfg.nu = to_double(key, val);
    else if (key == "pj") cfg.pj = to_double(key, val);
    else if (key == "seed") cfg.seed = to_u64(key, val);
    else if (key == "ansatz") cfg.ansatz = val;
    else if (key == "l") cfg.order = static_cast<int>(to_int(key, val));
    else if (key == "eta") cfg.eta = to_double(key, val);
    else if (key == "T") cfg.total_time = to_double(key, val);
    else if (key == "dt") cfg.dt = to_double(key, val);
    else if (key == "stride") cfg.stride = static_cast<int>(to_int(key, val));
    else if (key == "cache") cfg.cache = to_bool(key, val);
    else if (key == "M") cfg.instances = static_cast<int>(to_int(key, val));
    else if (key == "seed0") cfg.seed0 = to_u64(key, val);
    else if (key == "bins") cfg.bins = static_cast<int>(to_int(key, val));
    else if (key == "hist_lo") cfg.hist_lo = to_double(key, val);
    else if (key == "hist_hi") cfg.hist_hi = to_double(key, val);
    else if (key == "gaps") cfg.gaps = to_bool(key, val);
    else if (key == "sizes") cfg.sizes = parse_int_list(val);
    else if (key == "orders") cfg.orders = parse_int_list(val);
    else if (key == "nus") cfg.nus = parse_double_list(val);
    else if (key == "lambda_points") cfg.lambda_points = static_cast<int>(to_int(key, val));
    else if (key == "jobs") cfg.jobs = static_cast<int>(to_int(key, val));
    else if (key == "out") cfg.out = val;
    else if (key == "fit_input") cfg.fit_input = val;
    else throw std::invalid_argument("config: unknown key " + key);
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "command=" << cfg.command << '\n'
     << "n=" << cfg.n << '\n'
     << "p=" << cfg.p << '\n'
     << "variant=" << cfg.variant << '\n'
     << "nu=" << fmt(cfg.nu) << '\n'
     << "pj=" << fmt(cfg.pj) << '\n'
     << "seed=" << cfg.seed << '\n'
     << "ansatz=" << cfg.ansatz << '\n'
     << "l=" << cfg.order << '\n'
     << "eta=" << fmt(cfg.eta) << '\n'
     << "T=" << fmt(cfg.total_time) << '\n'
     << "dt=" << fmt(cfg.dt) << '\n'
     << "stride=" << cfg.stride << '\n'
     << "cache=" << (cfg.cache ? "true" : "false") << '\n'
     << "M=" << cfg.instances << '\n'
     << "seed0=" << cfg.seed0 << '\n'
     << "bins=" << cfg.bins << '\n'
     << "hist_lo=" << fmt(cfg.hist_lo) << '\n'
     << "hist_hi=" << fmt(cfg.hist_hi) << '\n'
     << "gaps=" << (cfg.gaps ? "true" : "false") << '\n'
     << "sizes=" << join(cfg.sizes) << '\n'
     << "orders=" << join(cfg.orders) << '\n'
     << "nus=" << join(cfg.nus) << '\n'
     << "lambda_points=" << cfg.lambda_points << '\n'
     << "jobs=" << cfg.jobs << '\n'
     << "out=" << cfg.out << '\n'
     << "fit_input=" << cfg.fit_input << '\n';
  return os.str();
}

void ExperimentConfig::validate() const {
  if (!kCommands.count(command)) {
    throw std::invalid_argument("config: unknown command " + command);
  }
  if (variant != "uniform" && variant != "finite_range" && variant != "random") {
    throw std::invalid_argument("config: unknown variant " + variant);
  }
  if (!parse_ansatz_name(ansatz)) {
    throw std::invalid_argument("config: unknown ansatz " + ansatz);
  }
  if (total_time <= 0.0) throw std::invalid_argument("config: T must be positive");
  if (dt <= 0.0) throw std::invalid_argument("config: dt must be positive");
  if (stride < 1) throw std::invalid_argument("config: stride must be >= 1");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  if (instances < 1) throw std::invalid_argument("config: M must be >= 1");
  if (bins < 1) throw std::invalid_argument("config: bins must be >= 1");
  if (hist_hi <= hist_lo) throw std::invalid_argument("config: empty histogram range");
  if (lambda_points < 2) throw std::invalid_argument("config: lambda_points must be >= 2");
  if (out.empty()) throw std::invalid_argument("config: empty output path");
  if (command == "fit" && fit_input.empty()) {
    throw std::invalid_argument("config: fit requires fit_input");
  }
  if (command == "sweep-size" && sizes.empty()) {
    throw std::invalid_argument("config: sweep-size requires sizes");
  }
  if (command == "sweep-order" && orders.empty()) {
    throw std::invalid_argument("config: sweep-order requires orders");
  }
  if (command == "finite-range" && nus.empty()) {
    throw std::invalid_argument("config: finite-range requires nus");
  }
  if (command != "fit") model_spec().validate();
  ansatz_spec().validate();
}

ModelSpec ExperimentConfig::model_spec() const {
  ModelVariant var = Uniform{};
  if (variant == "finite_range") var = FiniteRange{nu};
  else if (variant == "random") var = RandomDilution{pj, seed};
  // The symmetric sector suffices for the uniform model minimized there;
  // anything else needs the full space.
  const bool full = variant != "uniform" || eta != 0.0 ||
                    command == "eta-compare";
  ModelSpec spec{n, p, var,
                 full ? Representation::full(n) : Representation::subspace(n)};
  return spec;
}

AnsatzSpec ExperimentConfig::ansatz_spec() const {
  const auto kind = parse_ansatz_name(ansatz);
  if (!kind) throw std::invalid_argument("config: unknown ansatz " + ansatz);
  return AnsatzSpec{*kind, order, eta};
}

ConfigEcho ExperimentConfig::echo() const {
  ConfigEcho out;
  std::stringstream ss(serialize_config(*this));
  std::string line;
  while (std::getline(ss, line)) {
    const auto eq = line.find('=');
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace pspin::cli
