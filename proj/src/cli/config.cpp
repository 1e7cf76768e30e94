// SPDX-License-Identifier: Apache-2.0
#include "nanowire/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "nanowire/error.hpp"

namespace nanowire::cli {
namespace {

std::string where(const std::string& origin, const YAML::Mark& mark) {
  if (mark.is_null()) return origin;
  return fmt::format("{}:{}", origin, mark.line + 1);
}

// Reads the keys of one mapping and rejects anything it was not asked for.
class MapReader {
 public:
  MapReader(const YAML::Node& node, std::string path, const std::string& origin)
      : node_(node), path_(std::move(path)), origin_(origin) {
    if (node_ && !node_.IsNull() && !node_.IsMap())
      throw ParseError(fmt::format("{}: '{}' must be a mapping", where(origin_, node_.Mark()), path_));
  }

  YAML::Node take(const char* key) {
    seen_.insert(key);
    if (!node_ || !node_.IsMap()) return {};
    return node_[key];
  }

  template <class T>
  void read(const char* key, T& out) {
    const YAML::Node v = take(key);
    if (v && !v.IsNull()) out = convert<T>(v, key);
  }

  template <class T>
  void read(const char* key, std::optional<T>& out) {
    const YAML::Node v = take(key);
    if (v && !v.IsNull()) out = convert<T>(v, key);
  }

  template <class T>
  T convert(const YAML::Node& v, const std::string& key) const {
    try {
      if (!v.IsScalar()) throw YAML::BadConversion(v.Mark());
      return v.as<T>();
    } catch (const YAML::BadConversion&) {
      throw ParseError(fmt::format("{}: '{}' has the wrong type", where(origin_, v.Mark()),
                                   qualified(key)));
    }
  }

  std::vector<double> list(const char* key, std::vector<double> fallback) {
    const YAML::Node v = take(key);
    if (!v || v.IsNull()) return fallback;
    if (!v.IsSequence())
      throw ParseError(fmt::format("{}: '{}' must be a list", where(origin_, v.Mark()), qualified(key)));
    std::vector<double> out;
    for (const auto& item : v) out.push_back(convert<double>(item, key));
    return out;
  }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key))
        throw ParseError(fmt::format("{}: unknown key '{}'", where(origin_, kv.first.Mark()),
                                     qualified(key)));
    }
  }

  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  const std::string& origin() const { return origin_; }

 private:
  YAML::Node node_;
  std::string path_;
  const std::string& origin_;
  std::set<std::string> seen_;
};

template <class E>
E parse_enum(const MapReader& r, const YAML::Node& v, const char* key,
             std::initializer_list<std::pair<const char*, E>> options) {
  const auto text = r.convert<std::string>(v, key);
  for (const auto& [name, value] : options)
    if (text == name) return value;
  std::vector<std::string> names;
  for (const auto& o : options) names.emplace_back(o.first);
  throw ParseError(fmt::format("{}: '{}' must be one of {}, got '{}'", where(r.origin(), v.Mark()),
                               r.qualified(key), fmt::join(names, ", "), text));
}

template <class E>
void read_enum(MapReader& r, const char* key, E& out,
               std::initializer_list<std::pair<const char*, E>> options) {
  const YAML::Node v = r.take(key);
  if (v && !v.IsNull()) out = parse_enum(r, v, key, options);
}

const std::initializer_list<std::pair<const char*, Solver>> kSolvers{
    {"ode", Solver::Ode},       {"ssa", Solver::Ssa},     {"master", Solver::Master},
    {"fp", Solver::Fp},         {"phase", Solver::Phase}, {"validate", Solver::Validate}};

void read_kinetics(MapReader r, KineticParams& k) {
  r.read("k_plus", k.k_plus);
  r.read("k_minus", k.k_minus);
  r.read("delta", k.delta);
  r.read("n0", k.n0);
  r.read("x0", k.x0);
  r.read("x_l", k.x_l);
  r.read("nucleus_size", k.nucleus_size);
  r.read("count_scale", k.count_scale);
  read_enum(r, "interpretation", k.interpretation,
            {{"concentration", CountInterpretation::Concentration},
             {"count", CountInterpretation::Count}});
  read_enum(r, "propensity", k.propensity,
            {{"pairwise", PropensityModel::Pairwise}, {"linear", PropensityModel::Linear}});
  r.finish();
}

void read_fp(MapReader r, FpConfig& fp) {
  r.read("grid", fp.grid);
  fp.t_samples = r.list("t_samples", fp.t_samples);
  r.read("dt", fp.dt);
  read_enum(r, "mode", fp.mode,
            {{"frozen", CoefficientMode::Frozen}, {"dynamic", CoefficientMode::Dynamic}});
  r.read("spatial_order", fp.spatial_order);
  r.read("initial_center", fp.initial_center);
  r.read("initial_variance", fp.initial_variance);
  const YAML::Node list = r.take("scenarios");
  if (list && !list.IsNull()) {
    if (!list.IsSequence())
      throw ParseError(fmt::format("{}: 'fp.scenarios' must be a list", where(r.origin(), list.Mark())));
    fp.scenarios.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      MapReader s(list[i], fmt::format("fp.scenarios[{}]", i), r.origin());
      FpScenario sc;
      s.read("name", sc.name);
      s.read("k_plus", sc.k_plus);
      s.read("k_minus", sc.k_minus);
      s.read("n0", sc.n0);
      s.finish();
      fp.scenarios.push_back(std::move(sc));
    }
  }
  r.finish();
}

void read_phase(MapReader r, PhaseConfig& ph) {
  read_enum(r, "form", ph.form, {{"balance", FieldForm::Balance}, {"rate_law", FieldForm::RateLaw}});
  r.read("t_end", ph.t_end);
  r.read("dt", ph.dt);
  r.read("grid_steps", ph.grid_steps);
  r.read("nullcline_points", ph.nullcline_points);
  r.read("output_every", ph.output_every);
  const YAML::Node starts = r.take("starts");
  if (starts && !starts.IsNull()) {
    if (!starts.IsSequence())
      throw ParseError(fmt::format("{}: 'phase.starts' must be a list of [n, a] pairs",
                                   where(r.origin(), starts.Mark())));
    std::vector<PhasePoint> pts;
    for (const auto& item : starts) {
      if (!item.IsSequence() || item.size() != 2)
        throw ParseError(fmt::format("{}: 'phase.starts' entries must be [n, a] pairs",
                                     where(r.origin(), item.Mark())));
      pts.push_back({r.convert<double>(item[0], "starts"), r.convert<double>(item[1], "starts")});
    }
    ph.starts = std::move(pts);
  }
  r.finish();
}

std::string number(double v) { return fmt::format("{}", v); }

std::string list(const std::vector<double>& v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(number(x));
  return fmt::format("[{}]", fmt::join(parts, ", "));
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

bool sorted_nonnegative(const std::vector<double>& v) {
  return std::is_sorted(v.begin(), v.end()) && (v.empty() || v.front() >= 0.0);
}

}  // namespace

std::string_view to_string(Solver solver) {
  for (const auto& [name, value] : kSolvers)
    if (value == solver) return name;
  return "unknown";
}

void ScenarioConfig::check() const {
  kinetics.validate();
  require(!output_dir.empty(), "output_dir must not be empty");
  require(ode.dt > 0.0 && ode.t_end >= 0.0, "ode.dt must be > 0 and ode.t_end >= 0");
  require(ode.output_every >= 1, "ode.output_every must be >= 1");
  require(ode.max_halvings >= 0, "ode.max_halvings must be >= 0");
  if (solver == Solver::Ssa || solver == Solver::Validate)
    require(ssa.seed.has_value(), fmt::format("ssa.seed is required when solver is {}", to_string(solver)));
  require(ssa.trajectories >= 1, "ssa.trajectories must be >= 1");
  require(ssa.t_end >= 0.0 && ssa.samples >= 1, "ssa.t_end must be >= 0 and ssa.samples >= 1");
  require(ssa.record_trajectories <= ssa.trajectories, "ssa.record_trajectories exceeds ssa.trajectories");
  require(master.t_end >= 0.0 && master.samples >= 1, "master.t_end must be >= 0 and master.samples >= 1");
  require(master.rtol > 0.0 && master.atol > 0.0, "master tolerances must be > 0");
  require(fp.grid >= 32, "fp.grid must be >= 32");
  require(!fp.t_samples.empty() && sorted_nonnegative(fp.t_samples),
          "fp.t_samples must be a nonempty, sorted list of times >= 0");
  require(fp.spatial_order == 2 || fp.spatial_order == 4, "fp.spatial_order must be 2 or 4");
  require(fp.dt >= 0.0 && fp.initial_variance >= 0.0, "fp.dt and fp.initial_variance must be >= 0");
  std::set<std::string> names;
  for (const auto& s : fp.scenarios) {
    require(!s.name.empty() && std::all_of(s.name.begin(), s.name.end(),
                                           [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }),
            fmt::format("fp scenario name '{}' must be nonempty [A-Za-z0-9_-]", s.name));
    require(names.insert(s.name).second, fmt::format("duplicate fp scenario '{}'", s.name));
  }
  require(phase.dt > 0.0 && phase.t_end >= 0.0, "phase.dt must be > 0 and phase.t_end >= 0");
  require(phase.grid_steps >= 1 && phase.nullcline_points >= 2,
          "phase.grid_steps must be >= 1 and phase.nullcline_points >= 2");
  require(phase.output_every >= 1, "phase.output_every must be >= 1");
  require(validate.ssa_trajectories >= 1 && validate.drift_trajectories >= 1,
          "validate trajectory counts must be >= 1");
  require(validate.small_n_total >= 1 && validate.desk_n_total >= 1, "validate n_total must be >= 1");
  require(validate.small_length > kinetics.min_length(), "validate.small_length must exceed the nucleation floor");
  require(sorted_nonnegative(validate.small_tv_times) && sorted_nonnegative(validate.desk_times) &&
              sorted_nonnegative(validate.fp_times),
          "validate sample times must be sorted and >= 0");
  require(validate.small_t_end > 0.0 && validate.fp_warmup > 0.0 && validate.drift_t_end > 0.0,
          "validate durations must be > 0");
  require(validate.fp_grid >= 32, "validate.fp_grid must be >= 32");
  require(validate.drift_k_minus > 0.0 && validate.drift_n0 > 0.0,
          "validate.drift_k_minus and validate.drift_n0 must be > 0");
  require(validate.drift_initial_length > kinetics.min_length() &&
              validate.drift_max_length > validate.drift_initial_length,
          "validate drift lengths must satisfy min_length < initial_length < max_length");
}

ScenarioConfig parse_config(std::string_view text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(fmt::format("{}: {}", where(origin, e.mark), e.msg));
  }
  ScenarioConfig c;
  MapReader r(root, "", origin);
  read_enum(r, "solver", c.solver, kSolvers);
  std::string out;
  r.read("output_dir", out);
  if (!out.empty()) c.output_dir = out;
  r.read("plots", c.plots);
  read_kinetics(MapReader(r.take("kinetics"), "kinetics", origin), c.kinetics);
  {
    MapReader s(r.take("ode"), "ode", origin);
    s.read("t_end", c.ode.t_end);
    s.read("dt", c.ode.dt);
    s.read("max_halvings", c.ode.max_halvings);
    s.read("output_every", c.ode.output_every);
    s.finish();
  }
  {
    MapReader s(r.take("ssa"), "ssa", origin);
    s.read("seed", c.ssa.seed);
    s.read("trajectories", c.ssa.trajectories);
    s.read("t_end", c.ssa.t_end);
    s.read("samples", c.ssa.samples);
    s.read("initial_length", c.ssa.initial_length);
    s.read("threads", c.ssa.threads);
    s.read("record_trajectories", c.ssa.record_trajectories);
    s.finish();
  }
  {
    MapReader s(r.take("master"), "master", origin);
    s.read("t_end", c.master.t_end);
    s.read("samples", c.master.samples);
    s.read("state_cap", c.master.state_cap);
    s.read("rtol", c.master.rtol);
    s.read("atol", c.master.atol);
    s.read("initial_length", c.master.initial_length);
    s.finish();
  }
  read_fp(MapReader(r.take("fp"), "fp", origin), c.fp);
  read_phase(MapReader(r.take("phase"), "phase", origin), c.phase);
  {
    MapReader s(r.take("validate"), "validate", origin);
    auto& v = c.validate;
    s.read("ssa_trajectories", v.ssa_trajectories);
    s.read("small_n_total", v.small_n_total);
    s.read("small_length", v.small_length);
    s.read("small_t_end", v.small_t_end);
    v.small_tv_times = s.list("small_tv_times", v.small_tv_times);
    s.read("desk_n_total", v.desk_n_total);
    v.desk_times = s.list("desk_times", v.desk_times);
    s.read("fp_grid", v.fp_grid);
    s.read("fp_warmup", v.fp_warmup);
    v.fp_times = s.list("fp_times", v.fp_times);
    s.read("drift_k_minus", v.drift_k_minus);
    s.read("drift_n0", v.drift_n0);
    s.read("drift_initial_length", v.drift_initial_length);
    s.read("drift_max_length", v.drift_max_length);
    s.read("drift_trajectories", v.drift_trajectories);
    s.read("drift_t_end", v.drift_t_end);
    s.finish();
  }
  r.finish();
  c.check();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::string o;
  auto line = [&o](std::string_view indent, std::string_view key, const std::string& value) {
    o += fmt::format("{}{}: {}\n", indent, key, value);
  };
  const auto& k = c.kinetics;
  line("", "solver", std::string(to_string(c.solver)));
  line("", "output_dir", quoted(c.output_dir.generic_string()));
  line("", "plots", c.plots ? "true" : "false");
  o += "kinetics:\n";
  line("  ", "k_plus", number(k.k_plus));
  line("  ", "k_minus", number(k.k_minus));
  line("  ", "delta", number(k.delta));
  line("  ", "n0", number(k.n0));
  line("  ", "x0", number(k.x0));
  line("  ", "x_l", number(k.x_l));
  line("  ", "nucleus_size", fmt::format("{}", k.nucleus_size));
  line("  ", "count_scale", number(k.count_scale));
  line("  ", "interpretation", std::string(to_string(k.interpretation)));
  line("  ", "propensity", std::string(to_string(k.propensity)));
  o += "ode:\n";
  line("  ", "t_end", number(c.ode.t_end));
  line("  ", "dt", number(c.ode.dt));
  line("  ", "max_halvings", fmt::format("{}", c.ode.max_halvings));
  line("  ", "output_every", fmt::format("{}", c.ode.output_every));
  o += "ssa:\n";
  if (c.ssa.seed) line("  ", "seed", fmt::format("{}", *c.ssa.seed));
  line("  ", "trajectories", fmt::format("{}", c.ssa.trajectories));
  line("  ", "t_end", number(c.ssa.t_end));
  line("  ", "samples", fmt::format("{}", c.ssa.samples));
  line("  ", "initial_length", fmt::format("{}", c.ssa.initial_length));
  line("  ", "threads", fmt::format("{}", c.ssa.threads));
  line("  ", "record_trajectories", fmt::format("{}", c.ssa.record_trajectories));
  o += "master:\n";
  line("  ", "t_end", number(c.master.t_end));
  line("  ", "samples", fmt::format("{}", c.master.samples));
  line("  ", "state_cap", fmt::format("{}", c.master.state_cap));
  line("  ", "rtol", number(c.master.rtol));
  line("  ", "atol", number(c.master.atol));
  line("  ", "initial_length", fmt::format("{}", c.master.initial_length));
  o += "fp:\n";
  line("  ", "grid", fmt::format("{}", c.fp.grid));
  line("  ", "t_samples", list(c.fp.t_samples));
  line("  ", "dt", number(c.fp.dt));
  line("  ", "mode", c.fp.mode == CoefficientMode::Frozen ? "frozen" : "dynamic");
  line("  ", "spatial_order", fmt::format("{}", c.fp.spatial_order));
  if (c.fp.initial_center) line("  ", "initial_center", number(*c.fp.initial_center));
  line("  ", "initial_variance", number(c.fp.initial_variance));
  if (c.fp.scenarios.empty()) {
    line("  ", "scenarios", "[]");
  } else {
    o += "  scenarios:\n";
    for (const auto& s : c.fp.scenarios) {
      std::string entry = "name: " + quoted(s.name);
      if (s.k_plus) entry += ", k_plus: " + number(*s.k_plus);
      if (s.k_minus) entry += ", k_minus: " + number(*s.k_minus);
      if (s.n0) entry += ", n0: " + number(*s.n0);
      o += "    - {" + entry + "}\n";
    }
  }
  o += "phase:\n";
  line("  ", "form", std::string(to_string(c.phase.form)));
  line("  ", "t_end", number(c.phase.t_end));
  line("  ", "dt", number(c.phase.dt));
  line("  ", "grid_steps", fmt::format("{}", c.phase.grid_steps));
  line("  ", "nullcline_points", fmt::format("{}", c.phase.nullcline_points));
  line("  ", "output_every", fmt::format("{}", c.phase.output_every));
  if (c.phase.starts) {
    std::vector<std::string> pts;
    for (const auto& p : *c.phase.starts) pts.push_back(fmt::format("[{}, {}]", number(p.n), number(p.a)));
    line("  ", "starts", fmt::format("[{}]", fmt::join(pts, ", ")));
  }
  const auto& v = c.validate;
  o += "validate:\n";
  line("  ", "ssa_trajectories", fmt::format("{}", v.ssa_trajectories));
  line("  ", "small_n_total", fmt::format("{}", v.small_n_total));
  line("  ", "small_length", fmt::format("{}", v.small_length));
  line("  ", "small_t_end", number(v.small_t_end));
  line("  ", "small_tv_times", list(v.small_tv_times));
  line("  ", "desk_n_total", fmt::format("{}", v.desk_n_total));
  line("  ", "desk_times", list(v.desk_times));
  line("  ", "fp_grid", fmt::format("{}", v.fp_grid));
  line("  ", "fp_warmup", number(v.fp_warmup));
  line("  ", "fp_times", list(v.fp_times));
  line("  ", "drift_k_minus", number(v.drift_k_minus));
  line("  ", "drift_n0", number(v.drift_n0));
  line("  ", "drift_initial_length", fmt::format("{}", v.drift_initial_length));
  line("  ", "drift_max_length", fmt::format("{}", v.drift_max_length));
  line("  ", "drift_trajectories", fmt::format("{}", v.drift_trajectories));
  line("  ", "drift_t_end", number(v.drift_t_end));
  return o;
}

void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value) {
  YAML::Node root = YAML::Load(serialize_config(config));
  std::string_view rest = key;
  std::vector<std::string> parts;
  while (!rest.empty()) {
    const auto dot = rest.find('.');
    parts.emplace_back(rest.substr(0, dot));
    rest = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
  }
  if (parts.empty() || parts.size() > 2) throw ParseError(fmt::format("bad parameter path '{}'", key));
  if (parts.size() == 1) {
    if (!root[parts[0]] || root[parts[0]].IsMap()) throw ParseError(fmt::format("unknown parameter '{}'", key));
    root[parts[0]] = std::string(value);
  } else {
    YAML::Node section = root[parts[0]];
    if (!section || !section.IsMap()) throw ParseError(fmt::format("unknown parameter '{}'", key));
    section[parts[1]] = std::string(value);
  }
  YAML::Emitter out;
  out << root;
  config = parse_config(out.c_str(), fmt::format("--param {}", key));
}

}  // namespace nanowire::cli
