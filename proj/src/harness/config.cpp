#include "fibersim/harness/config.hpp"

#include <fstream>
#include <set>

#include "fibersim/core/error.hpp"
#include "fibersim/core/geometry.hpp"

namespace fibersim::harness {

using nlohmann::json;

namespace {

// Object view that remembers which keys were read so leftovers can be reported.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    require(j.is_object(), ErrorCode::Config, path_ + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  template <class T>
  T get(const std::string& key, const T& fallback) {
    if (!has(key)) return fallback;
    return as<T>(j_.at(key), key);
  }

  template <class T>
  T need(const std::string& key) {
    require(has(key), ErrorCode::Config, where(key) + " is required");
    return as<T>(j_.at(key), key);
  }

  Section sub(const std::string& key) {
    seen_.insert(key);
    static const json empty = json::object();
    return Section(j_.contains(key) ? j_.at(key) : empty, where(key));
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      require(seen_.count(it.key()) != 0, ErrorCode::Config, "unknown key " + where(it.key()));
  }

  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  template <class T>
  T as(const json& v, const std::string& key) const {
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      fail(ErrorCode::Config, where(key) + " has the wrong type");
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Orientation parse_orientation(const std::string& s) {
  if (s == "lengthwise") return Orientation::Lengthwise;
  if (s == "sidewise") return Orientation::Sidewise;
  fail(ErrorCode::Config, "unknown orientation '" + s + "'");
}

Motion parse_motion(const std::string& s) {
  if (s == "free") return Motion::Free;
  if (s == "translation-only") return Motion::TranslationOnly;
  if (s == "rotation-only") return Motion::RotationOnly;
  fail(ErrorCode::Config, "unknown motion '" + s + "'");
}

const char* motion_name(Motion m) {
  switch (m) {
    case Motion::Free: return "free";
    case Motion::TranslationOnly: return "translation-only";
    case Motion::RotationOnly: return "rotation-only";
  }
  return "?";
}

lbm::KernelIsa parse_isa(const std::string& s) {
  if (s == "auto") return lbm::KernelIsa::Auto;
  if (s == "scalar") return lbm::KernelIsa::Scalar;
  if (s == "avx2") return lbm::KernelIsa::Avx2;
  fail(ErrorCode::Config, "unknown kernel isa '" + s + "'");
}

lbm::DomainBoundaries parse_boundaries(const json& v) {
  lbm::DomainBoundaries b;
  try {
    if (v.is_string()) {
      b = lbm::DomainBoundaries::all(lbm::parse_boundary_type(v.get<std::string>()));
    } else {
      require(v.is_array() && v.size() == 6, ErrorCode::Config,
              "domain.boundaries must be a string or six strings (x-, x+, y-, y+, z-, z+)");
      for (int i = 0; i < 6; ++i) b.faces[i] = lbm::parse_boundary_type(v[i].get<std::string>());
    }
  } catch (const json::exception&) {
    fail(ErrorCode::Config, "domain.boundaries has the wrong type");
  }
  b.validate();
  return b;
}

Motion default_motion(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::TranslateValidate:
    case ExperimentKind::WallSweep: return Motion::TranslationOnly;
    case ExperimentKind::RotateValidate: return Motion::RotationOnly;
    default: return Motion::Free;
  }
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "translate-validate") return ExperimentKind::TranslateValidate;
  if (name == "rotate-validate") return ExperimentKind::RotateValidate;
  if (name == "wall-sweep") return ExperimentKind::WallSweep;
  if (name == "tumble-lbm") return ExperimentKind::TumbleLbm;
  if (name == "tumble-sbf") return ExperimentKind::TumbleSbf;
  if (name == "cross-compare") return ExperimentKind::CrossCompare;
  fail(ErrorCode::Config, "unknown experiment kind '" + name + "'");
}

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::TranslateValidate: return "translate-validate";
    case ExperimentKind::RotateValidate: return "rotate-validate";
    case ExperimentKind::WallSweep: return "wall-sweep";
    case ExperimentKind::TumbleLbm: return "tumble-lbm";
    case ExperimentKind::TumbleSbf: return "tumble-sbf";
    case ExperimentKind::CrossCompare: return "cross-compare";
  }
  return "?";
}

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "sbf") return SolverKind::Sbf;
  if (name == "lbm") return SolverKind::Lbm;
  fail(ErrorCode::Config, "unknown solver '" + name + "'");
}

const char* to_string(SolverKind kind) { return kind == SolverKind::Sbf ? "sbf" : "lbm"; }

double window_preset(const std::string& name) {
  if (name == "translation") return 0.15;
  if (name == "rotation") return 0.50;
  if (name == "wall-sweep") return 0.34;
  fail(ErrorCode::Config, "unknown window preset '" + name + "'");
}

double ExperimentConfig::force(std::size_t i) const {
  if (!force_z.empty()) return force_z.at(i);
  const Spherocylinder p = Spherocylinder::from_aspect(radius, inverse_slenderness.at(i), particle_density);
  return buoyant_force(p, fluid, Vec3(0, 0, 9.81)).z();
}

Vec3 ExperimentConfig::domain_extent() const {
  return Vec3(lattice.cells[0], lattice.cells[1], lattice.cells[2]) * lattice.dx;
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c;
  Section root(j, "");
  c.version = root.need<int>("version");
  require(c.version == kSchemaVersion, ErrorCode::Config,
          "unsupported config version " + std::to_string(c.version));
  c.name = root.get<std::string>("name", "");
  c.kind = parse_experiment_kind(root.need<std::string>("experiment"));
  switch (c.kind) {
    case ExperimentKind::TumbleLbm:
    case ExperimentKind::WallSweep: c.solver = SolverKind::Lbm; break;
    case ExperimentKind::TumbleSbf: c.solver = SolverKind::Sbf; break;
    default: break;
  }
  if (root.has("solver")) {
    const SolverKind s = parse_solver_kind(root.need<std::string>("solver"));
    const bool implied = c.kind == ExperimentKind::TumbleLbm || c.kind == ExperimentKind::TumbleSbf ||
                         c.kind == ExperimentKind::WallSweep;
    require(!implied || s == c.solver, ErrorCode::Config,
            std::string("solver conflicts with experiment ") + to_string(c.kind));
    c.solver = s;
  }

  {
    Section fluid = root.sub("fluid");
    const double rho = fluid.get<double>("density", 1e3);
    const double nu = fluid.get<double>("kinematic_viscosity", 1e-6);
    require(rho > 0 && nu > 0, ErrorCode::Config, "fluid properties must be positive");
    c.fluid = FluidProperties(rho, nu);
    fluid.finish();
  }
  {
    Section p = root.sub("particle");
    c.radius = p.need<double>("radius");
    c.inverse_slenderness = p.need<std::vector<double>>("inverse_slenderness");
    c.particle_density = p.get<double>("density", c.particle_density);
    c.orientation = parse_orientation(p.get<std::string>("orientation", "lengthwise"));
    p.finish();
    require(c.radius > 0, ErrorCode::Config, "particle.radius must be positive");
    require(!c.inverse_slenderness.empty(), ErrorCode::Config, "particle.inverse_slenderness is empty");
    for (double ie : c.inverse_slenderness)
      require(ie >= 2.0, ErrorCode::Config, "particle.inverse_slenderness entries must be >= 2");
  }
  {
    Section l = root.sub("loads");
    c.force_z = l.get<std::vector<double>>("force_z", {});
    c.torque_x = l.get<std::vector<double>>("torque_x", {});
    l.finish();
    const std::size_t n = c.inverse_slenderness.size();
    require(c.force_z.empty() || c.force_z.size() == n, ErrorCode::Config,
            "loads.force_z needs one entry per aspect ratio");
    if (c.kind == ExperimentKind::RotateValidate)
      require(c.torque_x.size() == n, ErrorCode::Config, "loads.torque_x needs one entry per aspect ratio");
  }
  {
    Section d = root.sub("domain");
    c.lattice.dx = d.get<double>("dx", c.lattice.dx);
    c.lattice.cells = d.get<std::array<int, 3>>("cells", c.lattice.cells);
    c.lattice.sweep = d.get<std::vector<std::array<int, 3>>>("sweep", {});
    if (d.has("boundaries")) c.lattice.boundaries = parse_boundaries(d.raw("boundaries"));
    c.lattice.start_z = d.get<double>("start_z_cells", -1.0);
    d.finish();
    require(c.lattice.dx > 0, ErrorCode::Config, "domain.dx must be positive");
    for (int n : c.lattice.cells) require(n > 0, ErrorCode::Config, "domain sizes must be positive");
    for (const auto& s : c.lattice.sweep)
      for (int n : s) require(n > 0, ErrorCode::Config, "domain sizes must be positive");
    if (c.kind == ExperimentKind::WallSweep)
      require(!c.lattice.sweep.empty(), ErrorCode::Config, "wall-sweep needs domain.sweep");
  }
  {
    Section l = root.sub("lattice");
    c.lattice.tau = l.get<double>("tau", c.lattice.tau);
    c.lattice.precision = lbm::parse_precision(l.get<std::string>("precision", "double"));
    c.lattice.isa = parse_isa(l.get<std::string>("isa", "auto"));
    c.lattice.stabilize = l.get<bool>("stabilize", false);
    c.lattice.motion = parse_motion(l.get<std::string>("motion", motion_name(default_motion(c.kind))));
    l.finish();
    require(c.lattice.tau > 0.5, ErrorCode::Config, "lattice.tau must exceed 1/2");
    require(!c.lattice.stabilize || c.lattice.boundaries.fully_periodic(), ErrorCode::Config,
            "lattice.stabilize requires a fully periodic domain");
  }
  {
    Section s = root.sub("sbf");
    auto& p = c.sbf.params;
    p.legendre_order = s.get<int>("legendre_order", p.legendre_order);
    p.panels = s.get<int>("panels", p.panels);
    p.dt = s.get<double>("dt", p.dt);
    p.gmres_tol = s.get<double>("gmres_tol", p.gmres_tol);
    p.gmres_max_iter = s.get<int>("gmres_max_iter", p.gmres_max_iter);
    p.inner_tol = s.get<double>("inner_tol", p.inner_tol);
    p.grid_spacing = s.get<double>("grid_spacing", p.grid_spacing);
    c.sbf.periodic = s.get<bool>("periodic", false);
    s.finish();
    require(p.legendre_order >= 1 && p.panels >= 1 && p.dt > 0 && p.gmres_tol > 0, ErrorCode::Config,
            "sbf parameters out of range");
  }
  {
    Section t = root.sub("tumbling");
    c.distance_dx = t.get<double>("distance_dx", c.distance_dx);
    t.finish();
    require(c.distance_dx > 0, ErrorCode::Config, "tumbling.distance_dx must be positive");
  }
  {
    Section s = root.sub("schedule");
    c.steps = s.need<long>("steps");
    c.sample_every = s.get<long>("sample_every", 1);
    if (s.has("window")) {
      const json& w = s.raw("window");
      if (w.is_string())
        c.window_fraction = window_preset(w.get<std::string>());
      else if (w.is_number())
        c.window_fraction = w.get<double>();
      else
        fail(ErrorCode::Config, "schedule.window must be a preset name or a fraction");
    } else {
      c.window_fraction = c.kind == ExperimentKind::RotateValidate ? window_preset("rotation")
                          : c.kind == ExperimentKind::WallSweep    ? window_preset("wall-sweep")
                                                                   : window_preset("translation");
    }
    s.finish();
    require(c.steps >= 0, ErrorCode::Config, "schedule.steps must be non-negative");
    require(c.sample_every >= 1, ErrorCode::Config, "schedule.sample_every must be >= 1");
    require(c.window_fraction > 0 && c.window_fraction <= 1, ErrorCode::Config,
            "schedule.window must lie in (0, 1]");
  }
  {
    Section o = root.sub("output");
    c.output = o.get<std::string>("directory", c.output);
    c.vtk_every = o.get<long>("vtk_every", 0);
    o.finish();
    require(c.vtk_every >= 0, ErrorCode::Config, "output.vtk_every must be non-negative");
  }
  root.finish();

  const bool two = c.kind == ExperimentKind::TumbleLbm || c.kind == ExperimentKind::TumbleSbf ||
                   c.kind == ExperimentKind::CrossCompare;
  require(!two || c.inverse_slenderness.size() == 1, ErrorCode::Config,
          "tumbling experiments take exactly one aspect ratio");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Config, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Config, path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json b = json::array();
  for (auto f : c.lattice.boundaries.faces) b.push_back(lbm::to_string(f));
  const auto isa = c.lattice.isa == lbm::KernelIsa::Auto     ? "auto"
                   : c.lattice.isa == lbm::KernelIsa::Scalar ? "scalar"
                                                             : "avx2";
  return json{
      {"version", c.version},
      {"name", c.name},
      {"experiment", to_string(c.kind)},
      {"solver", to_string(c.solver)},
      {"fluid", {{"density", c.fluid.density()}, {"kinematic_viscosity", c.fluid.kinematic_viscosity()}}},
      {"particle",
       {{"radius", c.radius},
        {"inverse_slenderness", c.inverse_slenderness},
        {"density", c.particle_density},
        {"orientation", c.orientation == Orientation::Lengthwise ? "lengthwise" : "sidewise"}}},
      {"loads", {{"force_z", c.force_z}, {"torque_x", c.torque_x}}},
      {"domain",
       {{"dx", c.lattice.dx},
        {"cells", c.lattice.cells},
        {"sweep", c.lattice.sweep},
        {"boundaries", b},
        {"start_z_cells", c.lattice.start_z}}},
      {"lattice",
       {{"tau", c.lattice.tau},
        {"precision", c.lattice.precision == lbm::Precision::Double ? "double" : "single"},
        {"isa", isa},
        {"stabilize", c.lattice.stabilize},
        {"motion", motion_name(c.lattice.motion)}}},
      {"sbf",
       {{"legendre_order", c.sbf.params.legendre_order},
        {"panels", c.sbf.params.panels},
        {"dt", c.sbf.params.dt},
        {"gmres_tol", c.sbf.params.gmres_tol},
        {"gmres_max_iter", c.sbf.params.gmres_max_iter},
        {"inner_tol", c.sbf.params.inner_tol},
        {"grid_spacing", c.sbf.params.grid_spacing},
        {"periodic", c.sbf.periodic}}},
      {"tumbling", {{"distance_dx", c.distance_dx}}},
      {"schedule", {{"steps", c.steps}, {"sample_every", c.sample_every}, {"window", c.window_fraction}}},
      {"output", {{"directory", c.output}, {"vtk_every", c.vtk_every}}},
  };
}

}  // namespace fibersim::harness
