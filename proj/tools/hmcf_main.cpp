// Command line front end: optimal angles and controls, f_p landscapes,
// surface/q-plane control fields and Monte-Carlo value estimates.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hmcf/fields.hpp"
#include "hmcf/simulate.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace hmcf;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

std::vector<double> parse_csv_doubles(const std::string& text, const std::string& flag,
                                      std::size_t expected) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.size() != expected) {
    throw std::invalid_argument(flag + ": expected " + std::to_string(expected) +
                                " comma-separated values");
  }
  return out;
}

Vec2 parse_vec2(const std::string& text, const std::string& flag) {
  const auto v = parse_csv_doubles(text, flag, 2);
  return {v[0], v[1]};
}

Point3 parse_point3(const std::string& text, const std::string& flag) {
  const auto v = parse_csv_doubles(text, flag, 3);
  return {v[0], v[1], v[2]};
}

// Row-major m11,m12,m21,m22; symmetry is validated, not assumed.
Mat2 parse_mat2(const std::string& text, const std::string& flag) {
  const auto v = parse_csv_doubles(text, flag, 4);
  const Mat2 m{v[0], v[1], v[2], v[3]};
  const double scale = std::max(1.0, max_abs(m));
  if (std::fabs(m.a12 - m.a21) > 1e-9 * scale) {
    throw std::invalid_argument(flag + ": matrix must be symmetric (got m12 != m21)");
  }
  return m;
}

// key = value quadric description: q11 q12 q13 q22 q23 q33, l1 l2 l3, c.
ScalarField load_quadric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("--surface-file: cannot open " + path);
  Quadric q;
  std::map<std::string, double*> slots{
      {"q11", &q.quad.m[0][0]}, {"q12", &q.quad.m[0][1]}, {"q13", &q.quad.m[0][2]},
      {"q22", &q.quad.m[1][1]}, {"q23", &q.quad.m[1][2]}, {"q33", &q.quad.m[2][2]},
      {"l1", &q.lin.x},         {"l2", &q.lin.y},         {"l3", &q.lin.z},
      {"c", &q.constant}};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    const auto it = slots.find(key);
    if (it == slots.end()) {
      throw std::invalid_argument("--surface-file: unknown key '" + key + "'");
    }
    *it->second = std::stod(value);
  }
  q.quad.m[1][0] = q.quad.m[0][1];
  q.quad.m[2][0] = q.quad.m[0][2];
  q.quad.m[2][1] = q.quad.m[1][2];
  return make_quadric_field(q);
}

std::vector<Point3> load_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("--points-file: cannot open " + path);
  std::vector<Point3> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of("0123456789+-.") != 0) continue;  // header
    out.push_back(parse_point3(line, "--points-file"));
  }
  if (out.empty()) throw std::invalid_argument("--points-file: no points in " + path);
  return out;
}

json angle_record_json(const OptimalAngleResult& res) {
  json j{{"theta", res.theta_star}, {"value", res.value}, {"degenerate", res.degenerate}};
  if (res.constants) {
    j["C1"] = res.constants->c1;
    j["C2"] = res.constants->c2;
    j["Cbar"] = res.constants->cbar;
    j["regime_warning"] = res.regime_warning;
  }
  return j;
}

json mat_json(const Mat2& m) {
  return json::array({json::array({m.a11, m.a12}), json::array({m.a21, m.a22})});
}

// ---------------------------------------------------------------------------
// angle

struct AngleArgs {
  double r = 1.0;
  std::string q_text;
  bool characteristic = false;
  std::string m_text;
  double p = 10.0;
  int grid_n = 1024;
  double char_tol = kCharacteristicTol;
  std::string format = "json";
  std::string output;
};

int run_angle(const AngleArgs& a, bool q_given) {
  if (q_given == a.characteristic) {
    throw std::invalid_argument("angle: exactly one of --q or --characteristic is required");
  }
  const Mat2 m = parse_mat2(a.m_text, "--M");
  const Vec2 q = q_given ? parse_vec2(a.q_text, "--q") : Vec2{0.0, 0.0};
  const PParameter p(a.p);
  const Frame fr = make_frame(a.r, q, m, a.characteristic ? 0.0 : a.char_tol);

  const auto [control, main_res] = optimal_control(fr, p, AngleMethod::kStationary, a.grid_n);
  const Frame d = diagonalized(fr);
  const OptimalAngleResult grid = optimal_angle_grid(d, p, a.grid_n);

  std::optional<OptimalAngleResult> stat, asym;
  if (!fr.characteristic) {
    stat = optimal_angle_stationary(d, p);
    asym = optimal_angle_asymptotic(d, p);
  }

  json j;
  j["characteristic"] = fr.characteristic;
  j["r"] = fr.r;
  j["p"] = a.p;
  j["q"] = json::array({fr.q.x, fr.q.y});
  j["M"] = mat_json(fr.m);
  j["lambda1"] = fr.lambda1;
  j["lambda2"] = fr.lambda2;
  j["grid"] = angle_record_json(grid);
  j["stationary"] = stat ? angle_record_json(*stat) : json(nullptr);
  j["asymptotic"] = asym ? angle_record_json(*asym) : json(nullptr);
  j["characteristic_branch"] =
      fr.characteristic ? angle_record_json(main_res) : json(nullptr);
  j["H_p"] = H_p(fr, p);
  j["control"] = mat_json(control.nu);
  j["degenerate"] = fr.characteristic ? main_res.degenerate : grid.degenerate;
  j["regime_warning"] = asym ? asym->regime_warning : false;

  if (a.format == "json") {
    write_output(a.output, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "theta_grid,value_grid,theta_stationary,value_stationary,theta_asymptotic,"
          "value_asymptotic,C1,C2,Cbar,H_p,degenerate,regime_warning,characteristic\n";
    os << fmt17(grid.theta_star) << ',' << fmt17(grid.value) << ',';
    if (stat) os << fmt17(stat->theta_star) << ',' << fmt17(stat->value) << ',';
    else os << ",,";
    if (asym) {
      os << fmt17(asym->theta_star) << ',' << fmt17(asym->value) << ','
         << fmt17(asym->constants->c1) << ',' << fmt17(asym->constants->c2) << ','
         << fmt17(asym->constants->cbar) << ',';
    } else {
      os << ",,,,,";
    }
    os << fmt17(j["H_p"].get<double>()) << ',' << int(j["degenerate"].get<bool>()) << ','
       << int(j["regime_warning"].get<bool>()) << ',' << int(fr.characteristic) << '\n';
    write_output(a.output, os.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// landscape

struct LandscapeArgs {
  double p = 10.0;
  double alpha = 0.0;
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  double r = 1.0;
  double q_min = 0.05, q_max = 1.0;
  int q_count = 120;
  double theta_min = 0.0, theta_max = kPi;
  int theta_count = 181;
  std::string preset;
  std::string output;
};

int run_landscape(LandscapeArgs a, const CLI::App* cmd) {
  if (a.preset == "fig2" && cmd->count("--alpha") == 0) a.alpha = 0.25 * kPi;

  const LandscapeGrid grid =
      fp_landscape(a.alpha, PParameter(a.p), a.lambda1, a.lambda2, a.r, a.q_min, a.q_max,
                   a.q_count, a.theta_min, a.theta_max, a.theta_count);

  std::ostringstream os;
  os << "theta,qsq,f_value,is_argmax\n";
  for (std::size_t ti = 0; ti < grid.theta_axis.size(); ++ti) {
    for (std::size_t qi = 0; qi < grid.q_axis.size(); ++qi) {
      os << fmt17(grid.theta_axis[ti]) << ','
         << fmt17(grid.q_axis[qi] * grid.q_axis[qi]) << ',' << fmt17(grid.values[qi][ti])
         << ',' << int(grid.argmax_index[qi] == ti) << '\n';
    }
  }
  write_output(a.output, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// field

struct FieldArgs {
  std::string surface;       // sphere | ellipsoid
  std::string surface_file;  // quadric key-value file
  std::string points_file;
  double p = 5.0;
  int n_lat = 9, n_lon = 16;
  double r_shift = 1.0;
  double char_tol = kCharacteristicTol;
  bool qplane = false;
  double q1_min = -0.7, q1_max = 0.7;
  double q2_min = -0.7, q2_max = 0.7;
  int n1 = 29, n2 = 29;
  double lambda1 = 1.0, lambda2 = 0.0;
  double r = 1.0;
  std::string preset;
  std::string output;
};

void apply_field_preset(FieldArgs& a, const CLI::App* cmd) {
  if (a.preset.empty()) return;
  auto unset = [&](const std::string& flag) { return cmd->count(flag) == 0; };
  if (a.preset == "fig3" || a.preset == "fig4") {
    a.qplane = true;
    if (unset("--p")) a.p = a.preset == "fig3" ? 10.0 : 30.0;
  } else if (a.preset == "fig5" || a.preset == "fig6") {
    if (unset("--surface")) a.surface = a.preset == "fig5" ? "sphere" : "ellipsoid";
    if (unset("--p")) a.p = 5.0;
  }
}

int run_field(FieldArgs a, const CLI::App* cmd) {
  apply_field_preset(a, cmd);

  std::vector<SurfaceFieldSample> samples;
  if (a.qplane) {
    samples = control_field_qplane(PParameter(a.p), a.r,
                                   Mat2::diagonal(a.lambda1, a.lambda2), a.q1_min, a.q1_max,
                                   a.n1, a.q2_min, a.q2_max, a.n2, a.char_tol);
  } else {
    ScalarField u;
    std::vector<Point3> points;
    if (!a.surface_file.empty()) {
      u = load_quadric_file(a.surface_file);
      if (a.points_file.empty()) {
        throw std::invalid_argument("field: --surface-file requires --points-file");
      }
      points = load_points_file(a.points_file);
    } else if (a.surface == "sphere" || a.surface == "ellipsoid") {
      const NamedSurface kind = a.surface == "sphere" ? NamedSurface::kSphereUnitC001
                                                      : NamedSurface::kEllipsoid2X2Y2Z2;
      u = named_surface_field(kind);
      points = a.points_file.empty() ? surface_grid(kind, a.n_lat, a.n_lon)
                                     : load_points_file(a.points_file);
    } else {
      throw std::invalid_argument(
          "field: choose --surface sphere|ellipsoid, --surface-file or a --preset");
    }
    samples = sweep_surface(u, points, PParameter(a.p), a.r_shift, a.char_tol);
  }

  std::ostringstream os;
  os << "x1,x2,x3,nx,ny,cx,cy,characteristic,lambda1,lambda2\n";
  for (const auto& s : samples) {
    os << fmt17(s.point.x1) << ',' << fmt17(s.point.x2) << ',' << fmt17(s.point.x3) << ',';
    if (s.horizontal_normal) {
      os << fmt17(s.horizontal_normal->x) << ',' << fmt17(s.horizontal_normal->y) << ',';
    } else {
      os << ",,";
    }
    os << fmt17(s.control_direction.x) << ',' << fmt17(s.control_direction.y) << ','
       << int(s.characteristic) << ',' << fmt17(s.frame.lambda1) << ','
       << fmt17(s.frame.lambda2) << '\n';
  }
  write_output(a.output, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string x0_text = "0,0,0";
  std::string surface = "sphere";
  std::string surface_file;
  double r_shift = 3.0;
  double p = 5.0;
  double t0 = 0.0, t_final = 1.0, dt = 0.01;
  std::uint64_t n_paths = 1000;
  std::uint64_t seed = 0;
  int constant_controls = 8;
  bool feedback = false;
  std::string method = "stationary";
  std::string scheme = "midpoint";
  int threads = 0;
  std::string output;
};

AngleMethod parse_method(const std::string& name) {
  if (name == "grid") return AngleMethod::kGrid;
  if (name == "stationary") return AngleMethod::kStationary;
  if (name == "asymptotic") return AngleMethod::kAsymptotic;
  throw std::invalid_argument("--method: expected grid|stationary|asymptotic");
}

int run_simulate(const SimulateArgs& a) {
  const Point3 x0 = parse_point3(a.x0_text, "--x0");

  ScalarField base;
  if (!a.surface_file.empty()) {
    base = load_quadric_file(a.surface_file);
  } else if (a.surface == "sphere") {
    base = unit_sphere_field();
  } else if (a.surface == "ellipsoid") {
    base = ellipsoid_field();
  } else {
    throw std::invalid_argument("--surface: expected sphere|ellipsoid");
  }
  // the simulated payoff is the r-shifted field, the same datum the
  // feedback frames use
  ScalarField payoff = base;
  const double shift = a.r_shift;
  auto base_value = base.value;
  payoff.value = [base_value, shift](const Point3& x) { return base_value(x) + shift; };

  SimConfig cfg;
  cfg.t0 = a.t0;
  cfg.t_final = a.t_final;
  cfg.dt = a.dt;
  cfg.n_paths = a.n_paths;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.scheme = a.scheme == "euler" ? Scheme::kEuler : Scheme::kMidpoint;

  if (a.constant_controls < 0 || (a.constant_controls == 0 && !a.feedback)) {
    throw std::invalid_argument("simulate: need at least one policy");
  }
  std::vector<Policy> policies;
  std::vector<json> policy_meta;
  for (int k = 0; k < a.constant_controls; ++k) {
    const double theta = k * kPi / a.constant_controls;
    policies.push_back(ConstantPolicy{control_from_angle(theta, 0.0).nu});
    policy_meta.push_back({{"kind", "constant"}, {"theta", theta}});
  }
  if (a.feedback) {
    FeedbackPolicy fb;
    fb.jet_source = base;
    fb.r_shift = a.r_shift;
    fb.p = a.p;
    fb.method = parse_method(a.method);
    policies.push_back(fb);
    policy_meta.push_back({{"kind", "feedback"}, {"method", a.method}});
  }

  const ValueEstimate est =
      estimate_value_p(x0, payoff, PParameter(a.p), policies, cfg);

  json j;
  j["seed"] = a.seed;
  j["n_paths"] = a.n_paths;
  j["p"] = a.p;
  j["t0"] = a.t0;
  j["T"] = a.t_final;
  j["dt"] = a.dt;
  j["x0"] = json::array({x0.x1, x0.x2, x0.x3});
  j["scheme"] = a.scheme;
  j["value"] = est.value;
  json pols = json::array();
  for (std::size_t i = 0; i < est.per_policy.size(); ++i) {
    json rec = policy_meta[i];
    rec["estimate"] = est.per_policy[i].estimate;
    rec["std_error"] = est.per_policy[i].std_error;
    pols.push_back(rec);
  }
  j["policies"] = pols;
  write_output(a.output, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "p-regularized optimal controls for horizontal mean curvature flow in the "
      "first Heisenberg group"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value config file");

  AngleArgs angle_args;
  CLI::App* angle = app.add_subcommand(
      "angle", "Maximizing angle and optimal control for one frame (r, q, M)");
  angle->add_option("--r", angle_args.r, "Positive datum r");
  CLI::Option* q_opt = angle->add_option("--q", angle_args.q_text, "Gradient vector q1,q2");
  angle->add_flag("--characteristic", angle_args.characteristic, "Use the q = 0 branch");
  angle->add_option("--M", angle_args.m_text, "Row-major symmetric matrix m11,m12,m21,m22")
      ->required();
  angle->add_option("--p", angle_args.p, "Exponent p > 1");
  angle->add_option("--grid-n", angle_args.grid_n, "Grid-oracle resolution");
  angle->add_option("--char-tol", angle_args.char_tol, "Characteristic tolerance on |q|");
  angle->add_option("--format", angle_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  angle->add_option("--output,-o", angle_args.output, "Output file (stdout if omitted)");

  LandscapeArgs land_args;
  CLI::App* landscape =
      app.add_subcommand("landscape", "Tabulate f_p over (theta, |q|) as CSV");
  landscape->add_option("--preset", land_args.preset, "fig1|fig2")
      ->check(CLI::IsMember({"fig1", "fig2"}));
  landscape->add_option("--p", land_args.p, "Exponent p > 1");
  landscape->add_option("--alpha", land_args.alpha, "Angle of q against the eigenbasis");
  landscape->add_option("--lambda1", land_args.lambda1, "First diagonal entry");
  landscape->add_option("--lambda2", land_args.lambda2, "Second diagonal entry");
  landscape->add_option("--r", land_args.r, "Positive datum r");
  landscape->add_option("--q-min", land_args.q_min, "Smallest |q|");
  landscape->add_option("--q-max", land_args.q_max, "Largest |q|");
  landscape->add_option("--q-count", land_args.q_count, "Number of |q| samples");
  landscape->add_option("--theta-min", land_args.theta_min, "Smallest theta");
  landscape->add_option("--theta-max", land_args.theta_max, "Largest theta");
  landscape->add_option("--theta-count", land_args.theta_count, "Number of theta samples");
  landscape->add_option("--output,-o", land_args.output, "Output file (stdout if omitted)");

  FieldArgs field_args;
  CLI::App* field = app.add_subcommand(
      "field", "Optimal-control field over a surface or the q-plane as CSV");
  field->add_option("--preset", field_args.preset, "fig3|fig4|fig5|fig6")
      ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6"}));
  field->add_option("--surface", field_args.surface, "sphere|ellipsoid");
  field->add_option("--surface-file", field_args.surface_file,
                    "Quadric surface description (key = value)");
  field->add_option("--points-file", field_args.points_file, "CSV of on-surface points");
  field->add_option("--p", field_args.p, "Exponent p > 1");
  field->add_option("--nlat", field_args.n_lat, "Latitude samples");
  field->add_option("--nlon", field_args.n_lon, "Longitude samples");
  field->add_option("--r-shift", field_args.r_shift, "Shift making r = u + shift positive");
  field->add_option("--char-tol", field_args.char_tol, "Characteristic tolerance on |q|");
  field->add_flag("--qplane", field_args.qplane, "Sweep gradient vectors instead of a surface");
  field->add_option("--q1-min", field_args.q1_min, "q-plane range");
  field->add_option("--q1-max", field_args.q1_max, "q-plane range");
  field->add_option("--q2-min", field_args.q2_min, "q-plane range");
  field->add_option("--q2-max", field_args.q2_max, "q-plane range");
  field->add_option("--n1", field_args.n1, "q-plane samples along q1");
  field->add_option("--n2", field_args.n2, "q-plane samples along q2");
  field->add_option("--lambda1", field_args.lambda1, "q-plane Hessian eigenvalue");
  field->add_option("--lambda2", field_args.lambda2, "q-plane Hessian eigenvalue");
  field->add_option("--r", field_args.r, "q-plane positive datum r");
  field->add_option("--output,-o", field_args.output, "Output file (stdout if omitted)");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte-Carlo p-value estimate under constant and feedback policies");
  simulate->add_option("--x0", sim_args.x0_text, "Start point x1,x2,x3");
  simulate->add_option("--surface", sim_args.surface, "sphere|ellipsoid payoff field");
  simulate->add_option("--surface-file", sim_args.surface_file,
                       "Quadric payoff description (key = value)");
  simulate->add_option("--r-shift", sim_args.r_shift,
                       "Payoff shift; g = field + shift must stay positive");
  simulate->add_option("--p", sim_args.p, "Exponent p > 1");
  simulate->add_option("--t0", sim_args.t0, "Start time");
  simulate->add_option("--T", sim_args.t_final, "Terminal time");
  simulate->add_option("--dt", sim_args.dt, "Time step; (T - t0)/dt must be integral");
  simulate->add_option("--paths", sim_args.n_paths, "Number of Monte-Carlo paths");
  simulate->add_option("--seed", sim_args.seed, "RNG seed")->required();
  simulate->add_option("--constant-controls", sim_args.constant_controls,
                       "Number of theta-grid constant policies");
  simulate->add_flag("--feedback", sim_args.feedback, "Add the feedback policy");
  simulate->add_option("--method", sim_args.method, "Feedback angle method")
      ->check(CLI::IsMember({"grid", "stationary", "asymptotic"}));
  simulate->add_option("--scheme", sim_args.scheme, "midpoint|euler")
      ->check(CLI::IsMember({"midpoint", "euler"}));
  simulate->add_option("--threads", sim_args.threads, "Worker threads (0 = hardware)")
      ->envname("HMCF_THREADS");
  simulate->add_option("--output,-o", sim_args.output, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (angle->parsed()) return run_angle(angle_args, q_opt->count() > 0);
    if (landscape->parsed()) return run_landscape(land_args, landscape);
    if (field->parsed()) return run_field(field_args, field);
    if (simulate->parsed()) return run_simulate(sim_args);
  } catch (const PositivityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const OffSurfaceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const CharacteristicError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
