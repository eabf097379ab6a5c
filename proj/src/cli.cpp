#include "hypervolt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypervolt/asymptotics.hpp"
#include "hypervolt/error.hpp"
#include "hypervolt/kernel.hpp"
#include "hypervolt/profile.hpp"
#include "hypervolt/resolvent.hpp"
#include "hypervolt/singular_residual.hpp"
#include "hypervolt/volterra_direct.hpp"

namespace hypervolt::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumeric = 3;
constexpr int kAsymPoints = 25;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool direct_supports(double lambda) { return lambda > 0.0 && lambda <= 1.0; }

std::vector<Route> available_routes(double lambda) {
  std::vector<Route> out;
  if (inversion_supports(lambda)) out.push_back(Route::inversion);
  if (resolvent_supports(lambda)) out.push_back(Route::resolvent);
  if (direct_supports(lambda)) out.push_back(Route::direct);
  return out;
}

bool supports(Route r, double lambda) {
  switch (r) {
    case Route::inversion: return inversion_supports(lambda);
    case Route::resolvent: return resolvent_supports(lambda);
    case Route::direct: return direct_supports(lambda);
  }
  return false;
}

std::vector<Route> select_routes(const std::string& route, double lambda, Route fallback) {
  if (route == "all") {
    auto routes = available_routes(lambda);
    if (routes.empty()) throw DomainError("no solution route supports this lambda");
    return routes;
  }
  const Route r = route.empty() ? fallback : parse_route(route);
  if (!supports(r, lambda)) {
    std::ostringstream msg;
    msg << "route '" << to_string(r) << "' does not support lambda = " << lambda
        << " (inversion: (-1, 0) and (0, 2); resolvent: (0, 1] and -0.25; direct: (0, 1])";
    throw DomainError(msg.str());
  }
  return {r};
}

StepperConfig stepper_for(const RunConfig& cfg, double t_max) {
  StepperConfig s;
  s.horizon = t_max;
  s.step = cfg.step ? *cfg.step : std::min(1e-3, t_max / 2000.0);
  return s;
}

SolutionGrid solve_route(Route r, const SourceProfile& profile, const RunConfig& cfg,
                         const std::vector<double>& times) {
  switch (r) {
    case Route::inversion: return solve_via_inversion(profile, cfg.lambda, times, cfg.inversion);
    case Route::resolvent: return solve_via_resolvent(profile, cfg.lambda, times);
    case Route::direct:
      return solve_direct_at(profile, cfg.lambda, times, stepper_for(cfg, times.back()));
  }
  throw DomainError("unknown route");
}

Table do_solve(const RunConfig& cfg, const SourceProfile& profile) {
  const auto times = cfg.grid.value_or(GridSpec{}).times();
  const auto routes = select_routes(cfg.route, cfg.lambda, Route::inversion);
  std::vector<SolutionGrid> grids;
  for (Route r : routes) grids.push_back(solve_route(r, profile, cfg, times));

  Table t{"solve", {"t", "value", "route", "err_est"}, {}};
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (const auto& g : grids) {
      const double err = g.error_estimates.empty() ? 0.0 : g.error_estimates[i];
      t.rows.push_back({times[i], g.values[i], to_string(g.route), err});
    }
  }
  return t;
}

Table do_verify(const RunConfig& cfg, const SourceProfile& profile) {
  const auto times = cfg.grid.value_or(GridSpec{}).times();
  const Route fallback = resolvent_supports(cfg.lambda) ? Route::resolvent : Route::inversion;
  const auto routes = select_routes(cfg.route, cfg.lambda, fallback);

  Table t{"verify",
          {"t", "value", "v0", "convolution", "residual", "err_est", "route", "regularization"},
          {}};
  for (Route r : routes) {
    if (r == Route::direct) continue;
    const auto v = evaluable_solution(r, profile, cfg.lambda, cfg.inversion);
    for (double time : times) {
      const auto rep = residual(profile, cfg.lambda, v, time);
      t.rows.push_back({rep.t, rep.solution_value, profile.evaluate(time), rep.convolution_value,
                        rep.residual, rep.quadrature_error_estimate, to_string(r),
                        rep.regularization});
    }
  }
  if (t.rows.empty()) throw DomainError("verify needs the inversion or resolvent route");
  return t;
}

Table do_asym(const RunConfig& cfg, const SourceProfile& profile) {
  const auto routes = select_routes(cfg.route, cfg.lambda, Route::inversion);
  if (routes.size() != 1 || routes[0] == Route::direct) {
    throw DomainError("asym needs a single inversion or resolvent route");
  }
  const Route route = routes[0];
  const PowerLaw head = head_prediction(profile, cfg.lambda);
  const PowerLaw tail = tail_prediction(profile, cfg.lambda);

  struct Window {
    std::string regime;
    GridSpec grid;
  };
  std::vector<Window> windows;
  if (cfg.grid) {
    windows.push_back({"custom", *cfg.grid});
  } else {
    windows.push_back({"small-t", {kSmallWindowMin, kSmallWindowMax, kAsymPoints, Spacing::geometric}});
    windows.push_back({"large-t", {kLargeWindowMin, kLargeWindowMax, kAsymPoints, Spacing::geometric}});
  }

  Table t{"asym",
          {"regime", "t_min", "t_max", "samples", "exponent", "amplitude", "rms_log_residual",
           "predicted_exponent", "predicted_amplitude", "alternative_exponent", "closer_to",
           "route"},
          {}};
  for (const auto& w : windows) {
    const auto times = w.grid.times();
    const auto grid = solve_route(route, profile, cfg, times);
    const auto fit = estimate_power_law(grid, times.front(), times.back());
    // A custom window is compared with whichever end it lies nearer.
    const bool small = w.regime == "small-t" ||
                       (w.regime == "custom" && std::sqrt(times.front() * times.back()) < 1.0);
    const PowerLaw& pred = small ? head : tail;
    Cell alternative = std::string();
    std::string closer = "predicted";
    if (small) {
      // The competing small-t law is v ~ t^lambda.
      alternative = cfg.lambda;
      if (std::abs(fit.exponent - cfg.lambda) < std::abs(fit.exponent - pred.power)) {
        closer = "alternative";
      }
    }
    t.rows.push_back({w.regime, fit.t_min, fit.t_max, static_cast<long>(fit.samples), fit.exponent,
                      fit.amplitude, fit.rms_log_residual, pred.power, pred.coefficient,
                      alternative, closer, to_string(route)});
  }
  return t;
}

Table do_compare(const RunConfig& cfg, const SourceProfile& profile) {
  const auto times = cfg.grid.value_or(GridSpec{}).times();
  const auto routes =
      select_routes(cfg.route.empty() ? std::string("all") : cfg.route, cfg.lambda, Route::inversion);
  if (routes.size() < 2) throw DomainError("compare needs at least two routes for this lambda");
  std::vector<SolutionGrid> grids;
  for (Route r : routes) grids.push_back(solve_route(r, profile, cfg, times));

  Table t{"compare",
          {"route_a", "route_b", "max_abs_diff", "max_rel_diff", "rms_rel_diff", "t_at_max_rel"},
          {}};
  for (std::size_t a = 0; a < grids.size(); ++a) {
    for (std::size_t b = a + 1; b < grids.size(); ++b) {
      double max_abs = 0.0, max_rel = 0.0, sum_sq = 0.0, worst_t = times.front();
      for (std::size_t i = 0; i < times.size(); ++i) {
        const double x = grids[a].values[i];
        const double y = grids[b].values[i];
        const double diff = std::abs(x - y);
        const double scale = std::max(std::abs(x), std::abs(y));
        const double rel = scale > 0.0 ? diff / scale : 0.0;
        max_abs = std::max(max_abs, diff);
        if (rel > max_rel) {
          max_rel = rel;
          worst_t = times[i];
        }
        sum_sq += rel * rel;
      }
      const double rms = std::sqrt(sum_sq / static_cast<double>(times.size()));
      t.rows.push_back({to_string(grids[a].route), to_string(grids[b].route), max_abs, max_rel,
                        rms, worst_t});
    }
  }
  return t;
}

Table do_catalog() {
  Table t{"catalog", {"name", "value_at_zero", "moment0", "decay", "transform"}, {}};
  for (const auto& p : catalog()) {
    t.rows.push_back({p.name, p.value_at_zero, p.moment0, p.decay.label(),
                      std::string(p.has_transform() ? "closed-form" : "quadrature")});
  }
  return t;
}

}  // namespace

void GridSpec::validate() const {
  if (!(t_min > 0.0) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw InputError("grid: t_min must be positive and finite");
  }
  if (points == 1) {
    if (t_min != t_max) throw InputError("grid: a single point requires t_min = t_max");
    return;
  }
  if (points < 2) throw InputError("grid: points must be at least 2");
  if (!(t_min < t_max)) throw InputError("grid: t_min must be below t_max");
}

std::vector<double> GridSpec::times() const {
  validate();
  if (points == 1) return {t_min};
  std::vector<double> out(static_cast<std::size_t>(points));
  const double last = static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    const double f = i / last;
    out[i] = spacing == Spacing::geometric ? t_min * std::pow(t_max / t_min, f)
                                           : t_min + (t_max - t_min) * f;
  }
  out.front() = t_min;
  out.back() = t_max;
  return out;
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3 && parts.size() != 4) {
    throw InputError("grid '" + text + "': expected tmin:tmax:points[:geometric|linear]");
  }
  GridSpec g;
  try {
    std::size_t pos = 0;
    g.t_min = std::stod(parts[0], &pos);
    if (pos != parts[0].size()) throw std::invalid_argument("t_min");
    g.t_max = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument("t_max");
    g.points = std::stoi(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument("points");
  } catch (const std::exception&) {
    throw InputError("grid '" + text + "': malformed number");
  }
  if (parts.size() == 4) {
    if (parts[3] == "geometric") {
      g.spacing = Spacing::geometric;
    } else if (parts[3] == "linear") {
      g.spacing = Spacing::linear;
    } else {
      throw InputError("grid '" + text + "': spacing must be geometric or linear");
    }
  }
  g.validate();
  return g;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      std::visit(
          [&out](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              out << format_double(v);
            } else if constexpr (std::is_same_v<V, long>) {
              out << v;
            } else {
              out << csv_field(v);
            }
          },
          row[c]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["command"] = table.command;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
    }
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

Table execute(const RunConfig& cfg, std::ostream& warn) {
  if (cfg.command == Command::catalog) return do_catalog();
  require_admissible_exponent(cfg.lambda);
  cfg.inversion.validate();
  if (cfg.grid) cfg.grid->validate();
  const SourceProfile profile = resolve_profile(cfg.profile, &warn);
  switch (cfg.command) {
    case Command::solve: return do_solve(cfg, profile);
    case Command::verify: return do_verify(cfg, profile);
    case Command::asym: return do_asym(cfg, profile);
    case Command::compare: return do_compare(cfg, profile);
    case Command::catalog: break;
  }
  return do_catalog();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Table table = execute(cfg, err);
    std::ostringstream buf;
    if (cfg.format == Format::json) {
      write_json(table, buf);
    } else {
      write_csv(table, buf);
    }
    if (cfg.out_path.empty()) {
      out << buf.str();
      out.flush();
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw InputError("cannot open output file '" + cfg.out_path + "'");
      file << buf.str();
      if (!file) throw InputError("failed writing output file '" + cfg.out_path + "'");
    }
    return kExitOk;
  } catch (const DomainError& e) {
    err << "hypervolt: error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConvergenceError& e) {
    err << "hypervolt: numerical failure: " << e.what();
    if (e.estimate() >= 0.0) err << " (estimate " << e.estimate() << ")";
    err << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "hypervolt: numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Solver for v = v0 + int_0^t (t - s)^(lambda - 1) v(s) ds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hypervolt 0.1.0");

  RunConfig cfg;
  std::string grid_text;
  std::string method = "talbot";
  std::optional<int> nodes;
  double step = 0.0;
  std::string format = "csv";

  struct Sub {
    Command command;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {Command::solve, "solve", "Solve on a time grid"},
      {Command::verify, "verify", "Equation residuals (finite part for lambda < 0)"},
      {Command::asym, "asym", "Power-law fits at small and large t against predictions"},
      {Command::compare, "compare", "Pairwise differences between solution routes"},
      {Command::catalog, "catalog", "List built-in source profiles"},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    const Command command = s.command;
    sub->callback([&cfg, command] { cfg.command = command; });
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "Output file (default stdout)");
    if (command == Command::catalog) continue;
    sub->add_option("--lambda", cfg.lambda, "Kernel exponent");
    sub->add_option("--profile", cfg.profile, "Catalog name or two-column sample file");
    sub->add_option("--grid", grid_text, "tmin:tmax:points[:geometric|linear]");
    sub->add_option("--route", cfg.route, "inversion, resolvent, direct or all")
        ->check(CLI::IsMember({"inversion", "resolvent", "direct", "all"}));
    sub->add_option("--method", method, "Inversion method")
        ->check(CLI::IsMember({"talbot", "stehfest", "euler"}));
    sub->add_option("--nodes", nodes, "Inversion node count or order");
    sub->add_option("--contour-scale", cfg.inversion.contour_scale, "Talbot contour scale");
    sub->add_option("--step", step, "Direct-route step h");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const auto m = parse_inversion_method(method);
    const double scale = cfg.inversion.contour_scale;
    cfg.inversion = m == InversionMethod::talbot     ? InversionConfig::talbot()
                    : m == InversionMethod::stehfest ? InversionConfig::stehfest()
                                                     : InversionConfig::euler();
    cfg.inversion.contour_scale = scale;
    if (nodes) cfg.inversion.nodes = *nodes;
    if (step != 0.0) cfg.step = step;
    if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
    cfg.format = format == "json" ? Format::json : Format::csv;
  } catch (const DomainError& e) {
    std::cerr << "hypervolt: error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace hypervolt::cli
