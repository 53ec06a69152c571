#include "rmx/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rmx/coulomb.hpp"
#include "rmx/ensembles.hpp"
#include "rmx/globallaw.hpp"
#include "rmx/io.hpp"
#include "rmx/kernels.hpp"
#include "rmx/parallel.hpp"
#include "rmx/suites.hpp"

namespace rmx {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<Cell>> rows;
};

struct Flags {
  std::string ensemble = "wishart";
  std::string law;
  int n = 0;
  double nu = 0;
  std::string tau;
  double alpha = -1;
  int trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t verify_seed = 20261018;
  std::string grid;
  std::string range;
  std::string cut = "x";
  std::string out = "-";
  std::string format = "csv";
  int threads = 0;
  std::string suite;
  double tol = 1e-8;
  bool zero_modes = false;
  int m = 2;
};

double parse_tau(const std::string& text, double alpha) {
  if (text == "crit") {
    if (!(alpha >= 0.0)) throw InvalidArgument("--tau crit needs a nonnegative alpha");
    return 1.0 / std::sqrt(1.0 + alpha);
  }
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
    throw InvalidArgument("--tau must be a number or 'crit', got '" + text + "'");
  return v;
}

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(format_double(*d));
  if (const long long* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

void emit(std::ostream& os, const json& config, const Table& t, const std::string& format, const json& extra = {}) {
  if (format == "csv") {
    os << "# " << config.dump() << '\n';
    for (std::size_t i = 0; i < t.cols.size(); ++i) os << (i ? "," : "") << t.cols[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
      os << '\n';
    }
    return;
  }
  json j;
  j["config"] = config;
  json data = json::object();
  for (std::size_t c = 0; c < t.cols.size(); ++c) {
    json col = json::array();
    for (const auto& row : t.rows) col.push_back(cell_json(row[c]));
    data[t.cols[c]] = col;
  }
  j["data"] = data;
  if (!extra.is_null())
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  os << j.dump(1) << '\n';
}

json base_config(const std::string& command, const Flags& f) {
  json c;
  c["tool"] = "rmx 0.1.0";
  c["command"] = command;
  c["threads"] = resolve_threads(f.threads);
  return c;
}

Table sample_table(const std::vector<SpectrumSample>& samples, bool zero_modes) {
  Table t{{"re", "im", "kind", "trial"}, {}};
  for (const auto& s : samples) {
    const std::string kind = s.kind == SpectrumKind::wishart ? "wishart" : "dirac";
    const long long trial = static_cast<long long>(s.seed.stream_id);
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
      t.rows.push_back({s.eigenvalues[i].real(), s.eigenvalues[i].imag(), kind, trial});
    if (zero_modes)
      for (int z = 0; z < s.zero_mode_count; ++z) t.rows.push_back({0.0, 0.0, kind, trial});
  }
  return t;
}

int cmd_sample(const Flags& f, std::ostream& os) {
  const double tau = parse_tau(f.tau, f.n > 0 ? f.nu / f.n : -1.0);
  const EnsembleParams p = make_params(f.n, f.nu, tau);
  const SampleMethod method = f.ensemble == "wishart" ? SampleMethod::wishart
                              : f.ensemble == "dirac"  ? SampleMethod::dirac
                                                       : SampleMethod::dirac_direct;
  json c = base_config("sample", f);
  c["ensemble"] = f.ensemble;
  c["trials"] = f.trials;
  c["seed"] = f.seed;
  c["zero_modes"] = f.zero_modes;
  c["params"] = json::parse(to_json(p));
  const auto samples = sample_trials(p, method, f.seed, f.trials, resolve_threads(f.threads));
  emit(os, c, sample_table(samples, f.zero_modes), f.format);
  return 0;
}

int cmd_density(const Flags& f, std::ostream& os) {
  json c = base_config("density", f);
  c["law"] = f.law;
  Table t{{"x", "y", "value"}, {}};
  auto need_alpha = [&] {
    if (!(f.alpha >= 0.0)) throw InvalidArgument("--alpha (>= 0) is required for law " + f.law);
  };
  if (f.law == "mp" || f.law == "mp2") {
    need_alpha();
    c["alpha"] = f.alpha;
    const double s = std::sqrt(1.0 + f.alpha);
    const double lp = (s + 1.0) * (s + 1.0);
    const std::string def = f.law == "mp" ? "0:" + format_double(lp * 1.05) + ":401"
                                          : format_double(-std::sqrt(lp) * 1.05) + ":" +
                                                format_double(std::sqrt(lp) * 1.05) + ":401";
    const std::string rtext = f.range.empty() ? def : f.range;
    c["range"] = rtext;
    const ClassicalLaw kind = f.law == "mp" ? ClassicalLaw::mp : ClassicalLaw::mp_squared;
    for (double x : parse_range(rtext).values()) t.rows.push_back({x, 0.0, classical_density(kind, x, f.alpha)});
    emit(os, c, t, f.format);
    return 0;
  }

  std::function<double(cplx)> law;
  std::string def_grid;
  if (f.law == "product") {
    if (f.m < 1) throw InvalidArgument("--m must be >= 1");
    c["m"] = f.m;
    def_grid = "-1.1:1.1:100,-1.1:1.1:100";
    law = [m = f.m](cplx z) { return classical_density(ClassicalLaw::product_M, z, m); };
  } else {
    need_alpha();
    const double tau = parse_tau(f.tau.empty() ? "0" : f.tau, f.alpha);
    c["alpha"] = f.alpha;
    c["tau"] = tau;
    const DropletGeometry g = droplet_geometry(f.alpha, tau);
    if (f.law == "wishart") {
      const double mx = 0.1 * g.semi_major, my = 0.1 * g.semi_minor;
      def_grid = format_double(g.x0 - g.semi_major - mx) + ":" + format_double(g.x0 + g.semi_major + mx) + ":100," +
                 format_double(-g.semi_minor - my) + ":" + format_double(g.semi_minor + my) + ":100";
      law = [alpha = f.alpha, tau](cplx z) { return wishart_density(z, alpha, tau); };
    } else {
      const double R = 1.1 * std::sqrt(g.x0 + g.semi_major);
      def_grid = format_double(-R) + ":" + format_double(R) + ":100," + format_double(-R) + ":" + format_double(R) + ":100";
      c["atom_mass"] = dirac_law(0.0, f.alpha, tau).atom_mass;
      law = [alpha = f.alpha, tau](cplx z) { return dirac_law(z, alpha, tau).density; };
    }
  }
  const std::string gtext = f.grid.empty() ? def_grid : f.grid;
  c["grid"] = gtext;
  const Grid2D grid = parse_grid(gtext);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const cplx z = grid.center(i, j);
      t.rows.push_back({z.real(), z.imag(), law(z)});
    }
  emit(os, c, t, f.format);
  return 0;
}

int cmd_droplet(const Flags& f, std::ostream& os) {
  if (!(f.alpha >= 0.0)) throw InvalidArgument("--alpha (>= 0) is required");
  const double tau = parse_tau(f.tau, f.alpha);
  const DropletGeometry g = droplet_geometry(f.alpha, tau);
  const std::string rtext = f.range.empty() ? "0:6.2831853071795862:361" : f.range;
  json c = base_config("droplet", f);
  c["ensemble"] = f.ensemble;
  c["alpha"] = f.alpha;
  c["tau"] = tau;
  c["range"] = rtext;
  Table t{{"theta", "re", "im"}, {}};
  const std::vector<double> thetas = parse_range(rtext).values();
  for (double th : thetas) {
    const cplx z = conformal_map(std::polar(1.0, th), g, tau);
    if (f.ensemble == "wishart")
      t.rows.push_back({th, z.real(), z.imag()});
    else
      t.rows.push_back({th, std::sqrt(z).real(), std::sqrt(z).imag()});
  }
  if (f.ensemble != "wishart")
    for (double th : thetas) {
      const cplx r = -std::sqrt(conformal_map(std::polar(1.0, th), g, tau));
      t.rows.push_back({th, r.real(), r.imag()});
    }
  emit(os, c, t, f.format);
  return 0;
}

int cmd_kernel(const Flags& f, std::ostream& os) {
  const double tau = parse_tau(f.tau, f.n > 0 ? f.nu / f.n : -1.0);
  const EnsembleParams p = make_params(f.n, f.nu, tau);
  const std::string rtext = f.range.empty() ? "-2:2:201" : f.range;
  json c = base_config("kernel", f);
  c["cut"] = f.cut;
  c["range"] = rtext;
  c["params"] = json::parse(to_json(p));
  const auto rows = kernel_cut(p, f.cut[0], parse_range(rtext), resolve_threads(f.threads));
  Table t{{"coord", "axis", "finite_N", "limit", "abs_err"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.coord, std::string(1, r.axis), r.finite_N, r.limit, r.abs_err});
  emit(os, c, t, f.format);
  return 0;
}

int cmd_equilibrium(const Flags& f, std::ostream& os, std::ostream& err) {
  if (!(f.alpha >= 0.0)) throw InvalidArgument("--alpha (>= 0) is required");
  const double tau = parse_tau(f.tau, f.alpha);
  MinimizeOptions mo;
  mo.max_iters = 100000;
  mo.grad_tol = f.tol;
  mo.threads = resolve_threads(f.threads);
  const MinimizeResult res = gas_minimize(uniform_box_config(f.n, f.alpha, tau, f.seed), mo);
  json c = base_config("equilibrium", f);
  c["n"] = f.n;
  c["alpha"] = f.alpha;
  c["tau"] = tau;
  c["seed"] = f.seed;
  c["tol"] = f.tol;
  const json log = json::parse(minimize_log_json(res));
  c["status"] = log["status"];
  c["iterations"] = res.log.back().iter;
  c["energy"] = res.log.back().energy;
  c["grad_norm"] = res.config.grad_norm;
  Table t{{"re", "im"}, {}};
  for (Eigen::Index j = 0; j < res.config.points().size(); ++j)
    t.rows.push_back({res.config.points()[j].real(), res.config.points()[j].imag()});
  json extra;
  extra["log"] = log["log"];
  emit(os, c, t, f.format, extra);
  if (res.status != MinimizeStatus::converged) {
    err << "numeric failure: gas minimization " << log["status"].get<std::string>() << " (seed " << f.seed << ")\n";
    return 3;
  }
  return 0;
}

int cmd_verify(const Flags& f, std::ostream& os) {
  SuiteOptions so;
  so.seed = f.verify_seed;
  so.threads = resolve_threads(f.threads);
  std::vector<CriterionResult> results;
  bool all = true;
  for (int id : suite_criteria(f.suite)) {
    results.push_back(run_criterion(id, so));
    all = all && results.back().pass();
  }
  os << suite_json(f.suite, results, so) << '\n';
  return all ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Sampling, limit laws and verification for the non-Hermitian Wishart and chiral Dirac ensembles"};
  app.name("rmx");
  app.set_help_flag();
  app.set_help_all_flag("-h,--help", "Print help for every command and flag");
  app.require_subcommand(1, 1);

  auto threads = [&](CLI::App* s) {
    s->add_option("--threads", f.threads, "Worker threads (default: RMX_THREADS or 1)")->check(CLI::NonNegativeNumber);
  };
  auto output = [&](CLI::App* s, bool with_format) {
    s->add_option("--out", f.out, "Output path, '-' for stdout")->capture_default_str();
    if (with_format)
      s->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto ensemble_params = [&](CLI::App* s) {
    s->add_option("--n", f.n, "Matrix size N")->required()->check(CLI::PositiveNumber);
    s->add_option("--nu", f.nu, "Rectangularity nu")->required();
    s->add_option("--tau", f.tau, "Non-Hermiticity tau in [0,1], or 'crit' for 1/sqrt(1+nu/N)")->required();
  };

  CLI::App* sample = app.add_subcommand("sample", "Eigenvalue samples, CSV re,im,kind,trial");
  sample->add_option("--ensemble", f.ensemble, "wishart, dirac or dirac-direct")
      ->check(CLI::IsMember({"wishart", "dirac", "dirac-direct"}))
      ->capture_default_str();
  ensemble_params(sample);
  sample->add_option("--trials", f.trials, "Independent trials")->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--seed", f.seed, "Master seed")->capture_default_str();
  sample->add_flag("--zero-modes", f.zero_modes, "Emit the nu exact zero modes of the Dirac matrix as 0,0 rows");
  output(sample, true);
  threads(sample);

  CLI::App* density = app.add_subcommand("density", "Analytic density on a grid, CSV x,y,value");
  density->add_option("--law", f.law, "wishart, dirac, mp, mp2 or product")
      ->required()
      ->check(CLI::IsMember({"wishart", "dirac", "mp", "mp2", "product"}));
  density->add_option("--alpha", f.alpha, "Rectangularity alpha (wishart, dirac, mp, mp2)");
  density->add_option("--tau", f.tau, "tau in [0,1) or 'crit' (wishart, dirac)");
  density->add_option("--grid", f.grid, "xmin:xmax:nx,ymin:ymax:ny (planar laws; values at cell centers)");
  density->add_option("--range", f.range, "min:max:count along the real line (mp, mp2)");
  density->add_option("--m", f.m, "Number of factors of the product law")->capture_default_str();
  output(density, true);
  threads(density);

  CLI::App* droplet = app.add_subcommand("droplet", "Droplet boundary, CSV theta,re,im");
  droplet->add_option("--ensemble", f.ensemble, "wishart (ellipse) or dirac (quartic curve, both signs)")
      ->check(CLI::IsMember({"wishart", "dirac"}))
      ->capture_default_str();
  droplet->add_option("--alpha", f.alpha, "Rectangularity alpha")->required();
  droplet->add_option("--tau", f.tau, "tau in [0,1) or 'crit'")->required();
  droplet->add_option("--range", f.range, "theta range min:max:count (default 0:2pi:361)");
  output(droplet, true);

  CLI::App* kernel = app.add_subcommand("kernel", "Rescaled density cut and its limit, CSV coord,axis,finite_N,limit,abs_err");
  ensemble_params(kernel);
  kernel->add_option("--cut", f.cut, "Axis of the cut")->check(CLI::IsMember({"x", "y"}))->capture_default_str();
  kernel->add_option("--range", f.range, "Coordinates min:max:count (default -2:2:201)");
  output(kernel, true);
  threads(kernel);

  CLI::App* equilibrium = app.add_subcommand("equilibrium", "Minimized Coulomb gas, CSV re,im");
  equilibrium->add_option("--n", f.n, "Number of gas particles")->required()->check(CLI::PositiveNumber);
  equilibrium->add_option("--alpha", f.alpha, "Rectangularity alpha")->required();
  equilibrium->add_option("--tau", f.tau, "tau in [0,1) or 'crit'")->required();
  equilibrium->add_option("--seed", f.seed, "Seed of the initial configuration")->capture_default_str();
  equilibrium->add_option("--tol", f.tol, "Gradient-norm tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  output(equilibrium, true);
  threads(equilibrium);

  CLI::App* verify = app.add_subcommand("verify", "Run an acceptance suite, JSON report");
  verify->add_option("--suite", f.suite, "global, local, specialfn or oracle")
      ->required()
      ->check(CLI::IsMember({"global", "local", "specialfn", "oracle"}));
  verify->add_option("--seed", f.verify_seed, "Master seed")->capture_default_str();
  output(verify, false);
  threads(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (verify->parsed()) f.seed = f.verify_seed;  // echoed on numeric failure

  std::ofstream file;
  std::ostream* os = &out;
  if (f.out != "-") {
    file.open(f.out);
    if (!file) {
      err << "error: cannot write " << f.out << '\n';
      return 2;
    }
    os = &file;
  }

  try {
    if (sample->parsed()) return cmd_sample(f, *os);
    if (density->parsed()) return cmd_density(f, *os);
    if (droplet->parsed()) return cmd_droplet(f, *os);
    if (kernel->parsed()) return cmd_kernel(f, *os);
    if (equilibrium->parsed()) return cmd_equilibrium(f, *os, err);
    if (verify->parsed()) return cmd_verify(f, *os);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    err << "numeric failure: " << e.what() << " (seed " << (e.seed() ? *e.seed() : f.seed);
    if (e.stream()) err << ", stream " << *e.stream();
    err << ")\n";
    return 3;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << " (seed " << f.seed << ")\n";
    return 3;
  }
  return 2;
}

}  // namespace rmx
