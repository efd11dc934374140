#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "phasekit/gabor.hpp"
#include "phasekit/kernels.hpp"
#include "phasekit/panel.hpp"
#include "phasekit/parallel.hpp"
#include "phasekit/verify.hpp"

namespace phasekit {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int d = 1;
  double t = 1.0, alpha = 1.0, beta = 0.0, theta = 1.0, mu = 0.0;
  std::vector<double> z;
  std::string out = "-";
  std::string format = "json";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--d", c.d, "dimension")->check(CLI::Range(1, 3));
  app->add_option("--t", c.t, "time");
  app->add_option("--alpha", c.alpha, "real part of gamma");
  app->add_option("--beta", c.beta, "imaginary part of gamma");
  app->add_option("--theta", c.theta, "Hermite damping");
  app->add_option("--mu", c.mu, "rotation rate");
  app->add_option("--z", c.z, "fixed point x,...,xi,...")->delimiter(',');
  app->add_option("--out", c.out, "output path, - for stdout");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

Point fixed_point(const Common& c) {
  if (c.z.empty()) return Point(2 * c.d, 0.0);
  if (static_cast<int>(c.z.size()) != 2 * c.d)
    throw UsageError("--z needs " + std::to_string(2 * c.d) + " comma-separated values");
  return c.z;
}

void emit(const Panel& p, const Common& c, std::ostream& out) {
  const PanelFormat f = c.format == "csv" ? PanelFormat::csv : PanelFormat::json;
  if (c.out != "-") {
    write_panel(p, c.out, f);
    return;
  }
  const auto j = panel_to_json(p);
  const auto err = validate_panel_json(j);
  if (!err.empty()) throw std::invalid_argument("panel schema violation: " + err);
  if (f == PanelFormat::json)
    out << j.dump() << '\n';
  else
    out << panel_to_csv(p);
}

std::vector<double> axis(int n, double extent) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = Grid{1, n, extent}.coord(i);
  return v;
}

int cmd_gabor(const std::string& form, const Common& c, int wn, double wext, bool phase, bool normalized,
              std::ostream& out) {
  GaborSlice sl;
  sl.fixed_z = fixed_point(c);
  sl.w_pos_axis = Grid{1, wn, wext};
  sl.w_freq_axis = Grid{1, wn, wext};
  sl.modulus_only = !phase;
  std::string anchor;
  double norm = 1.0;
  if (form == "heat") {
    const ComplexDiffusion gm{c.alpha, c.beta};
    gm.validate();
    sl.equation = "G_t(z,w) = (2 rho)^{-d/2} e^{-pi(|xi|^2+|eta|^2)} e^{2 pi i(xi.x - eta.y)} e^{(pi/(2 rho)) c.c}";
    anchor = "Gabor matrix of the complex heat propagator";
    evaluate_slice(sl, [&](const Point& z, const Point& w) { return gabor_heat_closed(c.t, gm, z, w, c.d); });
  } else if (form == "wave") {
    anchor = "Gabor matrix of the sine wave propagator";
    if (phase) {
      sl.equation = "h(z,w) by a single pairing with the fundamental solution";
      evaluate_slice(sl, [&](const Point& z, const Point& w) { return gabor_wave_entry(c.t, c.d, z, w); });
    } else {
      sl.equation = "|h(z,w)| from the double pairing with the fundamental solution";
      const PairingOrder order = c.d == 1 ? PairingOrder{std::max(32, static_cast<int>(std::ceil(16 * c.t))), 1}
                                          : PairingOrder{24, 32};
      evaluate_slice(sl, [&](const Point& z, const Point& w) {
        return cplx(std::sqrt(gabor_wave_modsq(c.t, c.d, z, w, order)));
      });
    }
  } else {
    if (phase) throw UsageError("--phase is not available for the " + form + " Gabor modulus");
    const bool cx = form == "complex-hermite";
    if (cx) {
      norm = normalized ? hermite_normalization(std::vector<double>(c.d, c.theta * c.t)) : 1.0;
      sl.equation = "2^{-d} sinh(theta t)^{-d/2} e^{-(pi/4)(1+e^{-theta t})|S z - w|^2} "
                    "e^{-(pi/4)(1-e^{-theta t})|S z + w|^2}";
      anchor = "Gabor matrix of the complex Hermite propagator";
      evaluate_slice(sl, [&](const Point& z, const Point& w) {
        return cplx(norm * gabor_complex_hermite_mod(c.theta, c.mu, c.t, z, w));
      });
    } else {
      const std::vector<double> th(c.d, c.theta);
      norm = normalized ? hermite_normalization(th) : 1.0;
      sl.equation = "2^{-d} prod sinh(theta_j)^{-1/2} e^{-(pi/4)(1+e^{-theta_j})|z_j-w_j|^2} "
                    "e^{-(pi/4)(1-e^{-theta_j})|z_j+w_j|^2}";
      anchor = "Gabor matrix of the Hermite propagator";
      evaluate_slice(sl, [&](const Point& z, const Point& w) { return cplx(norm * gabor_hermite_mod(th, z, w)); });
    }
  }
  Panel p = panel_from_slice(sl, "gabor-" + form, anchor);
  p.params = {{"d", c.d}, {"t", c.t}, {"z", sl.fixed_z}};
  if (form == "heat") {
    p.params["alpha"] = c.alpha;
    p.params["beta"] = c.beta;
  }
  if (form == "hermite" || form == "complex-hermite") {
    p.params["theta"] = c.theta;
    if (form == "complex-hermite") p.params["mu"] = c.mu;
    p.params["normalization"] = norm;
  }
  emit(p, c, out);
  return exit_ok;
}

int cmd_kernel(const std::string& form, const Common& c, int n, double s_ext, double xi_ext,
               const std::string& symbol, double extent, double edge_tol, std::ostream& out) {
  Panel p;
  p.kind = "kernel-" + form;
  p.params = {{"d", c.d}, {"t", c.t}};
  if (form == "from-symbol") {
    if (c.d != 1) throw UsageError("kernel from-symbol emits d = 1 only");
    const Grid g = make_grid(1, n, extent);
    SampledField sym;
    if (symbol == "heat") {
      const ComplexDiffusion gm{c.alpha, c.beta};
      gm.validate();
      sym = sample(g.dual(), [&](const Point& xi) { return heat_symbol(c.t, gm, xi); }, true);
      p.params["alpha"] = c.alpha;
      p.params["beta"] = c.beta;
    } else {
      sym = sample(g.dual(), [&](const Point& xi) { return cplx(wave_symbol(WaveKind::sine, c.t, xi)); }, true);
    }
    const auto k = kernel_from_symbol(sym, g, {SymbolRoute::symbol_wigner, edge_tol});
    std::vector<double> s(k.samples.pos.n), xi(k.samples.freq.n);
    for (int i = 0; i < k.samples.pos.n; ++i) s[i] = k.samples.pos.coord(i);
    for (int j = 0; j < k.samples.freq.n; ++j) xi[j] = k.samples.freq.coord(j);
    p.axes = {{"s_1", s}, {"xi_1", xi}};
    p.values.resize(k.samples.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i) p.values[i] = k.samples.values[i].real();
    p.params["symbol"] = symbol;
    p.params["grid_n"] = n;
    p.params["extent"] = extent;
    p.equation = "kappa(s, xi) = W(sigma)(xi, -s)";
    p.anchor = "Wigner kernel of a Fourier multiplier";
    emit(p, c, out);
    return exit_ok;
  }
  const bool full = form == "hermite" || form == "complex-hermite";
  if (full) {
    const Point z = fixed_point(c);
    const auto ys = axis(n, s_ext), es = axis(n, xi_ext);
    p.axes = {{"y", ys}, {"eta", es}};
    p.values.resize(ys.size() * es.size());
    const std::vector<double> th(c.d, c.theta);
    const ReducedKernel k = form == "hermite" ? make_hermite_kernel(th)
                                              : make_complex_hermite_kernel(c.theta, c.mu, c.t, c.d);
    for (std::size_t i = 0; i < ys.size(); ++i)
      for (std::size_t j = 0; j < es.size(); ++j) {
        Point w(2 * c.d, 0.0);
        w[0] = ys[i];
        w[c.d] = es[j];
        p.values[i * es.size() + j] = k.eval_full(z, w);
      }
    p.params["z"] = z;
    p.params["theta"] = c.theta;
    if (form == "complex-hermite") p.params["mu"] = c.mu;
    p.params["normalization"] = k.normalization;
    p.equation = k.equation;
    p.anchor = form == "hermite" ? "Wigner kernel of the Hermite propagator"
                                 : "Wigner kernel of the complex Hermite propagator";
    emit(p, c, out);
    return exit_ok;
  }
  const auto ss = axis(n, s_ext), xs = axis(n, xi_ext);
  const int xi_axis = form == "wave" && c.d > 1 ? 1 : 0;
  p.axes = {{"s_1", ss}, {xi_axis == 0 ? "xi_1" : "xi_2", xs}};
  p.values.resize(ss.size() * xs.size());
  ReducedKernel k;
  if (form == "heat") {
    const ComplexDiffusion gm{c.alpha, c.beta};
    k = make_heat_kernel(c.t, gm, c.d);
    p.params["alpha"] = c.alpha;
    p.params["beta"] = c.beta;
    p.anchor = "Wigner kernel of the complex heat propagator";
  } else {
    k = make_wave_kernel(c.d, c.t);
    p.anchor = "reduced Wigner kernel of the sine wave propagator";
  }
  for (std::size_t i = 0; i < ss.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      Point s(c.d, 0.0), xi(c.d, 0.0);
      s[0] = ss[i];
      xi[xi_axis] = xs[j];
      p.values[i * xs.size() + j] = k.eval(s, xi);
    }
  p.params["normalization"] = k.normalization;
  p.equation = k.equation;
  emit(p, c, out);
  return exit_ok;
}

int cmd_verify(const std::string& suite, const SuiteConfig& cfg, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite: " + suite);
  const SuiteReport r = run_suite(suite, cfg);
  const std::string text = report_to_json(r).dump(2);
  if (out_path == "-") {
    out << text << '\n';
  } else {
    std::ofstream os(out_path);
    if (!os || !(os << text << '\n')) throw PanelIOError("cannot write " + out_path);
  }
  int failed = 0;
  for (const auto& e : r.entries)
    if (!e.pass) {
      ++failed;
      err << "FAIL " << e.id << ": measured " << e.measured << ", tolerance " << e.tolerance
          << (e.diagnostic.empty() ? "" : " (" + e.diagnostic + ")") << '\n';
    }
  err << suite << ": " << r.entries.size() - failed << "/" << r.entries.size() << " checks passed\n";
  return r.overall ? exit_ok : exit_verify_failed;
}

int cmd_figure(const std::string& name, const std::string& dir, std::ostream& out) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw PanelIOError("cannot create directory " + dir);
  for (const auto& [stem, panel] : figure_panels(name)) {
    const std::string path = (fs::path(dir) / (stem + ".json")).string();
    write_panel(panel, path, PanelFormat::json);
    out << path << '\n';
  }
  return exit_ok;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"phase-space analysis of Fourier multiplier propagators", "phasekit"};
  app.require_subcommand(1);

  Common gc;
  std::string gform;
  int wn = 128;
  double wext = 6.0;
  bool phase = false, normalized = false;
  auto* gabor = app.add_subcommand("gabor", "Gabor matrix slice w -> h(z, w) over (y, eta)");
  gabor->add_option("form", gform)->required()->check(CLI::IsMember({"heat", "wave", "hermite", "complex-hermite"}));
  add_common(gabor, gc);
  gabor->add_option("--w-grid-n", wn, "points per swept axis")->check(CLI::PositiveNumber);
  gabor->add_option("--w-extent", wext, "extent of each swept axis")->check(CLI::PositiveNumber);
  gabor->add_flag("--phase", phase, "complex values where defined");
  gabor->add_flag("--normalized", normalized, "scale Hermite moduli to the numeric Gabor matrix");

  Common kc;
  std::string kform, symbol = "heat";
  int kn = 128;
  double s_ext = 4.0, xi_ext = 4.0, kextent = 16.0, edge_tol = 1e-6;
  auto* kernel = app.add_subcommand("kernel", "Wigner kernel slice");
  kernel->add_option("form", kform)
      ->required()
      ->check(CLI::IsMember({"heat", "wave", "hermite", "complex-hermite", "from-symbol"}));
  add_common(kernel, kc);
  kernel->add_option("--grid-n", kn, "points per axis")->check(CLI::PositiveNumber);
  kernel->add_option("--s-extent", s_ext, "extent of the s (or y) axis")->check(CLI::PositiveNumber);
  kernel->add_option("--xi-extent", xi_ext, "extent of the xi (or eta) axis")->check(CLI::PositiveNumber);
  kernel->add_option("--symbol", symbol, "from-symbol: heat or wave")->check(CLI::IsMember({"heat", "wave"}));
  kernel->add_option("--extent", kextent, "from-symbol: spatial extent L")->check(CLI::PositiveNumber);
  kernel->add_option("--edge-tol", edge_tol, "from-symbol: edge rejection tolerance");

  double et = 1.0, ea = 1.0, eb = 0.0;
  auto* eps = app.add_subcommand("epsilon", "decay rate eps(t, alpha, beta)");
  eps->add_option("--t", et)->required();
  eps->add_option("--alpha", ea);
  eps->add_option("--beta", eb);

  std::string suite, vout = "-";
  SuiteConfig cfg;
  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 0 iff it passes");
  verify->add_option("--suite", suite, "transforms, heat, wave, hermite, metaplectic or all")->required();
  verify->add_option("--grid-n", cfg.grid_n);
  verify->add_option("--extent", cfg.extent);
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--out", vout, "report path, - for stdout");

  std::string fname, fdir;
  auto* figure = app.add_subcommand("figure", "emit the JSON panels of a figure");
  figure->add_option("name", fname)->required()->check(CLI::IsMember(figure_names()));
  figure->add_option("--out", fdir, "output directory")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "phasekit: " << e.what() << "\n" << app.help();
    return exit_usage;
  }

  if (!apply_thread_env()) {
    err << "phasekit: PHASEKIT_THREADS must be a positive integer\n";
    return exit_usage;
  }

  try {
    if (*gabor) return cmd_gabor(gform, gc, wn, wext, phase, normalized, out);
    if (*kernel) return cmd_kernel(kform, kc, kn, s_ext, xi_ext, symbol, kextent, edge_tol, out);
    if (*eps) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.9g", heat_epsilon(et, ea, eb));
      out << buf << '\n';
      return exit_ok;
    }
    if (*verify) return cmd_verify(suite, cfg, vout, out, err);
    if (*figure) return cmd_figure(fname, fdir, out);
  } catch (const PanelIOError& e) {
    err << "phasekit: " << e.what() << '\n';
    return exit_io;
  } catch (const std::exception& e) {
    err << "phasekit: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace phasekit
