#include "phasekit/panel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "phasekit/kernels.hpp"

namespace phasekit {

namespace {

std::size_t shape_size(const Panel& p) {
  std::size_t n = 1;
  for (const auto& a : p.axes) n *= a.second.size();
  return n;
}

ojson value_json(const Panel& p, std::size_t k) {
  if (p.complex_values) return ojson::array({p.values[k].real(), p.values[k].imag()});
  return p.values[k].real();
}

bool is_number_array(const ojson& a) {
  if (!a.is_array()) return false;
  for (const auto& v : a)
    if (!v.is_number()) return false;
  return true;
}

// Checks that v is nested to `depth` levels with the given extents and scalar
// (or [re, im]) leaves.
std::string check_values(const ojson& v, const std::vector<std::size_t>& shape, std::size_t level,
                         bool complex_values) {
  if (level == shape.size()) {
    if (complex_values) {
      if (!is_number_array(v) || v.size() != 2) return "complex value must be a [re, im] pair";
    } else if (!v.is_number()) {
      return "abs value must be a number";
    }
    return "";
  }
  if (!v.is_array() || v.size() != shape[level]) return "values shape does not match axes";
  for (const auto& e : v) {
    auto err = check_values(e, shape, level + 1, complex_values);
    if (!err.empty()) return err;
  }
  return "";
}

Panel gabor_panel(const GaborSlice& sl, const std::string& kind, const std::string& anchor) {
  return panel_from_slice(sl, kind, anchor);
}

GaborSlice square_slice(const Point& z, int n, double extent) {
  GaborSlice sl;
  sl.fixed_z = z;
  sl.w_pos_axis = Grid{1, n, extent};
  sl.w_freq_axis = Grid{1, n, extent};
  return sl;
}

std::string tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

const std::vector<double> kTimes = {0.0, 1.0, 2.0, 5.0};

std::vector<std::pair<std::string, Panel>> heat_figure(bool complex_case) {
  std::vector<std::pair<std::string, Panel>> out;
  const std::vector<double> alphas = complex_case ? std::vector<double>{1.0, 0.1} : std::vector<double>{1.0};
  const double beta = complex_case ? 1.0 : 0.0;
  const std::string fig = complex_case ? "heat-complex" : "heat-real";
  for (double alpha : alphas)
    for (double t : kTimes) {
      const ComplexDiffusion gm{alpha, beta};
      const std::string stem = fig + "_a" + tag(alpha) + "_t" + tag(t);
      GaborSlice sl = square_slice({0.0, 0.0}, 128, 6.0);
      evaluate_slice(sl, [&](const Point& z, const Point& w) { return gabor_heat_closed(t, gm, z, w, 1); });
      sl.equation = "G_t(z,w) = (2 rho)^{-d/2} e^{-pi(|xi|^2+|eta|^2)} e^{2 pi i(xi.x - eta.y)} e^{(pi/(2 rho)) c.c}";
      Panel p = gabor_panel(sl, "gabor-heat", "Gabor matrix of the complex heat propagator");
      p.params = {{"figure", fig}, {"d", 1}, {"alpha", alpha}, {"beta", beta}, {"t", t}, {"z", {0.0, 0.0}}};
      out.emplace_back(stem, std::move(p));
      if (!complex_case) {
        GaborSlice sb = square_slice({0.0, 0.0}, 128, 6.0);
        evaluate_slice(sb, [&](const Point& z, const Point& w) { return cplx(gabor_heat_bound(t, gm, z, w, 1)); });
        Panel b = gabor_panel(sb, "gabor-heat-bound", "Gaussian upper bound of the heat Gabor matrix");
        b.equation = "2^{-d/2}|rho|^{-d/2} e^{-(eps/2)(|xi|^2+|eta|^2) - eps|x-y|^2}";
        b.params = {{"figure", fig}, {"d", 1}, {"alpha", alpha}, {"beta", beta}, {"t", t}, {"z", {0.0, 0.0}}};
        out.emplace_back(fig + "_bound_t" + tag(t), std::move(b));
      }
    }
  return out;
}

std::vector<std::pair<std::string, Panel>> wave_gabor_figure() {
  std::vector<std::pair<std::string, Panel>> out;
  for (double t : kTimes) {
    GaborSlice sl = square_slice({0.0, 0.0}, 128, 12.0);
    const PairingOrder order{std::max(32, static_cast<int>(std::ceil(16 * t))), 1};
    // sin(2 pi |D| t)/(2 pi |D|) vanishes identically at t = 0.
    evaluate_slice(sl, [&](const Point& z, const Point& w) {
      return t > 0.0 ? cplx(std::sqrt(gabor_wave_modsq(t, 1, z, w, order))) : cplx(0.0);
    });
    sl.equation = "|h(z,w)| from the double pairing with the fundamental solution";
    Panel p = gabor_panel(sl, "gabor-wave", "Gabor matrix of the sine wave propagator");
    p.params = {{"figure", "wave-gabor"}, {"d", 1}, {"t", t}, {"z", {0.0, 0.0}}, {"pairing_nodes", order.radial}};
    out.emplace_back("wave-gabor_t" + tag(t), std::move(p));
  }
  return out;
}

std::vector<std::pair<std::string, Panel>> wave_kernel_figure() {
  std::vector<std::pair<std::string, Panel>> out;
  const double t = 1.0;
  for (int d = 1; d <= 3; ++d) {
    const int ns = 161, nx = 161;
    const double s_ext = d == 1 ? 1.25 * t : 2.25 * t, x_ext = 3.0;
    Panel p;
    p.kind = "wave-kernel";
    p.equation = d == 1 ? "kappa_t^(1)" : d == 2 ? "kappa_t^(2)" : "kappa_t^(3)";
    p.anchor = "reduced Wigner kernel of the sine wave propagator";
    const std::string xi_name = d == 1 ? "xi_1" : "xi_2";
    std::vector<double> s(ns), xi(nx);
    for (int i = 0; i < ns; ++i) s[i] = -s_ext + 2.0 * s_ext * i / (ns - 1);
    for (int j = 0; j < nx; ++j) xi[j] = -x_ext + 2.0 * x_ext * j / (nx - 1);
    p.values.resize(ns * nx);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < nx; ++j) {
        Point sp(d, 0.0), xp(d, 0.0);
        sp[0] = s[i];
        xp[d == 1 ? 0 : 1] = xi[j];
        p.values[i * nx + j] = kernel_wave(d, t, sp, xp);
      }
    p.axes = {{"s_1", s}, {xi_name, xi}};
    p.params = {{"figure", "wave-kernels"}, {"d", d}, {"t", t}};
    out.emplace_back("wave-kernels_d" + std::to_string(d), std::move(p));
  }
  return out;
}

std::vector<std::pair<std::string, Panel>> hermite_figure() {
  std::vector<std::pair<std::string, Panel>> out;
  const double theta = 0.7, mu = 1.3;
  const Point z{0.0, 1.0};
  for (double t : kTimes) {
    GaborSlice sl = square_slice(z, 128, 6.0);
    // |<R pi(z) g, pi(w) g>|: closed form times its normalization, the identity overlap at t = 0.
    const double norm = t > 0.0 ? hermite_normalization({theta * t}) : std::sqrt(2.0);
    evaluate_slice(sl, [&](const Point& zz, const Point& w) {
      return cplx(norm * (t > 0.0 ? gabor_complex_hermite_mod(theta, mu, t, zz, w)
                                  : gabor_hermite_mod({0.0}, zz, w)));
    });
    Panel p = gabor_panel(sl, "gabor-complex-hermite", "Gabor matrix of the complex Hermite propagator");
    p.equation = "(1-e^{-2 theta t})^{1/2} gabor_complex_hermite_mod";
    p.params = {{"figure", "hermite-rotation"}, {"d", 1},       {"theta", theta}, {"mu", mu},
                {"t", t},                      {"z", {0.0, 1.0}}, {"normalization", norm}};
    out.emplace_back("hermite-rotation_t" + tag(t), std::move(p));
  }
  return out;
}

}  // namespace

ojson panel_to_json(const Panel& p) {
  ojson axes = ojson::object();
  for (const auto& [name, v] : p.axes) axes[name] = v;
  ojson values;
  if (p.axes.size() == 1) {
    values = ojson::array();
    for (std::size_t k = 0; k < p.values.size(); ++k) values.push_back(value_json(p, k));
  } else if (p.axes.size() == 2) {
    values = ojson::array();
    const std::size_t cols = p.axes[1].second.size();
    for (std::size_t i = 0; i < p.axes[0].second.size(); ++i) {
      ojson row = ojson::array();
      for (std::size_t j = 0; j < cols; ++j) row.push_back(value_json(p, i * cols + j));
      values.push_back(std::move(row));
    }
  }
  return {{"kind", p.kind},
          {"params", p.params},
          {"axes", axes},
          {"values", values},
          {"values_kind", p.complex_values ? "complex" : "abs"},
          {"provenance", {{"equation", p.equation}, {"paper_anchor", p.anchor}}}};
}

std::string validate_panel_json(const ojson& j) {
  if (!j.is_object()) return "panel must be a JSON object";
  for (const char* k : {"kind", "params", "axes", "values", "values_kind", "provenance"})
    if (!j.contains(k)) return std::string("missing key: ") + k;
  if (!j["kind"].is_string() || j["kind"].get<std::string>().empty()) return "kind must be a nonempty string";
  if (!j["params"].is_object()) return "params must be an object";
  if (!j["axes"].is_object() || j["axes"].empty() || j["axes"].size() > 2) return "axes must hold one or two axes";
  std::vector<std::size_t> shape;
  for (const auto& [name, a] : j["axes"].items()) {
    if (!is_number_array(a) || a.empty()) return "axis " + name + " must be a nonempty float array";
    shape.push_back(a.size());
  }
  if (!j["values_kind"].is_string()) return "values_kind must be a string";
  const std::string vk = j["values_kind"];
  if (vk != "abs" && vk != "complex") return "values_kind must be abs or complex";
  const auto& pr = j["provenance"];
  if (!pr.is_object() || !pr.contains("equation") || !pr.contains("paper_anchor") || !pr["equation"].is_string() ||
      !pr["paper_anchor"].is_string())
    return "provenance must hold string fields equation and paper_anchor";
  return check_values(j["values"], shape, 0, vk == "complex");
}

std::string panel_to_csv(const Panel& p) {
  if (p.values.size() != shape_size(p)) throw std::invalid_argument("panel: values do not match axes");
  std::string out;
  for (const auto& a : p.axes) out += a.first + ",";
  out += p.complex_values ? "re,im\n" : "value\n";
  char buf[64];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
    out += buf;
  };
  const std::size_t cols = p.axes.size() == 2 ? p.axes[1].second.size() : 1;
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    if (p.axes.size() == 2) {
      put(p.axes[0].second[k / cols], ',');
      put(p.axes[1].second[k % cols], ',');
    } else {
      put(p.axes[0].second[k], ',');
    }
    if (p.complex_values) {
      put(p.values[k].real(), ',');
      put(p.values[k].imag(), '\n');
    } else {
      put(p.values[k].real(), '\n');
    }
  }
  return out;
}

void write_panel(const Panel& p, const std::string& path, PanelFormat format) {
  if (p.axes.empty() || p.axes.size() > 2 || p.values.size() != shape_size(p))
    throw std::invalid_argument("panel: values do not match axes");
  const ojson j = panel_to_json(p);
  const std::string err = validate_panel_json(j);
  if (!err.empty()) throw std::invalid_argument("panel schema violation: " + err);
  std::ofstream os(path);
  if (!os) throw PanelIOError("cannot open " + path + " for writing");
  if (format == PanelFormat::json)
    os << j.dump() << '\n';
  else
    os << panel_to_csv(p);
  if (!os) throw PanelIOError("write to " + path + " failed");
}

Panel panel_from_slice(const GaborSlice& sl, const std::string& kind, const std::string& anchor) {
  Panel p;
  p.kind = kind;
  p.anchor = anchor;
  p.equation = sl.equation;
  p.complex_values = !sl.modulus_only;
  std::vector<double> y(sl.rows()), eta(sl.cols());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = sl.w_pos_axis.coord(static_cast<int>(i));
  for (std::size_t j = 0; j < eta.size(); ++j) eta[j] = sl.w_freq_axis.coord(static_cast<int>(j));
  p.axes = {{"y", y}, {"eta", eta}};
  p.values = sl.values;
  for (const auto& [k, v] : sl.params) p.params[k] = v;
  return p;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"heat-real", "heat-complex", "wave-gabor", "wave-kernels",
                                                 "hermite-rotation"};
  return names;
}

std::vector<std::pair<std::string, Panel>> figure_panels(const std::string& name) {
  if (name == "heat-real") return heat_figure(false);
  if (name == "heat-complex") return heat_figure(true);
  if (name == "wave-gabor") return wave_gabor_figure();
  if (name == "wave-kernels") return wave_kernel_figure();
  if (name == "hermite-rotation") return hermite_figure();
  throw std::invalid_argument("unknown figure: " + name);
}

}  // namespace phasekit
