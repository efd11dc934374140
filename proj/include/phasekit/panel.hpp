#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "phasekit/gabor.hpp"
#include "phasekit/grid.hpp"

namespace phasekit {

using ojson = nlohmann::ordered_json;

// A self-describing 1-d or 2-d data panel. The first axis is the row (slowest) axis.
struct Panel {
  std::string kind;
  ojson params = ojson::object();
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  std::vector<cplx> values;  // row-major over axes
  bool complex_values = false;
  std::string equation;
  std::string anchor;
};

enum class PanelFormat { json, csv };

struct PanelIOError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"kind", "params", "axes": {name: [..]}, "values": nested row-major arrays
// ([re, im] pairs when complex), "values_kind": "abs" | "complex",
// "provenance": {"equation", "paper_anchor"}}.
ojson panel_to_json(const Panel& p);
// Empty when j conforms to the schema above, otherwise the first violation.
std::string validate_panel_json(const ojson& j);
// Header of axis names then "value" (or "re,im"), one row per grid point, %.17g.
std::string panel_to_csv(const Panel& p);
// Validates, then writes. Throws std::invalid_argument on a schema violation and
// PanelIOError when the file cannot be written.
void write_panel(const Panel& p, const std::string& path, PanelFormat format = PanelFormat::json);

// Axes "y" and "eta" from the swept coordinates of w.
Panel panel_from_slice(const GaborSlice& slice, const std::string& kind, const std::string& anchor);

const std::vector<std::string>& figure_names();  // heat-real, heat-complex, wave-gabor, wave-kernels, hermite-rotation
// (file stem, panel) pairs of one figure.
std::vector<std::pair<std::string, Panel>> figure_panels(const std::string& name);

}  // namespace phasekit
