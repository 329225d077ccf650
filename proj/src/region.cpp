#include "wmgame/region.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "wmgame/error.hpp"
#include "wmgame/format.hpp"
#include "wmgame/game_core.hpp"

namespace wmgame {

namespace {

constexpr double kDenominatorFloor = 1e-12;
constexpr double kEndpointSlack = 1e-12;
constexpr std::size_t kGridCap = 1000000;

bool interior(double p) {
  return p > kEndpointSlack && p < 1.0 - kEndpointSlack;
}

bool relatively_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string csv_class(RegionClass cls) {
  switch (cls) {
    case RegionClass::kMixed:
      return "mixed";
    case RegionClass::kPureOnly:
      return "pure_only";
    case RegionClass::kDegenerate:
      return "degenerate";
    case RegionClass::kOutOfDomain:
      return "out_of_domain";
  }
  return "unknown";
}

RegionClass parse_class(const std::string& text, std::size_t line_no) {
  if (text == "mixed") return RegionClass::kMixed;
  if (text == "pure_only") return RegionClass::kPureOnly;
  if (text == "degenerate") return RegionClass::kDegenerate;
  if (text == "out_of_domain") return RegionClass::kOutOfDomain;
  std::ostringstream os;
  os << "line " << line_no << ": unknown class '" << text << "'";
  throw GameError(ErrorCategory::kParse, "parse-error", os.str());
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string::npos) {
      out.push_back(line.substr(begin));
      return out;
    }
    out.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

const char* fill_color(RegionClass cls) {
  switch (cls) {
    case RegionClass::kMixed:
      return "#90ee90";
    case RegionClass::kPureOnly:
      return "#ffffff";
    case RegionClass::kDegenerate:
      return "#808080";
    case RegionClass::kOutOfDomain:
      return "#000000";
  }
  return "#ff00ff";
}

double axis_value(const SweepAxis& axis, std::size_t t) {
  return axis.start + static_cast<double>(t) * (axis.end - axis.start) /
                          static_cast<double>(axis.steps - 1);
}

void require_homogeneous(const std::vector<RegionPoint>& points) {
  if (points.empty())
    throw GameError(ErrorCategory::kValidation, "empty-set",
                    "no region points to export");
  const auto& first = points.front().coordinates;
  for (const RegionPoint& pt : points) {
    bool same = pt.coordinates.size() == first.size();
    for (std::size_t a = 0; same && a < first.size(); ++a)
      same = pt.coordinates[a].first == first[a].first;
    if (!same)
      throw GameError(ErrorCategory::kValidation, "heterogeneous-coordinates",
                      "points disagree on swept parameter names");
  }
}

}  // namespace

FeasibilityInterval feasibility_interval(double k, double d_r_1star,
                                         double d_r_2star) {
  if (!(std::isfinite(k) && k > 0.0)) {
    std::ostringstream os;
    os << "k = " << k << " must be a positive real";
    throw GameError(ErrorCategory::kSolver, "nonpositive-k", os.str());
  }
  if (!std::isfinite(d_r_1star) || !std::isfinite(d_r_2star))
    throw GameError(ErrorCategory::kSolver, "domain-error",
                    "robustness differentials must be finite");
  FeasibilityInterval out;
  out.lower = -std::max(d_r_1star, d_r_2star) / k;
  out.upper = -std::min(d_r_1star, d_r_2star) / k;
  if (d_r_2star > d_r_1star)
    out.orientation = IntervalOrientation::kD2Greater;
  else if (d_r_1star > d_r_2star)
    out.orientation = IntervalOrientation::kD1Greater;
  else
    out.orientation = IntervalOrientation::kDegenerate;
  return out;
}

RegionClassification classify_scenario(const Scenario& scenario) {
  if (!validate_scenario(scenario).hard_ok())
    return {RegionClass::kOutOfDomain, std::nullopt, std::nullopt};
  if (scenario.spaces.n() != 2 || scenario.spaces.m() != 2) {
    std::ostringstream os;
    os << "classification needs a 2x2 game, got " << scenario.spaces.n() << "x"
       << scenario.spaces.m();
    throw GameError(ErrorCategory::kSolver, "dimension-error", os.str());
  }
  if (scenario.csr_mode != CsrMode::kSimplifiedLambda)
    throw GameError(ErrorCategory::kSolver, "mode-error",
                    "classification needs simplified-lambda mode");
  const CostParameters& c = scenario.costs;
  if (!relatively_equal(c.o_att, c.k * c.r_att_plus, 1e-12) ||
      !relatively_equal(c.o_def, c.k * c.r_def_plus, 1e-12))
    throw GameError(ErrorCategory::kSolver, "assumption-violated",
                    "classification needs o_att = k*r_att_plus and "
                    "o_def = k*r_def_plus");

  const StructuralDeltas d = structural_deltas(scenario);
  const double den_alpha = d.d_r_star2 - d.d_r_star1;
  if (std::abs(den_alpha) <= kDenominatorFloor ||
      std::abs(d.rho) <= kDenominatorFloor)
    return {RegionClass::kDegenerate, std::nullopt, std::nullopt};
  const double pr_alpha1 = (c.k * d.d_beta + d.d_r_2star) / den_alpha;
  const double pr_beta1 = (c.k * d.d_alpha + d.varrho) / d.rho;
  if (interior(pr_alpha1) && interior(pr_beta1))
    return {RegionClass::kMixed, pr_alpha1, pr_beta1};
  return {RegionClass::kPureOnly, std::nullopt, std::nullopt};
}

double* resolve_scalar(Scenario& scenario, const std::string& path) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t dot = path.find('.', begin);
    if (dot == std::string::npos) {
      parts.push_back(path.substr(begin));
      break;
    }
    parts.push_back(path.substr(begin, dot - begin));
    begin = dot + 1;
  }
  auto index_of = [](const std::string& text, std::size_t limit,
                     std::size_t& out) {
    if (text.empty() || text.size() > 6 ||
        text.find_first_not_of("0123456789") != std::string::npos)
      return false;
    out = static_cast<std::size_t>(std::stoul(text));
    return out < limit;
  };

  if (parts.size() == 2 && parts[0] == "alphas") {
    std::size_t i;
    if (index_of(parts[1], scenario.spaces.alphas.size(), i))
      return &scenario.spaces.alphas[i];
    return nullptr;
  }
  if (parts.size() == 2 && parts[0] == "betas") {
    std::size_t j;
    if (index_of(parts[1], scenario.spaces.betas.size(), j))
      return &scenario.spaces.betas[j];
    return nullptr;
  }
  if (parts.size() == 3 && parts[0] == "robustness") {
    std::size_t i, j;
    if (index_of(parts[1], scenario.robustness.rows(), i) &&
        index_of(parts[2], scenario.robustness.r[i].size(), j))
      return &scenario.robustness.r[i][j];
    return nullptr;
  }
  if (parts.size() == 2 && parts[0] == "costs") {
    CostParameters& c = scenario.costs;
    const std::string& f = parts[1];
    if (f == "i_def") return &c.i_def;
    if (f == "i_att") return &c.i_att;
    if (f == "o_def") return &c.o_def;
    if (f == "o_att") return &c.o_att;
    if (f == "r_def_minus") return &c.r_def_minus;
    if (f == "r_def_plus") return &c.r_def_plus;
    if (f == "r_att_minus") return &c.r_att_minus;
    if (f == "r_att_plus") return &c.r_att_plus;
    if (f == "k") return &c.k;
    if (f == "lambda") return &c.lambda;
    return nullptr;
  }
  return nullptr;
}

std::vector<RegionPoint> scan(const SweepSpec& spec, unsigned threads) {
  if (spec.axes.empty() || spec.axes.size() > 2)
    throw GameError(ErrorCategory::kUsage, "invalid-spec",
                    "sweep needs 1 or 2 axes");
  for (const SweepAxis& axis : spec.axes) {
    if (axis.steps < 2)
      throw GameError(ErrorCategory::kUsage, "invalid-spec",
                      "axis " + axis.path + " needs at least 2 steps");
    if (!(std::isfinite(axis.start) && std::isfinite(axis.end)) ||
        axis.start == axis.end)
      throw GameError(ErrorCategory::kUsage, "invalid-spec",
                      "axis " + axis.path + " needs distinct finite endpoints");
    Scenario probe = spec.base;
    if (resolve_scalar(probe, axis.path) == nullptr)
      throw GameError(ErrorCategory::kUsage, "invalid-spec",
                      "axis path '" + axis.path + "' does not name a scalar");
  }
  if (spec.axes.size() == 2 && spec.axes[0].path == spec.axes[1].path)
    throw GameError(ErrorCategory::kUsage, "invalid-spec",
                    "axis paths must be distinct");

  const std::size_t n0 = spec.axes[0].steps;
  const std::size_t n1 = spec.axes.size() == 2 ? spec.axes[1].steps : 1;
  if (n0 > kGridCap / n1)
    throw GameError(ErrorCategory::kUsage, "grid-too-large",
                    "grid exceeds 10^6 points");
  const std::size_t total = n0 * n1;

  std::vector<RegionPoint> points(total);
  auto evaluate_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t t0 = idx / n1;
      const std::size_t t1 = idx % n1;
      Scenario sc = spec.base;
      RegionPoint pt;
      const double v0 = axis_value(spec.axes[0], t0);
      *resolve_scalar(sc, spec.axes[0].path) = v0;
      pt.coordinates.emplace_back(spec.axes[0].path, v0);
      if (spec.axes.size() == 2) {
        const double v1 = axis_value(spec.axes[1], t1);
        *resolve_scalar(sc, spec.axes[1].path) = v1;
        pt.coordinates.emplace_back(spec.axes[1].path, v1);
      }
      try {
        const RegionClassification c = classify_scenario(sc);
        pt.cls = c.cls;
        pt.pr_alpha1 = c.pr_alpha1;
        pt.pr_beta1 = c.pr_beta1;
      } catch (const GameError&) {
        pt.cls = RegionClass::kOutOfDomain;
      }
      points[idx] = std::move(pt);
    }
  };

  const unsigned workers = std::max(1u, std::min(threads, 64u));
  if (workers == 1 || total < 256) {
    evaluate_range(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min<std::size_t>(w * chunk, total);
      const std::size_t end = std::min<std::size_t>(begin + chunk, total);
      if (begin < end) pool.emplace_back(evaluate_range, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }
  return points;
}

void export_region_csv(const std::vector<RegionPoint>& points,
                       std::ostream& out) {
  require_homogeneous(points);
  for (const auto& [name, value] : points.front().coordinates) {
    (void)value;
    out << "axis:" << name << ",";
  }
  out << "pr_alpha1,pr_beta1,class\n";
  for (const RegionPoint& pt : points) {
    for (const auto& [name, value] : pt.coordinates) {
      (void)name;
      out << format_double(value) << ",";
    }
    if (pt.pr_alpha1) out << format_double(*pt.pr_alpha1);
    out << ",";
    if (pt.pr_beta1) out << format_double(*pt.pr_beta1);
    out << "," << csv_class(pt.cls) << "\n";
  }
  if (!out)
    throw GameError(ErrorCategory::kIo, "io-failure",
                    "failed while writing region CSV");
}

void export_region_csv(const std::vector<RegionPoint>& points,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw GameError(ErrorCategory::kIo, "io-failure", "cannot open " + path);
  export_region_csv(points, out);
}

std::vector<RegionPoint> parse_region_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw GameError(ErrorCategory::kParse, "parse-error", "empty region CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split(line);
  if (header.size() < 4 || header[header.size() - 3] != "pr_alpha1" ||
      header[header.size() - 2] != "pr_beta1" || header.back() != "class")
    throw GameError(ErrorCategory::kParse, "parse-error",
                    "bad region CSV header");
  std::vector<std::string> axis_names;
  for (std::size_t a = 0; a + 3 < header.size(); ++a) {
    if (header[a].rfind("axis:", 0) != 0)
      throw GameError(ErrorCategory::kParse, "parse-error",
                      "bad axis column '" + header[a] + "'");
    axis_names.push_back(header[a].substr(5));
  }

  std::vector<RegionPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line);
    if (fields.size() != axis_names.size() + 3) {
      std::ostringstream os;
      os << "line " << line_no << ": expected " << axis_names.size() + 3
         << " fields";
      throw GameError(ErrorCategory::kParse, "parse-error", os.str());
    }
    RegionPoint pt;
    std::ostringstream where;
    where << "region CSV line " << line_no;
    for (std::size_t a = 0; a < axis_names.size(); ++a)
      pt.coordinates.emplace_back(axis_names[a],
                                  parse_double(fields[a], where.str()));
    const std::string& pa = fields[axis_names.size()];
    const std::string& pb = fields[axis_names.size() + 1];
    if (!pa.empty()) pt.pr_alpha1 = parse_double(pa, where.str());
    if (!pb.empty()) pt.pr_beta1 = parse_double(pb, where.str());
    pt.cls = parse_class(fields.back(), line_no);
    points.push_back(std::move(pt));
  }
  return points;
}

void render_region_svg(const std::vector<RegionPoint>& points,
                       std::ostream& out) {
  require_homogeneous(points);
  if (points.front().coordinates.size() != 2)
    throw GameError(ErrorCategory::kUsage, "wrong-axis-count",
                    "region image needs exactly 2 swept axes");

  const std::string axis0 = points.front().coordinates[0].first;
  const std::string axis1 = points.front().coordinates[1].first;
  std::size_t n1 = 0;
  const double first0 = points.front().coordinates[0].second;
  while (n1 < points.size() && points[n1].coordinates[0].second == first0) ++n1;
  if (n1 == 0 || points.size() % n1 != 0)
    throw GameError(ErrorCategory::kValidation, "incomplete-grid",
                    "points do not form a full row-major grid");
  const std::size_t n0 = points.size() / n1;
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const std::size_t t0 = idx / n1;
    const std::size_t t1 = idx % n1;
    if (points[idx].coordinates[0].second !=
            points[t0 * n1].coordinates[0].second ||
        points[idx].coordinates[1].second != points[t1].coordinates[1].second)
      throw GameError(ErrorCategory::kValidation, "incomplete-grid",
                      "grid coordinates are not row-major consistent");
  }

  const double plot_w = 600.0, plot_h = 440.0;
  const double left = 70.0, top = 20.0;
  const double cell_w = plot_w / static_cast<double>(n0);
  const double cell_h = plot_h / static_cast<double>(n1);
  const double width = left + plot_w + 170.0;
  const double height = top + plot_h + 60.0;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << format_double(width) << "\" height=\"" << format_double(height)
      << "\" viewBox=\"0 0 " << format_double(width) << " "
      << format_double(height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << format_double(width)
      << "\" height=\"" << format_double(height) << "\" fill=\"#ffffff\"/>\n";

  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const std::size_t t0 = idx / n1;
    const std::size_t t1 = idx % n1;
    const double x = left + static_cast<double>(t0) * cell_w;
    const double y = top + static_cast<double>(n1 - 1 - t1) * cell_h;
    out << "<rect x=\"" << format_double(x) << "\" y=\"" << format_double(y)
        << "\" width=\"" << format_double(cell_w) << "\" height=\""
        << format_double(cell_h) << "\" fill=\"" << fill_color(points[idx].cls)
        << "\"/>\n";
  }

  out << "<rect x=\"" << format_double(left) << "\" y=\"" << format_double(top)
      << "\" width=\"" << format_double(plot_w) << "\" height=\""
      << format_double(plot_h)
      << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  const double v0_min = points.front().coordinates[0].second;
  const double v0_max = points[(n0 - 1) * n1].coordinates[0].second;
  const double v1_min = points.front().coordinates[1].second;
  const double v1_max = points[n1 - 1].coordinates[1].second;
  const double base_y = top + plot_h;
  out << "<text x=\"" << format_double(left) << "\" y=\""
      << format_double(base_y + 18.0)
      << "\" font-family=\"monospace\" font-size=\"12\">"
      << format_double(v0_min) << "</text>\n";
  out << "<text x=\"" << format_double(left + plot_w - 40.0) << "\" y=\""
      << format_double(base_y + 18.0)
      << "\" font-family=\"monospace\" font-size=\"12\">"
      << format_double(v0_max) << "</text>\n";
  out << "<text x=\"" << format_double(left + plot_w / 2.0 - 40.0) << "\" y=\""
      << format_double(base_y + 36.0)
      << "\" font-family=\"monospace\" font-size=\"12\">" << xml_escape(axis0)
      << "</text>\n";
  out << "<text x=\"" << format_double(left - 8.0) << "\" y=\""
      << format_double(base_y)
      << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">"
      << format_double(v1_min) << "</text>\n";
  out << "<text x=\"" << format_double(left - 8.0) << "\" y=\""
      << format_double(top + 12.0)
      << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">"
      << format_double(v1_max) << "</text>\n";
  out << "<text x=\"" << format_double(left - 8.0) << "\" y=\""
      << format_double(top + plot_h / 2.0)
      << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">"
      << xml_escape(axis1) << "</text>\n";

  const char* names[4] = {"mixed", "pure-only", "degenerate", "out-of-domain"};
  const RegionClass classes[4] = {RegionClass::kMixed, RegionClass::kPureOnly,
                                  RegionClass::kDegenerate,
                                  RegionClass::kOutOfDomain};
  for (int e = 0; e < 4; ++e) {
    const double ly = top + 10.0 + 24.0 * e;
    out << "<rect x=\"" << format_double(left + plot_w + 20.0) << "\" y=\""
        << format_double(ly) << "\" width=\"16\" height=\"16\" fill=\""
        << fill_color(classes[e])
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << format_double(left + plot_w + 42.0) << "\" y=\""
        << format_double(ly + 13.0)
        << "\" font-family=\"monospace\" font-size=\"12\">" << names[e]
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out)
    throw GameError(ErrorCategory::kIo, "io-failure",
                    "failed while writing region SVG");
}

void render_region_svg(const std::vector<RegionPoint>& points,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw GameError(ErrorCategory::kIo, "io-failure", "cannot open " + path);
  render_region_svg(points, out);
}

}  // namespace wmgame
