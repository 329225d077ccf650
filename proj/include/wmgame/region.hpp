#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wmgame/equilibrium.hpp"
#include "wmgame/scenario.hpp"

namespace wmgame {

enum class IntervalOrientation { kD2Greater, kD1Greater, kDegenerate };

// Open range of d_beta = beta1 - beta2 inside which the defender's
// best response can be an interior mix.
struct FeasibilityInterval {
  double lower = 0.0;
  double upper = 0.0;
  IntervalOrientation orientation = IntervalOrientation::kDegenerate;

  bool contains(double d_beta) const {
    return orientation != IntervalOrientation::kDegenerate && lower < d_beta &&
           d_beta < upper;
  }
};

// (-max{d_r_1star, d_r_2star}/k, -min{d_r_1star, d_r_2star}/k), open; the
// orientation records the sign of d_r_2star - d_r_1star.
FeasibilityInterval feasibility_interval(double k, double d_r_1star,
                                         double d_r_2star);

struct RegionClassification {
  RegionClass cls = RegionClass::kOutOfDomain;
  std::optional<double> pr_alpha1;  // present iff cls == kMixed
  std::optional<double> pr_beta1;
};

// Membership test for an interior mixed equilibrium under the simplified
// closed form. Validation failures classify as out-of-domain; wrong shape,
// mode, or cost assumption raise the same errors as mixed_2x2_simplified.
RegionClassification classify_scenario(const Scenario& scenario);

struct SweepAxis {
  std::string path;  // dotted scalar path, e.g. betas.1, costs.k, robustness.0.1
  double start = 0.0;
  double end = 0.0;
  std::size_t steps = 0;
};

struct SweepSpec {
  Scenario base;
  std::vector<SweepAxis> axes;  // 1 or 2 entries
};

struct RegionPoint {
  std::vector<std::pair<std::string, double>> coordinates;
  std::optional<double> pr_alpha1;
  std::optional<double> pr_beta1;
  RegionClass cls = RegionClass::kOutOfDomain;
};

// Classifies every grid point in row-major axis order (first axis slowest).
// Endpoints inclusive, uniform spacing, at most 10^6 points. Points whose
// scenario fails validation or breaks a closed-form precondition come back
// out-of-domain instead of being dropped.
std::vector<RegionPoint> scan(const SweepSpec& spec, unsigned threads = 1);

// Pointer to the scalar a sweep axis addresses, or nullptr for a bad path.
double* resolve_scalar(Scenario& scenario, const std::string& path);

void export_region_csv(const std::vector<RegionPoint>& points, std::ostream& out);
void export_region_csv(const std::vector<RegionPoint>& points,
                       const std::string& path);

std::vector<RegionPoint> parse_region_csv(std::istream& in);

// Standalone grid image for 2-axis scans: one cell per point, fixed palette
// (mixed = light green, pure-only = white, degenerate = gray,
// out-of-domain = black).
void render_region_svg(const std::vector<RegionPoint>& points, std::ostream& out);
void render_region_svg(const std::vector<RegionPoint>& points,
                       const std::string& path);

}  // namespace wmgame
