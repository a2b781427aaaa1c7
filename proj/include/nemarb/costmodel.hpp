#pragma once

#include <array>

#include "nemarb/core.hpp"

// Per-step net-metering cost: C_nm(x) = [z + f(x)]+ * p_b - [z + f(x)]- * p_s,
// and its four-segment piecewise-linear form. Slopes are stored per Wh of x
// (prices arrive per kWh and are divided by 1000 once, here), so evaluating a
// segment is a plain affine map in Wh.

namespace nemarb {

struct Segment {
  double slope = 0.0;        // cents per Wh of x
  double y_intercept = 0.0;  // cents
  int label = 0;             // 1..4, row of the segment table

  double value_at(double x_wh) const { return slope * x_wh + y_intercept; }

  /// Where the segment crosses zero; derived, only meaningful for slope != 0.
  double x_intercept_wh() const { return -y_intercept / slope; }
};

/// The four segments whose max is the per-step cost.
struct SegmentSet {
  std::array<Segment, 4> segments;

  double max_at(double x_wh) const {
    double m = segments[0].value_at(x_wh);
    for (int k = 1; k < 4; ++k) m = std::max(m, segments[k].value_at(x_wh));
    return m;
  }
};

/// Meter-side energy s = f(x) drawn (or injected, s < 0) when the stored
/// energy changes by x: s = x/eta_ch for charging, eta_dis*x for discharging.
double storage_energy(double x_wh, const BatteryParams& battery);

/// Inverse map: stored-energy change produced by meter-side energy s.
double stored_from_meter(double s_wh, const BatteryParams& battery);

/// Net-metering cost of one step, cents. Prices are per kWh, x and z per Wh.
/// Computes the two-sided tariff directly; callers wanting the convex regime
/// must keep p_buy >= p_sell.
double cost_nm(double x_wh, double z_wh, double price_buy, double price_sell,
               const BatteryParams& battery);

/// The four cost segments for one step. Throws std::domain_error when
/// p_buy < p_sell or p_sell < 0 (the max-of-segments identity needs them).
SegmentSet build_segments(double z_wh, double price_buy, double price_sell,
                          const BatteryParams& battery);

}  // namespace nemarb
