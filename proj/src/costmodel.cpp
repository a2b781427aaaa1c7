#include "nemarb/costmodel.hpp"

#include <algorithm>
#include <cmath>

namespace nemarb {

double storage_energy(double x_wh, const BatteryParams& battery) {
  return x_wh >= 0.0 ? x_wh / battery.eta_ch : battery.eta_dis * x_wh;
}

double stored_from_meter(double s_wh, const BatteryParams& battery) {
  return s_wh >= 0.0 ? battery.eta_ch * s_wh : s_wh / battery.eta_dis;
}

double cost_nm(double x_wh, double z_wh, double price_buy, double price_sell,
               const BatteryParams& battery) {
  const double meter_kwh = (z_wh + storage_energy(x_wh, battery)) / 1000.0;
  return meter_kwh >= 0.0 ? meter_kwh * price_buy : meter_kwh * price_sell;
}

SegmentSet build_segments(double z_wh, double price_buy, double price_sell,
                          const BatteryParams& battery) {
  if (!(price_buy >= price_sell && price_sell >= 0.0))
    throw std::domain_error("build_segments: nonconvex prices (needs p_buy >= p_sell >= 0)");

  const double z_kwh = z_wh / 1000.0;
  SegmentSet set;
  set.segments[0] = {price_buy / battery.eta_ch / 1000.0, z_kwh * price_buy, 1};
  set.segments[1] = {price_sell * battery.eta_dis / 1000.0, z_kwh * price_sell, 2};
  set.segments[2] = {price_buy * battery.eta_dis / 1000.0, z_kwh * price_buy, 3};
  set.segments[3] = {price_sell / battery.eta_ch / 1000.0, z_kwh * price_sell, 4};
  return set;
}

}  // namespace nemarb
