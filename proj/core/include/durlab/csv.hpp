#pragma once

#include <string>
#include <vector>

#include "durlab/series.hpp"

namespace durlab {

/// Floats in all emitted files carry 12 significant digits.
std::string format_double(double v);

/// Schema `date,value`. The grid frequency is inferred from date spacing.
DatedSeries load_series_csv(const std::string& path);
void write_series_csv(const std::string& path, const DatedSeries& s,
                      const std::string& value_name = "value");

/// Schema `date,<col>,...` with arbitrary named columns.
Panel load_panel_csv(const std::string& path);
void write_panel_csv(const std::string& path, const Panel& p);

/// Schema `date,index,dividend_ttm,F_<m>...,Z_<m>...` where <m> are
/// maturities in years with up to 4 decimals.
std::vector<MarketSnapshot> load_snapshot_csv(const std::string& path);
void write_snapshot_csv(const std::string& path, const std::vector<MarketSnapshot>& snaps);

/// Schema `date,e1,e2,e3,ltg` (analyst growth forecasts).
Panel load_forecast_panel_csv(const std::string& path);

}  // namespace durlab
