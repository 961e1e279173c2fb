#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "briberynet/aggregate.hpp"
#include "briberynet/cli/config.hpp"
#include "briberynet/cli/csv.hpp"
#include "briberynet/cli/run_record.hpp"
#include "briberynet/cli/svg.hpp"
#include "briberynet/comparative_statics.hpp"

namespace briberynet::cli {

enum class OutputFormat { Csv, CsvSvg };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "csv+svg") return OutputFormat::CsvSvg;
  throw Error(ErrorKind::Config, "format must be 'csv' or 'csv+svg', got '" + s + "'");
}

struct FigureTables {
  std::vector<BribeSweepRow> bribe_vs_p;
  std::vector<BribeSweepRow> bribe_vs_ph;
  std::vector<CountSweepRow> count_vs_p;
  std::vector<CountSweepRow> count_vs_ph;
};

inline FigureTables compute_figures(const ScenarioConfig& c, unsigned threads = 1) {
  auto options = [&](const FigureSpec& f) {
    SweepOptions o;
    o.harassment_ratio = f.harassment_ratio;
    o.threads = threads;
    return o;
  };
  FigureTables t;
  t.bribe_vs_p = sweep_bribe_vs_probability(c.fig1.params, SweepAxis::Detection, c.fig1.grid, options(c.fig1));
  t.bribe_vs_ph =
      sweep_bribe_vs_probability(c.fig2.params, SweepAxis::HarassmentDetection, c.fig2.grid, options(c.fig2));
  t.count_vs_p = sweep_m1(c.fig3.params, SweepAxis::Detection, c.fig3.grid, c.income_difference,
                          c.convention, options(c.fig3));
  t.count_vs_ph = sweep_m1(c.fig4.params, SweepAxis::HarassmentDetection, c.fig4.grid,
                           c.income_difference, c.convention, options(c.fig4));
  return t;
}

namespace detail {

template <class Row, class Value>
Series feasible_series(const std::vector<Row>& rows, Value value, const std::string& label) {
  Series s;
  s.label = label;
  for (const auto& r : rows) {
    const std::optional<double> y = value(r);
    if (r.feasible && y) {
      s.xs.push_back(r.value);
      s.ys.push_back(*y);
    }
  }
  return s;
}

inline std::string fixed_p_caption(const char* lead, double p) {
  return std::string(lead) + " (p = " + svg_number(p) + ")";
}

}  // namespace detail

/// Writes fig1..fig4 CSVs (and SVGs for csv+svg) into `dir` and returns the
/// manifest. Infeasible rows stay in the CSVs but are left out of the plots.
inline RunRecord write_figures(const ScenarioConfig& c, const std::filesystem::path& dir,
                               OutputFormat format, unsigned threads = 1) {
  const FigureTables t = compute_figures(c, threads);
  RunRecord record;
  record.command = "figures";
  record.config = c.snapshot();
  record.seed = c.seed;

  write_output(dir, "fig1.csv", bribe_sweep_csv(t.bribe_vs_p, SweepAxis::Detection), record);
  write_output(dir, "fig2.csv",
               bribe_sweep_csv(t.bribe_vs_ph, SweepAxis::HarassmentDetection, c.fig2.params.detection), record);
  write_output(dir, "fig3.csv", count_sweep_csv(t.count_vs_p, SweepAxis::Detection), record);
  write_output(dir, "fig4.csv",
               count_sweep_csv(t.count_vs_ph, SweepAxis::HarassmentDetection, c.fig4.params.detection), record);

  if (format == OutputFormat::CsvSvg) {
    auto bribe = [](const BribeSweepRow& r) { return r.bribe; };
    auto count = [](const CountSweepRow& r) { return r.m1; };
    write_output(dir, "fig1.svg",
                 line_chart_svg({"Equilibrium bribe vs detection probability", "p", "B*",
                                 {detail::feasible_series(t.bribe_vs_p, bribe, "")}}),
                 record);
    write_output(dir, "fig2.svg",
                 line_chart_svg({detail::fixed_p_caption("Equilibrium bribe vs harassment detection",
                                                         c.fig2.params.detection),
                                 "p_h", "B*", {detail::feasible_series(t.bribe_vs_ph, bribe, "")}}),
                 record);
    write_output(dir, "fig3.svg",
                 line_chart_svg({"Bribes per period vs detection probability", "p", "m1",
                                 {detail::feasible_series(t.count_vs_p, count, "")}}),
                 record);
    write_output(dir, "fig4.svg",
                 line_chart_svg({detail::fixed_p_caption("Bribes per period vs harassment detection",
                                                         c.fig4.params.detection),
                                 "p_h", "m1", {detail::feasible_series(t.count_vs_ph, count, "")}}),
                 record);
  }
  return record;
}

}  // namespace briberynet::cli
