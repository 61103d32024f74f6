#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "effham/adaptive.hpp"
#include "effham/analysis.hpp"
#include "effham/learner.hpp"

namespace effham::io {

// Shortest round-trip representation of a double ("%.17g"); all CSV output
// goes through this so reruns are byte-identical.
std::string format_double(double v);

// Trajectory table, header `m,t,tau,E,dE2`.
void write_trajectory_csv(std::ostream& os,
                          const std::vector<AdaStepRecord>& steps);
std::vector<AdaStepRecord> read_trajectory_csv(std::istream& is);

// Learn table, header `t,loss,epochs,terminated_by,C_<label>,...` with the
// coefficient columns in basis order.
void write_learn_csv(std::ostream& os, const std::vector<LearnRecord>& records,
                     const std::vector<std::string>& labels);
struct LearnTable {
  std::vector<std::string> labels;
  std::vector<LearnRecord> records;  // checkpoint indices are not in the table
};
LearnTable read_learn_csv(std::istream& is);

// Ranking table, header `label,mean_deviation,stddev`, descending order.
void write_ranking_csv(std::ostream& os,
                       const std::vector<RankedElement>& ranking);
std::vector<RankedElement> read_ranking_csv(std::istream& is);

// Per-record deviation samples, header `t,dC_<label>,...`.
void write_deviations_csv(std::ostream& os, const DeviationStats& stats);

// Two-column series, header `t,<value_name>`.
void write_series_csv(std::ostream& os, const std::string& value_name,
                      const std::vector<double>& t,
                      const std::vector<double>& v);

// Violin data: density rows `label,x,density` and raw rows `label,sample`.
void write_violin_csv(std::ostream& density_os, std::ostream& samples_os,
                      const std::vector<DensityCurve>& curves);

// Minimal static SVG: one polyline per series on shared axes with a legend.
struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};
void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

}  // namespace effham::io
