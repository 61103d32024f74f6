#include "effham/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "effham/errors.hpp"

namespace effham::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("malformed numeric field '" + s + "'");
  }
}

long parse_long(const std::string& s) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("malformed integer field '" + s + "'");
  }
}

void expect_header(std::istream& is, const std::string& expected,
                   std::string* actual_out = nullptr) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty CSV input");
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
    line.pop_back();
  if (actual_out) {
    *actual_out = line;
    return;
  }
  if (line != expected)
    throw ConfigError("unexpected CSV header '" + line + "', wanted '" +
                      expected + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os,
                          const std::vector<AdaStepRecord>& steps) {
  os << "m,t,tau,E,dE2\n";
  for (const auto& s : steps) {
    os << s.m << ',' << format_double((double)s.t) << ','
       << format_double(s.tau) << ',' << format_double(s.E) << ','
       << format_double(s.dE2) << '\n';
  }
}

std::vector<AdaStepRecord> read_trajectory_csv(std::istream& is) {
  expect_header(is, "m,t,tau,E,dE2");
  std::vector<AdaStepRecord> steps;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split(line);
    if (f.size() != 5) throw ConfigError("trajectory row needs 5 fields");
    AdaStepRecord r;
    r.m = (int)parse_long(f[0]);
    r.t = parse_double(f[1]);
    r.tau = parse_double(f[2]);
    r.E = parse_double(f[3]);
    r.dE2 = parse_double(f[4]);
    steps.push_back(r);
  }
  return steps;
}

void write_learn_csv(std::ostream& os, const std::vector<LearnRecord>& records,
                     const std::vector<std::string>& labels) {
  os << "t,loss,epochs,terminated_by";
  for (const auto& l : labels) os << ",C_" << l;
  os << '\n';
  for (const auto& r : records) {
    if (r.C.size() != (Eigen::Index)labels.size())
      throw ConfigError("learn record size does not match label count");
    os << format_double(r.t) << ',' << format_double(r.loss) << ','
       << r.epochs_used << ',' << to_string(r.terminated_by);
    for (Eigen::Index a = 0; a < r.C.size(); ++a)
      os << ',' << format_double(r.C[a]);
    os << '\n';
  }
}

LearnTable read_learn_csv(std::istream& is) {
  std::string header;
  expect_header(is, "", &header);
  auto cols = split(header);
  if (cols.size() < 5 || cols[0] != "t" || cols[1] != "loss" ||
      cols[2] != "epochs" || cols[3] != "terminated_by")
    throw ConfigError("unexpected learn CSV header '" + header + "'");
  LearnTable table;
  for (std::size_t i = 4; i < cols.size(); ++i) {
    if (cols[i].rfind("C_", 0) != 0)
      throw ConfigError("coefficient column '" + cols[i] +
                        "' must be named C_<label>");
    table.labels.push_back(cols[i].substr(2));
  }
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split(line);
    if (f.size() != cols.size())
      throw ConfigError("learn row field count mismatch");
    LearnRecord r;
    r.t = parse_double(f[0]);
    r.loss = parse_double(f[1]);
    r.loss_last = r.loss;
    r.epochs_used = (int)parse_long(f[2]);
    if (f[3] == "cutoff") {
      r.terminated_by = Termination::cutoff;
    } else if (f[3] == "epoch_limit") {
      r.terminated_by = Termination::epoch_limit;
    } else {
      throw ConfigError("unknown termination value '" + f[3] + "'");
    }
    r.C.resize((Eigen::Index)table.labels.size());
    for (Eigen::Index a = 0; a < r.C.size(); ++a)
      r.C[a] = parse_double(f[4 + (std::size_t)a]);
    table.records.push_back(std::move(r));
  }
  return table;
}

void write_ranking_csv(std::ostream& os,
                       const std::vector<RankedElement>& ranking) {
  os << "label,mean_deviation,stddev\n";
  for (const auto& r : ranking)
    os << r.label << ',' << format_double(r.mean_deviation) << ','
       << format_double(r.stddev) << '\n';
}

std::vector<RankedElement> read_ranking_csv(std::istream& is) {
  expect_header(is, "label,mean_deviation,stddev");
  std::vector<RankedElement> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split(line);
    if (f.size() != 3) throw ConfigError("ranking row needs 3 fields");
    out.push_back({f[0], parse_double(f[1]), parse_double(f[2])});
  }
  return out;
}

void write_deviations_csv(std::ostream& os, const DeviationStats& stats) {
  os << 't';
  for (const auto& l : stats.labels) os << ",dC_" << l;
  os << '\n';
  for (Eigen::Index i = 0; i < stats.samples.rows(); ++i) {
    os << format_double(stats.times[(std::size_t)i]);
    for (Eigen::Index a = 0; a < stats.samples.cols(); ++a)
      os << ',' << format_double(stats.samples(i, a));
    os << '\n';
  }
}

void write_series_csv(std::ostream& os, const std::string& value_name,
                      const std::vector<double>& t,
                      const std::vector<double>& v) {
  if (t.size() != v.size())
    throw ConfigError("series columns differ in length");
  os << "t," << value_name << '\n';
  for (std::size_t i = 0; i < t.size(); ++i)
    os << format_double(t[i]) << ',' << format_double(v[i]) << '\n';
}

void write_violin_csv(std::ostream& density_os, std::ostream& samples_os,
                      const std::vector<DensityCurve>& curves) {
  density_os << "label,x,density\n";
  samples_os << "label,sample\n";
  for (const auto& c : curves) {
    for (std::size_t g = 0; g < c.grid.size(); ++g)
      density_os << c.label << ',' << format_double(c.grid[g]) << ','
                 << format_double(c.density[g]) << '\n';
    for (double s : c.samples)
      samples_os << c.label << ',' << format_double(s) << '\n';
  }
}

void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  constexpr double kW = 840, kH = 520;
  constexpr double kL = 80, kR = 24, kT = 48, kB = 56;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool any = false;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!any) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        any = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto px = [&](double x) {
    return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR);
  };
  auto py = [&](double y) {
    return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  // axes
  os << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR
     << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL
     << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 16
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">"
     << x_label << "</text>\n";
  os << "<text x=\"20\" y=\"" << (kT + kH - kB) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
     << " transform=\"rotate(-90 20 " << (kT + kH - kB) / 2 << ")\">"
     << y_label << "</text>\n";
  // extremal tick labels
  os << "<text x=\"" << kL << "\" y=\"" << kH - kB + 18
     << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(xmin)
     << "</text>\n";
  os << "<text x=\"" << kW - kR << "\" y=\"" << kH - kB + 18
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << format_double(xmax) << "</text>\n";
  os << "<text x=\"" << kL - 6 << "\" y=\"" << kH - kB
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << format_double(ymin) << "</text>\n";
  os << "<text x=\"" << kL - 6 << "\" y=\"" << kT + 4
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << format_double(ymax) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % (sizeof kColors / sizeof *kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    const double ly = kT + 16 * (double)k;
    os << "<line x1=\"" << kW - kR - 120 << "\" y1=\"" << ly << "\" x2=\""
       << kW - kR - 100 << "\" y2=\"" << ly << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kW - kR - 94 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace effham::io
