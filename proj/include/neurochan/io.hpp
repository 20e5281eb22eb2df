#pragma once

// Serialization helpers: number formatting, CSV rows, Eigen <-> JSON, atomic
// file writes and a bare-bones SVG polyline plot.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "neurochan/numerics.hpp"

namespace neurochan::io {

using json = nlohmann::json;

/// Shortest round-trippable representation; identical input gives identical text.
inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += csv_field(fields[i]);
  }
  row += '\n';
  return row;
}

inline json to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

/// Nested array [[...], ...] to a dense matrix; rows must have equal length.
inline Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw DimensionError(field + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) throw DimensionError(field + ": expected an array of rows");
    cols = static_cast<Eigen::Index>(j[0].size());
  }
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DimensionError(field + ": ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number()) throw DimensionError(field + ": non-numeric entry");
      M(i, c) = e.get<double>();
    }
  }
  return M;
}

inline Vector vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw DimensionError(field + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw DimensionError(field + ": non-numeric entry");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

/// Writes to a sibling temp file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

/// Minimal line plot: axes box, zero lines and polylines.
inline std::string svg_plot(const std::vector<SvgSeries>& series, const std::string& title, int width = 640,
                            int height = 480) {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double pad = 40;
  auto px = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (width - 2 * pad); };
  auto py = [&](double y) { return height - pad - (y - ymin) / (ymax - ymin) * (height - 2 * pad); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << pad << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << width - 2 * pad << "\" height=\""
     << height - 2 * pad << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (xmin < 0 && xmax > 0) {
    os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << pad << "\" x2=\"" << fmt(px(0)) << "\" y2=\""
       << height - pad << "\" stroke=\"#bbb\"/>\n";
  }
  if (ymin < 0 && ymax > 0) {
    os << "<line x1=\"" << pad << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << width - pad << "\" y2=\""
       << fmt(py(0)) << "\" stroke=\"#bbb\"/>\n";
  }
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) os << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace neurochan::io
