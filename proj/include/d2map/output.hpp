// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d2map/analysis.hpp"

namespace d2map::io {

// 17 significant digits, shortest of fixed/scientific, locale independent.
std::string format_value(double v);

// Builds a CSV document in memory. Rows use LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::string_view header);

  CsvWriter& value(double v);
  CsvWriter& count(std::size_t n);
  CsvWriter& text(std::string_view s);
  void end_row();

  const std::string& str() const noexcept { return buf_; }

 private:
  void separator();

  std::string buf_;
  bool row_open_ = false;
};

// Minimal self-contained SVG plot: scatter points, polylines and segments
// in data coordinates, auto-scaled to a fixed canvas.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void points(std::span<const analysis::Point> pts, std::string_view color);
  void polyline(std::span<const analysis::Point> pts, std::string_view color);
  void segments(std::span<const analysis::Segment> segs, std::string_view color);
  void diagonal(std::string_view color);

  std::string render() const;

 private:
  struct Layer {
    enum class Kind { kPoints, kPolyline, kSegments, kDiagonal } kind;
    std::vector<analysis::Point> pts;
    std::string color;
  };

  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Layer> layers_;
};

void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace d2map::io
