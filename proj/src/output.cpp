// Copyright 2026 The d2map Authors.
// SPDX-License-Identifier: Apache-2.0

#include "d2map/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <tuple>
#include <utility>

#include "d2map/error.hpp"

namespace d2map::io {

std::string format_value(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string fixed(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

CsvWriter::CsvWriter(std::string_view header) : buf_(header) { buf_ += '\n'; }

void CsvWriter::separator() {
  if (row_open_) buf_ += ',';
  row_open_ = true;
}

CsvWriter& CsvWriter::value(double v) {
  separator();
  buf_ += format_value(v);
  return *this;
}

CsvWriter& CsvWriter::count(std::size_t n) {
  separator();
  buf_ += std::to_string(n);
  return *this;
}

CsvWriter& CsvWriter::text(std::string_view s) {
  separator();
  buf_ += s;
  return *this;
}

void CsvWriter::end_row() {
  buf_ += '\n';
  row_open_ = false;
}

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgPlot::points(std::span<const analysis::Point> pts,
                     std::string_view color) {
  layers_.push_back({Layer::Kind::kPoints, {pts.begin(), pts.end()},
                     std::string(color)});
}

void SvgPlot::polyline(std::span<const analysis::Point> pts,
                       std::string_view color) {
  layers_.push_back({Layer::Kind::kPolyline, {pts.begin(), pts.end()},
                     std::string(color)});
}

void SvgPlot::segments(std::span<const analysis::Segment> segs,
                       std::string_view color) {
  Layer layer{Layer::Kind::kSegments, {}, std::string(color)};
  for (const auto& s : segs) {
    layer.pts.push_back(s.from);
    layer.pts.push_back(s.to);
  }
  layers_.push_back(std::move(layer));
}

void SvgPlot::diagonal(std::string_view color) {
  layers_.push_back({Layer::Kind::kDiagonal, {}, std::string(color)});
}

std::string SvgPlot::render() const {
  constexpr double kWidth = 800, kHeight = 560;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  bool has_diagonal = false;
  for (const auto& layer : layers_) {
    has_diagonal = has_diagonal || layer.kind == Layer::Kind::kDiagonal;
    for (const auto& p : layer.pts) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (has_diagonal) {
    x0 = y0 = std::min(x0, y0);
    x1 = y1 = std::max(x1, y1);
  }
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return fixed(kLeft + (x - x0) / (x1 - x0) * pw); };
  auto sy = [&](double y) {
    return fixed(kTop + ph - (y - y0) / (y1 - y0) * ph);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"560\" viewBox=\"0 0 800 560\">\n";
  out += "<rect width=\"800\" height=\"560\" fill=\"white\"/>\n";
  out += "<rect x=\"70\" y=\"40\" width=\"" + fixed(pw) + "\" height=\"" +
         fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
         escape(title_) + "</text>\n";
  out += "<text x=\"400\" y=\"548\" text-anchor=\"middle\" font-size=\"13\">" +
         escape(x_label_) + "</text>\n";
  out += "<text x=\"16\" y=\"280\" text-anchor=\"middle\" font-size=\"13\" "
         "transform=\"rotate(-90 16 280)\">" +
         escape(y_label_) + "</text>\n";
  for (const auto& [v, anchor, x, y] :
       {std::tuple{x0, "start", kLeft, kHeight - kBottom + 16},
        std::tuple{x1, "end", kWidth - kRight, kHeight - kBottom + 16}})
    out += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) +
           "\" text-anchor=\"" + anchor + "\" font-size=\"11\">" +
           format_value(v) + "</text>\n";
  for (const auto& [v, y] : {std::pair{y0, kHeight - kBottom}, std::pair{y1, kTop}})
    out += "<text x=\"66\" y=\"" + fixed(y + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + format_value(v) +
           "</text>\n";

  for (const auto& layer : layers_) {
    switch (layer.kind) {
      case Layer::Kind::kDiagonal:
        out += "<line x1=\"" + sx(x0) + "\" y1=\"" + sy(y0) + "\" x2=\"" +
               sx(x1) + "\" y2=\"" + sy(y1) + "\" stroke=\"" + layer.color +
               "\" stroke-dasharray=\"4 3\"/>\n";
        break;
      case Layer::Kind::kPoints:
        out += "<g fill=\"" + layer.color + "\">\n";
        for (const auto& p : layer.pts)
          out += "<circle cx=\"" + sx(p.x) + "\" cy=\"" + sy(p.y) +
                 "\" r=\"1.2\"/>\n";
        out += "</g>\n";
        break;
      case Layer::Kind::kPolyline:
        out += "<polyline fill=\"none\" stroke=\"" + layer.color +
               "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < layer.pts.size(); ++i) {
          if (i) out += ' ';
          out += sx(layer.pts[i].x) + ',' + sy(layer.pts[i].y);
        }
        out += "\"/>\n";
        break;
      case Layer::Kind::kSegments:
        out += "<g stroke=\"" + layer.color + "\" stroke-width=\"0.8\">\n";
        for (std::size_t i = 0; i + 1 < layer.pts.size(); i += 2)
          out += "<line x1=\"" + sx(layer.pts[i].x) + "\" y1=\"" +
                 sy(layer.pts[i].y) + "\" x2=\"" + sx(layer.pts[i + 1].x) +
                 "\" y2=\"" + sy(layer.pts[i + 1].y) + "\"/>\n";
        out += "</g>\n";
        break;
    }
  }
  out += "</svg>\n";
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) fail(ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace d2map::io
