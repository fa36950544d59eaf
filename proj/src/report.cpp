/* Copyright 2026 The Percept Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "percept/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "percept/errors.hpp"
#include "percept/font_data.hpp"
#include "percept/png_io.hpp"

namespace fs = std::filesystem;

namespace percept::report {
namespace {

std::string fmt(double v, const char* spec = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct Rgb {
  std::uint8_t r, g, b;
};

constexpr Rgb kSeriesColors[] = {
    {66, 133, 244}, {219, 68, 55},  {244, 180, 0},
    {15, 157, 88},  {171, 71, 188}, {0, 172, 193},
};

class Canvas {
 public:
  Canvas(int h, int w, Rgb bg) : h_(h), w_(w), data_(static_cast<std::size_t>(h) * w * 3) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) set(y, x, bg);
    }
  }

  void set(int y, int x, Rgb c) {
    if (y < 0 || y >= h_ || x < 0 || x >= w_) return;
    const std::size_t i = (static_cast<std::size_t>(y) * w_ + x) * 3;
    data_[i] = c.r;
    data_[i + 1] = c.g;
    data_[i + 2] = c.b;
  }

  void fill_rect(int y0, int x0, int y1, int x1, Rgb c) {
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) set(y, x, c);
    }
  }

  void hline(int y, int x0, int x1, Rgb c) { fill_rect(y, x0, y + 1, x1, c); }
  void vline(int x, int y0, int y1, Rgb c) { fill_rect(y0, x, y1, x + 1, c); }

  int text_width(const std::string& s) const {
    int w = 0;
    for (char ch : s) {
      const int code = static_cast<unsigned char>(ch);
      w += (code < 32 || code > 126) ? 4 : kFontAdvance[code - 32];
    }
    return w;
  }

  void draw_text(int y, int x, const std::string& s, Rgb c) {
    for (char ch : s) {
      const int code = static_cast<unsigned char>(ch);
      if (code < 32 || code > 126) {
        x += 4;
        continue;
      }
      const auto& rows = kFontRows[code - 32];
      for (int ry = 0; ry < kFontHeight; ++ry) {
        for (int rx = 0; rx < 11; ++rx) {
          if (rows[ry] & (1u << rx)) set(y + ry, x + rx, c);
        }
      }
      x += kFontAdvance[code - 32];
    }
  }

  void save(const std::string& path) const {
    imaging::write_png_rgb8(path, data_.data(), h_, w_);
  }

 private:
  int h_, w_;
  std::vector<std::uint8_t> data_;
};

}  // namespace

std::string render_csv(const harness::EvaluationReport& rep) {
  std::string out =
      "pipeline,attack,clean_acc,attack_acc,mean_queries,mean_linf,mean_l0\n";
  for (const auto& cell : rep.cells) {
    out += cell.pipeline + "," + cell.attack + ",";
    if (cell.capability_error) {
      out += fmt(cell.clean_acc) + ",N/A,N/A,N/A,N/A\n";
      continue;
    }
    out += fmt(cell.clean_acc) + "," + fmt(cell.attack_acc) + "," +
           fmt(cell.mean_queries, "%.2f") + "," +
           fmt(cell.mean_linf, "%.6f") + "," + fmt(cell.mean_l0, "%.2f") +
           "\n";
  }
  return out;
}

std::string render_markdown(const harness::EvaluationReport& rep) {
  std::string out = "| pipeline | attack | clean acc | attack acc | queries | "
                    "linf | l0 |\n";
  out += "|---|---|---|---|---|---|---|\n";
  for (const auto& cell : rep.cells) {
    out += "| " + cell.pipeline + " | " + cell.attack + " | " +
           fmt(cell.clean_acc, "%.2f") + " | ";
    if (cell.capability_error) {
      out += "N/A | N/A | N/A | N/A |\n";
      continue;
    }
    out += fmt(cell.attack_acc, "%.2f") + " | " +
           fmt(cell.mean_queries, "%.1f") + " | " +
           fmt(cell.mean_linf, "%.4f") + " | " + fmt(cell.mean_l0, "%.1f") +
           " |\n";
  }
  if (rep.extra.contains("nsr_deltas")) {
    out += "\nNSR minus SR accuracy deltas:\n\n";
    out += "| attack | nsr | sr | delta |\n|---|---|---|---|\n";
    for (const auto& d : rep.extra["nsr_deltas"]) {
      out += "| " + d.at("attack").get<std::string>() + " | " +
             fmt(d.at("nsr_acc").get<double>(), "%.2f") + " | " +
             fmt(d.at("sr_acc").get<double>(), "%.2f") + " | " +
             fmt(d.at("delta").get<double>(), "%.2f") + " |\n";
    }
  }
  return out;
}

void draw_bar_chart(const std::string& path, const std::string& title,
                    const std::vector<std::string>& group_labels,
                    const std::vector<std::string>& series_labels,
                    const std::vector<std::vector<double>>& values) {
  if (values.size() != series_labels.size())
    throw ParamError("chart: series/label count mismatch");
  for (const auto& row : values) {
    if (row.size() != group_labels.size())
      throw ParamError("chart: value/group count mismatch");
  }

  const int ng = static_cast<int>(group_labels.size());
  const int ns = static_cast<int>(series_labels.size());
  const int bar_w = 26;
  const int gap = 28;
  const int plot_h = 220;
  const int left = 56, top = 40, bottom = 70;
  const int plot_w = std::max(ng * (ns * bar_w + gap) + gap, 260);
  const int W = left + plot_w + 24;
  const int H = top + plot_h + bottom;

  const Rgb white{255, 255, 255}, black{30, 30, 30}, grey{200, 200, 200};
  Canvas canvas(H, W, white);

  canvas.draw_text(12, left, title, black);

  // axes and horizontal guides every 20 accuracy points
  for (int pct = 0; pct <= 100; pct += 20) {
    const int y = top + plot_h - (plot_h * pct) / 100;
    canvas.hline(y, left, left + plot_w, pct == 0 ? black : grey);
    canvas.draw_text(y - 5, 16, fmt(static_cast<double>(pct), "%.0f"), black);
  }
  canvas.vline(left, top, top + plot_h + 1, black);

  for (int g = 0; g < ng; ++g) {
    const int gx = left + gap + g * (ns * bar_w + gap);
    for (int s = 0; s < ns; ++s) {
      const double v = std::clamp(values[s][g], 0.0, 100.0);
      const int bh = static_cast<int>(plot_h * v / 100.0);
      const Rgb color = kSeriesColors[s % 6];
      canvas.fill_rect(top + plot_h - bh, gx + s * bar_w, top + plot_h,
                       gx + s * bar_w + bar_w - 4, color);
      canvas.draw_text(top + plot_h - bh - 13, gx + s * bar_w,
                       fmt(values[s][g], "%.0f"), black);
    }
    canvas.draw_text(top + plot_h + 8, gx, group_labels[g], black);
  }

  // legend
  int lx = left;
  const int ly = top + plot_h + 30;
  for (int s = 0; s < ns; ++s) {
    canvas.fill_rect(ly, lx, ly + 10, lx + 10, kSeriesColors[s % 6]);
    canvas.draw_text(ly - 1, lx + 14, series_labels[s], black);
    lx += 22 + canvas.text_width(series_labels[s]);
  }

  canvas.save(path);
}

std::vector<std::string> report_render(const harness::EvaluationReport& rep,
                                       const std::string& output_dir) {
  fs::create_directories(output_dir);
  const fs::path dir(output_dir);
  std::vector<std::string> files;

  const std::string csv_path =
      (dir / ("report-" + rep.fingerprint + ".csv")).string();
  {
    std::ofstream os(csv_path, std::ios::binary | std::ios::trunc);
    if (!os) throw IOError("report: cannot write " + csv_path);
    os << render_csv(rep);
  }
  files.push_back(csv_path);

  const std::string md_path =
      (dir / ("report-" + rep.fingerprint + ".md")).string();
  {
    std::ofstream os(md_path, std::ios::binary | std::ios::trunc);
    if (!os) throw IOError("report: cannot write " + md_path);
    os << render_markdown(rep);
  }
  files.push_back(md_path);

  // one chart per attack: clean vs under-attack accuracy across pipelines
  std::vector<std::string> attack_names;
  for (const auto& cell : rep.cells) {
    if (std::find(attack_names.begin(), attack_names.end(), cell.attack) ==
        attack_names.end())
      attack_names.push_back(cell.attack);
  }
  for (const auto& attack : attack_names) {
    std::vector<std::string> pipelines;
    std::vector<double> clean, under;
    for (const auto& cell : rep.cells) {
      if (cell.attack != attack || cell.capability_error) continue;
      pipelines.push_back(cell.pipeline);
      clean.push_back(cell.clean_acc);
      under.push_back(cell.attack_acc);
    }
    if (pipelines.empty()) continue;
    std::string safe = attack;
    std::replace(safe.begin(), safe.end(), '/', '_');
    const std::string png_path =
        (dir / ("report-" + rep.fingerprint + "-" + safe + ".png")).string();
    draw_bar_chart(png_path, "accuracy under " + attack, pipelines,
                   {"clean", "under attack"}, {clean, under});
    files.push_back(png_path);
  }
  return files;
}

}  // namespace percept::report
