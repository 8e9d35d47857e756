#include "uhw/experiment/plot_script.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace uhw::experiment {

namespace {

constexpr const char* kPrelude = R"py(#!/usr/bin/env python3
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = {csv}
OUT_PATH = sys.argv[1] if len(sys.argv) > 1 else {png}


def load(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


rows = load(CSV_PATH)
)py";

constexpr const char* kTailOverlay = R"py(
t = [float(r["threshold"]) for r in rows]
est = [float(r["estimate"]) for r in rows]
lo = [float(r["ci_low"]) for r in rows]
hi = [float(r["ci_high"]) for r in rows]

fig, ax = plt.subplots(figsize=(6, 4))
ax.fill_between(t, lo, hi, alpha=0.3, label="95% CI")
ax.plot(t, est, marker=".", label="empirical")
if rows and "bound" in rows[0]:
    ax.plot(t, [float(r["bound"]) for r in rows], linestyle="--", label="bound")
ax.set_yscale("log")
ax.set_xlabel("threshold")
ax.set_ylabel("P(X > t)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT_PATH, dpi=150)
)py";

constexpr const char* kPhaseDiagram = R"py(
alphas = sorted({float(r["alpha"]) for r in rows})
fig, axes = plt.subplots(1, len(alphas), figsize=(5 * len(alphas), 4), squeeze=False)
for ax, a in zip(axes[0], alphas):
    sub = [r for r in rows if float(r["alpha"]) == a]
    ms = sorted({int(r["m"]) for r in sub})
    ss = sorted({int(r["s"]) for r in sub})
    grid = [[float("nan")] * len(ms) for _ in ss]
    for r in sub:
        grid[ss.index(int(r["s"]))][ms.index(int(r["m"]))] = int(r["successes"]) / int(r["trials"])
    im = ax.imshow(grid, origin="lower", aspect="auto", vmin=0.0, vmax=1.0, cmap="viridis")
    ax.set_xticks(range(len(ms)), [str(m) for m in ms])
    ax.set_yticks(range(len(ss)), [str(s) for s in ss])
    ax.set_xlabel("m")
    ax.set_ylabel("s")
    ax.set_title(f"alpha = {a:g}")
    fig.colorbar(im, ax=ax, label="success rate")
fig.tight_layout()
fig.savefig(OUT_PATH, dpi=150)
)py";

constexpr const char* kMomentGrowth = R"py(
p = [float(r["p"]) for r in rows]
est = [float(r["estimate"]) for r in rows]
lo = [float(r["ci_low"]) for r in rows]
hi = [float(r["ci_high"]) for r in rows]

fig, ax = plt.subplots(figsize=(6, 4))
ax.fill_between(p, lo, hi, alpha=0.3, label="+-1.96 SE")
ax.plot(p, est, marker="o", label="L_p norm")
ax.set_xscale("log")
ax.set_yscale("log")
ax.set_xlabel("p")
ax.set_ylabel("||X||_p")
ax.legend()
fig.tight_layout()
fig.savefig(OUT_PATH, dpi=150)
)py";

std::string python_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

void replace_all(std::string& text, const std::string& from, const std::string& to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
}

}  // namespace

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::tail_overlay:
      return "tail_overlay";
    case PlotKind::phase_diagram:
      return "phase_diagram";
    case PlotKind::moment_growth:
      return "moment_growth";
  }
  return "";
}

PlotKind plot_kind_from_string(const std::string& tag) {
  for (PlotKind k : {PlotKind::tail_overlay, PlotKind::phase_diagram, PlotKind::moment_growth}) {
    if (to_string(k) == tag) return k;
  }
  throw std::invalid_argument("unknown plot kind '" + tag + "'");
}

const std::vector<std::string>& required_columns(PlotKind kind) {
  static const std::vector<std::string> tail{"threshold", "estimate", "ci_low", "ci_high"};
  static const std::vector<std::string> phase{"alpha", "m", "s", "trials", "successes"};
  static const std::vector<std::string> moment{"p", "estimate", "ci_low", "ci_high"};
  switch (kind) {
    case PlotKind::tail_overlay:
      return tail;
    case PlotKind::phase_diagram:
      return phase;
    case PlotKind::moment_growth:
      return moment;
  }
  return tail;
}

std::vector<std::string> read_csv_header(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot open " + csv.string());
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> cols;
  std::stringstream ss(line);
  for (std::string col; std::getline(ss, col, ',');) cols.push_back(col);
  return cols;
}

std::filesystem::path emit_plot_script(const std::filesystem::path& csv, PlotKind kind,
                                       std::optional<std::filesystem::path> script) {
  const auto header = read_csv_header(csv);
  for (const auto& col : required_columns(kind)) {
    if (std::find(header.begin(), header.end(), col) == header.end()) throw ColumnMismatchError(col);
  }
  std::filesystem::path csv_for_script = std::filesystem::absolute(csv);
  const std::filesystem::path out =
      script.value_or(std::filesystem::path(csv).replace_extension("." + to_string(kind) + ".py"));
  std::filesystem::path png = csv_for_script;
  png.replace_extension("." + to_string(kind) + ".png");

  std::string text = kPrelude;
  replace_all(text, "{csv}", python_string(csv_for_script.string()));
  replace_all(text, "{png}", python_string(png.string()));
  switch (kind) {
    case PlotKind::tail_overlay:
      text += kTailOverlay;
      break;
    case PlotKind::phase_diagram:
      text += kPhaseDiagram;
      break;
    case PlotKind::moment_growth:
      text += kMomentGrowth;
      break;
  }
  std::ofstream f(out, std::ios::trunc);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + out.string());
  return out;
}

}  // namespace uhw::experiment
