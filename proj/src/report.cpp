#include "rumorgraph/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rumorgraph/csv.hpp"

namespace rumorgraph {

namespace {

constexpr double kWidth = 480, kHeight = 360, kMargin = 48;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Plot {
  std::ostream& out;
  double xmin, xmax;

  double px(double x) const {
    const double span = xmax > xmin ? xmax - xmin : 1.0;
    return kMargin + (x - xmin) / span * (kWidth - 2 * kMargin);
  }
  static double py(double y) { return kHeight - kMargin - y * (kHeight - 2 * kMargin); }

  void begin(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
        << title << "</text>\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\"" << kWidth - kMargin
        << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << py(0) << "\" x2=\"" << kMargin << "\" y2=\""
        << py(1) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      const double y = t / 4.0;
      out << "<text x=\"" << kMargin - 6 << "\" y=\"" << py(y) + 4
          << "\" text-anchor=\"end\">" << format_fixed(y, 2) << "</text>\n";
    }
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\">" << xlabel << "</text>\n"
        << "<text x=\"14\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << kHeight / 2 << ")\">" << ylabel << "</text>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* color,
                const char* dash = nullptr) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out << ' ';
      out << format_fixed(px(pts[i].first), 2) << ',' << format_fixed(py(pts[i].second), 2);
    }
    out << "\"/>\n";
  }

  void legend(std::size_t row, const std::string& label, const char* color) {
    const double y = kMargin + 14.0 * double(row);
    out << "<line x1=\"" << kWidth - kMargin - 110 << "\" y1=\"" << y << "\" x2=\""
        << kWidth - kMargin - 95 << "\" y2=\"" << y << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kWidth - kMargin - 90 << "\" y=\"" << y + 4 << "\">" << label
        << "</text>\n";
  }

  void end() { out << "</svg>\n"; }
};

}  // namespace

void write_sentiment_report_csv(const std::string& incident, const SentimentReport& report,
                                std::ostream& out) {
  out << "incident,category,sentiment,count,percent\n";
  auto rows = [&](const char* category, const SentimentTally& t) {
    const std::string prefix = csv_escape(incident) + ',' + category + ',';
    out << prefix << "positive," << t.positive << ',' << format_fixed(t.positive_pct(), 2) << '\n';
    out << prefix << "negative," << t.negative << ',' << format_fixed(t.negative_pct(), 2) << '\n';
    out << prefix << "neutral," << t.neutral << ",\n";
  };
  rows("rumor", report.rumor);
  rows("non-rumor", report.non_rumor);
}

void write_degree_report_csv(const DegreeScoreReport& report, std::ostream& out) {
  out << "# spearman," << format_double(report.spearman) << '\n';
  out << "user_id,degree,score\n";
  for (const auto& e : report.top) {
    out << csv_escape(e.user_id) << ',' << e.degree << ',' << format_double(e.score) << '\n';
  }
}

void write_fold_metrics_svg(const ExperimentResult& result, std::ostream& out) {
  std::size_t folds = 0;
  for (const auto& m : result.models) folds = std::max(folds, m.folds.size());
  Plot plot{out, 1.0, double(std::max<std::size_t>(folds, 2))};
  plot.begin("Per-fold metrics", "fold", "score");
  struct Metric {
    const char* name;
    double MetricsRow::*field;
  };
  const Metric metrics[] = {{"accuracy", &MetricsRow::accuracy},
                            {"f1", &MetricsRow::f1},
                            {"auc", &MetricsRow::auc_roc}};
  std::size_t series = 0;
  for (std::size_t m = 0; m < result.models.size(); ++m) {
    const auto& model = result.models[m];
    for (const auto& metric : metrics) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& f : model.folds) {
        const double v = f.metrics.*metric.field;
        if (std::isfinite(v)) pts.emplace_back(double(f.fold + 1), v);
      }
      const char* color = kPalette[series % std::size(kPalette)];
      plot.polyline(pts, color, m == 0 ? nullptr : "4 3");
      plot.legend(series, std::string(to_string(model.kind)) + " " + metric.name, color);
      ++series;
    }
  }
  plot.end();
}

void write_roc_svg(const ExperimentResult& result, std::ostream& out) {
  Plot plot{out, 0.0, 1.0};
  plot.begin("ROC (pooled out-of-fold)", "false positive rate", "true positive rate");
  plot.polyline({{0.0, 0.0}, {1.0, 1.0}}, "#999999", "2 3");
  for (std::size_t m = 0; m < result.models.size(); ++m) {
    const auto& model = result.models[m];
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : model.pooled_roc.curve) pts.emplace_back(p.fpr, p.tpr);
    const char* color = kPalette[m % std::size(kPalette)];
    plot.polyline(pts, color);
    plot.legend(m, std::string(to_string(model.kind)) + " auc " +
                       format_fixed(model.pooled_roc.auc, 3),
                color);
  }
  plot.end();
}

void write_summary_markdown(const std::string& incident, const ExperimentResult& result,
                            std::ostream& out) {
  out << "# " << incident << "\n\n"
      << "| model | accuracy | precision (macro) | recall (macro) | f1 (macro) | f1 (micro) | "
         "auc-roc |\n"
      << "|---|---|---|---|---|---|---|\n";
  for (const auto& m : result.models) {
    const auto& r = m.macro;
    out << "| " << to_string(m.kind) << " | " << format_fixed(r.accuracy, 3) << " | "
        << format_fixed(r.precision, 3) << " | " << format_fixed(r.recall, 3) << " | "
        << format_fixed(r.f1, 3) << " | " << format_fixed(r.f1_micro, 3) << " | "
        << format_fixed(r.auc_roc, 3) << " |\n";
  }
}

}  // namespace rumorgraph
