#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rumorgraph/eval.hpp"
#include "rumorgraph/graph.hpp"
#include "rumorgraph/sentiment.hpp"

namespace rumorgraph {

// category,sentiment,count,percent rows; neutral counted but excluded from percentages.
void write_sentiment_report_csv(const std::string& incident, const SentimentReport& report,
                                std::ostream& out);

void write_degree_report_csv(const DegreeScoreReport& report, std::ostream& out);

// Line plot of each metric across folds, one polyline per model and metric.
void write_fold_metrics_svg(const ExperimentResult& result, std::ostream& out);

// Pooled out-of-fold ROC curve per model with the chance diagonal.
void write_roc_svg(const ExperimentResult& result, std::ostream& out);

// Markdown table of the macro rows, one line per model.
void write_summary_markdown(const std::string& incident, const ExperimentResult& result,
                            std::ostream& out);

}  // namespace rumorgraph
