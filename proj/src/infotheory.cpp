// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "evonat/infotheory.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace evonat {

namespace {

std::vector<std::string> default_labels(const char* prefix, Eigen::Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    labels.push_back(prefix + std::to_string(i));
  return labels;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

JointModel JointModel::with_default_labels(Eigen::MatrixXd table) {
  const Eigen::Index rows = table.rows();
  const Eigen::Index cols = table.cols();
  return JointModel(std::move(table), default_labels("t", rows),
                    default_labels("x", cols));
}

JointModel normalize_counts(const Eigen::MatrixXd& counts, double alpha) {
  if (counts.size() == 0) throw EmptyEvidence("normalize_counts: empty table");
  if (!counts.allFinite())
    throw NumericalError("normalize_counts: non-finite count");
  if ((counts.array() < 0.0).any())
    throw DegenerateInput("normalize_counts: negative count");
  if (alpha < 0.0) throw ConfigError("normalize_counts: negative smoothing");
  Eigen::MatrixXd mass = counts.array() + alpha;
  const double total = mass.sum();
  if (total <= 0.0)
    throw EmptyEvidence("normalize_counts: all counts are zero");
  return JointModel::with_default_labels(mass / total);
}

JointModel two_state_joint(const ProbabilityVector& external_priors,
                           double correctness) {
  if (external_priors.size() != 2)
    throw ShapeError("two_state_joint: need exactly two external states");
  if (correctness < 0.0 || correctness > 1.0)
    throw ConfigError("two_state_joint: correctness outside [0, 1]");
  Eigen::MatrixXd table(2, 2);
  for (Eigen::Index x = 0; x < 2; ++x) {
    for (Eigen::Index t = 0; t < 2; ++t) {
      const double hit = (t == x) ? correctness : 1.0 - correctness;
      table(t, x) = hit * external_priors(x);
    }
  }
  return JointModel::with_default_labels(std::move(table));
}

void write_joint_csv(const JointModel& m, std::ostream& out) {
  out << "t\\x";
  for (const auto& lx : m.x_labels()) out << ',' << lx;
  out << '\n';
  for (Eigen::Index t = 0; t < m.table().rows(); ++t) {
    out << m.t_labels()[static_cast<std::size_t>(t)];
    for (Eigen::Index x = 0; x < m.table().cols(); ++x)
      out << ',' << format_double(m.table()(t, x));
    out << '\n';
  }
}

JointModel read_joint_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw EmptyEvidence("read_joint_csv: empty stream");
  const auto header = split_csv_line(line);
  if (header.size() < 2) throw ShapeError("read_joint_csv: malformed header");
  std::vector<std::string> x_labels(header.begin() + 1, header.end());
  std::vector<std::string> t_labels;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw ShapeError("read_joint_csv: ragged row");
    t_labels.push_back(fields[0]);
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i)
      row.push_back(std::stod(fields[i]));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw EmptyEvidence("read_joint_csv: no data rows");
  Eigen::MatrixXd table(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(x_labels.size()));
  for (Eigen::Index t = 0; t < table.rows(); ++t)
    for (Eigen::Index x = 0; x < table.cols(); ++x)
      table(t, x) = rows[static_cast<std::size_t>(t)]
                        [static_cast<std::size_t>(x)];
  return JointModel(std::move(table), std::move(t_labels),
                    std::move(x_labels));
}

}  // namespace evonat
