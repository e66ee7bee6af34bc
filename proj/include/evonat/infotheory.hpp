// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Discrete information measures over empirical state tables.
//
// Everything is measured in bits (base-2 logs). Cells with zero mass
// contribute zero, the usual 0*log 0 = 0 convention. Joint tables are laid
// out with one row per internal state t and one column per external state x,
// so row sums give the internal marginal P_i(t) and column sums give the
// source distribution p_s(x).

#include <Eigen/Core>
#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "evonat/errors.hpp"

namespace evonat {

inline constexpr double kProbabilitySumTol = 1e-9;

// Finite distribution over a finite state set. Construction validates that
// entries are non-negative and sum to one within kProbabilitySumTol.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(Eigen::VectorXd probs) : probs_(std::move(probs)) {
    if (probs_.size() == 0)
      throw EmptyEvidence("ProbabilityVector: empty vector");
    if (!probs_.allFinite())
      throw NumericalError("ProbabilityVector: non-finite entry");
    if ((probs_.array() < 0.0).any())
      throw DegenerateInput("ProbabilityVector: negative entry");
    if (std::abs(probs_.sum() - 1.0) > kProbabilitySumTol)
      throw DegenerateInput("ProbabilityVector: entries do not sum to one");
  }

  const Eigen::VectorXd& probs() const { return probs_; }
  Eigen::Index size() const { return probs_.size(); }
  double operator()(Eigen::Index i) const { return probs_(i); }

 private:
  Eigen::VectorXd probs_;
};

// Non-negative fitness measured in bits.
struct FitnessValue {
  double bits = 0.0;
};

// Joint distribution of (internal state, external state) pairs, i.e. an
// information model of an environment: rows are internal states, columns are
// external states.
class JointModel {
 public:
  JointModel(Eigen::MatrixXd table, std::vector<std::string> t_labels,
             std::vector<std::string> x_labels)
      : table_(std::move(table)),
        t_labels_(std::move(t_labels)),
        x_labels_(std::move(x_labels)) {
    if (table_.size() == 0) throw EmptyEvidence("JointModel: empty table");
    if (!table_.allFinite())
      throw NumericalError("JointModel: non-finite entry");
    if ((table_.array() < 0.0).any() || (table_.array() > 1.0).any())
      throw DegenerateInput("JointModel: entry outside [0, 1]");
    if (std::abs(table_.sum() - 1.0) > kProbabilitySumTol)
      throw DegenerateInput("JointModel: cells do not sum to one");
    if (t_labels_.size() != static_cast<std::size_t>(table_.rows()) ||
        x_labels_.size() != static_cast<std::size_t>(table_.cols()))
      throw ShapeError("JointModel: label count does not match table");
  }

  static JointModel with_default_labels(Eigen::MatrixXd table);

  const Eigen::MatrixXd& table() const { return table_; }
  const std::vector<std::string>& t_labels() const { return t_labels_; }
  const std::vector<std::string>& x_labels() const { return x_labels_; }

  // P_i(t): marginal of the internal states (row sums).
  Eigen::VectorXd internal_marginal() const { return table_.rowwise().sum(); }
  // p_s(x): marginal of the external states (column sums).
  Eigen::VectorXd external_marginal() const {
    return table_.colwise().sum().transpose();
  }

 private:
  Eigen::MatrixXd table_;
  std::vector<std::string> t_labels_;
  std::vector<std::string> x_labels_;
};

// Shannon entropy in bits of a non-negative weight vector that sums to ~1.
// Works on any Eigen expression; validity of the distribution is the
// caller's job (ProbabilityVector does it by type).
template <typename Derived>
double entropy_bits(const Eigen::MatrixBase<Derived>& p) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      const double v = p(i, j);
      if (v > 0.0) h -= v * std::log2(v);
    }
  }
  return h;
}

inline double entropy(const ProbabilityVector& p) {
  return entropy_bits(p.probs());
}

// Mutual information in bits of a normalized joint table: the sum of
// P(t,x) * log2(P(t,x) / (P_i(t) * p_s(x))) over supported cells. Tiny
// negative rounding residue is clamped to zero.
//
// Marginals use plain ascending-index loops and cells are accumulated
// diagonal first, then mirror pairs (i,j)+(j,i) as two-term sub-sums, so the
// rounded result cannot change when the input is transposed.
template <typename Derived>
double mutual_information_bits(const Eigen::MatrixBase<Derived>& joint) {
  const Eigen::MatrixXd m = joint;  // materialize once
  if (!m.allFinite())
    throw NumericalError("mutual_information: non-finite entry");
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::VectorXd pt = Eigen::VectorXd::Zero(rows);
  Eigen::VectorXd px = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index t = 0; t < rows; ++t)
    for (Eigen::Index x = 0; x < cols; ++x) pt(t) += m(t, x);
  for (Eigen::Index x = 0; x < cols; ++x)
    for (Eigen::Index t = 0; t < rows; ++t) px(x) += m(t, x);
  const auto term = [&](Eigen::Index t, Eigen::Index x) {
    const double v = m(t, x);
    return v > 0.0 ? v * std::log2(v / (pt(t) * px(x))) : 0.0;
  };
  const Eigen::Index span = rows < cols ? cols : rows;
  double f = 0.0;
  for (Eigen::Index d = 0; d < span; ++d) {
    if (d < rows && d < cols) f += term(d, d);
    for (Eigen::Index j = d + 1; j < span; ++j) {
      double pair = 0.0;
      if (d < rows && j < cols) pair += term(d, j);
      if (j < rows && d < cols) pair += term(j, d);
      f += pair;
    }
  }
  return f > 0.0 ? f : 0.0;
}

inline FitnessValue mutual_information(const JointModel& m) {
  return FitnessValue{mutual_information_bits(m.table())};
}

// Turns a table of per-cell observation counts into a JointModel. Counts
// must be non-negative with positive total. alpha adds Laplace smoothing
// mass to every cell before normalizing (alpha = 0 keeps raw frequencies).
JointModel normalize_counts(const Eigen::MatrixXd& counts, double alpha = 0.0);

// Joint table of a two-state channel that reports the true external state
// with probability `correctness`: row t, column x holds
// correctness * p(x) on the diagonal and (1 - correctness) * p(x) off it.
JointModel two_state_joint(const ProbabilityVector& external_priors,
                           double correctness);

// CSV layout: header row of x labels, then one row per internal state with
// its label in the first column. Values use round-trip precision.
void write_joint_csv(const JointModel& m, std::ostream& out);
JointModel read_joint_csv(std::istream& in);

}  // namespace evonat
