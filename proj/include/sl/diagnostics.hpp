#ifndef SL_DIAGNOSTICS_HPP
#define SL_DIAGNOSTICS_HPP

#include <utility>

#include <Eigen/Dense>

#include "sl/mcmc.hpp"

namespace sl {

struct EssResult {
  VectorXd per_param;
  double min_ess = 0.0;
  bool degenerate = false;  // some column was constant (its ESS is 1)
};

// Geyer initial-positive-sequence ESS per column of an n x d draw matrix;
// min over columns. Needs n >= 100.
EssResult ess_min(const MatrixXd& draws);

// Shortest interval containing ceil(level * n) sorted samples; ties broken by
// the lowest left endpoint. Needs n >= 100.
std::pair<double, double> hpd_interval(const VectorXd& samples,
                                       double level = 0.95);

// Rows 0, stride, 2*stride, ...
MatrixXd thin(const MatrixXd& rows, int stride);
ChainTrace thin(const ChainTrace& trace, int stride);

// Stack a trace's natural-scale draws as an n x d matrix (tail_rows last rows
// when tail_rows > 0).
MatrixXd natural_draws(const ChainTrace& trace, int tail_rows = 0);

// Fraction of accepted moves among trace rows in the given stage.
double acceptance_rate(const ChainTrace& trace, Stage stage);

}  // namespace sl

#endif
