// Copyright 2026 The dosgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dosgame/estimation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dosgame {
namespace {

constexpr double kSymmetryTol = 1e-10;
// Singular values below this fraction of the largest count as zero.
constexpr double kRankTol = 1e-9;

void RequireSymmetric(const Eigen::MatrixXd& M, const std::string& name) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument(name + " must be square");
  }
  if ((M - M.transpose()).norm() > kSymmetryTol * std::max(1.0, M.norm())) {
    throw std::invalid_argument(name + " must be symmetric");
  }
}

double MinEigenvalue(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  return es.eigenvalues().minCoeff();
}

int NumericalRank(const Eigen::MatrixXd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankTol * sv(0)) ++rank;
  }
  return rank;
}

Eigen::MatrixXd PsdSqrt(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

void CheckSquareLike(const Eigen::MatrixXd& X, const Eigen::MatrixXd& A) {
  if (X.rows() != A.rows() || X.cols() != A.cols()) {
    throw std::invalid_argument("covariance dimension does not match A");
  }
}

}  // namespace

SystemModel::SystemModel(Eigen::MatrixXd A, Eigen::MatrixXd C,
                         Eigen::MatrixXd Q, Eigen::MatrixXd R,
                         Eigen::MatrixXd Pi0)
    : A_(std::move(A)),
      C_(std::move(C)),
      Q_(std::move(Q)),
      R_(std::move(R)),
      Pi0_(std::move(Pi0)) {
  const int n = static_cast<int>(A_.rows());
  if (n == 0 || A_.cols() != n) {
    throw std::invalid_argument("A must be a nonempty square matrix");
  }
  if (C_.cols() != n || C_.rows() == 0) {
    throw std::invalid_argument("C must have as many columns as A");
  }
  if (Q_.rows() != n) throw std::invalid_argument("Q must match A");
  if (R_.rows() != C_.rows()) throw std::invalid_argument("R must match C");
  if (Pi0_.rows() != n) throw std::invalid_argument("Pi0 must match A");
  RequireSymmetric(Q_, "Q");
  RequireSymmetric(R_, "R");
  RequireSymmetric(Pi0_, "Pi0");
  if (MinEigenvalue(Q_) < -kSymmetryTol) {
    throw std::invalid_argument("Q must be positive semidefinite");
  }
  if (MinEigenvalue(R_) <= 0.0) {
    throw std::invalid_argument("R must be positive definite");
  }
  if (MinEigenvalue(Pi0_) < -kSymmetryTol) {
    throw std::invalid_argument("Pi0 must be positive semidefinite");
  }

  // Observability matrix [C; CA; ...; CA^{n-1}].
  Eigen::MatrixXd obs(C_.rows() * n, n);
  Eigen::MatrixXd block = C_;
  for (int i = 0; i < n; ++i) {
    obs.middleRows(i * C_.rows(), C_.rows()) = block;
    block = block * A_;
  }
  if (NumericalRank(obs) < n) {
    throw std::invalid_argument("(A, C) is not observable");
  }

  // Controllability matrix [B, AB, ..., A^{n-1}B] with B = sqrt(Q).
  const Eigen::MatrixXd B = PsdSqrt(Q_);
  Eigen::MatrixXd ctrb(n, n * n);
  block = B;
  for (int i = 0; i < n; ++i) {
    ctrb.middleCols(i * n, n) = block;
    block = A_ * block;
  }
  if (NumericalRank(ctrb) < n) {
    throw std::invalid_argument("(A, sqrt(Q)) is not controllable");
  }
}

SystemModel SystemModel::Scalar(double a, double c, double q, double r,
                                double pi0) {
  auto m = [](double v) { return Eigen::MatrixXd::Constant(1, 1, v); };
  return SystemModel(m(a), m(c), m(q), m(r), m(pi0));
}

Eigen::MatrixXd LyapunovStep(const Eigen::MatrixXd& X, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& Q) {
  CheckSquareLike(X, A);
  CheckSquareLike(Q, A);
  Eigen::MatrixXd out = A * X * A.transpose() + Q;
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd LyapunovStep(const Eigen::MatrixXd& X,
                             const SystemModel& model) {
  return LyapunovStep(X, model.A(), model.Q());
}

Eigen::MatrixXd RiccatiStep(const Eigen::MatrixXd& X,
                            const SystemModel& model) {
  CheckSquareLike(X, model.A());
  const Eigen::MatrixXd& C = model.C();
  const Eigen::MatrixXd S = C * X * C.transpose() + model.R();
  const Eigen::MatrixXd XCt = X * C.transpose();
  Eigen::MatrixXd out = X - XCt * S.ldlt().solve(XCt.transpose());
  return 0.5 * (out + out.transpose());
}

double SpectralRadius(const Eigen::MatrixXd& A) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

SteadySummary SteadyStateCovariance(const SystemModel& model, int tau_max,
                                    double tol, int max_iter) {
  if (tau_max < 0) throw std::invalid_argument("tau_max must be >= 0");
  if (!(tol > 0.0) || max_iter <= 0) {
    throw std::invalid_argument("tol and max_iter must be positive");
  }
  SteadySummary summary;
  Eigen::MatrixXd P = model.Pi0();
  bool converged = false;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::MatrixXd next = RiccatiStep(LyapunovStep(P, model), model);
    const double change = (next - P).norm();
    P = std::move(next);
    if (change <= tol) {
      summary.iterations = it;
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw std::runtime_error("steady-state covariance did not converge in " +
                             std::to_string(max_iter) + " iterations");
  }
  summary.p_bar = P;
  summary.rho_A = SpectralRadius(model.A());
  summary.trace_table.reserve(tau_max + 1);
  Eigen::MatrixXd Pm = P;
  for (int m = 0; m <= tau_max; ++m) {
    summary.trace_table.push_back(Pm.trace());
    Pm = LyapunovStep(Pm, model);
  }
  return summary;
}

double HoldingTimeTrace(const SteadySummary& summary, int m) {
  if (m < 0 || m > summary.tau_max()) {
    throw std::out_of_range("holding time " + std::to_string(m) +
                            " outside [0, " +
                            std::to_string(summary.tau_max()) + "]");
  }
  return summary.trace_table[m];
}

double BoundednessThreshold(const SteadySummary& summary) {
  return 1.0 - 1.0 / (summary.rho_A * summary.rho_A);
}

}  // namespace dosgame
