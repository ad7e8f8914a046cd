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

#ifndef DOSGAME_ESTIMATION_H_
#define DOSGAME_ESTIMATION_H_

#include <vector>

#include <Eigen/Dense>

namespace dosgame {

// Linear time-invariant plant x' = Ax + w, y = Cx + v observed by a smart
// sensor running a local Kalman filter.
//
// Construction validates symmetry and definiteness of the covariances and the
// rank conditions ((A, C) observable, (A, sqrt(Q)) controllable); violations
// throw std::invalid_argument.
class SystemModel {
 public:
  SystemModel(Eigen::MatrixXd A, Eigen::MatrixXd C, Eigen::MatrixXd Q,
              Eigen::MatrixXd R, Eigen::MatrixXd Pi0);

  // Scalar plant convenience constructor. Pi0 defaults to zero.
  static SystemModel Scalar(double a, double c, double q, double r,
                            double pi0 = 0.0);

  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::MatrixXd& C() const { return C_; }
  const Eigen::MatrixXd& Q() const { return Q_; }
  const Eigen::MatrixXd& R() const { return R_; }
  const Eigen::MatrixXd& Pi0() const { return Pi0_; }
  int state_dim() const { return static_cast<int>(A_.rows()); }

 private:
  Eigen::MatrixXd A_;
  Eigen::MatrixXd C_;
  Eigen::MatrixXd Q_;
  Eigen::MatrixXd R_;
  Eigen::MatrixXd Pi0_;
};

// Converged steady-state quantities. trace_table[m] = Tr[h^m(p_bar)].
struct SteadySummary {
  Eigen::MatrixXd p_bar;
  double rho_A = 0.0;
  std::vector<double> trace_table;
  int iterations = 0;

  int tau_max() const { return static_cast<int>(trace_table.size()) - 1; }
};

// h(X) = A X A' + Q.
Eigen::MatrixXd LyapunovStep(const Eigen::MatrixXd& X, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& Q);
Eigen::MatrixXd LyapunovStep(const Eigen::MatrixXd& X,
                             const SystemModel& model);

// g(X) = X - X C' (C X C' + R)^{-1} C X.
Eigen::MatrixXd RiccatiStep(const Eigen::MatrixXd& X,
                            const SystemModel& model);

inline constexpr double kSteadyTolerance = 1e-12;
inline constexpr int kSteadyMaxIterations = 1000000;

// Iterates P <- g(h(P)) from Pi0 until the Frobenius norm of the change drops
// below `tol`, then tabulates Tr[h^m(P)] for m = 0..tau_max. Throws
// std::runtime_error when the iteration does not settle within `max_iter`.
SteadySummary SteadyStateCovariance(const SystemModel& model, int tau_max,
                                    double tol = kSteadyTolerance,
                                    int max_iter = kSteadyMaxIterations);

// Tr[h^m(p_bar)]; throws std::out_of_range for m > tau_max.
double HoldingTimeTrace(const SteadySummary& summary, int m);

// 1 - 1/rho(A)^2. The expected error covariance stays bounded when the
// worst-case packet arrival probability exceeds this value.
double BoundednessThreshold(const SteadySummary& summary);

double SpectralRadius(const Eigen::MatrixXd& A);

}  // namespace dosgame

#endif  // DOSGAME_ESTIMATION_H_
