// Copyright 2026 The boundmf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOUNDMF_EMF_H_
#define BOUNDMF_EMF_H_

#include "Eigen/Dense"
#include "boundmf/types.h"

// Expertise matrix factorization.
//
// Each user row carries a bias b_d >= 0 and skill levels w_dk >= 0 with
// b_d + w_dk <= 1; each item row z_n lies on the probability simplex. The
// prediction b_d + w_d'z_n = (b_d 1 + w_d)'z_n is then a convex combination of
// numbers in [0,1]. Fitting alternates between the user block (W, b) and the
// item block Z; both blocks split into independent per-row convex QPs solved
// by projected gradient.
namespace boundmf::emf {

// b_d + w_d'z_n, evaluated as a convex combination. Throws std::out_of_range
// for bad indices. Rounding at active constraints can land a few ulps outside
// [0,1]; PredictRaw exposes the unrounded value, Predict snaps it back.
double PredictRaw(const FactorModel& model, int d, int n);
double Predict(const FactorModel& model, int d, int n);

// Full regularized objective of the EMF program on `observed`.
double Objective(const ObservedMatrix& observed, const FactorModel& model,
                 const Hyperparams& hp);

struct UserBlock {
  Eigen::MatrixXd W;
  Eigen::VectorXd bias;
};

// Minimizes the objective over (W, bias) with Z fixed, row by row. `current`
// must be feasible. Rows without observations go to the penalty minimizer.
UserBlock UpdateUserBlock(const ObservedMatrix& observed,
                          const Eigen::MatrixXd& Z, UserBlock current,
                          const Hyperparams& hp);

// Minimizes the objective over Z with (W, bias) fixed, row by row, keeping
// every row on the simplex.
Eigen::MatrixXd UpdateItemBlock(const ObservedMatrix& observed,
                                const Eigen::MatrixXd& W,
                                const Eigen::VectorXd& bias, Eigen::MatrixXd Z,
                                const Hyperparams& hp);

// Uniform (0,1) factors and zero biases, projected onto the feasible set.
FactorModel Initialize(int rows, int cols, const Hyperparams& hp);

// Alternating minimization: user block, then item block, until the relative
// objective decrease drops below hp.rel_tolerance or hp.max_epochs outer
// iterations. Throws std::invalid_argument on an empty observation set.
FitResult Fit(const ObservedMatrix& observed, const Hyperparams& hp,
              const EpochObserver& observer = {});

}  // namespace boundmf::emf

#endif  // BOUNDMF_EMF_H_
