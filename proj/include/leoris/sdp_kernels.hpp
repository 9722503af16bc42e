// SPDX-License-Identifier: Apache-2.0
//
// leoris - active-RIS assisted LEO satellite downlink simulator and optimizer
// Copyright (C) 2026 The leoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "leoris/types.hpp"

#include <vector>

namespace leoris::kernels
{

// A real symmetric constraint matrix, stored densely or as a diagonal.
struct SymConstraint
{
    bool diagonal = false;
    RVec diag;  // used when diagonal
    RMat dense; // used otherwise
};

double inner(const SymConstraint &a, const RMat &X);

// [<A_1, X>, ..., <A_m, X>]
RVec apply_constraints(const std::vector<SymConstraint> &A, const RMat &X);

// sum_i y_i A_i
RMat adjoint_constraints(const std::vector<SymConstraint> &A, const RVec &y, Eigen::Index n);

// Schur complement M_ij = <A_i, W A_j W> of the NT normal equations.
// OpenMP over constraint columns and entries.
RMat schur_complement(const RMat &W, const std::vector<SymConstraint> &A);

// Single-threaded reference that evaluates every entry directly.
RMat schur_complement_serial(const RMat &W, const std::vector<SymConstraint> &A);

} // namespace leoris::kernels
