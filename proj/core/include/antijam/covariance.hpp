// SPDX-License-Identifier: Apache-2.0
//
// antijam: sensing-assisted anti-jamming receivers for the MU-MIMO uplink
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

#include "antijam/types.hpp"

namespace antijam {

// Second-order statistics seen at the base station. `signatures` holds the
// effective user vectors h_k = H_k w_k as columns.

/// A_k = h_k h_k^H
CMatrix signal_covariance(const CMatrix &signatures, int k);

/// B_k = sum_{k' != k} h_k' h_k'^H + sigma^2 I
CMatrix interference_plus_noise(const CMatrix &signatures, int k, double noise_var);

/// X = A A^H for a steering manifold A.
CMatrix manifold_gram(const CMatrix &manifold);

} // namespace antijam
