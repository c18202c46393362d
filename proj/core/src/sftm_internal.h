// Copyright 2026 The Erratum Authors.
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

#ifndef ERRATUM_SRC_SFTM_INTERNAL_H_
#define ERRATUM_SRC_SFTM_INTERNAL_H_

namespace erratum::internal {

// Rounds to a 1e-9 grid so that scores computed along different paths
// compare equal when they are mathematically equal.
double quantize(double v);

}  // namespace erratum::internal

#endif  // ERRATUM_SRC_SFTM_INTERNAL_H_
