/*
 * Copyright 2026 The adasample Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ADASAMPLE_SYNTHETIC_HPP_
#define ADASAMPLE_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

#include "adasample/data.hpp"

namespace adasample::synthetic {

// Two classes on concentric annuli: points uniform on [0,1]^2, class given by
// the parity of floor(distance-to-centre / band_width). Bands beyond the
// inscribed circle keep alternating into the corners.
Dataset concentric_rings(std::size_t n, double band_width, std::uint64_t seed,
                         double label_noise = 0.0);

// One axis-parallel boundary at x0 = threshold in [0,1]^2.
Dataset axis_boundary(std::size_t n, double threshold, std::uint64_t seed);

// Gaussian blobs in [0,1]^d, one per class, overlapping by `spread`.
Dataset gaussian_blobs(std::size_t n, std::size_t dim, int classes, double spread,
                       std::uint64_t seed);

// Resolves "synthetic:<name>[:n[:seed[:shape]]]" specs used by the CLI and
// tests. shape is the band width, threshold or spread.
Dataset from_spec(const std::string& spec);

}  // namespace adasample::synthetic

#endif  // ADASAMPLE_SYNTHETIC_HPP_
