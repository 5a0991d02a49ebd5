/*
 * Copyright 2026 The robustnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ROBUSTNET_ROBUSTNET_HPP
#define ROBUSTNET_ROBUSTNET_HPP

#include "robustnet/bounds.hpp"
#include "robustnet/complexity.hpp"
#include "robustnet/datagen.hpp"
#include "robustnet/harness.hpp"
#include "robustnet/io.hpp"
#include "robustnet/losses.hpp"
#include "robustnet/matrix.hpp"
#include "robustnet/network.hpp"
#include "robustnet/rng.hpp"
#include "robustnet/training.hpp"

#endif  // ROBUSTNET_ROBUSTNET_HPP
