// SPDX-License-Identifier: Apache-2.0
//
// nfplink - link-level simulator for UAV-relayed mmWave backhaul
// Copyright (C) 2026 the nfplink contributors
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

#ifndef NFPLINK_NFPLINK_HPP
#define NFPLINK_NFPLINK_HPP

// Umbrella header: the whole library.

#include "antenna.hpp"     // IWYU pragma: export
#include "atmosphere.hpp"  // IWYU pragma: export
#include "errors.hpp"      // IWYU pragma: export
#include "geometry.hpp"    // IWYU pragma: export
#include "link.hpp"        // IWYU pragma: export
#include "montecarlo.hpp"  // IWYU pragma: export
#include "optimizer.hpp"   // IWYU pragma: export
#include "philox.hpp"      // IWYU pragma: export
#include "results.hpp"     // IWYU pragma: export
#include "scenario.hpp"    // IWYU pragma: export
#include "units.hpp"       // IWYU pragma: export
#include "version.hpp"     // IWYU pragma: export

#endif // NFPLINK_NFPLINK_HPP
