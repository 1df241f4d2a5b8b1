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

#ifndef NFPLINK_VERSION_HPP
#define NFPLINK_VERSION_HPP

#define NFPLINK_VERSION_MAJOR 0
#define NFPLINK_VERSION_MINOR 1
#define NFPLINK_VERSION_PATCH 0
#define NFPLINK_VERSION_STRING "0.1.0"

namespace nfplink
{
inline constexpr const char *version_string = NFPLINK_VERSION_STRING;
}

#endif // NFPLINK_VERSION_HPP
