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

#ifndef NFPLINK_ERRORS_HPP
#define NFPLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nfplink
{

// Thrown when a numeric argument is outside the domain a model is valid on
// (e.g. frequency outside the attenuation fit range, elevation angle of zero
// for a slant path). Maps to CLI exit code 4 (numerical failure).
class domain_error : public std::domain_error
{
  public:
    explicit domain_error(const std::string &msg) : std::domain_error(msg) {}
};

// Thrown when a configuration value or combination violates the schema
// (unknown key, wrong type, out-of-range parameter). The offending key path
// is carried separately so the CLI can report it in a machine-readable way.
// Maps to CLI exit code 2.
class validation_error : public std::runtime_error
{
  public:
    validation_error(std::string key_path, const std::string &msg)
        : std::runtime_error(key_path.empty() ? msg : key_path + ": " + msg),
          key_path_(std::move(key_path))
    {
    }
    const std::string &key_path() const noexcept { return key_path_; }

  private:
    std::string key_path_;
};

// Thrown when a search cannot be carried out because the target is not
// bracketed / no candidate satisfies the constraints; carries the boundary
// values so callers can report how far off the target was. Maps to CLI exit
// code 3.
class infeasible_error : public std::runtime_error
{
  public:
    infeasible_error(const std::string &msg, double low_value, double high_value)
        : std::runtime_error(msg), low_value_(low_value), high_value_(high_value)
    {
    }
    double low_value() const noexcept { return low_value_; }   // e.g. outage at the lower bracket
    double high_value() const noexcept { return high_value_; } // e.g. outage at the upper bracket

  private:
    double low_value_;
    double high_value_;
};

} // namespace nfplink

#endif // NFPLINK_ERRORS_HPP
