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

#ifndef NFPLINK_RESULTS_HPP
#define NFPLINK_RESULTS_HPP

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scenario.hpp"
#include "version.hpp"

namespace nfplink
{

// Result tables are comma-separated text with a small '#'-prefixed preamble
// (tool, command, config hash, seed) followed by a header row and one row
// per point. Everything that can vary between reruns of the same
// (config, seed) pair -- timestamps, host info, thread counts -- lives in
// the JSON metadata sidecar instead, so the table itself is byte-identical
// across runs and thread counts.

inline std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x00000100000001b3ull;
    }
    return h;
}

// Hash of the effective configuration. The thread count is zeroed first:
// it selects an execution strategy, not a scenario, and results do not
// depend on it.
inline std::string config_hash(const ScenarioConfig &cfg)
{
    nlohmann::json j = config_to_json(cfg);
    j["montecarlo"]["threads"] = 0;
    const std::uint64_t h = fnv1a64(j.dump());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Shortest-round-trip-style decimal formatting: enough digits to restore
// the exact double, stable across locales.
inline std::string format_value(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Cell = std::variant<double, long long, std::string>;

inline std::string format_cell(const Cell &c)
{
    if (std::holds_alternative<double>(c))
        return format_value(std::get<double>(c));
    if (std::holds_alternative<long long>(c))
        return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

struct ResultRecord
{
    std::string command;
    std::string hash; // config hash (hex)
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json summary; // command-specific scalars for the sidecar
};

inline void write_table(const ResultRecord &r, std::ostream &out)
{
    out << "# tool: nfplink " << version_string << "\n";
    out << "# command: " << r.command << "\n";
    out << "# config_hash: " << r.hash << "\n";
    out << "# seed: " << r.seed << "\n";
    out << "# samples: " << r.samples << "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? "," : "") << r.columns[i];
    out << "\n";
    for (const auto &row : r.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_cell(row[i]);
        out << "\n";
    }
}

inline void write_table_file(const ResultRecord &r, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw validation_error(path, "cannot open output file for writing");
    write_table(r, out);
}

inline std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// JSON sidecar: run provenance (including the volatile bits) plus the full
// effective configuration and command-specific summary scalars.
inline void write_metadata_file(const ResultRecord &r, const ScenarioConfig &cfg, int threads,
                                const std::string &path)
{
    nlohmann::json j;
    j["tool"] = "nfplink";
    j["version"] = version_string;
    j["command"] = r.command;
    j["config_hash"] = r.hash;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["threads"] = threads;
    j["timestamp_utc"] = utc_timestamp();
    j["n_rows"] = r.rows.size();
    j["columns"] = r.columns;
    j["summary"] = r.summary;
    j["config"] = config_to_json(cfg);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw validation_error(path, "cannot open metadata file for writing");
    out << j.dump(2) << "\n";
}

} // namespace nfplink

#endif // NFPLINK_RESULTS_HPP
