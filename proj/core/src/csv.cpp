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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "antijam/harness.hpp"

namespace antijam {

namespace {

constexpr const char *csv_header = "sweep,value,method,mean_rate,std_rate,trials,fallbacks";

std::string fmt6(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<std::string> split_fields(const std::string &line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

} // namespace

void write_csv(const SweepResult &result, std::ostream &out)
{
    out << csv_header << '\n';
    for (const auto &row : result.rows)
        out << row.sweep << ',' << fmt6(row.value) << ',' << row.method << ',' << fmt6(row.mean_rate) << ','
            << fmt6(row.std_rate) << ',' << row.trials << ',' << row.fallbacks << '\n';
}

void emit_csv(const SweepResult &result, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(result, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

SweepResult read_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("csv: missing header");
    if (line != csv_header)
        throw std::runtime_error("csv: unexpected header '" + line + "'");

    static const char *names[] = {"sweep", "value", "method", "mean_rate", "std_rate", "trials", "fallbacks"};
    SweepResult result;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto f = split_fields(line);
        if (f.size() != 7)
            throw std::runtime_error("csv line " + std::to_string(lineno) + ": expected 7 fields, got " +
                                     std::to_string(f.size()));
        SweepRow row;
        std::size_t col = 0;
        try {
            row.sweep = f[0];
            col = 1;
            row.value = std::stod(f[1]);
            col = 2;
            row.method = f[2];
            col = 3;
            row.mean_rate = std::stod(f[3]);
            col = 4;
            row.std_rate = std::stod(f[4]);
            col = 5;
            row.trials = std::stoi(f[5]);
            col = 6;
            row.fallbacks = std::stoi(f[6]);
        } catch (const std::logic_error &) {
            throw std::runtime_error("csv line " + std::to_string(lineno) + ": bad value in column '" +
                                     names[col] + "'");
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

SweepResult read_csv(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    return read_csv(in);
}

} // namespace antijam
