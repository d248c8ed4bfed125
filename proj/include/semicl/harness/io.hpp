// Copyright 2026 The semicl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "semicl/circuit.hpp"
#include "semicl/spectral.hpp"

namespace semicl::harness {

/// General format with 17 significant digits.
std::string format_double(double value);

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    void add_row(const std::vector<double> &values);
    const std::vector<std::string> &header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes through a temporary file and renames it into place. Throws
/// std::runtime_error when the target cannot be written.
void write_text(const std::filesystem::path &path, const std::string &content);
std::string read_text(const std::filesystem::path &path);

inline constexpr std::uint32_t kDumpVersion = 1;

struct WaveDumpHeader {
    std::uint32_t version = kDumpVersion;
    std::uint32_t m = 0;
    double L = 0.0;
    double x0 = 0.0;
    double hbar = 0.0;
    double t = 0.0;
};

struct WaveDump {
    WaveDumpHeader header;
    ComplexVector values;

    WaveFunction wavefunction() const;
};

/// "SCWF", uint32 version, uint32 m, f64 L, x0, hbar, t, then 2^m (re, im) f64
/// pairs. All fields little-endian.
std::string encode_dump(const WaveFunction &psi, double t);
WaveDump decode_dump(const std::string &bytes);
void write_dump(const std::filesystem::path &path, const WaveFunction &psi, double t);
WaveDump read_dump(const std::filesystem::path &path);

/// index,x,count,frequency
CsvTable histogram_table(const ShotHistogram &histogram, const Grid1D &grid);
/// counter,value
CsvTable ledger_table(const GateLedger &ledger);

} // namespace semicl::harness
