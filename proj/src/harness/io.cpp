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

#include "semicl/harness/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace semicl::harness {

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw std::runtime_error("float formatting failed");
    }
    return std::string(buf, end);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    }
    rows_.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<double> &values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) {
        cells.push_back(format_double(v));
    }
    add_row(std::move(cells));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto &r : rows_) {
        line(r);
    }
    return out;
}

void write_text(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
        }
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("short write to " + path.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

constexpr char kMagic[4] = {'S', 'C', 'W', 'F'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 4 * 8;

template <typename U> void put_le(std::string &out, U v) {
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        out += static_cast<char>((v >> (8 * i)) & 0xff);
    }
}

void put_f64(std::string &out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

template <typename U> U get_le(const std::string &in, std::size_t &pos) {
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        v |= static_cast<U>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += sizeof(U);
    return v;
}

double get_f64(const std::string &in, std::size_t &pos) { return std::bit_cast<double>(get_le<std::uint64_t>(in, pos)); }

} // namespace

WaveFunction WaveDump::wavefunction() const {
    return WaveFunction(Grid1D(header.L, static_cast<int>(header.m), header.x0), header.hbar, values);
}

std::string encode_dump(const WaveFunction &psi, double t) {
    std::string out;
    out.reserve(kHeaderBytes + 16 * psi.size());
    out.append(kMagic, 4);
    put_le(out, kDumpVersion);
    put_le(out, static_cast<std::uint32_t>(psi.grid().qubits()));
    put_f64(out, psi.grid().length());
    put_f64(out, psi.grid().x0());
    put_f64(out, psi.hbar());
    put_f64(out, t);
    for (const Complex &z : psi.values()) {
        put_f64(out, z.real());
        put_f64(out, z.imag());
    }
    return out;
}

WaveDump decode_dump(const std::string &bytes) {
    if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw std::runtime_error("not a wavefunction dump (bad magic)");
    }
    std::size_t pos = 4;
    WaveDump dump;
    dump.header.version = get_le<std::uint32_t>(bytes, pos);
    if (dump.header.version != kDumpVersion) {
        throw std::runtime_error("unsupported dump version " + std::to_string(dump.header.version));
    }
    dump.header.m = get_le<std::uint32_t>(bytes, pos);
    if (dump.header.m < 1 || dump.header.m > static_cast<std::uint32_t>(kMaxQubits)) {
        throw std::runtime_error("dump qubit count out of range");
    }
    dump.header.L = get_f64(bytes, pos);
    dump.header.x0 = get_f64(bytes, pos);
    dump.header.hbar = get_f64(bytes, pos);
    dump.header.t = get_f64(bytes, pos);
    const std::size_t M = std::size_t{1} << dump.header.m;
    if (bytes.size() != kHeaderBytes + 16 * M) {
        throw std::runtime_error("dump payload has " + std::to_string(bytes.size() - kHeaderBytes) +
                                 " bytes, expected " + std::to_string(16 * M));
    }
    dump.values.resize(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double re = get_f64(bytes, pos);
        const double im = get_f64(bytes, pos);
        dump.values[j] = {re, im};
    }
    return dump;
}

void write_dump(const std::filesystem::path &path, const WaveFunction &psi, double t) {
    write_text(path, encode_dump(psi, t));
}

WaveDump read_dump(const std::filesystem::path &path) { return decode_dump(read_text(path)); }

CsvTable histogram_table(const ShotHistogram &histogram, const Grid1D &grid) {
    if (histogram.counts.size() != grid.points()) {
        throw std::invalid_argument("histogram does not match the grid");
    }
    CsvTable table({"index", "x", "count", "frequency"});
    for (std::size_t j = 0; j < histogram.counts.size(); ++j) {
        table.add_row({std::to_string(j), format_double(grid.node(j)), std::to_string(histogram.counts[j]),
                       format_double(static_cast<double>(histogram.counts[j]) /
                                     static_cast<double>(histogram.shots))});
    }
    return table;
}

CsvTable ledger_table(const GateLedger &ledger) {
    CsvTable table({"counter", "value"});
    table.add_row({"single_qubit", std::to_string(ledger.single_qubit)});
    table.add_row({"two_qubit", std::to_string(ledger.two_qubit)});
    table.add_row({"diagonal_gates", std::to_string(ledger.diagonal_gates)});
    table.add_row({"diagonal_invocations", std::to_string(ledger.diagonal_invocations)});
    table.add_row({"oracle_queries", std::to_string(ledger.oracle_queries)});
    table.add_row({"qft_invocations", std::to_string(ledger.qft_invocations)});
    table.add_row({"total_gates", std::to_string(ledger.total_gates())});
    return table;
}

} // namespace semicl::harness
