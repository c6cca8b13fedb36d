// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "radsim/iq_signal.hpp"

namespace radsim {

// Raw I/Q files are header-less interleaved I then Q as 32-bit little-endian
// floats. A text sidecar at <path>.meta carries one key=value per line with
// at least sample_rate_hz, num_samples and format=f32le_iq. All writers go
// through a temp file and rename, so outputs are atomic per file.

void write_iq(const std::filesystem::path& path, const IQSignal& signal,
              const std::map<std::string, std::string>& extra_sidecar = {});

IQSignal read_iq(const std::filesystem::path& path);

std::map<std::string, std::string> read_sidecar(const std::filesystem::path& iq_path);

/// Raw scalar export (f32le, one value per sample) with format=f32le_scalar.
void write_scalar_f32(const std::filesystem::path& path, const std::vector<double>& values,
                      const std::map<std::string, std::string>& extra_sidecar = {});

/// Shortest round-trip representation via std::to_chars; locale-free and
/// byte-stable across runs. Infinities print as inf/-inf.
std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::string header);
    void add_row(const std::vector<std::string>& cells);
    void add_raw_line(const std::string& line);
    void write(const std::filesystem::path& path) const;
    const std::string& text() const { return body_; }

private:
    std::string body_;
    std::size_t columns_ = 0;
};

void write_text_atomic(const std::filesystem::path& path, const std::string& text);

} // namespace radsim
