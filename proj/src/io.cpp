// SPDX-License-Identifier: Apache-2.0

#include "radsim/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "radsim/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "raw f32le export assumes a little-endian host");

namespace radsim {

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& p)
{
    std::filesystem::path s = p;
    s += ".meta";
    return s;
}

void write_bytes_atomic(const std::filesystem::path& path, const char* data, std::size_t size)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out.write(data, static_cast<std::streamsize>(size));
        if (!out) throw Error("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

void write_sidecar(const std::filesystem::path& iq_path, const std::string& format,
                   double sample_rate_hz, std::size_t num_samples,
                   const std::map<std::string, std::string>& extra)
{
    std::string text;
    text += "format=" + format + "\n";
    text += "sample_rate_hz=" + format_double(sample_rate_hz) + "\n";
    text += "num_samples=" + std::to_string(num_samples) + "\n";
    for (const auto& [k, v] : extra) {
        text += k + "=" + v + "\n";
    }
    write_text_atomic(sidecar_path(iq_path), text);
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_iq(const std::filesystem::path& path, const IQSignal& signal,
              const std::map<std::string, std::string>& extra_sidecar)
{
    std::vector<float> interleaved;
    interleaved.reserve(signal.size() * 2);
    for (const auto& s : signal.samples) {
        interleaved.push_back(static_cast<float>(s.real()));
        interleaved.push_back(static_cast<float>(s.imag()));
    }
    write_bytes_atomic(path, reinterpret_cast<const char*>(interleaved.data()),
                       interleaved.size() * sizeof(float));
    write_sidecar(path, "f32le_iq", signal.sample_rate_hz, signal.size(), extra_sidecar);
}

std::map<std::string, std::string> read_sidecar(const std::filesystem::path& iq_path)
{
    std::ifstream in(sidecar_path(iq_path));
    if (!in) throw Error("cannot open sidecar '" + sidecar_path(iq_path).string() + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("sidecar line without '=': " + line);
        }
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

IQSignal read_iq(const std::filesystem::path& path)
{
    const auto kv = read_sidecar(path);
    const auto fmt = kv.find("format");
    if (fmt == kv.end() || fmt->second != "f32le_iq") {
        throw ParseError("sidecar format is not f32le_iq");
    }
    IQSignal sig;
    try {
        sig.sample_rate_hz = std::stod(kv.at("sample_rate_hz"));
    } catch (const std::exception&) {
        throw ParseError("sidecar is missing a numeric sample_rate_hz");
    }

    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    const auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes % (2 * sizeof(float)) != 0) {
        throw ParseError("raw IQ file size is not a multiple of one complex sample");
    }
    const std::size_t n = bytes / (2 * sizeof(float));
    std::vector<float> interleaved(n * 2);
    in.seekg(0);
    in.read(reinterpret_cast<char*>(interleaved.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw Error("short read from '" + path.string() + "'");

    const auto ns = kv.find("num_samples");
    if (ns != kv.end() && std::stoull(ns->second) != n) {
        throw ParseError("sidecar num_samples disagrees with the file size");
    }
    sig.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sig.samples[i] = cdouble{interleaved[2 * i], interleaved[2 * i + 1]};
    }
    sig.validate();
    return sig;
}

void write_scalar_f32(const std::filesystem::path& path, const std::vector<double>& values,
                      const std::map<std::string, std::string>& extra_sidecar)
{
    std::vector<float> f(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) f[i] = static_cast<float>(values[i]);
    write_bytes_atomic(path, reinterpret_cast<const char*>(f.data()),
                       f.size() * sizeof(float));
    std::string text = "format=f32le_scalar\n";
    text += "num_samples=" + std::to_string(values.size()) + "\n";
    for (const auto& [k, v] : extra_sidecar) text += k + "=" + v + "\n";
    write_text_atomic(sidecar_path(path), text);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text)
{
    write_bytes_atomic(path, text.data(), text.size());
}

CsvWriter::CsvWriter(std::string header)
{
    columns_ = 1;
    for (const char c : header) {
        if (c == ',') ++columns_;
    }
    body_ = std::move(header);
    body_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells)
{
    if (cells.size() != columns_) {
        throw Error("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                    std::to_string(columns_));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

void CsvWriter::add_raw_line(const std::string& line)
{
    body_ += line;
    body_ += '\n';
}

void CsvWriter::write(const std::filesystem::path& path) const
{
    write_text_atomic(path, body_);
}

} // namespace radsim
