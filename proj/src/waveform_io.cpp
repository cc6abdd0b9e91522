#include "notchwave/waveform_io.hpp"

#include <cstring>
#include <fstream>

namespace notchwave {
namespace {

constexpr char kMagic[4] = {'N', 'W', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("waveform file truncated");
    return v;
}

}  // namespace

void write_waveform(const std::string& path, const WaveformFile& wf,
                    bool write_sidecar) {
    validate_sequence(wf.samples, "write_waveform");
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write(kMagic, 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint64_t>(os, wf.samples.size());
    put<double>(os, wf.sample_rate);
    put<std::uint8_t>(os, wf.full_scale ? 1 : 0);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(wf.metadata_json.size()));
    os.write(wf.metadata_json.data(),
             static_cast<std::streamsize>(wf.metadata_json.size()));
    for (const cplx& v : wf.samples) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
    if (!os) throw std::runtime_error("write failed: " + path);
    os.close();

    if (write_sidecar && !wf.metadata_json.empty()) {
        std::ofstream side(path + ".json", std::ios::trunc);
        side << wf.metadata_json << "\n";
    }
}

WaveformFile read_waveform(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error(path + ": not a NWF1 waveform file");
    const auto version = get<std::uint32_t>(is);
    if (version != kVersion)
        throw std::runtime_error(path + ": unsupported waveform version");
    const auto n = get<std::uint64_t>(is);
    WaveformFile wf;
    wf.sample_rate = get<double>(is);
    wf.full_scale = get<std::uint8_t>(is) != 0;
    const auto meta_len = get<std::uint32_t>(is);
    wf.metadata_json.resize(meta_len);
    is.read(wf.metadata_json.data(), meta_len);
    if (!is) throw std::runtime_error(path + ": truncated metadata");
    wf.samples.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        wf.samples[i] = cplx(re, im);
    }
    return wf;
}

}  // namespace notchwave
