#pragma once

#include <string>

#include "notchwave/types.hpp"

namespace notchwave {

// Binary waveform container, magic "NWF1". Layout, all little-endian:
//
//   bytes 0..3    magic "NWF1"
//   u32           format version (1)
//   u64           sample count N
//   f64           sample rate in Hz
//   u8            full-scale flag (parts known to lie in [-1, 1])
//   u32           metadata length in bytes
//   ...           metadata, UTF-8 JSON text
//   16*N bytes    payload, interleaved (re, im) as f64
//
// Payload round-trips bit exactly. The metadata text is also written next
// to the file as <path>.json for quick inspection.
struct WaveformFile {
    ComplexSequence samples;
    double sample_rate = 0.0;
    bool full_scale = false;
    std::string metadata_json;
};

void write_waveform(const std::string& path, const WaveformFile& wf,
                    bool write_sidecar = true);
WaveformFile read_waveform(const std::string& path);

}  // namespace notchwave
