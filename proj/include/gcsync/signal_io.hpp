#pragma once

#include <optional>
#include <string>

#include "gcsync/frame.hpp"
#include "gcsync/types.hpp"

namespace gcsync {

// Signal interchange format: <path> holds interleaved float32 samples
// (re_x, im_x, re_y, im_y per sample, native byte order); <path>.hdr is a
// text sidecar of key=value lines carrying the frame config, sample rate,
// true frame start, and optionally the symbol layout.
struct SignalFile {
    DualPolSignal signal;
    FrameConfig frame;
    std::optional<FrameLabel> label;
};

void write_signal(const std::string& path, const DualPolSignal& sig,
                  const FrameConfig& cfg, const FrameLabel* label = nullptr);

SignalFile read_signal(const std::string& path);

}  // namespace gcsync
