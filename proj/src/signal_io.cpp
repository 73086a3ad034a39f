#include "gcsync/signal_io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "gcsync/errors.hpp"

namespace gcsync {

namespace {

constexpr char kMagic[] = "gcsync-signal v1";

std::map<std::string, std::string> parse_header(std::istream& in,
                                                const std::string& path) {
    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw io_error("bad signal header magic: " + path);
    std::map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw io_error("malformed header line in " + path + ": " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

template <typename T>
T require(const std::map<std::string, std::string>& kv, const std::string& key,
          const std::string& path) {
    const auto it = kv.find(key);
    if (it == kv.end())
        throw io_error("missing header key '" + key + "' in " + path);
    std::istringstream ss(it->second);
    T value;
    ss >> value;
    if (ss.fail())
        throw io_error("bad header value for '" + key + "' in " + path);
    return value;
}

}  // namespace

void write_signal(const std::string& path, const DualPolSignal& sig,
                  const FrameConfig& cfg, const FrameLabel* label) {
    {
        std::ofstream bin(path, std::ios::binary | std::ios::trunc);
        if (!bin) throw io_error("cannot open for write: " + path);
        std::vector<float> row(4);
        for (std::size_t k = 0; k < sig.size(); ++k) {
            row[0] = static_cast<float>(sig.x[k].real());
            row[1] = static_cast<float>(sig.x[k].imag());
            row[2] = static_cast<float>(sig.y[k].real());
            row[3] = static_cast<float>(sig.y[k].imag());
            bin.write(reinterpret_cast<const char*>(row.data()),
                      static_cast<std::streamsize>(sizeof(float) * 4));
        }
        if (!bin) throw io_error("write failed: " + path);
    }
    std::ofstream hdr(path + ".hdr", std::ios::trunc);
    if (!hdr) throw io_error("cannot open for write: " + path + ".hdr");
    hdr << kMagic << "\n";
    hdr << "samples=" << sig.size() << "\n";
    hdr << "sample_rate_hz=" << std::setprecision(17) << sig.sample_rate
        << "\n";
    if (sig.true_frame_start)
        hdr << "true_frame_start=" << *sig.true_frame_start << "\n";
    hdr << "n_fft=" << cfg.n_fft << "\n";
    hdr << "n_cp=" << cfg.n_cp << "\n";
    hdr << "l_data=" << cfg.l_data << "\n";
    hdr << "n_data_symbols=" << cfg.n_data_symbols << "\n";
    hdr << "pn_seed=" << cfg.pn_seed << "\n";
    if (label) {
        hdr << "ts1=" << label->ts1_begin << ":" << label->ts1_end << "\n";
        hdr << "ts2=" << label->ts2_begin << ":" << label->ts2_end << "\n";
        hdr << "data=" << label->data_begin << ":" << label->data_end << "\n";
    }
    if (!hdr) throw io_error("write failed: " + path + ".hdr");
}

SignalFile read_signal(const std::string& path) {
    std::ifstream hdr_in(path + ".hdr");
    if (!hdr_in) throw io_error("cannot open: " + path + ".hdr");
    const auto kv = parse_header(hdr_in, path + ".hdr");

    SignalFile out;
    const auto samples = require<std::size_t>(kv, "samples", path);
    out.signal.sample_rate = require<double>(kv, "sample_rate_hz", path);
    if (kv.count("true_frame_start"))
        out.signal.true_frame_start =
            require<std::int64_t>(kv, "true_frame_start", path);
    out.frame.n_fft = require<std::size_t>(kv, "n_fft", path);
    out.frame.n_cp = require<std::size_t>(kv, "n_cp", path);
    out.frame.l_data = require<std::size_t>(kv, "l_data", path);
    out.frame.f_s = out.signal.sample_rate;
    out.frame.n_data_symbols = require<std::size_t>(kv, "n_data_symbols", path);
    out.frame.pn_seed = require<std::uint32_t>(kv, "pn_seed", path);
    if (kv.count("ts1") && kv.count("ts2") && kv.count("data")) {
        FrameLabel lab;
        const auto range = [&](const std::string& key, std::size_t& b,
                               std::size_t& e) {
            std::istringstream ss(kv.at(key));
            char colon = 0;
            ss >> b >> colon >> e;
            if (ss.fail() || colon != ':')
                throw io_error("bad header range '" + key + "' in " + path);
        };
        range("ts1", lab.ts1_begin, lab.ts1_end);
        range("ts2", lab.ts2_begin, lab.ts2_end);
        range("data", lab.data_begin, lab.data_end);
        out.label = lab;
    }

    std::ifstream bin(path, std::ios::binary);
    if (!bin) throw io_error("cannot open: " + path);
    out.signal.x.resize(samples);
    out.signal.y.resize(samples);
    std::vector<float> row(4);
    for (std::size_t k = 0; k < samples; ++k) {
        bin.read(reinterpret_cast<char*>(row.data()),
                 static_cast<std::streamsize>(sizeof(float) * 4));
        if (!bin) throw io_error("short read: " + path);
        out.signal.x[k] = cplx(row[0], row[1]);
        out.signal.y[k] = cplx(row[2], row[3]);
    }
    return out;
}

}  // namespace gcsync
