#pragma once

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapidpd/config.hpp"
#include "rapidpd/frame.hpp"
#include "rapidpd/scenario.hpp"
#include "rapidpd/subcarrier_grid.hpp"

namespace rapidpd {

static_assert(std::endian::native == std::endian::little,
              "binary CSI files are little-endian; this build targets LE hosts");

enum class CsiFileFormat { text, binary };
enum class CsiValueMode { complex_values, amplitude };

inline const char* to_string(CsiValueMode m) {
    return m == CsiValueMode::complex_values ? "complex" : "amplitude";
}

inline CsiValueMode value_mode_from(const std::string& s) {
    if (s == "complex") return CsiValueMode::complex_values;
    if (s == "amplitude") return CsiValueMode::amplitude;
    throw std::runtime_error("unknown CSI value format: " + s);
}

struct CsiFileHeader {
    CsiValueMode mode = CsiValueMode::complex_values;
    SubcarrierGrid grid = SubcarrierGrid::default_grid();
    double rate_hz = 20.0;
    int streams = 1;
    std::map<std::string, std::string> metadata;  // extra key=value pairs, carried verbatim
};

struct CsiFileData {
    CsiFileHeader header;
    std::vector<CsiFrame> frames;
};

namespace io_detail {

inline constexpr char kTextMagic[] = "#rapidpd-csi v1";
inline constexpr char kBinaryMagic[4] = {'R', 'P', 'D', 'B'};
inline constexpr std::uint32_t kBinaryVersion = 1;

// 17 significant digits round-trips any double exactly through text.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s, const std::string& where) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size())
        throw std::runtime_error(where + ": bad number '" + s + "'");
    return v;
}

inline long long parse_int(const std::string& s, const std::string& where) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || end != begin + s.size())
        throw std::runtime_error(where + ": bad integer '" + s + "'");
    return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

inline void write_raw(std::ostream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

template <typename T>
void write_value(std::ostream& out, T v) {
    write_raw(out, &v, sizeof v);
}

inline void read_raw(std::istream& in, void* p, std::size_t n, const std::string& where) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw std::runtime_error(where + ": truncated file");
}

template <typename T>
T read_value(std::istream& in, const std::string& where) {
    T v;
    read_raw(in, &v, sizeof v, where);
    return v;
}

inline int count_streams(std::span<const CsiFrame> frames) {
    std::map<int, int> seen;
    for (const CsiFrame& f : frames) seen[f.stream_id] = 1;
    return static_cast<int>(seen.size());
}

}  // namespace io_detail

inline void write_csi(const std::string& path, const CsiFileData& data,
                      CsiFileFormat format = CsiFileFormat::text) {
    using namespace io_detail;
    const std::size_t k = static_cast<std::size_t>(data.header.grid.count());
    for (const CsiFrame& f : data.frames) {
        if (f.values.size() != k)
            throw std::invalid_argument("write_csi: frame at t_us=" +
                                        std::to_string(f.timestamp_us) + " has " +
                                        std::to_string(f.values.size()) +
                                        " values, header says " + std::to_string(k));
        if (!f.finite())
            throw std::invalid_argument("write_csi: non-finite value at t_us=" +
                                        std::to_string(f.timestamp_us));
    }

    std::ofstream out(path, format == CsiFileFormat::binary
                                ? std::ios::binary | std::ios::trunc
                                : std::ios::trunc);
    if (!out) throw std::runtime_error("write_csi: cannot open " + path);

    if (format == CsiFileFormat::text) {
        out << kTextMagic << '\n';
        out << "#format=" << to_string(data.header.mode) << '\n';
        out << "#subcarriers=" << data.header.grid.count() << '\n';
        out << "#rate_hz=" << format_double(data.header.rate_hz) << '\n';
        out << "#center_hz=" << format_double(data.header.grid.center_hz()) << '\n';
        out << "#spacing_hz=" << format_double(data.header.grid.spacing_hz()) << '\n';
        out << "#streams=" << data.header.streams << '\n';
        for (const auto& [key, value] : data.header.metadata)
            out << '#' << key << '=' << value << '\n';
        for (const CsiFrame& f : data.frames) {
            out << f.timestamp_us << ',' << f.stream_id << ',';
            if (f.agc_gain) out << format_double(*f.agc_gain);
            for (const auto& v : f.values) {
                if (data.header.mode == CsiValueMode::complex_values)
                    out << ',' << format_double(v.real()) << ',' << format_double(v.imag());
                else
                    out << ',' << format_double(std::abs(v));
            }
            out << '\n';
        }
    } else {
        write_raw(out, kBinaryMagic, sizeof kBinaryMagic);
        write_value<std::uint32_t>(out, kBinaryVersion);
        write_value<std::uint8_t>(out,
                                  data.header.mode == CsiValueMode::complex_values ? 0 : 1);
        write_value<std::uint32_t>(out, static_cast<std::uint32_t>(data.header.grid.count()));
        write_value<double>(out, data.header.rate_hz);
        write_value<double>(out, data.header.grid.center_hz());
        write_value<double>(out, data.header.grid.spacing_hz());
        write_value<std::uint32_t>(out, static_cast<std::uint32_t>(data.header.streams));
        write_value<std::uint32_t>(out,
                                   static_cast<std::uint32_t>(data.header.metadata.size()));
        for (const auto& [key, value] : data.header.metadata) {
            write_value<std::uint32_t>(out, static_cast<std::uint32_t>(key.size()));
            write_raw(out, key.data(), key.size());
            write_value<std::uint32_t>(out, static_cast<std::uint32_t>(value.size()));
            write_raw(out, value.data(), value.size());
        }
        write_value<std::uint64_t>(out, static_cast<std::uint64_t>(data.frames.size()));
        for (const CsiFrame& f : data.frames) {
            write_value<std::int64_t>(out, f.timestamp_us);
            write_value<std::int32_t>(out, f.stream_id);
            write_value<std::uint8_t>(out, f.agc_gain ? 1 : 0);
            write_value<double>(out, f.agc_gain.value_or(0.0));
            for (const auto& v : f.values) {
                if (data.header.mode == CsiValueMode::complex_values) {
                    write_value<double>(out, v.real());
                    write_value<double>(out, v.imag());
                } else {
                    write_value<double>(out, std::abs(v));
                }
            }
        }
    }
    if (!out) throw std::runtime_error("write_csi: write failed on " + path);
}

inline CsiFileData read_csi(const std::string& path) {
    using namespace io_detail;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csi: cannot open " + path);

    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    if (in.gcount() == 0) throw std::runtime_error("read_csi: " + path + " is empty");
    if (std::memcmp(magic, kBinaryMagic, 4) == 0) {
        const std::string where = "read_csi: " + path;
        const auto version = read_value<std::uint32_t>(in, where);
        if (version != kBinaryVersion)
            throw std::runtime_error(where + ": unsupported binary version " +
                                     std::to_string(version));
        CsiFileData data;
        const auto mode = read_value<std::uint8_t>(in, where);
        if (mode > 1) throw std::runtime_error(where + ": bad value mode");
        data.header.mode = mode == 0 ? CsiValueMode::complex_values : CsiValueMode::amplitude;
        const auto k = read_value<std::uint32_t>(in, where);
        const auto rate = read_value<double>(in, where);
        const auto center = read_value<double>(in, where);
        const auto spacing = read_value<double>(in, where);
        data.header.grid = SubcarrierGrid(center, spacing, static_cast<int>(k));
        data.header.rate_hz = rate;
        data.header.streams = static_cast<int>(read_value<std::uint32_t>(in, where));
        const auto n_meta = read_value<std::uint32_t>(in, where);
        for (std::uint32_t i = 0; i < n_meta; ++i) {
            std::string key(read_value<std::uint32_t>(in, where), '\0');
            read_raw(in, key.data(), key.size(), where);
            std::string value(read_value<std::uint32_t>(in, where), '\0');
            read_raw(in, value.data(), value.size(), where);
            data.header.metadata[key] = value;
        }
        const auto n_frames = read_value<std::uint64_t>(in, where);
        data.frames.reserve(n_frames);
        for (std::uint64_t n = 0; n < n_frames; ++n) {
            CsiFrame f;
            f.timestamp_us = read_value<std::int64_t>(in, where);
            f.stream_id = static_cast<int>(read_value<std::int32_t>(in, where));
            const auto has_agc = read_value<std::uint8_t>(in, where);
            const auto agc = read_value<double>(in, where);
            if (has_agc) f.agc_gain = agc;
            f.values.resize(k);
            for (std::uint32_t i = 0; i < k; ++i) {
                if (data.header.mode == CsiValueMode::complex_values) {
                    const double re = read_value<double>(in, where);
                    const double im = read_value<double>(in, where);
                    f.values[i] = {re, im};
                } else {
                    f.values[i] = {read_value<double>(in, where), 0.0};
                }
            }
            if (!f.finite())
                throw std::runtime_error(where + ": non-finite value in frame " +
                                         std::to_string(n));
            data.frames.push_back(std::move(f));
        }
        return data;
    }

    // Text mode: reopen as lines and check the magic line in full.
    in.clear();
    in.seekg(0);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_csi: " + path + " is empty");
    line = strip_cr(line);
    if (line != kTextMagic)
        throw std::runtime_error("read_csi: " + path +
                                 ": not a rapidpd CSI file or wrong version (first line '" +
                                 line + "', expected '" + kTextMagic + "')");

    std::map<std::string, std::string> headers;
    std::size_t line_no = 1;
    std::string pending_row;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line[0] != '#') {
            pending_row = line;
            break;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("read_csi: " + path + ":" + std::to_string(line_no) +
                                     ": header line without '='");
        headers[line.substr(1, eq - 1)] = line.substr(eq + 1);
    }

    auto take = [&](const char* key) {
        const auto it = headers.find(key);
        if (it == headers.end())
            throw std::runtime_error("read_csi: " + path + ": missing header #" +
                                     std::string(key));
        std::string v = it->second;
        headers.erase(it);
        return v;
    };

    const std::string where = "read_csi: " + path;
    CsiFileData data;
    data.header.mode = value_mode_from(take("format"));
    const int k = static_cast<int>(parse_int(take("subcarriers"), where));
    data.header.rate_hz = parse_double(take("rate_hz"), where);
    const double center = parse_double(take("center_hz"), where);
    const double spacing = parse_double(take("spacing_hz"), where);
    data.header.grid = SubcarrierGrid(center, spacing, k);
    data.header.streams = static_cast<int>(parse_int(take("streams"), where));
    data.header.metadata = std::move(headers);

    const std::size_t expect =
        3 + static_cast<std::size_t>(k) *
                (data.header.mode == CsiValueMode::complex_values ? 2 : 1);
    auto parse_row = [&](const std::string& row, std::size_t no) {
        const auto fields = split_csv(row);
        if (fields.size() != expect)
            throw std::runtime_error(where + ":" + std::to_string(no) + ": row has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(expect) + " for " + std::to_string(k) +
                                     " subcarriers");
        const std::string rw = where + ":" + std::to_string(no);
        CsiFrame f;
        f.timestamp_us = parse_int(fields[0], rw);
        f.stream_id = static_cast<int>(parse_int(fields[1], rw));
        if (!fields[2].empty()) f.agc_gain = parse_double(fields[2], rw);
        f.values.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            if (data.header.mode == CsiValueMode::complex_values) {
                const double re = parse_double(fields[3 + 2 * static_cast<std::size_t>(i)], rw);
                const double im =
                    parse_double(fields[3 + 2 * static_cast<std::size_t>(i) + 1], rw);
                f.values[static_cast<std::size_t>(i)] = {re, im};
            } else {
                f.values[static_cast<std::size_t>(i)] = {
                    parse_double(fields[3 + static_cast<std::size_t>(i)], rw), 0.0};
            }
        }
        if (!f.finite()) throw std::runtime_error(rw + ": non-finite value");
        data.frames.push_back(std::move(f));
    };

    if (!pending_row.empty()) parse_row(pending_row, line_no);
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        parse_row(line, line_no);
    }
    return data;
}

// Ground-truth rows for scored windows, one per (window, stream).
struct WindowLabel {
    std::int64_t window_index = 0;
    int stream_id = 0;
    int label = 0;  // 1 occupied, 0 empty
    std::string scenario = "empty";
};

inline void write_labels(const std::string& path, std::span<const WindowLabel> labels) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_labels: cannot open " + path);
    out << "window_index,stream,label,scenario\n";
    for (const WindowLabel& l : labels) {
        if (l.label != 0 && l.label != 1)
            throw std::invalid_argument("write_labels: label must be 0 or 1");
        scenario_from(l.scenario);  // rejects unknown names
        out << l.window_index << ',' << l.stream_id << ',' << l.label << ',' << l.scenario
            << '\n';
    }
    if (!out) throw std::runtime_error("write_labels: write failed on " + path);
}

inline std::vector<WindowLabel> read_labels(const std::string& path) {
    using namespace io_detail;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_labels: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_labels: " + path + " is empty");
    if (strip_cr(line) != "window_index,stream,label,scenario")
        throw std::runtime_error("read_labels: " + path + ": unexpected header '" + line + "'");
    std::vector<WindowLabel> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        const std::string where = "read_labels: " + path + ":" + std::to_string(line_no);
        if (fields.size() != 4)
            throw std::runtime_error(where + ": expected 4 fields, got " +
                                     std::to_string(fields.size()));
        WindowLabel l;
        l.window_index = parse_int(fields[0], where);
        l.stream_id = static_cast<int>(parse_int(fields[1], where));
        l.label = static_cast<int>(parse_int(fields[2], where));
        if (l.label != 0 && l.label != 1)
            throw std::runtime_error(where + ": label must be 0 or 1, got " + fields[2]);
        l.scenario = fields[3];
        try {
            scenario_from(l.scenario);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        labels.push_back(std::move(l));
    }
    return labels;
}

// Scored windows as written by the detection pass.
struct VerdictRow {
    std::int64_t window_index = 0;
    double phi_overall = 0.0;
    int raw = 0;
    int smoothed = 0;  // warm-up already resolved by the safety policy
};

inline void write_verdicts(const std::string& path, std::span<const VerdictRow> rows) {
    using namespace io_detail;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_verdicts: cannot open " + path);
    out << "window_index,phi_overall,raw,smoothed\n";
    for (const VerdictRow& r : rows)
        out << r.window_index << ',' << format_double(r.phi_overall) << ',' << r.raw << ','
            << r.smoothed << '\n';
    if (!out) throw std::runtime_error("write_verdicts: write failed on " + path);
}

inline std::vector<VerdictRow> read_verdicts(const std::string& path) {
    using namespace io_detail;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_verdicts: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_verdicts: " + path + " is empty");
    if (strip_cr(line) != "window_index,phi_overall,raw,smoothed")
        throw std::runtime_error("read_verdicts: " + path + ": unexpected header '" + line +
                                 "'");
    std::vector<VerdictRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        const std::string where = "read_verdicts: " + path + ":" + std::to_string(line_no);
        if (fields.size() != 4)
            throw std::runtime_error(where + ": expected 4 fields, got " +
                                     std::to_string(fields.size()));
        VerdictRow r;
        r.window_index = parse_int(fields[0], where);
        r.phi_overall = parse_double(fields[1], where);
        r.raw = static_cast<int>(parse_int(fields[2], where));
        r.smoothed = static_cast<int>(parse_int(fields[3], where));
        rows.push_back(r);
    }
    return rows;
}

// Flat key=value detector settings; '#' starts a comment. Only known keys
// are accepted so a typo fails loudly instead of silently running defaults.
inline DetectorConfig load_config(const std::string& path,
                                  DetectorConfig base = DetectorConfig{}) {
    using namespace io_detail;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        const std::string where = "load_config: " + path + ":" + std::to_string(line_no);
        if (eq == std::string::npos)
            throw std::runtime_error(where + ": expected key=value, got '" + line + "'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t");
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "window_len") base.window_len = static_cast<int>(parse_int(value, where));
        else if (key == "layers") base.layers = static_cast<int>(parse_int(value, where));
        else if (key == "smooth_windows")
            base.smooth_windows = static_cast<int>(parse_int(value, where));
        else if (key == "threshold") base.threshold = parse_double(value, where);
        else if (key == "statistic_mode") {
            try {
                base.statistic_mode = statistic_mode_from(value);
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error(where + ": " + e.what());
            }
        } else if (key == "lag_index") base.lag_index = static_cast<int>(parse_int(value, where));
        else if (key == "safety_mode") {
            if (value == "on") base.safety_on = true;
            else if (value == "off") base.safety_on = false;
            else throw std::runtime_error(where + ": safety_mode must be on or off, got '" +
                                          value + "'");
        } else {
            throw std::runtime_error(where + ": unknown config key '" + key + "'");
        }
    }
    base.validate();
    return base;
}

inline void save_config(const std::string& path, const DetectorConfig& config) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("save_config: cannot open " + path);
    out << "window_len=" << config.window_len << '\n'
        << "layers=" << config.layers << '\n'
        << "smooth_windows=" << config.smooth_windows << '\n'
        << "threshold=" << io_detail::format_double(config.threshold) << '\n'
        << "statistic_mode=" << to_string(config.statistic_mode) << '\n'
        << "lag_index=" << config.lag_index << '\n'
        << "safety_mode=" << (config.safety_on ? "on" : "off") << '\n';
    if (!out) throw std::runtime_error("save_config: write failed on " + path);
}

}  // namespace rapidpd
