#include "eulera/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace eulera {

namespace {

constexpr char kMagic[4] = {'E', 'A', 'F', '1'};

template <typename T>
void put(std::ofstream& os, T value) {
    os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
    T value{};
    is.read(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
}

}  // namespace

void write_eaf1(const std::string& path, const ScalarField& f) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    os.write(kMagic, 4);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid->n1));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid->n2));
    put<double>(os, f.grid->L);
    for (int i = 0; i < f.grid->n1; ++i)
        for (int j = 0; j < f.grid->n2; ++j) put<double>(os, f.v(i, j));
    if (!os) throw NumericalError("short write: " + path);
}

RawField read_eaf1(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw ValidationError("not an EAF1 file: " + path);
    RawField raw;
    raw.n1 = static_cast<int>(get<std::uint32_t>(is));
    raw.n2 = static_cast<int>(get<std::uint32_t>(is));
    raw.L = get<double>(is);
    if (!is || raw.n1 <= 0 || raw.n2 <= 0 || raw.n1 > (1 << 20) || raw.n2 > (1 << 20))
        throw ValidationError("corrupt EAF1 header: " + path);
    raw.v.resize(raw.n1, raw.n2);
    for (int i = 0; i < raw.n1; ++i)
        for (int j = 0; j < raw.n2; ++j) raw.v(i, j) = get<double>(is);
    if (!is) throw ValidationError("truncated EAF1 payload: " + path);
    return raw;
}

ScalarField attach(const Grid& g, const RawField& raw) {
    if (raw.n1 != g.n1 || raw.n2 != g.n2)
        throw ValidationError("EAF1 shape does not match grid");
    if (std::abs(raw.L - g.L) > 1e-12 * std::max(1.0, g.L))
        throw ValidationError("EAF1 channel length does not match grid");
    return ScalarField(g, raw.v);
}

std::string fmt_full(Real x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::string path, const std::vector<std::string>& header)
    : path_(std::move(path)) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += header[i];
    }
    buf_ += '\n';
}

void CsvWriter::row(const std::vector<Real>& values) {
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += fmt_full(values[i]);
    }
    buf_ += '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

void CsvWriter::close() {
    if (!open_) return;
    open_ = false;
    std::ofstream os(path_, std::ios::trunc);
    if (!os) throw ValidationError("cannot open for writing: " + path_);
    os << buf_;
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
    }
}

namespace {

struct LogRange {
    Real lo, hi;
};

LogRange padded_log_range(std::vector<Real> vals) {
    Real lo = 0, hi = 0;
    bool any = false;
    for (Real v : vals) {
        if (v > 0 && std::isfinite(v)) {
            if (!any) {
                lo = hi = v;
                any = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (!any) return {0.1, 10.0};
    Real llo = std::log10(lo), lhi = std::log10(hi);
    if (lhi - llo < 0.5) {
        Real mid = 0.5 * (llo + lhi);
        llo = mid - 0.25;
        lhi = mid + 0.25;
    }
    const Real pad = 0.06 * (lhi - llo);
    return {llo - pad, lhi + pad};
}

}  // namespace

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series) {
    const int W = 640, H = 480;
    const int ml = 70, mr = 20, mt = 40, mb = 50;

    std::vector<Real> xs, ys;
    for (const auto& s : series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    const LogRange rx = padded_log_range(xs);
    const LogRange ry = padded_log_range(ys);

    auto px = [&](Real x) {
        return ml + (std::log10(x) - rx.lo) / (rx.hi - rx.lo) * (W - ml - mr);
    };
    auto py = [&](Real y) {
        return H - mb - (std::log10(y) - ry.lo) / (ry.hi - ry.lo) * (H - mt - mb);
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
         "\" height=\"" + std::to_string(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + std::to_string(W / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" + title + "</text>\n";

    // Decade grid lines with labels.
    for (int e = static_cast<int>(std::ceil(rx.lo)); e <= static_cast<int>(std::floor(rx.hi)); ++e) {
        const Real x = px(std::pow(10.0, e));
        s += "<line x1=\"" + fmt_full(x) + "\" y1=\"" + std::to_string(mt) + "\" x2=\"" +
             fmt_full(x) + "\" y2=\"" + std::to_string(H - mb) +
             "\" stroke=\"#dddddd\"/>\n";
        s += "<text x=\"" + fmt_full(x) + "\" y=\"" + std::to_string(H - mb + 18) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" +
             std::to_string(e) + "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ry.lo)); e <= static_cast<int>(std::floor(ry.hi)); ++e) {
        const Real y = py(std::pow(10.0, e));
        s += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + fmt_full(y) + "\" x2=\"" +
             std::to_string(W - mr) + "\" y2=\"" + fmt_full(y) + "\" stroke=\"#dddddd\"/>\n";
        s += "<text x=\"" + std::to_string(ml - 6) + "\" y=\"" + fmt_full(y + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" +
             std::to_string(e) + "</text>\n";
    }
    s += "<rect x=\"" + std::to_string(ml) + "\" y=\"" + std::to_string(mt) + "\" width=\"" +
         std::to_string(W - ml - mr) + "\" height=\"" + std::to_string(H - mt - mb) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
    s += "<text x=\"" + std::to_string((ml + W - mr) / 2) + "\" y=\"" + std::to_string(H - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + xlabel +
         "</text>\n";
    s += "<text x=\"16\" y=\"" + std::to_string((mt + H - mb) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " + std::to_string((mt + H - mb) / 2) + ")\">" +
         ylabel + "</text>\n";

    int legend_y = mt + 16;
    for (const auto& ser : series) {
        std::string pts;
        std::string markers;
        for (size_t i = 0; i < ser.x.size(); ++i) {
            if (!(ser.x[i] > 0) || !(ser.y[i] > 0)) continue;
            const Real x = px(ser.x[i]), y = py(ser.y[i]);
            pts += fmt_full(x) + "," + fmt_full(y) + " ";
            markers += "<circle cx=\"" + fmt_full(x) + "\" cy=\"" + fmt_full(y) +
                       "\" r=\"3\" fill=\"" + ser.color + "\"/>\n";
        }
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + ser.color +
             "\" stroke-width=\"1.5\"/>\n";
        s += markers;
        s += "<text x=\"" + std::to_string(W - mr - 8) + "\" y=\"" + std::to_string(legend_y) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" +
             ser.color + "\">" + ser.label + "</text>\n";
        legend_y += 16;
    }
    s += "</svg>\n";

    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ValidationError("cannot open for writing: " + path);
    os << s;
}

void ensure_dir(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw ValidationError("cannot create directory: " + path);
}

}  // namespace eulera
