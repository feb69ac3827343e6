#include "raster.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

#include "mt19937.hpp"
#include "weighted.hpp"

namespace ordstat {

namespace {

class TokenReader {
  public:
    explicit TokenReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // next whitespace-delimited token, skipping '#' comments to end of line
    std::string next_token() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size())
            throw std::invalid_argument("pnm: truncated header");
        std::string tok;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]))
            tok.push_back(static_cast<char>(bytes_[pos_++]));
        return tok;
    }

    int next_int(const char *what) {
        const std::string tok = next_token();
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception &) {
            throw std::invalid_argument(std::string("pnm: bad ") + what +
                                        " value '" + tok + "'");
        }
    }

    // consumes exactly the single whitespace byte that ends the header
    void consume_single_space() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            throw std::invalid_argument("pnm: missing header terminator");
        ++pos_;
    }

    std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

  private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

Mask3 Mask3::normalized(std::span<const double> raw) {
    if (raw.size() != 9)
        throw std::invalid_argument("mask: need 9 weights");
    double tot = 0.0;
    for (double w : raw) {
        if (!(w >= 0.0))
            throw std::invalid_argument("mask: negative weight");
        tot += w;
    }
    if (!(tot > 0.0))
        throw std::invalid_argument("mask: zero total weight");
    Mask3 m{};
    for (std::size_t i = 0; i < 9; ++i)
        m.weights[i] = raw[i] / tot;
    return m;
}

Mask3 Mask3::wiener() {
    const double raw[9] = {10, 12, 9, 12, 19, 12, 9, 12, 10};
    return normalized(raw);
}

Raster read_pnm(std::span<const std::uint8_t> bytes) {
    TokenReader rd(bytes);
    const std::string magic = rd.next_token();
    int channels;
    bool binary;
    if (magic == "P2") {
        channels = 1;
        binary = false;
    } else if (magic == "P3") {
        channels = 3;
        binary = false;
    } else if (magic == "P5") {
        channels = 1;
        binary = true;
    } else if (magic == "P6") {
        channels = 3;
        binary = true;
    } else {
        throw std::invalid_argument("pnm: unsupported magic '" + magic + "'");
    }
    const int width = rd.next_int("width");
    const int height = rd.next_int("height");
    const int maxval = rd.next_int("maxval");
    if (width < 1 || height < 1)
        throw std::invalid_argument("pnm: bad dimensions");
    if (maxval != 255)
        throw std::invalid_argument("pnm: only maxval 255 is supported");

    Raster r;
    r.width = width;
    r.height = height;
    r.channels = channels;
    const std::size_t count =
        static_cast<std::size_t>(width) * height * channels;
    r.samples.resize(count);

    if (binary) {
        rd.consume_single_space();
        const auto payload = rd.rest();
        if (payload.size() < count)
            throw std::invalid_argument("pnm: truncated payload");
        // interleaved on disk -> planar in memory
        std::size_t k = 0;
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                for (int c = 0; c < channels; ++c)
                    r.at(c, y, x) = payload[k++];
    } else {
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                for (int c = 0; c < channels; ++c) {
                    const int v = rd.next_int("sample");
                    if (v < 0 || v > 255)
                        throw std::invalid_argument("pnm: sample out of range");
                    r.at(c, y, x) = static_cast<std::uint8_t>(v);
                }
    }
    return r;
}

Raster read_pnm_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("pnm: cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return read_pnm(bytes);
}

std::vector<std::uint8_t> write_pnm(const Raster &r, bool binary) {
    if (r.channels != 1 && r.channels != 3)
        throw std::invalid_argument("pnm: channels must be 1 or 3");
    const std::size_t count =
        static_cast<std::size_t>(r.width) * r.height * r.channels;
    if (r.width < 1 || r.height < 1 || r.samples.size() != count)
        throw std::invalid_argument("pnm: inconsistent raster");

    std::string header;
    header += r.channels == 1 ? (binary ? "P5" : "P2") : (binary ? "P6" : "P3");
    header += "\n" + std::to_string(r.width) + " " + std::to_string(r.height) +
              "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());

    if (binary) {
        out.reserve(out.size() + count);
        for (int y = 0; y < r.height; ++y)
            for (int x = 0; x < r.width; ++x)
                for (int c = 0; c < r.channels; ++c)
                    out.push_back(r.at(c, y, x));
    } else {
        std::string body;
        for (int y = 0; y < r.height; ++y) {
            for (int x = 0; x < r.width; ++x)
                for (int c = 0; c < r.channels; ++c) {
                    body += std::to_string(r.at(c, y, x));
                    body += (x == r.width - 1 && c == r.channels - 1) ? '\n' : ' ';
                }
        }
        out.insert(out.end(), body.begin(), body.end());
    }
    return out;
}

void write_pnm_file(const Raster &r, const std::string &path, bool binary) {
    const auto bytes = write_pnm(r, binary);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("pnm: cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("pnm: write failed for '" + path + "'");
}

void add_salt_pepper(Raster &r, double pnoise, Mt19937 &rng) {
    if (!(pnoise >= 0.0 && pnoise <= 1.0))
        throw std::invalid_argument("add_salt_pepper: pnoise outside [0,1]");
    for (auto &s : r.samples) {
        const double u = rng.next_uniform53();
        if (u < pnoise / 2.0)
            s = 0;
        else if (u < pnoise)
            s = 255;
    }
}

Raster weighted_median_filter(const Raster &r, const Mask3 &mask) {
    if (r.width < 3 || r.height < 3)
        throw std::invalid_argument("weighted_median_filter: raster must be at least 3x3");
    Raster out = r; // border rows/columns stay as they are
    double vals[9];
    double wts[9];
    for (int c = 0; c < r.channels; ++c) {
        for (int y = 1; y < r.height - 1; ++y) {
            for (int x = 1; x < r.width - 1; ++x) {
                int k = 0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx)
                        vals[k++] = r.at(c, y + dy, x + dx);
                for (int i = 0; i < 9; ++i)
                    wts[i] = mask.weights[static_cast<std::size_t>(i)];
                const auto res = weighted_percentile(
                    std::span<double>(vals, 9), std::span<double>(wts, 9), 0.5);
                out.at(c, y, x) = static_cast<std::uint8_t>(res.value);
            }
        }
    }
    return out;
}

} // namespace ordstat
