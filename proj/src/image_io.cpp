#include "se2n/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

#include "se2n/errors.hpp"

namespace se2n {

namespace {

bool ends_with(const std::string& s, const std::string& suf) {
    if (s.size() < suf.size()) return false;
    return std::equal(suf.rbegin(), suf.rend(), s.rbegin(), [](char a, char b) { return std::tolower(a) == b; });
}

// Skips whitespace and '#' comments between PNM header fields.
int pnm_int(std::istream& is) {
    int c;
    while ((c = is.peek()) != EOF) {
        if (std::isspace(c)) {
            is.get();
        } else if (c == '#') {
            std::string dummy;
            std::getline(is, dummy);
        } else {
            break;
        }
    }
    int v;
    if (!(is >> v)) throw IoError("malformed PGM header");
    return v;
}

}  // namespace

Image load_pgm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    char magic[2];
    if (!is.read(magic, 2) || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '2'))
        throw IoError(path + ": not a PGM file (P2/P5)");
    const int w = pnm_int(is), h = pnm_int(is), maxval = pnm_int(is);
    if (w <= 0 || h <= 0 || w > 65536 || h > 65536) throw IoError(path + ": bad PGM dimensions");
    if (maxval <= 0 || maxval > 65535) throw IoError(path + ": bad PGM maxval");
    Image img(w, h);
    const std::size_t n = static_cast<std::size_t>(w) * h;
    if (magic[1] == '2') {
        for (std::size_t i = 0; i < n; ++i) img.v[i] = static_cast<double>(pnm_int(is)) / maxval;
        return img;
    }
    is.get();  // single whitespace after maxval
    const int bps = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> buf(n * bps);
    if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
        throw IoError(path + ": truncated PGM data");
    for (std::size_t i = 0; i < n; ++i) {
        const int v = bps == 1 ? buf[i] : (buf[2 * i] << 8) | buf[2 * i + 1];
        img.v[i] = static_cast<double>(v) / maxval;
    }
    return img;
}

Image load_png(const std::string& path) {
    std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "rb"), &std::fclose);
    if (!fp) throw IoError("cannot open " + path);
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8)) throw IoError(path + ": not a PNG file");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": corrupt PNG");
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);
    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int channels = png_get_channels(png, info);
    std::vector<unsigned char> data(png_get_rowbytes(png, info) * h);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y) rows[y] = data.data() + y * png_get_rowbytes(png, info);
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const unsigned char* p = rows[y] + x * channels;
            img.at(x, y) = channels >= 3 ? luma601(p[0], p[1], p[2]) / 255.0 : p[0] / 255.0;
        }
    return img;
}

Image load_image(const std::string& path) {
    if (ends_with(path, ".png")) return load_png(path);
    return load_pgm(path);
}

void save_pgm(const std::string& path, const Image& img) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path);
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    std::vector<unsigned char> buf(img.v.size());
    for (std::size_t i = 0; i < buf.size(); ++i)
        buf[i] = static_cast<unsigned char>(std::lround(std::clamp(img.v[i], 0.0, 1.0) * 255.0));
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!os) throw IoError("short write to " + path);
}

}  // namespace se2n
