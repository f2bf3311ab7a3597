#include "lumen/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "lumen/error.hpp"

namespace lumen {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (is.bad()) throw IoError("failed reading '" + path + "'");
    return bytes;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    os.flush();
    if (!os) throw IoError("failed writing '" + path + "'");
}

std::string lower_extension(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

// ---- PNG -------------------------------------------------------------------

struct MemoryReader {
    const std::string* bytes;
    std::size_t pos = 0;
};

void png_read_memory(png_structp png, png_bytep out, png_size_t n) {
    auto* r = static_cast<MemoryReader*>(png_get_io_ptr(png));
    if (r->pos + n > r->bytes->size()) png_error(png, "truncated PNG stream");
    std::memcpy(out, r->bytes->data() + r->pos, n);
    r->pos += n;
}

void png_write_memory(png_structp png, png_bytep data, png_size_t n) {
    auto* out = static_cast<std::string*>(png_get_io_ptr(png));
    out->append(reinterpret_cast<const char*>(data), n);
}

void png_flush_noop(png_structp) {}

struct PngFailure {
    std::string message;
};

void png_error_handler(png_structp png, png_const_charp msg) {
    auto* f = static_cast<PngFailure*>(png_get_error_ptr(png));
    if (f) f->message = msg;
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

RgbImage decode_png(const std::string& bytes) {
    PngFailure failure;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &failure, png_error_handler, png_warning_handler);
    if (!png) throw IoError("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng initialisation failed");
    }

    MemoryReader reader{&bytes};
    // Everything that owns memory lives outside the setjmp scope.
    std::vector<png_byte> data;
    std::vector<png_bytep> rows;
    volatile bool unsupported = false;
    png_uint_32 width = 0, height = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        if (unsupported) throw UnsupportedFormat("only 8-bit PNG images are supported");
        throw IoError("corrupt or truncated PNG: " + failure.message);
    }

    png_set_read_fn(png, &reader, png_read_memory);
    png_read_info(png, info);
    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (depth == 16) {
        unsupported = true;
        png_error(png, "16-bit");
    }
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const png_size_t stride = png_get_rowbytes(png, info);
    if (stride != static_cast<png_size_t>(width) * 3) png_error(png, "unexpected row layout");
    data.resize(stride * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = data.data() + y * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    std::vector<Rgb> px(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < px.size(); ++i)
        px[i] = Rgb{data[3 * i] / 255.0, data[3 * i + 1] / 255.0, data[3 * i + 2] / 255.0};
    return RgbImage(static_cast<int>(width), static_cast<int>(height), std::move(px));
}

std::string encode_png(const RgbImage& img) {
    std::vector<png_byte> data(img.size() * 3);
    for (std::size_t i = 0; i < img.size(); ++i)
        for (int c = 0; c < 3; ++c) data[3 * i + c] = quantize(img.pixels()[i][c]);
    std::vector<png_bytep> rows(img.height());
    for (int y = 0; y < img.height(); ++y) rows[y] = data.data() + static_cast<std::size_t>(y) * img.width() * 3;

    PngFailure failure;
    std::string out;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &failure, png_error_handler, png_warning_handler);
    if (!png) throw IoError("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encoding failed: " + failure.message);
    }
    png_set_write_fn(png, &out, png_write_memory, png_flush_noop);
    png_set_IHDR(png, info, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

// ---- PPM -------------------------------------------------------------------

class HeaderReader {
public:
    explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

    long next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_])))
            throw IoError("malformed PPM header");
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            v = v * 10 + (bytes_[pos_++] - '0');
            if (v > (1L << 24)) throw IoError("PPM header value too large");
        }
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_start() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            throw IoError("malformed PPM header");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& bytes_;
    std::size_t pos_ = 2;
};

bool is_png(const std::string& bytes) {
    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

}  // namespace

std::uint8_t quantize(double v) {
    const double s = std::floor(clamp01(v) * 255.0 + 0.5);
    return static_cast<std::uint8_t>(s);
}

RgbImage decode_ppm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') throw UnsupportedFormat("not a PPM file");
    if (bytes[1] != '6') throw UnsupportedFormat("only binary PPM (P6) is supported");
    HeaderReader header(bytes);
    const long width = header.next_int();
    const long height = header.next_int();
    const long maxval = header.next_int();
    if (width < 1 || height < 1) throw IoError("PPM dimensions must be positive");
    if (maxval != 255) throw UnsupportedFormat("PPM maxval " + std::to_string(maxval) + " unsupported (need 255)");
    const std::size_t start = header.raster_start();
    const std::size_t need = static_cast<std::size_t>(width) * height * 3;
    if (bytes.size() < start + need) throw IoError("truncated PPM raster");

    std::vector<Rgb> px(static_cast<std::size_t>(width) * height);
    const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + start);
    for (std::size_t i = 0; i < px.size(); ++i)
        px[i] = Rgb{raster[3 * i] / 255.0, raster[3 * i + 1] / 255.0, raster[3 * i + 2] / 255.0};
    return RgbImage(static_cast<int>(width), static_cast<int>(height), std::move(px));
}

std::string encode_ppm(const RgbImage& img) {
    std::string out = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    out.reserve(out.size() + img.size() * 3);
    for (const Rgb& px : img.pixels())
        for (int c = 0; c < 3; ++c) out.push_back(static_cast<char>(quantize(px[c])));
    return out;
}

RgbImage load_image(const std::string& path) {
    const std::string bytes = read_file(path);
    if (is_png(bytes)) return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P') return decode_ppm(bytes);
    throw UnsupportedFormat("'" + path + "' is neither PNG nor PPM");
}

void save_image(const RgbImage& img, const std::string& path) {
    const std::string ext = lower_extension(path);
    if (ext == "png") {
        write_file(path, encode_png(img));
    } else if (ext == "ppm") {
        write_file(path, encode_ppm(img));
    } else {
        throw UnsupportedFormat("cannot infer output format from '" + path + "' (use .png or .ppm)");
    }
}

}  // namespace lumen
