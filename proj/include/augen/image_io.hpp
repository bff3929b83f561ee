#pragma once

#include <cctype>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "augen/error.hpp"
#include "augen/image.hpp"

namespace augen {

enum class ImageFormat { Png, Jpeg };

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  return FilePtr(std::fopen(path.string().c_str(), mode));
}

// 16-bit samples map to round(v * 255 / 65535); 65535 is odd so the division
// never lands on an exact half.
inline std::uint8_t scale_16_to_8(std::uint32_t v) noexcept {
  return static_cast<std::uint8_t>((v * 255u + 32767u) / 65535u);
}

struct PngReadCtx {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadCtx() {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
  }
};

inline Image load_png(const std::filesystem::path& path) {
  FilePtr fp = open_file(path, "rb");
  if (!fp) raise(errc::io_error, "cannot open file: " + path.string());

  PngReadCtx ctx;
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) raise(errc::decode_error, "png_create_read_struct failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) raise(errc::decode_error, "png_create_info_struct failed");

  std::vector<std::uint8_t> data;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, color_type = 0, channels = 0;

  if (setjmp(png_jmpbuf(ctx.png)))
    raise(errc::decode_error, "corrupt PNG: " + path.string());

  png_init_io(ctx.png, fp.get());
  png_read_info(ctx.png, ctx.info);
  png_get_IHDR(ctx.png, ctx.info, &width, &height, &bit_depth, &color_type, nullptr, nullptr,
               nullptr);

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
    png_set_expand_gray_1_2_4_to_8(ctx.png);
  if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(ctx.png);
  png_set_strip_alpha(ctx.png);
  (void)png_set_interlace_handling(ctx.png);
  png_read_update_info(ctx.png, ctx.info);

  bit_depth = png_get_bit_depth(ctx.png, ctx.info);
  channels = png_get_channels(ctx.png, ctx.info);
  if (channels != 1 && channels != 3)
    raise(errc::unsupported_format, "PNG with unsupported channel layout: " + path.string());

  const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
  data.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = data.data() + y * rowbytes;
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);

  Image img(static_cast<int>(width), static_cast<int>(height), channels, byte_domain);
  const std::size_t samples_per_row = static_cast<std::size_t>(width) * channels;
  for (png_uint_32 y = 0; y < height; ++y) {
    const std::uint8_t* row = rows[y];
    float* out = img.pixels.data() + y * samples_per_row;
    if (bit_depth == 16) {
      for (std::size_t i = 0; i < samples_per_row; ++i) {
        const std::uint32_t v = (static_cast<std::uint32_t>(row[2 * i]) << 8) | row[2 * i + 1];
        out[i] = static_cast<float>(scale_16_to_8(v));
      }
    } else {
      for (std::size_t i = 0; i < samples_per_row; ++i) out[i] = static_cast<float>(row[i]);
    }
  }
  return img;
}

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
  unsigned corrupt_warnings = 0;
};

inline void jpeg_error_exit_cb(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, mgr->message);
  std::longjmp(mgr->jump, 1);
}

// libjpeg pads truncated streams with gray and only warns; count those
// warnings so a short file surfaces as a decode error.
inline void jpeg_emit_message_cb(j_common_ptr cinfo, int msg_level) {
  if (msg_level < 0) ++reinterpret_cast<JpegErrorMgr*>(cinfo->err)->corrupt_warnings;
}

struct JpegDecompressCtx {
  jpeg_decompress_struct cinfo{};
  bool created = false;
  ~JpegDecompressCtx() {
    if (created) jpeg_destroy_decompress(&cinfo);
  }
};

inline Image load_jpeg(const std::filesystem::path& path) {
  FilePtr fp = open_file(path, "rb");
  if (!fp) raise(errc::io_error, "cannot open file: " + path.string());

  JpegDecompressCtx ctx;
  JpegErrorMgr jerr{};
  ctx.cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit_cb;
  jerr.pub.emit_message = jpeg_emit_message_cb;

  std::vector<std::uint8_t> row;
  Image img;

  if (setjmp(jerr.jump))
    raise(errc::decode_error, "corrupt JPEG: " + path.string() + " (" + jerr.message + ")");

  jpeg_create_decompress(&ctx.cinfo);
  ctx.created = true;
  jpeg_stdio_src(&ctx.cinfo, fp.get());
  jpeg_read_header(&ctx.cinfo, TRUE);

  if (ctx.cinfo.jpeg_color_space == JCS_CMYK || ctx.cinfo.jpeg_color_space == JCS_YCCK)
    raise(errc::unsupported_format, "CMYK JPEG not supported: " + path.string());

  ctx.cinfo.out_color_space =
      ctx.cinfo.jpeg_color_space == JCS_GRAYSCALE ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&ctx.cinfo);

  const int width = static_cast<int>(ctx.cinfo.output_width);
  const int height = static_cast<int>(ctx.cinfo.output_height);
  const int channels = ctx.cinfo.output_components;
  if (channels != 1 && channels != 3)
    raise(errc::unsupported_format, "JPEG with unsupported channel layout: " + path.string());

  img = Image(width, height, channels, byte_domain);
  row.resize(static_cast<std::size_t>(width) * channels);
  JSAMPROW rowp = row.data();
  while (ctx.cinfo.output_scanline < ctx.cinfo.output_height) {
    const std::size_t y = ctx.cinfo.output_scanline;
    jpeg_read_scanlines(&ctx.cinfo, &rowp, 1);
    float* out = img.pixels.data() + y * row.size();
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = static_cast<float>(row[i]);
  }
  jpeg_finish_decompress(&ctx.cinfo);

  if (jerr.corrupt_warnings > 0)
    raise(errc::decode_error, "corrupt JPEG data: " + path.string());
  return img;
}

inline std::uint32_t read_u32le(const std::uint8_t* p) noexcept {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
inline std::uint16_t read_u16le(const std::uint8_t* p) noexcept {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

// Uncompressed BI_RGB bitmaps only: 8-bit paletted and 24-bit BGR.
inline Image load_bmp(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(errc::io_error, "cannot open file: " + path.string());
  std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(is)),
                                std::istreambuf_iterator<char>());

  if (buf.size() < 54 || buf[0] != 'B' || buf[1] != 'M')
    raise(errc::decode_error, "corrupt BMP: " + path.string());
  const std::uint32_t pixel_offset = read_u32le(&buf[10]);
  const std::uint32_t dib_size = read_u32le(&buf[14]);
  if (dib_size < 40) raise(errc::unsupported_format, "BMP core header not supported");
  const std::int32_t width = static_cast<std::int32_t>(read_u32le(&buf[18]));
  const std::int32_t height_raw = static_cast<std::int32_t>(read_u32le(&buf[22]));
  const std::uint16_t bpp = read_u16le(&buf[28]);
  const std::uint32_t compression = read_u32le(&buf[30]);
  const std::uint32_t clr_used = read_u32le(&buf[46]);

  if (compression != 0) raise(errc::unsupported_format, "compressed BMP not supported");
  if (bpp != 8 && bpp != 24) raise(errc::unsupported_format, "BMP bit depth not supported");
  const bool top_down = height_raw < 0;
  const std::int32_t height = top_down ? -height_raw : height_raw;
  if (width <= 0 || height <= 0) raise(errc::decode_error, "corrupt BMP: bad dimensions");

  const std::size_t stride = ((static_cast<std::size_t>(width) * bpp / 8) + 3) / 4 * 4;
  if (pixel_offset + stride * height > buf.size())
    raise(errc::decode_error, "truncated BMP: " + path.string());

  struct Rgb {
    std::uint8_t r, g, b;
  };
  std::vector<Rgb> palette;
  bool gray_palette = true;
  if (bpp == 8) {
    const std::size_t entries = clr_used ? clr_used : 256;
    const std::size_t pal_off = 14 + dib_size;
    if (pal_off + entries * 4 > buf.size())
      raise(errc::decode_error, "truncated BMP palette: " + path.string());
    palette.resize(entries);
    for (std::size_t i = 0; i < entries; ++i) {
      const std::uint8_t* e = &buf[pal_off + i * 4];  // BGRA order
      palette[i] = {e[2], e[1], e[0]};
      gray_palette = gray_palette && e[0] == e[1] && e[1] == e[2];
    }
  }

  const int channels = bpp == 24 || !gray_palette ? 3 : 1;
  Image img(width, height, channels, byte_domain);
  for (std::int32_t y = 0; y < height; ++y) {
    const std::size_t src_y = top_down ? y : height - 1 - y;
    const std::uint8_t* row = &buf[pixel_offset + src_y * stride];
    for (std::int32_t x = 0; x < width; ++x) {
      if (bpp == 24) {
        img.at(x, y, 0) = row[x * 3 + 2];
        img.at(x, y, 1) = row[x * 3 + 1];
        img.at(x, y, 2) = row[x * 3 + 0];
      } else {
        const std::uint8_t idx = row[x];
        if (idx >= palette.size()) raise(errc::decode_error, "BMP palette index out of range");
        if (channels == 1) {
          img.at(x, y, 0) = palette[idx].r;
        } else {
          img.at(x, y, 0) = palette[idx].r;
          img.at(x, y, 1) = palette[idx].g;
          img.at(x, y, 2) = palette[idx].b;
        }
      }
    }
  }
  return img;
}

struct PngWriteCtx {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriteCtx() {
    if (png) png_destroy_write_struct(&png, &info);
  }
};

inline std::vector<std::uint8_t> to_bytes(const Image& image) {
  std::vector<std::uint8_t> bytes(image.pixels.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const long v = std::lroundf(image.pixels[i]);
    bytes[i] = static_cast<std::uint8_t>(clamp_unchecked(v, 0L, 255L));
  }
  return bytes;
}

inline void save_png(const Image& image, const std::filesystem::path& path) {
  FilePtr fp = open_file(path, "wb");
  if (!fp) raise(errc::io_error, "cannot open file for writing: " + path.string());

  PngWriteCtx ctx;
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) raise(errc::io_error, "png_create_write_struct failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) raise(errc::io_error, "png_create_info_struct failed");

  std::vector<std::uint8_t> bytes = to_bytes(image);
  std::vector<png_bytep> rows(image.height);
  const std::size_t rowbytes = static_cast<std::size_t>(image.width) * image.channels;
  for (int y = 0; y < image.height; ++y) rows[y] = bytes.data() + y * rowbytes;

  if (setjmp(png_jmpbuf(ctx.png)))
    raise(errc::io_error, "failed writing PNG: " + path.string());

  png_init_io(ctx.png, fp.get());
  png_set_IHDR(ctx.png, ctx.info, image.width, image.height, 8,
               image.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  png_write_image(ctx.png, rows.data());
  png_write_end(ctx.png, nullptr);
}

struct JpegCompressCtx {
  jpeg_compress_struct cinfo{};
  bool created = false;
  ~JpegCompressCtx() {
    if (created) jpeg_destroy_compress(&cinfo);
  }
};

inline constexpr int kJpegQuality = 95;

inline void save_jpeg(const Image& image, const std::filesystem::path& path) {
  FilePtr fp = open_file(path, "wb");
  if (!fp) raise(errc::io_error, "cannot open file for writing: " + path.string());

  JpegCompressCtx ctx;
  JpegErrorMgr jerr{};
  ctx.cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit_cb;

  std::vector<std::uint8_t> bytes = to_bytes(image);

  if (setjmp(jerr.jump))
    raise(errc::io_error, "failed writing JPEG: " + path.string() + " (" + jerr.message + ")");

  jpeg_create_compress(&ctx.cinfo);
  ctx.created = true;
  jpeg_stdio_dest(&ctx.cinfo, fp.get());
  ctx.cinfo.image_width = static_cast<JDIMENSION>(image.width);
  ctx.cinfo.image_height = static_cast<JDIMENSION>(image.height);
  ctx.cinfo.input_components = image.channels;
  ctx.cinfo.in_color_space = image.channels == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_set_defaults(&ctx.cinfo);
  jpeg_set_quality(&ctx.cinfo, kJpegQuality, TRUE);
  jpeg_start_compress(&ctx.cinfo, TRUE);

  const std::size_t rowbytes = static_cast<std::size_t>(image.width) * image.channels;
  while (ctx.cinfo.next_scanline < ctx.cinfo.image_height) {
    JSAMPROW rowp = bytes.data() + ctx.cinfo.next_scanline * rowbytes;
    jpeg_write_scanlines(&ctx.cinfo, &rowp, 1);
  }
  jpeg_finish_compress(&ctx.cinfo);
}

}  // namespace detail

/// Decode a PNG, JPEG, or BMP file into a Byte255 image. The container is
/// detected from the file's magic bytes, not its extension. Alpha channels
/// are dropped; 16-bit samples are reduced with round(v * 255 / 65535).
inline Image load_image(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) raise(errc::io_error, "cannot open file: " + path.string());
  std::uint8_t magic[8] = {};
  probe.read(reinterpret_cast<char*>(magic), sizeof(magic));
  const std::streamsize got = probe.gcount();
  probe.close();

  static const std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (got >= 8 && std::memcmp(magic, png_sig, 8) == 0) return detail::load_png(path);
  if (got >= 2 && magic[0] == 0xFF && magic[1] == 0xD8) return detail::load_jpeg(path);
  if (got >= 2 && magic[0] == 'B' && magic[1] == 'M') return detail::load_bmp(path);
  raise(errc::decode_error, "unrecognized image format: " + path.string());
}

/// Encode a Byte255 image. PNG is lossless; JPEG is written at quality 95 and
/// is lossy. Unit-domain images must be converted to Byte255 first.
inline void save_image(const Image& image, const std::filesystem::path& path, ImageFormat format) {
  if (image.domain.kind != DomainKind::Byte255)
    raise(errc::domain_mismatch, "save_image requires a Byte255 image; convert_domain first");
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height * image.channels)
    raise(errc::invalid_params, "save_image: malformed image");
  if (format == ImageFormat::Png)
    detail::save_png(image, path);
  else
    detail::save_jpeg(image, path);
}

/// Format implied by a file extension (.png / .jpg / .jpeg). Other
/// extensions fall back to PNG, the lossless default.
inline ImageFormat format_for_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".jpg" || ext == ".jpeg") return ImageFormat::Jpeg;
  return ImageFormat::Png;
}

}  // namespace augen
