#include "ctslim/codec.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <jpeglib.h>

namespace ctslim {

namespace {

std::string lower_ext(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

SliceImage gray_from_rgb(int h, int w, const std::vector<std::uint8_t>& rgb) {
  SliceImage img(h, w);
  const std::uint8_t* p = rgb.data();
  for (float& px : img.pixels) {
    px = luminance_rec601(p[0], p[1], p[2]);
    p += 3;
  }
  return img;
}

SliceImage read_png(const std::filesystem::path& path) {
  png_image im;
  std::memset(&im, 0, sizeof(im));
  im.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&im, path.string().c_str()))
    throw Error("cannot decode PNG " + path.string() + ": " + im.message);
  if (im.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&im);
    throw Error("16-bit PNG is not supported: " + path.string());
  }
  const bool color = (im.format & PNG_FORMAT_FLAG_COLOR) != 0;
  im.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int h = static_cast<int>(im.height);
  const int w = static_cast<int>(im.width);
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(im));
  if (!png_image_finish_read(&im, nullptr, buf.data(), 0, nullptr)) {
    png_image_free(&im);
    throw Error("cannot decode PNG " + path.string() + ": " + im.message);
  }
  if (color) return gray_from_rgb(h, w, buf);
  SliceImage img(h, w);
  std::copy(buf.begin(), buf.end(), img.pixels.begin());
  return img;
}

struct JpegErrorMgr {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

SliceImage read_jpeg(const std::filesystem::path& path) {
  FilePtr f(std::fopen(path.string().c_str(), "rb"));
  if (!f) throw Error("cannot open " + path.string());

  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error("cannot decode JPEG " + path.string() + ": " + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f.get());
  jpeg_read_header(&cinfo, TRUE);
  const bool gray = cinfo.jpeg_color_space == JCS_GRAYSCALE;
  cinfo.out_color_space = gray ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const int h = static_cast<int>(cinfo.output_height);
  const int w = static_cast<int>(cinfo.output_width);
  const int channels = cinfo.output_components;
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(h) * w * channels);
  while (cinfo.output_scanline < cinfo.output_height) {
    std::uint8_t* row = buf.data() + static_cast<std::size_t>(cinfo.output_scanline) * w * channels;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);

  if (channels == 1) {
    SliceImage img(h, w);
    std::copy(buf.begin(), buf.end(), img.pixels.begin());
    return img;
  }
  return gray_from_rgb(h, w, buf);
}

}  // namespace

bool is_supported_image(const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

SliceImage read_image(const std::filesystem::path& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".png") return read_png(path);
  if (ext == ".jpg" || ext == ".jpeg") return read_jpeg(path);
  throw Error("unsupported image format: " + path.string());
}

void write_png_gray8(const SliceImage& img, const std::filesystem::path& path) {
  std::vector<std::uint8_t> rows(img.size());
  for (std::size_t i = 0; i < img.size(); ++i)
    rows[i] = static_cast<std::uint8_t>(quantize_u8(img.pixels[i]));

  FilePtr f(std::fopen(path.string().c_str(), "wb"));
  if (!f) throw Error("cannot open for writing: " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("cannot encode PNG " + path.string());
  }
  png_init_io(png, f.get());
  // Fast settings; slice stacks are written in bulk.
  png_set_compression_level(png, 1);
  png_set_filter(png, 0, PNG_FILTER_NONE);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y)
    png_write_row(png, rows.data() + static_cast<std::size_t>(y) * img.width);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace ctslim
