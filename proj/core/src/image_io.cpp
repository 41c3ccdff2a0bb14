#include "sfp/image_io.hpp"

#include <cmath>
#include <filesystem>
#include <opencv2/imgcodecs.hpp>

#include "sfp/errors.hpp"

namespace sfp {

PlanarImage load_image(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec) {
    throw IoError("cannot read '" + path + "': no such file");
  }
  cv::Mat raw = cv::imread(path, cv::IMREAD_UNCHANGED);
  if (raw.empty()) {
    throw FormatError("cannot decode '" + path + "'");
  }
  if (raw.depth() != CV_8U && raw.depth() != CV_16U) {
    throw FormatError("unsupported bit depth in '" + path + "'");
  }
  const double max_code = raw.depth() == CV_8U ? 255.0 : 65535.0;
  require_min_size(raw.cols, raw.rows, "load_image");

  PlanarImage img(raw.cols, raw.rows);
  const int ch = raw.channels();
  if (ch != 1 && ch != 3 && ch != 4) {
    throw FormatError("unsupported channel count in '" + path + "'");
  }
  // OpenCV decodes color as BGR(A); planes here are R, G, B.
  for (int y = 0; y < raw.rows; ++y) {
    for (int x = 0; x < raw.cols; ++x) {
      double r, g, b;
      if (raw.depth() == CV_8U) {
        if (ch == 1) {
          r = g = b = raw.at<uchar>(y, x);
        } else {
          const uchar* p = raw.ptr<uchar>(y) + static_cast<std::size_t>(x) * ch;
          b = p[0];
          g = p[1];
          r = p[2];
        }
      } else {
        if (ch == 1) {
          r = g = b = raw.at<ushort>(y, x);
        } else {
          const ushort* p = raw.ptr<ushort>(y) + static_cast<std::size_t>(x) * ch;
          b = p[0];
          g = p[1];
          r = p[2];
        }
      }
      img.planes[0].at(x, y) = r / max_code;
      img.planes[1].at(x, y) = g / max_code;
      img.planes[2].at(x, y) = b / max_code;
    }
  }
  return img;
}

void save_image(const PlanarImage& img, const std::string& path) {
  cv::Mat out(img.height, img.width, CV_8UC3);
  for (int y = 0; y < img.height; ++y) {
    uchar* row = out.ptr<uchar>(y);
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        // round(s*255), half away from zero; BGR order for the encoder.
        double v = std::floor(img.planes[c].at(x, y) * 255.0 + 0.5);
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        row[static_cast<std::size_t>(x) * 3 + (2 - c)] = static_cast<uchar>(v);
      }
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path, out);
  } catch (const cv::Exception& e) {
    throw IoError("cannot write '" + path + "': " + e.what());
  }
  if (!ok) throw IoError("cannot write '" + path + "'");
}

}  // namespace sfp
