#include "tubal/app/image_io.hpp"

#include "tubal/errors.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <cmath>
#include <regex>
#include <vector>

namespace tubal::app {

ImageSize parse_size(const std::string& text) {
    static const std::regex pattern(R"((\d+)[xX](\d+))");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw InvalidArgument("size must look like 28x28, got '" + text + "'");
    const ImageSize size{std::stol(m[1]), std::stol(m[2])};
    if (size.rows < 1 || size.cols < 1) throw InvalidArgument("size extents must be positive");
    return size;
}

Tensor3 load_image(const std::filesystem::path& path, Index channels, std::optional<ImageSize> size) {
    if (channels != 1 && channels != 3) throw InvalidArgument("channels must be 1 or 3");
    if (!std::filesystem::exists(path)) throw IoError(path.string() + ": no such file");
    cv::Mat img = cv::imread(path.string(), channels == 1 ? cv::IMREAD_GRAYSCALE : cv::IMREAD_COLOR);
    if (img.empty()) throw FormatError(path.string() + ": cannot decode image");
    if (size) {
        cv::Mat resized;
        cv::resize(img, resized, cv::Size(static_cast<int>(size->cols), static_cast<int>(size->rows)), 0, 0,
                   cv::INTER_LINEAR);
        img = resized;
    }
    if (channels == 3) cv::cvtColor(img, img, cv::COLOR_BGR2RGB);
    std::vector<cv::Mat> planes;
    cv::split(img, planes);

    Tensor3 out(img.rows, img.cols, channels);
    for (Index k = 0; k < channels; ++k) {
        const cv::Mat& plane = planes[static_cast<std::size_t>(k)];
        for (int r = 0; r < plane.rows; ++r) {
            const auto* row = plane.ptr<std::uint8_t>(r);
            for (int c = 0; c < plane.cols; ++c) out(r, c, k) = row[c] / 255.0;
        }
    }
    return out;
}

void save_image(const std::filesystem::path& path, const Tensor3& image) {
    if (image.n3() != 1 && image.n3() != 3) throw InvalidArgument("save_image: need 1 or 3 frontal slices");
    std::vector<cv::Mat> planes;
    for (Index k = 0; k < image.n3(); ++k) {
        cv::Mat plane(static_cast<int>(image.n1()), static_cast<int>(image.n2()), CV_8UC1);
        for (int r = 0; r < plane.rows; ++r) {
            auto* row = plane.ptr<std::uint8_t>(r);
            for (int c = 0; c < plane.cols; ++c) {
                row[c] = static_cast<std::uint8_t>(std::lround(std::clamp(image(r, c, k), 0.0, 1.0) * 255.0));
            }
        }
        planes.push_back(plane);
    }
    cv::Mat out;
    cv::merge(planes, out);
    if (image.n3() == 3) cv::cvtColor(out, out, cv::COLOR_RGB2BGR);
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), out);
    } catch (const cv::Exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    if (!ok) throw IoError(path.string() + ": cannot write image");
}

}  // namespace tubal::app
