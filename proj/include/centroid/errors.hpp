#ifndef CENTROID_ERRORS_HPP
#define CENTROID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace centroid {

struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& m) : std::runtime_error(m) {}
};

struct NotSymmetric : std::runtime_error {
  explicit NotSymmetric(const std::string& m) : std::runtime_error(m) {}
};

struct BadDirection : std::runtime_error {
  explicit BadDirection(const std::string& m) : std::runtime_error(m) {}
};

struct UnsupportedDimension : std::runtime_error {
  explicit UnsupportedDimension(const std::string& m) : std::runtime_error(m) {}
};

struct LPFailure : std::runtime_error {
  explicit LPFailure(const std::string& m) : std::runtime_error(m) {}
};

struct NoSamples : std::runtime_error {
  explicit NoSamples(const std::string& m) : std::runtime_error(m) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

struct OutOfRange : std::runtime_error {
  explicit OutOfRange(const std::string& m) : std::runtime_error(m) {}
};

struct FrameFailure : std::runtime_error {
  explicit FrameFailure(const std::string& m) : std::runtime_error(m) {}
};

struct InterpolationInstability : std::runtime_error {
  explicit InterpolationInstability(const std::string& m) : std::runtime_error(m) {}
};

struct VolumeNotNormalized : std::runtime_error {
  explicit VolumeNotNormalized(const std::string& m) : std::runtime_error(m) {}
};

struct PrecisionLoss : std::runtime_error {
  explicit PrecisionLoss(const std::string& m) : std::runtime_error(m) {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& m) : std::runtime_error(m) {}
};

struct InsufficientPoints : std::runtime_error {
  explicit InsufficientPoints(const std::string& m) : std::runtime_error(m) {}
};

struct NotContained : std::runtime_error {
  explicit NotContained(const std::string& m) : std::runtime_error(m) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace centroid

#endif
