#pragma once

#include <stdexcept>
#include <string>

namespace aldm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid road, sensor, detector or scenario parameters.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// A fit whose input does not determine a unique solution (duplicate x, rank deficiency).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Fewer than three qualifying start points for a guiding line.
class SeedFailure : public Error {
 public:
  using Error::Error;
};

// The ego lane could not be detected in a frame.
class LaneDetectionFailure : public Error {
 public:
  LaneDetectionFailure(const std::string& what, bool left_failed, bool right_failed)
      : Error(what), left_failed_(left_failed), right_failed_(right_failed) {}

  bool left_failed() const { return left_failed_; }
  bool right_failed() const { return right_failed_; }

 private:
  bool left_failed_;
  bool right_failed_;
};

// Trajectory computation failed for a frame (e.g. boundaries do not overlap).
class FrameError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace aldm
