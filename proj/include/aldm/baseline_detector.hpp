#pragma once

#include <optional>

#include "aldm/line_sensor.hpp"

namespace aldm {

// The single object per side a one-object-per-side detector uses as guiding line.
struct BaselineSelection {
  std::optional<LineObject> left;
  std::optional<LineObject> right;
};

// Per side, the object with the smallest min |y| over its points; ties go to the lower first x.
BaselineSelection detect_baseline(const SensorCloud& cloud);

}  // namespace aldm
