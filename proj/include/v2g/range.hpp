#pragma once

namespace v2g {

/// Closed interval used for the uniform draws that populate a scenario.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

}  // namespace v2g
