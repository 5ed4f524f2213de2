#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <vector>

namespace spherechord {

// Seedable stream: identical (seed, stream_id) reproduce identical draws.
// Uniform and normal variates are generated from the raw engine output, so
// the sequence does not depend on the standard library's distribution
// implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  double uniform();  // [0, 1)
  double normal();   // standard normal (Marsaglia polar)
  Eigen::VectorXd gaussian(int d);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

struct SampleBatch {
  std::vector<double> values;
  std::int64_t n_attempted = 0;

  std::int64_t n_accepted() const { return static_cast<std::int64_t>(values.size()); }
};

}  // namespace spherechord
