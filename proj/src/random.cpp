#include "fastball/random.hpp"

namespace fastball {

std::uint64_t entropy_seed() {
  std::random_device device;
  return (std::uint64_t{device()} << 32) ^ device();
}

}  // namespace fastball
