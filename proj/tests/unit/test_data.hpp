#pragma once

#include <string>

#include "pla/io/files.hpp"

namespace pla::testing {

inline std::string data_path(const std::string& name) {
  return std::string(PLA_TEST_DATA_DIR) + "/" + name;
}

inline PlaNetwork load(const std::string& name) { return load_network(data_path(name)); }

}  // namespace pla::testing
