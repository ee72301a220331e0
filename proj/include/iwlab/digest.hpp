#pragma once

#include <string>

namespace iwlab {

// lowercase hex SHA-256
std::string sha256_hex(const std::string& data);

}  // namespace iwlab
