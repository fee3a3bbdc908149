#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ftdo/oracle.hpp"

namespace ftdo {

class SerializeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kOracleFormatVersion = 1;

/// Versioned little-endian binary dump of every table. Field-wise, so equal
/// oracles always produce identical bytes.
void save_oracle(const Oracle& o, std::ostream& out);
Oracle load_oracle(std::istream& in);

void save_oracle_file(const Oracle& o, const std::string& path);
Oracle load_oracle_file(const std::string& path);

}  // namespace ftdo
