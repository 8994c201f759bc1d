#pragma once

#include <string>
#include <vector>

namespace tsg {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Fixed-format double printing so reports are byte-reproducible.
std::string format_double(double x);

// Write via temp file + rename in the target directory.
void atomic_write(const std::string& path, const std::string& contents);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::string out_;
  std::size_t width_;
};

}  // namespace tsg
