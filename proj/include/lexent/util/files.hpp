#ifndef LEXENT_UTIL_FILES_HPP
#define LEXENT_UTIL_FILES_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "lexent/error.hpp"

namespace lexent::util {

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
  return in;
}

inline std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temp file and renames it over the target, so readers
// never observe a partially written output.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw InputError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

// 64-bit FNV-1a; used for input checksums in run manifests.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string checksum_hex(const std::filesystem::path& path) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(read_file(path));
  return ss.str();
}

}  // namespace lexent::util

#endif  // LEXENT_UTIL_FILES_HPP
