#include "vmdtex/util/atomic_file.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "vmdtex/error.hpp"

namespace vmdtex::util {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::span<const std::byte> content) {
  static std::atomic<unsigned long> counter{0};
  if (path.has_parent_path()) fs::create_directories(path.parent_path());

  std::ostringstream suffix;
  suffix << ".tmp." << ::getpid() << '.' << std::this_thread::get_id() << '.' << counter++;
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("WriteError", "cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(content.data()),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw data_error("WriteError", "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw data_error("WriteError", "cannot rename into " + path.string());
  }
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  write_file_atomic(path, std::as_bytes(std::span(content.data(), content.size())));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("MissingArtifact", "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace vmdtex::util
