#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nlslab {

// FNV-1a 64-bit; the digest embedded in artifacts. Deliberately simple so
// that any consumer can recompute it from the effective-config text.
class Fnv1a {
 public:
  void add_bytes(const void* data, std::size_t n);
  void add_u64(std::uint64_t x);
  void add_f64(double x);
  void add_string(const std::string& s) { add_bytes(s.data(), s.size()); }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t x);

// shortest round-trip decimal representation
std::string format_double(double x);

// temp-then-rename; no partially written file is ever visible under `path`
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// RFC-4180-style quoting: quotes a field iff it contains comma/quote/newline
std::string csv_quote(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace nlslab
