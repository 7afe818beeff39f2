#pragma once

#include <map>
#include <string>
#include <vector>

namespace nlslab {

// Flat key-value document with [section] headers and '#' comments. Chosen
// over nested formats so experiment configs diff cleanly in run logs.
class KvDoc {
 public:
  static KvDoc parse(const std::string& text);
  static KvDoc parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_int_or(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;
  std::vector<double> get_list_or(const std::string& section, const std::string& key,
                                  const std::vector<double>& fallback) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  // canonical emission: sections and keys in sorted order, one value per
  // line. This is the byte stream the config digest is computed over.
  std::string canonical_text() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace nlslab
