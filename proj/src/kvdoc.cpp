#include "kvdoc.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include "io_util.hpp"

namespace nlslab {

namespace {
std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace

KvDoc KvDoc::parse(const std::string& text) {
  KvDoc doc;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      doc.sections_[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    doc.sections_[section][key] = val;
  }
  return doc;
}

KvDoc KvDoc::parse_file(const std::string& path) { return parse(read_file(path)); }

bool KvDoc::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string KvDoc::get(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end() || !s->second.count(key))
    throw std::invalid_argument("config: missing [" + section + "] " + key);
  return s->second.at(key);
}

std::string KvDoc::get_or(const std::string& section, const std::string& key,
                          const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double KvDoc::get_double(const std::string& section, const std::string& key) const {
  const std::string v = get(section, key);
  if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  return std::stod(v);
}

double KvDoc::get_double_or(const std::string& section, const std::string& key,
                            double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long KvDoc::get_int_or(const std::string& section, const std::string& key,
                       long fallback) const {
  return has(section, key) ? std::stol(get(section, key)) : fallback;
}

bool KvDoc::get_bool_or(const std::string& section, const std::string& key,
                        bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: bad boolean for [" + section + "] " + key);
}

std::vector<double> KvDoc::get_list(const std::string& section,
                                    const std::string& key) const {
  std::istringstream is(get(section, key));
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    if (tok == "inf" || tok == "infinity")
      out.push_back(std::numeric_limits<double>::infinity());
    else
      out.push_back(std::stod(tok));
  }
  if (out.empty())
    throw std::invalid_argument("config: empty list for [" + section + "] " + key);
  return out;
}

std::vector<double> KvDoc::get_list_or(const std::string& section, const std::string& key,
                                       const std::vector<double>& fallback) const {
  return has(section, key) ? get_list(section, key) : fallback;
}

void KvDoc::set(const std::string& section, const std::string& key,
                const std::string& value) {
  sections_[section][key] = value;
}

std::string KvDoc::canonical_text() const {
  std::ostringstream os;
  for (const auto& [name, kv] : sections_) {
    if (!name.empty()) os << '[' << name << "]\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << '\n';
  }
  return os.str();
}

}  // namespace nlslab
