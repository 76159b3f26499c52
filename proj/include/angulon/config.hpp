#ifndef ANGULON_CONFIG_HPP
#define ANGULON_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>

namespace angulon::config {

// Flat "key = value" text file; '#' starts a comment.
class Config {
public:
  static Config parse(std::istream& is);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  // keys not in the allowed set, for usage-error reporting
  std::set<std::string> unknown_keys(const std::set<std::string>& allowed) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

private:
  std::map<std::string, std::string> entries_;
};

// decimal, 15 significant digits
std::string fmt15(double v);

}  // namespace angulon::config

#endif
