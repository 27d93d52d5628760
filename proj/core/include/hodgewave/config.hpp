#pragma once

#include <Eigen/Core>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hodgewave {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flat "key = value" file with [section] headers and '#' comments.
class Config {
public:
  static Config parse(const std::string& text);
  static Config fromFile(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double getDouble(const std::string& section, const std::string& key,
                   double fallback) const;
  double requireDouble(const std::string& section, const std::string& key) const;
  int getInt(const std::string& section, const std::string& key, int fallback) const;
  std::vector<int> getIntList(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

private:
  std::map<std::pair<std::string, std::string>, std::string> values_;
};

// simplex_index,value sidecar; missing indices keep the fallback.
Eigen::VectorXd readFieldCsv(const std::string& path, int size, double fallback);

// Dense matrix, one row per line, comma-separated.
Eigen::MatrixXd readMatrixCsv(const std::string& path);

// Serializes with 17 significant digits.
std::string formatCsvValue(double v);

} // namespace hodgewave
