#include "hodgewave/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hodgewave {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

} // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineNo) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineNo) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineNo) + ": empty key");
    cfg.values_[{section, key}] = value;
  }
  return cfg;
}

Config Config::fromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
  return values_.count({section, key}) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  auto it = values_.find({section, key});
  if (it == values_.end())
    throw ConfigError("missing config key [" + section + "] " + key);
  return it->second;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
  auto it = values_.find({section, key});
  return it == values_.end() ? fallback : it->second;
}

double Config::getDouble(const std::string& section, const std::string& key,
                         double fallback) const {
  if (!has(section, key)) return fallback;
  return requireDouble(section, key);
}

double Config::requireDouble(const std::string& section, const std::string& key) const {
  const std::string raw = get(section, key);
  try {
    size_t pos = 0;
    double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key [" + section + "] " + key + " is not a number: " + raw);
  }
}

int Config::getInt(const std::string& section, const std::string& key, int fallback) const {
  if (!has(section, key)) return fallback;
  const std::string raw = get(section, key);
  try {
    size_t pos = 0;
    int v = std::stoi(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key [" + section + "] " + key + " is not an integer: " + raw);
  }
}

std::vector<int> Config::getIntList(const std::string& section, const std::string& key) const {
  std::vector<int> out;
  std::istringstream in(get(section, key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw ConfigError("config key [" + section + "] " + key + " is empty");
  return out;
}

void Config::set(const std::string& section, const std::string& key,
                 const std::string& value) {
  values_[{section, key}] = value;
}

Eigen::VectorXd readFieldCsv(const std::string& path, int size, double fallback) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field file: " + path);
  Eigen::VectorXd out = Eigen::VectorXd::Constant(size, fallback);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    line = trim(line);
    if (line.empty() || line.find("simplex_index") != std::string::npos) continue;
    std::istringstream ls(line);
    std::string idx, val;
    if (!std::getline(ls, idx, ',') || !std::getline(ls, val))
      throw ConfigError(path + " line " + std::to_string(lineNo) + ": expected index,value");
    int i = std::stoi(trim(idx));
    if (i < 0 || i >= size)
      throw ConfigError(path + " line " + std::to_string(lineNo) + ": index out of range");
    out[i] = std::stod(trim(val));
  }
  return out;
}

Eigen::MatrixXd readMatrixCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(trim(cell)));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ConfigError(path + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError(path + ": empty matrix");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string formatCsvValue(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace hodgewave
