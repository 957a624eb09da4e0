#include "drkofn/io.hpp"

#include <cctype>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace drkofn {

namespace {

using ordered_json = nlohmann::ordered_json;

void require_keys(const ordered_json& obj, std::initializer_list<const char*> keys,
                  const char* what) {
  for (const char* key : keys)
    if (!obj.contains(key))
      throw std::invalid_argument(std::string(what) + " is missing field \"" + key + "\"");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || item.key() == key;
    if (!known)
      throw std::invalid_argument(std::string(what) + " has unknown field \"" + item.key() + "\"");
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
  require_keys(j, {"n", "k", "tests"}, "instance");
  if (!j["n"].is_number_integer() || !j["k"].is_number_integer())
    throw std::invalid_argument("n and k must be integers");
  if (!j["tests"].is_array()) throw std::invalid_argument("tests must be an array");

  Instance inst;
  inst.n = j["n"].get<int>();
  inst.k = j["k"].get<int>();
  if (j["tests"].size() != static_cast<std::size_t>(inst.n) || inst.n <= 0)
    throw std::invalid_argument("tests array length must equal n");
  for (const auto& t : j["tests"]) {
    if (!t.is_object()) throw std::invalid_argument("each test must be an object");
    require_keys(t, {"cost", "lo", "hi"}, "test");
    for (const char* key : {"cost", "lo", "hi"})
      if (!t[key].is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
    inst.cost.push_back(t["cost"].get<double>());
    inst.lo.push_back(t["lo"].get<double>());
    inst.hi.push_back(t["hi"].get<double>());
  }
  validate(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  ordered_json j;
  j["n"] = inst.n;
  j["k"] = inst.k;
  j["tests"] = ordered_json::array();
  for (std::size_t i = 0; i < static_cast<std::size_t>(inst.n); ++i) {
    ordered_json t;
    t["cost"] = inst.cost[i];
    t["lo"] = inst.lo[i];
    t["hi"] = inst.hi[i];
    j["tests"].push_back(std::move(t));
  }
  return j.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << serialize_instance(inst);
}

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Permutation parse_order(const std::string& text, int n) {
  Permutation perm;
  for (const std::string& part : split_commas(text)) {
    std::size_t used = 0;
    int v;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("order entry \"" + part + "\" is not an integer");
    }
    if (used != part.size()) throw std::invalid_argument("order entry \"" + part + "\" is not an integer");
    perm.push_back(v - 1);
  }
  validate_permutation(perm, n);
  return perm;
}

std::string format_order(const Permutation& perm) {
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(perm[i] + 1);
  }
  return out;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const std::string& part : split_commas(text)) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("\"" + part + "\" is not a number");
    }
    if (used != part.size()) throw std::invalid_argument("\"" + part + "\" is not a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace drkofn
