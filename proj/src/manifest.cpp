#include "hedonic/manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hedonic::manifest {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr)) {
    throw std::runtime_error("sha256: digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

std::string Manifest::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "hedonic-manifest";
  j["version"] = 1;
  j["command"] = command;
  nlohmann::ordered_json params_json;
  for (const auto& [k, v] : params) params_json[k] = v;
  j["params"] = std::move(params_json);
  nlohmann::ordered_json inputs_json;
  for (const auto& [k, v] : inputs) inputs_json[k] = v;
  j["inputs"] = std::move(inputs_json);
  nlohmann::ordered_json outputs_json;
  for (const auto& [k, v] : outputs) outputs_json[k] = v;
  j["outputs"] = std::move(outputs_json);
  return j.dump(1);
}

void write(const std::string& out_dir, const Manifest& m) {
  const std::string path = out_dir + "/manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("manifest: cannot open " + path);
  out << m.to_json();
}

}  // namespace hedonic::manifest
