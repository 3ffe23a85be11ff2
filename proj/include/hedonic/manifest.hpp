#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hedonic::manifest {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// Reproducibility record for one CLI run: the command, its parameters and
// content hashes of inputs/outputs keyed by file name (never by path, so
// identical runs in different directories produce identical manifests).
struct Manifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;   // name -> value
  std::vector<std::pair<std::string, std::string>> inputs;   // file name -> sha256
  std::vector<std::pair<std::string, std::string>> outputs;  // file name -> sha256

  std::string to_json() const;
};

// Writes <out_dir>/manifest.json.
void write(const std::string& out_dir, const Manifest& m);

}  // namespace hedonic::manifest
