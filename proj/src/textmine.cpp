#include "hedonic/textmine.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hedonic::textmine {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_interaction(int flag) {
  return flag == static_cast<int>(MinedFlag::garden_cc) ||
         flag == static_cast<int>(MinedFlag::car_space_cc);
}

}  // namespace

bool contains_ci(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return false;
  const std::string h = lower_ascii(haystack);
  const std::string n = lower_ascii(needle);
  return h.find(n) != std::string::npos;
}

void PhraseLexicon::validate() const {
  for (int i = 0; i < kNumMinedFlags; ++i) {
    if (is_interaction(i)) continue;  // derived geographically, no triggers
    if (phrases[i].empty()) {
      throw std::runtime_error("lexicon: feature '" + mined_flag_names()[i] +
                               "' has no trigger phrase");
    }
    for (const auto& p : phrases[i]) {
      if (trim(p).empty()) {
        throw std::runtime_error("lexicon: empty trigger for '" + mined_flag_names()[i] + "'");
      }
    }
  }
}

PhraseLexicon PhraseLexicon::parse(const std::string& text) {
  PhraseLexicon lex;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto colon = stripped.find(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("lexicon: malformed line '" + stripped + "'");
    }
    const std::string name = trim(stripped.substr(0, colon));
    const int idx = mined_flag_index(name);
    if (idx < 0) throw std::runtime_error("lexicon: unknown feature '" + name + "'");
    std::vector<std::string> triggers;
    std::string rest = stripped.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto bar = rest.find('|', pos);
      const std::string phrase =
          trim(bar == std::string::npos ? rest.substr(pos) : rest.substr(pos, bar - pos));
      if (!phrase.empty()) triggers.push_back(lower_ascii(phrase));
      if (bar == std::string::npos) break;
      pos = bar + 1;
    }
    lex.phrases[idx] = std::move(triggers);
  }
  lex.validate();
  return lex;
}

PhraseLexicon PhraseLexicon::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("lexicon: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string PhraseLexicon::to_text() const {
  std::string out;
  for (int i = 0; i < kNumMinedFlags; ++i) {
    if (is_interaction(i) || phrases[i].empty()) continue;
    out += mined_flag_names()[i];
    out += ": ";
    for (std::size_t j = 0; j < phrases[i].size(); ++j) {
      if (j) out += " | ";
      out += phrases[i][j];
    }
    out += '\n';
  }
  return out;
}

MinedFeatures mine(const std::string& description, const PhraseLexicon& lexicon) {
  const std::string text = lower_ascii(description);
  MinedFeatures features;
  for (int i = 0; i < kNumMinedFlags; ++i) {
    if (is_interaction(i)) continue;
    for (const auto& phrase : lexicon.phrases[i]) {
      if (text.find(lower_ascii(phrase)) != std::string::npos) {
        features.bits[i] = 1;
        break;
      }
    }
  }
  return features;
}

MinedFeatures apply_interactions(const MinedFeatures& features, bool within_city_centre) {
  MinedFeatures out = features;
  out.set(MinedFlag::garden_cc, features.get(MinedFlag::garden) && within_city_centre);
  out.set(MinedFlag::car_space_cc, features.get(MinedFlag::parking) && within_city_centre);
  return out;
}

std::array<long long, kNumMinedFlags> tabulate(std::span<const MinedFeatures> corpus) {
  std::array<long long, kNumMinedFlags> counts{};
  for (const auto& f : corpus) {
    for (int i = 0; i < kNumMinedFlags; ++i) counts[i] += f.bits[i];
  }
  return counts;
}

}  // namespace hedonic::textmine
