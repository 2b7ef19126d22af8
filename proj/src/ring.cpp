#include "gorhom/ring.hpp"

#include <cctype>
#include <stdexcept>

namespace gorhom {

Ring Ring::integers_mod(const Int& modulus) {
  if (modulus < 2) throw std::invalid_argument("Z/m requires m >= 2, got " + to_string(modulus));
  Ring r;
  r.kind_ = Kind::IntegersMod;
  r.modulus_ = modulus;
  return r;
}

bool Ring::is_unit(const Int& x) const {
  if (is_integers()) return x == 1 || x == -1;
  return gcd(x, modulus_) == 1;
}

std::string Ring::name() const { return is_integers() ? "Z" : "Z/" + to_string(modulus_); }

Ring parse_ring(const std::string& text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    // "ℤ" is three bytes in UTF-8.
    if (text.compare(i, 3, "\xe2\x84\xa4") == 0) {
      s += 'Z';
      i += 2;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(text[i]))) s += text[i];
  }
  if (s == "Z") return Ring::integers();
  if (s.size() > 2 && s[0] == 'Z' && s[1] == '/') {
    const std::string digits = s.substr(2);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad ring modulus in '" + text + "'");
    return Ring::integers_mod(Int(digits));
  }
  throw std::invalid_argument("unknown ring '" + text + "' (expected Z or Z/m)");
}

}  // namespace gorhom
