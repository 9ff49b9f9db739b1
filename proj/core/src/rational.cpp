#include "smr/rational.hpp"

#include <cctype>

#include "smr/errors.hpp"

namespace smr {

std::string to_string(const Rational& value) { return value.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  bool ok = !s.empty();
  int slashes = 0;
  for (std::size_t i = 0; ok && i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      ++slashes;
      ok = slashes == 1 && i > 0 && i + 1 < s.size();
    } else if (c == '-' || c == '+') {
      ok = i == 0 || s[i - 1] == '/';
    } else {
      ok = std::isdigit(static_cast<unsigned char>(c)) != 0;
    }
  }
  auto fail = [&] { return InvalidArgument("not a rational number: '" + std::string(text) + "'"); };
  if (!ok) throw fail();
  if (s.front() == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw fail();
  r.canonicalize();
  return r;
}

}  // namespace smr
