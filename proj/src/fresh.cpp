#include "sfc/fresh.hpp"

#include <cctype>
#include <string>

namespace sfc {

FreshSupply FreshSupply::for_program(const Program& p) {
  std::int64_t seed = 0;
  for (const auto& x : all_vars(p)) {
    auto pos = x.text.rfind('\'');
    if (pos == std::string::npos || pos + 1 == x.text.size()) continue;
    std::string suffix = x.text.substr(pos + 1);
    bool digits = true;
    for (char c : suffix)
      if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
    if (!digits) continue;
    seed = std::max(seed, static_cast<std::int64_t>(std::stoll(suffix)));
  }
  return FreshSupply(seed);
}

Ident FreshSupply::fresh(const Ident& base) {
  ++counter_;
  return Ident(base.text + "'" + std::to_string(counter_));
}

}  // namespace sfc
