#include "steprev/vec.hpp"

namespace steprev {

Step noidx(const Step& alpha) {
  Step out;
  for (const auto& [a, n] : alpha.entries()) out.add(noidx(a), n);
  return out;
}

Step reverse_step(const Step& alpha) {
  Step out;
  for (const auto& [a, n] : alpha.entries()) out.add(rev(a), n);
  return out;
}

std::string step_literal(const Step& alpha) {
  std::string out = "(";
  bool first = true;
  for (const auto& [a, n] : alpha.entries()) {
    for (Int i = 0; i < n; ++i) {
      if (!first) out += " ";
      first = false;
      out += a.to_string();
    }
  }
  out += ")";
  return out;
}

}  // namespace steprev
